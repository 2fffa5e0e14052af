#include "pseudoherm/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pseudoherm {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json complex_to_json(const Complex& z) {
  return ordered_json::array({z.real(), z.imag()});
}

ordered_json matrix_to_json(const CMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Complex complex_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError(where + ": complex values must be [re, im] number pairs");
  }
  const Complex z(j[0].get<double>(), j[1].get<double>());
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw ParseError(where + ": non-finite value");
  }
  return z;
}

CMatrix matrix_from_json(const nlohmann::json& j, Index n, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of rows");
  if (static_cast<Index>(j.size()) != n) {
    throw NonSquare(where + ": " + std::to_string(j.size()) + " rows for declared n=" +
                    std::to_string(n));
  }
  CMatrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    const auto& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array()) throw ParseError(where + ": row " + std::to_string(i) + " is not an array");
    if (static_cast<Index>(row.size()) != n) {
      throw NonSquare(where + ": row " + std::to_string(i) + " has " +
                      std::to_string(row.size()) + " entries for declared n=" + std::to_string(n));
    }
    for (Index k = 0; k < n; ++k) {
      m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)],
                                  where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
  }
  return m;
}

std::string fmt12(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

std::string fmt12(const Complex& z) {
  std::string out = fmt12(z.real());
  out += z.imag() < 0.0 ? " - " : " + ";
  out += fmt12(std::abs(z.imag()));
  out += "i";
  return out;
}

void matrix_to_markdown(std::ostringstream& os, const CMatrix& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    os << "    [ ";
    for (Index j = 0; j < m.cols(); ++j) {
      os << fmt12(m(i, j));
      if (j + 1 < m.cols()) os << ",  ";
    }
    os << " ]\n";
  }
}

ordered_json flags_to_json(const MetricFlags& f) {
  ordered_json j;
  j["hermitian"] = f.hermitian;
  j["involutory"] = f.involutory;
  j["unitary"] = f.unitary;
  j["real_symmetric"] = f.real_symmetric;
  j["simple"] = f.simple;
  j["positive_definite"] = f.positive_definite;
  return j;
}

ordered_json gram_to_json(const InnerProductReport& g) {
  ordered_json j;
  j["values"] = matrix_to_json(g.values);
  j["real_definite"] = g.real_definite;
  j["max_imag"] = g.max_imag;
  j["diagonal_signs"] = g.diagonal_signs;
  return j;
}

}  // namespace

MatrixFile parse_matrix_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid json: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("top level must be an object");
  if (!j.contains("n") || !j["n"].is_number_integer()) {
    throw ParseError("missing or non-integer field \"n\"");
  }
  const Index n = j["n"].get<Index>();
  if (n < 1 || n > 16) throw ParseError("n must be in [1, 16], got " + std::to_string(n));
  if (!j.contains("H")) throw ParseError("missing field \"H\"");

  MatrixFile out;
  out.H = matrix_from_json(j["H"], n, "H");
  if (j.contains("eta")) out.eta = matrix_from_json(j["eta"], n, "eta");
  if (j.contains("phases")) {
    const auto& ph = j["phases"];
    if (!ph.is_array() || static_cast<Index>(ph.size()) != n) {
      throw ParseError("phases must hold one [re, im] pair per eigenvector");
    }
    for (std::size_t k = 0; k < ph.size(); ++k) {
      const Complex z = complex_from_json(ph[k], "phases[" + std::to_string(k) + "]");
      if (std::abs(std::abs(z) - 1.0) > 1e-6) {
        throw ParseError("phases[" + std::to_string(k) + "] is not a unit complex number");
      }
      out.phases.push_back(z / std::abs(z));
    }
  }
  return out;
}

MatrixFile parse_matrix_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix_text(buf.str());
}

std::string write_matrix_text(const MatrixFile& file) {
  ordered_json j;
  j["n"] = file.H.rows();
  j["H"] = matrix_to_json(file.H);
  if (file.eta.has_value()) j["eta"] = matrix_to_json(*file.eta);
  if (!file.phases.empty()) {
    ordered_json ph = ordered_json::array();
    for (const Complex& z : file.phases) ph.push_back(complex_to_json(z));
    j["phases"] = std::move(ph);
  }
  return j.dump(2) + "\n";
}

void write_matrix_file(const MatrixFile& file, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot open file for writing: " + path);
  out << write_matrix_text(file);
}

MatrixFile fixture_to_matrix_file(const Fixture& fixture, const Tolerance& tol) {
  MatrixFile file;
  file.H = fixture.hamiltonian;
  file.eta = fixture.fundamental_metric;
  if (!fixture.pinned_eigenvectors.empty() &&
      fixture.expected_class == SpectrumClass::AllReal) {
    const SpectralData aligned =
        decompose(fixture.hamiltonian, fixture.fundamental_metric, tol,
                  PhaseConvention::align(fixture.pinned_eigenvectors));
    const SpectralData plain =
        decompose(fixture.hamiltonian, fixture.fundamental_metric, tol);
    for (std::size_t k = 0; k < aligned.vectors.size(); ++k) {
      const Complex z = (plain.vectors[k].adjoint() * aligned.vectors[k])(0);
      file.phases.push_back(z / std::abs(z));
    }
  }
  return file;
}

std::string report_to_json(const AnalysisReport& rep) {
  ordered_json j;

  ordered_json input;
  input["n"] = rep.hamiltonian.rows();
  input["H"] = matrix_to_json(rep.hamiltonian);
  input["eta_supplied"] = rep.eta_supplied;
  if (rep.eta_input.has_value()) input["eta"] = matrix_to_json(*rep.eta_input);
  input["tolerance"] = ordered_json{{"abs", rep.tol.abs}, {"rel", rep.tol.rel}};
  input["conjugate_pairs"] = rep.conjugate_pairs_requested;
  j["input"] = std::move(input);

  ordered_json spectrum;
  if (rep.eigenvalues.has_value()) {
    ordered_json ev = ordered_json::array();
    for (const Complex& e : *rep.eigenvalues) ev.push_back(complex_to_json(e));
    spectrum["eigenvalues"] = std::move(ev);
  }
  if (rep.spectrum_class.has_value()) spectrum["class"] = to_string(*rep.spectrum_class);
  if (!rep.ordering.empty()) spectrum["ordering"] = rep.ordering;
  if (rep.diagonalizer_condition.has_value()) {
    spectrum["diagonalizer_condition"] = *rep.diagonalizer_condition;
  }
  if (!rep.eta_signs.empty()) spectrum["eta_signs"] = rep.eta_signs;
  j["spectrum"] = std::move(spectrum);

  ordered_json metrics;
  if (rep.family.has_value()) {
    metrics["family_dimension"] = rep.family->dimension;
    ordered_json basis = ordered_json::array();
    for (std::size_t k = 0; k < rep.family->basis.size(); ++k) {
      ordered_json item;
      item["matrix"] = matrix_to_json(rep.family->basis[k]);
      if (k < rep.family_flags.size()) item["flags"] = flags_to_json(rep.family_flags[k]);
      basis.push_back(std::move(item));
    }
    metrics["family_basis"] = std::move(basis);
  }
  if (rep.fundamental.has_value()) {
    metrics["fundamental"] = ordered_json{{"matrix", matrix_to_json(rep.fundamental->matrix)},
                                          {"flags", flags_to_json(rep.fundamental->flags)},
                                          {"selection", rep.metric_selection}};
  }
  if (rep.eta_plus.has_value()) {
    metrics["eta_plus"] = ordered_json{{"matrix", matrix_to_json(rep.eta_plus->matrix)},
                                       {"flags", flags_to_json(rep.eta_plus->flags)}};
  }
  if (rep.conjugate_metric.has_value()) {
    metrics["conjugate_metric"] =
        ordered_json{{"matrix", matrix_to_json(rep.conjugate_metric->matrix)},
                     {"flags", flags_to_json(rep.conjugate_metric->flags)}};
  }
  j["metrics"] = std::move(metrics);

  ordered_json suite;
  if (rep.suite.has_value()) {
    const auto op_json = [](const OperatorRep& op) {
      return ordered_json{{"matrix", matrix_to_json(op.matrix)}, {"antilinear", op.antilinear}};
    };
    suite["P"] = op_json(rep.suite->P);
    suite["T"] = op_json(rep.suite->T);
    suite["C"] = op_json(rep.suite->C);
    suite["PT"] = op_json(rep.suite->PT);
    suite["CPT"] = op_json(rep.suite->CPT);
  }
  if (rep.p2t2.has_value()) {
    suite["p2_t2"] = ordered_json{{"condition_holds", rep.p2t2->condition_holds},
                                  {"t2_equals_p2", rep.p2t2->t2_equals_p2},
                                  {"condition_residual", rep.p2t2->condition_residual},
                                  {"t2_p2_residual", rep.p2t2->t2_p2_residual}};
  }
  if (rep.suite_report.has_value()) {
    ordered_json res;
    for (const auto& [name, value] : rep.suite_report->residuals) res[name] = value;
    suite["residuals"] = std::move(res);
  }
  j["suite"] = std::move(suite);

  ordered_json products;
  if (rep.grams.has_value()) {
    products["eta_gram"] = gram_to_json(rep.grams->eta_gram);
    products["eta_plus_gram"] = gram_to_json(rep.grams->eta_plus_gram);
    ordered_json xg;
    for (const auto& [name, g] : rep.grams->x_grams) xg[name] = gram_to_json(g);
    products["x_grams"] = std::move(xg);
    products["rival_transpose"] = gram_to_json(rep.grams->rival_transpose);
    products["rival_biortho"] = gram_to_json(rep.grams->rival_biortho);
  }
  j["products"] = std::move(products);

  ordered_json residuals;
  for (const auto& [name, value] : rep.residuals) residuals[name] = value;
  j["residuals"] = std::move(residuals);

  ordered_json verdicts = ordered_json::array();
  for (const Verdict& v : rep.verdicts) {
    verdicts.push_back(ordered_json{{"name", v.name},
                                    {"pass", v.pass},
                                    {"residual", v.residual},
                                    {"threshold", v.threshold}});
  }
  j["verdicts"] = std::move(verdicts);

  if (rep.error.has_value()) {
    j["error"] = ordered_json{{"class", static_cast<int>(rep.error->cls)},
                              {"stage", rep.error->stage},
                              {"message", rep.error->message}};
  }
  j["exit_code"] = rep.exit_code();
  return j.dump(2) + "\n";
}

std::string report_to_markdown(const AnalysisReport& rep) {
  std::ostringstream os;
  os << "# Pseudo-Hermiticity analysis\n\n";

  os << "## Spectrum\n\n";
  if (rep.eigenvalues.has_value()) {
    for (std::size_t k = 0; k < rep.eigenvalues->size(); ++k) {
      os << "  - E" << k << " = " << fmt12((*rep.eigenvalues)[k]) << "\n";
    }
  }
  if (rep.spectrum_class.has_value()) {
    os << "  - class: " << to_string(*rep.spectrum_class) << "\n";
  }
  if (rep.diagonalizer_condition.has_value()) {
    os << "  - cond(D) = " << fmt12(*rep.diagonalizer_condition) << "\n";
  }
  if (!rep.eta_signs.empty()) {
    os << "  - eta-norm signs:";
    for (int s : rep.eta_signs) os << " " << (s > 0 ? "+1" : "-1");
    os << "\n";
  }

  os << "\n## Metrics\n\n";
  os << "  - metric family dimension: " << (rep.family ? rep.family->dimension : 0) << "\n";
  if (rep.fundamental.has_value()) {
    os << "  - fundamental metric (" << rep.metric_selection << "):\n";
    matrix_to_markdown(os, rep.fundamental->matrix);
  }
  if (rep.eta_plus.has_value()) {
    os << "  - eta_plus:\n";
    matrix_to_markdown(os, rep.eta_plus->matrix);
  }
  if (rep.conjugate_metric.has_value()) {
    os << "  - conjugate-paired metric:\n";
    matrix_to_markdown(os, rep.conjugate_metric->matrix);
  }

  os << "\n## Symmetry suite\n\n";
  if (rep.suite.has_value()) {
    const struct {
      const char* name;
      const OperatorRep* op;
    } ops[] = {{"P", &rep.suite->P},
               {"T", &rep.suite->T},
               {"C", &rep.suite->C},
               {"PT", &rep.suite->PT},
               {"CPT", &rep.suite->CPT}};
    for (const auto& item : ops) {
      os << "  - " << item.name << (item.op->antilinear ? " (antilinear):\n" : " (linear):\n");
      matrix_to_markdown(os, item.op->matrix);
    }
    if (rep.p2t2.has_value()) {
      os << "  - T^2 = P^2: " << (rep.p2t2->t2_equals_p2 ? "yes" : "no")
         << " (condition holds: " << (rep.p2t2->condition_holds ? "yes" : "no") << ")\n";
    }
  } else {
    os << "  (not constructed)\n";
  }

  os << "\n## Products\n\n";
  if (rep.grams.has_value()) {
    const auto emit = [&](const char* name, const InnerProductReport& g) {
      os << "  - " << name << " Gram (real-definite: " << (g.real_definite ? "yes" : "no")
         << ", diagonal:";
      for (const std::string& s : g.diagonal_signs) os << " " << s;
      os << "):\n";
      matrix_to_markdown(os, g.values);
    };
    emit("eta", rep.grams->eta_gram);
    emit("eta_plus", rep.grams->eta_plus_gram);
    for (const auto& [name, g] : rep.grams->x_grams) emit(name.c_str(), g);
    emit("rival transpose", rep.grams->rival_transpose);
    emit("rival biortho", rep.grams->rival_biortho);
  } else {
    os << "  (not computed)\n";
  }

  os << "\n## Verdicts\n\n";
  for (const Verdict& v : rep.verdicts) {
    os << "  - " << (v.pass ? "PASS" : "FAIL") << " " << v.name << " (residual "
       << fmt12(v.residual) << ", threshold " << fmt12(v.threshold) << ")\n";
  }
  if (rep.error.has_value()) {
    os << "\n**Error** (" << rep.error->stage << ", exit class "
       << static_cast<int>(rep.error->cls) << "): " << rep.error->message << "\n";
  }
  return os.str();
}

}  // namespace pseudoherm
