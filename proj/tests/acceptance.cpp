// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Criterion 10 drives the CLI binary whose path arrives as
// argv[1].

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pseudoherm/io.hpp"
#include "pseudoherm/products.hpp"

using namespace pseudoherm;

namespace {

int g_failures = 0;

void report(int id, const std::string& desc, bool pass, const std::string& detail = "") {
  std::printf("%s criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", id, desc.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!pass) ++g_failures;
}

struct Worst {
  double value = 0.0;
  void track(double v) { value = std::max(value, v); }
  std::string str() const {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "worst %.3e", value);
    return buf;
  }
};

double max_entry_diff(const CMatrix& a, const CMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

struct PipelineOut {
  SpectralData sd;
  Metric eta;
  Metric eta_plus;
  BiorthoSystem bio;
  SymmetrySuite suite;
};

PipelineOut run(const CMatrix& H, const CMatrix& eta, const std::vector<CVector>& pinned = {}) {
  const Tolerance tol;
  PipelineOut p;
  const PhaseConvention phases =
      pinned.empty() ? PhaseConvention::auto_phase() : PhaseConvention::align(pinned);
  p.sd = decompose(H, eta, tol, phases);
  p.eta = make_metric(eta, tol);
  p.eta_plus = metric_from_diagonalizer(p.sd.diagonalizer, tol);
  p.bio = build_biortho(p.sd.vectors, eta, p.eta_plus.matrix, tol);
  p.suite = build_suite(H, p.bio, p.eta, p.eta_plus, tol);
  return p;
}

PipelineOut run(const Fixture& f) {
  return run(f.hamiltonian, f.fundamental_metric, f.pinned_eigenvectors);
}

double involution_residual(const OperatorRep& op) {
  const OperatorRep sq = compose(op, op);
  return (sq.matrix - CMatrix::Identity(sq.matrix.rows(), sq.matrix.cols())).norm();
}

// ---------------------------------------------------------------------------

void criterion_1() {
  Worst worst;
  bool pass = true;
  const Fixture f = family_asym_coupling(1.0, 1.0, 4.0, Complex(1.0, 1.0));

  const EigResult er = eig(f.hamiltonian);
  const double e_err = std::max(std::abs(er.eigenvalues[0] - Complex(3.0, 0.0)),
                                std::abs(er.eigenvalues[1] - Complex(-1.0, 0.0)));
  worst.track(e_err);
  pass = pass && e_err <= 1e-12;

  const MetricFamily family = solve_metric_space(f.hamiltonian);
  pass = pass && family.dimension == 2;

  for (const char* name : {"eta1", "eta2", "eta3", "eta4"}) {
    const CMatrix& eta = f.expected.at(name);
    const double resid = pseudo_hermiticity_residual(f.hamiltonian, eta);
    const double defect = projection_defect(family, eta);
    worst.track(resid);
    pass = pass && resid <= 1e-10 && defect <= 1e-9;
  }
  report(1, "asym family (1,1,4): eigenvalues, family dimension 2, four metrics in span", pass,
         worst.str());
}

void criterion_2() {
  Worst worst;
  bool pass = true;
  const Fixture f = example_involutory_metric(2.0);
  const PipelineOut p = run(f);

  const struct {
    const char* name;
    const OperatorRep* op;
    bool antilinear;
  } ops[] = {{"P", &p.suite.P, false},
             {"T", &p.suite.T, true},
             {"C", &p.suite.C, false},
             {"PT", &p.suite.PT, true},
             {"CPT", &p.suite.CPT, true}};
  for (const auto& item : ops) {
    const double d = max_entry_diff(item.op->matrix, f.expected.at(item.name));
    worst.track(d);
    pass = pass && d <= 1e-10 && item.op->antilinear == item.antilinear;
  }
  const double d_plus = max_entry_diff(p.eta_plus.matrix, f.expected.at("eta_plus"));
  worst.track(d_plus);
  pass = pass && d_plus <= 1e-10;

  const CMatrix PC = p.suite.P.matrix * p.suite.C.matrix;
  const CMatrix CP_inv = (p.suite.C.matrix * p.suite.P.matrix).inverse();
  worst.track((PC - p.eta_plus.matrix).norm());
  worst.track((CP_inv - p.eta_plus.matrix).norm());
  pass = pass && (PC - p.eta_plus.matrix).norm() <= 1e-10;
  pass = pass && (CP_inv - p.eta_plus.matrix).norm() <= 1e-10;

  worst.track(involution_residual(p.suite.P));
  worst.track(involution_residual(p.suite.T));
  pass = pass && involution_residual(p.suite.P) <= 1e-10;
  pass = pass && involution_residual(p.suite.T) <= 1e-10;

  report(2, "involutory example at r=2: pinned reference operator set, (CP)^-1 = PC = eta_plus, T^2 = P^2 = 1", pass,
         worst.str());
}

void criterion_3() {
  Worst worst;
  bool pass = true;
  const Fixture f = example_definite_metric(3.0, 1.0, 1.0, 2.0);
  const PipelineOut p = run(f);

  const double e_err =
      std::max(std::abs(p.sd.eigenvalues[0] - Complex(2.0 + std::sqrt(2.0), 0.0)),
               std::abs(p.sd.eigenvalues[1] - Complex(2.0 - std::sqrt(2.0), 0.0)));
  worst.track(e_err);
  pass = pass && e_err <= 1e-10;

  CMatrix expected_eta(2, 2);
  expected_eta << 2.0, 0.0, 0.0, 0.5;
  worst.track(max_entry_diff(p.eta_plus.matrix, expected_eta));
  pass = pass && max_entry_diff(p.eta_plus.matrix, expected_eta) <= 1e-10;
  pass = pass && max_entry_diff(p.eta_plus.matrix, f.fundamental_metric) <= 1e-10;

  for (const char* name : {"P", "T", "C"}) {
    const OperatorRep& op = *(name[0] == 'P' ? &p.suite.P : name[0] == 'T' ? &p.suite.T
                                                                           : &p.suite.C);
    const double d = max_entry_diff(op.matrix, f.expected.at(name));
    worst.track(d);
    pass = pass && d <= 1e-10;
  }

  const CMatrix P2 = compose(p.suite.P, p.suite.P).matrix;
  const CMatrix T2 = compose(p.suite.T, p.suite.T).matrix;
  pass = pass && (T2 - P2).norm() > 0.1;

  const CMatrix PC = p.suite.P.matrix * p.suite.C.matrix;
  const CMatrix CP_inv = (p.suite.C.matrix * p.suite.P.matrix).inverse();
  pass = pass && (PC - CP_inv).norm() > 0.1;
  worst.track((CP_inv - p.eta_plus.matrix).norm());
  pass = pass && (CP_inv - p.eta_plus.matrix).norm() <= 1e-10;

  for (const OperatorRep* op : {&p.suite.C, &p.suite.PT, &p.suite.CPT}) {
    const double r = symmetry_residual(f.hamiltonian, *op);
    worst.track(r);
    pass = pass && r <= 1e-10;
  }

  report(3, "definite example (3,1,1,2): eigenvalues, eta_plus = eta, theta-form operators, inequalities", pass,
         worst.str());
}

void criterion_4() {
  Worst worst;
  bool pass = true;
  std::vector<PipelineOut> systems;
  systems.push_back(run(example_involutory_metric(2.0)));
  systems.push_back(run(example_definite_metric(3.0, 1.0, 1.0, 2.0)));
  systems.push_back(run(family_detuned_symmetric(0.0, 3.0, 5.0)));
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    const RandomConstruction rc = random_real_spectrum(n, seed);
    systems.push_back(run(rc.H, metric_from_diagonalizer(rc.D).matrix));
  }

  for (const PipelineOut& p : systems) {
    for (const OperatorRep* op : {&p.suite.C, &p.suite.PT, &p.suite.CPT}) {
      const double r = involution_residual(*op);
      worst.track(r);
      pass = pass && r <= 1e-8;
    }
    for (std::size_t k = 0; k < p.bio.psi.size(); ++k) {
      const double s = k % 2 == 0 ? 1.0 : -1.0;
      const double a_t = (pseudoherm::apply(p.suite.T, p.bio.psi[k]) - p.bio.upsilon[k]).norm();
      const double a_c = (pseudoherm::apply(p.suite.C, p.bio.psi[k]) - s * p.bio.psi[k]).norm();
      const double a_cpt = (pseudoherm::apply(p.suite.CPT, p.bio.psi[k]) - p.bio.psi[k]).norm();
      const double a_p = (pseudoherm::apply(p.suite.P, p.bio.upsilon[k]) - s * p.bio.psi[k]).norm();
      for (double r : {a_t, a_c, a_cpt, a_p}) {
        worst.track(r);
        pass = pass && r <= 1e-8;
      }
    }
  }
  report(4, "involutions and action laws over the worked examples and 100 random systems", pass,
         worst.str());
}

void criterion_5() {
  Worst worst_im, worst_resid;
  bool pass = true;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    const RandomConstruction rc = random_real_spectrum(n, seed + 10000);
    for (const Complex& e : eig(rc.H).eigenvalues) worst_im.track(std::abs(e.imag()));
    worst_resid.track(pseudo_hermiticity_residual(rc.H, metric_from_diagonalizer(rc.D).matrix));
  }
  pass = pass && worst_im.value <= 1e-8 && worst_resid.value <= 1e-8;

  Worst worst_conj;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const int pairs = 1 + static_cast<int>(seed % 3);
    const RandomConstruction rc = random_conjugate_paired(pairs, seed + 20000);
    worst_conj.track(pseudo_hermiticity_residual(rc.H, metric_conjugate_paired(rc.D).matrix));
  }
  pass = pass && worst_conj.value <= 1e-8;

  char detail[96];
  std::snprintf(detail, sizeof(detail), "worst imag %.3e, residuals %.3e", worst_im.value,
                std::max(worst_resid.value, worst_conj.value));
  report(5, "theorem: 100 real converses and 50 conjugate-paired constructions", pass, detail);
}

void criterion_6() {
  Worst worst;
  bool pass = true;
  std::vector<PipelineOut> systems;
  systems.push_back(run(example_involutory_metric(2.0)));
  systems.push_back(run(example_definite_metric(3.0, 1.0, 1.0, 2.0)));
  systems.push_back(run(family_detuned_symmetric(0.0, 3.0, 5.0)));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    const RandomConstruction rc = random_real_spectrum(n, seed + 30000);
    systems.push_back(run(rc.H, metric_from_diagonalizer(rc.D).matrix));
  }

  for (std::size_t si = 0; si < systems.size(); ++si) {
    const PipelineOut& p = systems[si];
    const int n = static_cast<int>(p.eta_plus.matrix.rows());
    for (std::uint64_t vs = 0; vs < 100; ++vs) {
      const CVector v = random_vector(n, si * 1000 + vs + 1);
      const Complex q = (v.adjoint() * p.eta_plus.matrix * v)(0);
      pass = pass && q.real() > 0.0;
    }
    const GramReportSet grams =
        gram_report(p.bio, p.eta.matrix, p.eta_plus.matrix, p.suite);
    for (const char* name : {"C", "PT", "CPT"}) {
      const InnerProductReport& g = grams.x_grams.at(name);
      worst.track(g.max_imag);
      pass = pass && g.max_imag <= 1e-8;
      for (Index k = 0; k < g.values.rows(); ++k) {
        const double unit_err =
            std::abs(std::abs(g.values(k, k).real()) - 1.0) + std::abs(g.values(k, k).imag());
        worst.track(unit_err);
        pass = pass && unit_err <= 1e-8;
      }
    }
    for (Index k = 0; k < n; ++k) {
      const Complex d = grams.x_grams.at("CPT").values(k, k);
      pass = pass && std::abs(d - Complex(1.0, 0.0)) <= 1e-8;
    }
  }

  const GramReportSet i1_grams =
      gram_report(systems[0].bio, systems[0].eta.matrix, systems[0].eta_plus.matrix,
                  systems[0].suite);
  pass = pass && std::abs(i1_grams.x_grams.at("PT").values(0, 0) - Complex(1.0, 0.0)) <= 1e-8;
  pass = pass && std::abs(i1_grams.x_grams.at("PT").values(1, 1) + Complex(1.0, 0.0)) <= 1e-8;

  report(6, "eta_plus positivity and real unit X-inner grams (CPT all +1, involutory example PT = +1,-1)", pass,
         worst.str());
}

void criterion_7() {
  bool pass = true;
  const PipelineOut i1 = run(example_involutory_metric(2.0));
  const OperatorRep id2 = identity_op(2);
  const Complex v1 = rival_inner_transpose(id2, i1.bio.psi[0], i1.bio.psi[1]);
  pass = pass && std::abs(v1 - Complex(0.0, -1.25)) <= 1e-10;

  const Fixture f23 = family_detuned_symmetric(0.0, 3.0, 5.0);
  const Complex v2 =
      rival_inner_transpose(id2, f23.pinned_eigenvectors[0], f23.pinned_eigenvectors[1]);
  pass = pass && std::abs(v2) <= 1e-12;

  const PipelineOut i2 = run(example_definite_metric(3.0, 1.0, 1.0, 2.0));
  const Complex v3 = rival_inner_transpose(id2, i2.bio.psi[0], i2.bio.psi[1]);
  pass = pass && std::abs(v3) > 0.1;

  char detail[128];
  std::snprintf(detail, sizeof(detail), "involutory %.3e, detuned %.3e, |definite| %.3f",
                std::abs(v1 - Complex(0.0, -1.25)), std::abs(v2), std::abs(v3));
  report(7, "rival transpose products: involutory example = -5i/4, detuned family = 0, definite example nonzero", pass, detail);
}

void criterion_8() {
  bool pass = true;
  int checked = 0;
  const auto check_system = [&](const BiorthoSystem& bio, bool expect_holds,
                                bool enforce_expectation) {
    const P2T2 r = p2_t2_condition(bio);
    pass = pass && r.condition_holds == r.t2_equals_p2;
    if (enforce_expectation) pass = pass && r.condition_holds == expect_holds;
    ++checked;
  };

  check_system(run(example_involutory_metric(2.0)).bio, true, true);
  check_system(run(example_definite_metric(3.0, 1.0, 1.0, 2.0)).bio, false, true);
  check_system(run(example_definite_metric(3.0, 1.0, 1.0, 1.0)).bio, true, true);  // Hermitian limit x=1
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    const RandomConstruction rc = random_real_spectrum(n, seed + 40000);
    check_system(run(rc.H, metric_from_diagonalizer(rc.D).matrix).bio, false, false);
  }
  report(8, "T^2 = P^2 biconditional on the worked examples, x=1 limit and 100 random suites", pass,
         std::to_string(checked) + " systems");
}

void criterion_9() {
  Worst worst;
  bool pass = true;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    const CMatrix H = random_hermitian(n, seed + 50000);
    const PipelineOut p = run(H, CMatrix::Identity(n, n));

    worst.track((p.eta_plus.matrix - CMatrix::Identity(n, n)).norm());
    worst.track(involution_residual(p.suite.P));
    worst.track(involution_residual(p.suite.T));
    for (const OperatorRep* op :
         {&p.suite.P, &p.suite.T, &p.suite.C, &p.suite.PT, &p.suite.CPT}) {
      worst.track(symmetry_residual(H, *op));
    }
  }
  pass = worst.value <= 1e-8;
  report(9, "Hermitian limit: eta_plus = I, P^2 = T^2 = I, all five operators commute", pass,
         worst.str());
}

int run_cli(const std::string& cli, const std::string& args, const std::string& out_file) {
  const std::string cmd = cli + " " + args + " > " + out_file + " 2>&1";
  const int status = std::system(cmd.c_str());
  if (status < 0) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void criterion_10(const std::string& cli) {
  namespace fs = std::filesystem;
  bool pass = true;
  std::string detail;
  const fs::path dir = fs::path("acceptance_tmp");
  fs::create_directories(dir);

  const Fixture f = example_involutory_metric(2.0);
  const std::string matrix_path = (dir / "involutory.json").string();
  write_matrix_file(fixture_to_matrix_file(f), matrix_path);

  const std::string out1 = (dir / "report1.json").string();
  const std::string out2 = (dir / "report2.json").string();
  const std::string args = "analyze " + matrix_path + " --phases file --format json";
  const int code1 = run_cli(cli, args, out1);
  const int code2 = run_cli(cli, args, out2);
  pass = pass && code1 == 0 && code2 == 0;
  const std::string text1 = slurp(out1);
  pass = pass && !text1.empty() && text1 == slurp(out2);
  if (pass) {
    const nlohmann::json j = nlohmann::json::parse(text1);
    for (const auto& v : j["verdicts"]) pass = pass && v["pass"].get<bool>();
    pass = pass && j["exit_code"] == 0;
  } else {
    detail = "analyze exit codes " + std::to_string(code1) + "/" + std::to_string(code2);
  }

  const std::string bad_path = (dir / "bad.json").string();
  std::ofstream(bad_path) << "{ not json";
  const int bad_code = run_cli(cli, "analyze " + bad_path, (dir / "bad.out").string());
  pass = pass && bad_code == 2;

  MatrixFile mixed;
  mixed.H = CMatrix::Zero(3, 3);
  mixed.H(0, 0) = 1.0;
  mixed.H(1, 1) = Complex(2.0, 1.0);
  mixed.H(2, 2) = Complex(2.0, -1.0);
  const std::string mixed_path = (dir / "mixed.json").string();
  write_matrix_file(mixed, mixed_path);
  const int mixed_code = run_cli(cli, "analyze " + mixed_path, (dir / "mixed.out").string());
  pass = pass && mixed_code == 3;

  MatrixFile degenerate;
  degenerate.H = CMatrix::Identity(2, 2) * 2.0;
  const std::string degen_path = (dir / "degenerate.json").string();
  write_matrix_file(degenerate, degen_path);
  const int degen_code = run_cli(cli, "analyze " + degen_path, (dir / "degen.out").string());
  pass = pass && degen_code == 3;

  if (detail.empty()) {
    detail = "exit codes: ok=0, malformed=" + std::to_string(bad_code) +
             ", mixed=" + std::to_string(mixed_code) +
             ", degenerate=" + std::to_string(degen_code);
  }
  report(10, "CLI round trip: byte-identical json, documented exit code classes", pass, detail);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "./pseudoherm";
  std::printf("acceptance suite (CLI under test: %s)\n", cli.c_str());

  const struct {
    int id;
    void (*fn)();
  } basic[] = {{1, criterion_1}, {2, criterion_2}, {3, criterion_3},
               {4, criterion_4}, {5, criterion_5}, {6, criterion_6},
               {7, criterion_7}, {8, criterion_8}, {9, criterion_9}};
  for (const auto& c : basic) {
    try {
      c.fn();
    } catch (const std::exception& e) {
      report(c.id, "criterion threw", false, e.what());
    }
  }
  try {
    criterion_10(cli);
  } catch (const std::exception& e) {
    report(10, "criterion threw", false, e.what());
  }

  std::printf("%d of 10 criteria passed\n", 10 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
