#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pseudoherm/io.hpp"

namespace {

using namespace pseudoherm;

struct CommonOpts {
  double tol_abs = 1e-10;
  double tol_rel = 1e-9;
  std::string format = "json";
};

Tolerance resolve_tolerance(const CommonOpts& c, bool abs_set, bool rel_set) {
  Tolerance tol{c.tol_abs, c.tol_rel};
  // Env var is the weakest override; explicit flags win.
  if (const char* env = std::getenv("PSEUDOHERM_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v > 0.0) {
      if (!abs_set) tol.abs = v;
      if (!rel_set) tol.rel = v;
    }
  }
  return tol;
}

std::vector<int> parse_ordering(const std::string& text) {
  std::vector<int> perm;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) perm.push_back(std::stoi(item));
  }
  return perm;
}

std::string render(const AnalysisReport& report, const std::string& format) {
  return format == "markdown" ? report_to_markdown(report) : report_to_json(report);
}

int run_analysis(const std::string& input, const std::string& metric_path,
                 const std::string& ordering, const std::string& phases_mode,
                 bool conjugate_pairs, const Tolerance& tol, const std::string& format,
                 const std::string& out_path) {
  AnalysisReport report;
  try {
    const MatrixFile file = parse_matrix_file(input);
    AnalyzeOptions opts;
    opts.tol = tol;
    opts.conjugate_pairs = conjugate_pairs;
    if (!ordering.empty()) opts.ordering = parse_ordering(ordering);
    if (!metric_path.empty()) {
      opts.metric = parse_matrix_file(metric_path).H;
    } else if (file.eta.has_value()) {
      opts.metric = file.eta;
    }
    if (phases_mode == "file") {
      if (file.phases.empty()) throw ParseError("--phases file: input has no phases array");
      opts.phase_factors = file.phases;
    }
    report = analyze(file.H, opts);
  } catch (const Error& e) {
    report.error = ErrorInfo{e.error_class(), "input", e.what()};
  }

  const std::string text = render(report, format);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return static_cast<int>(ErrorClass::internal);
    }
    out << text;
  }
  return report.exit_code();
}

int run_batch(const std::vector<std::string>& inputs, const Tolerance& tol,
              const std::string& format, unsigned jobs) {
  struct Item {
    std::string path;
    std::future<AnalysisReport> future;
  };
  std::vector<Item> items;
  unsigned in_flight = 0;
  int worst = 0;
  const auto launch = [&](const std::string& path) {
    return std::async(std::launch::async, [path, tol]() {
      AnalysisReport report;
      try {
        const MatrixFile file = parse_matrix_file(path);
        AnalyzeOptions opts;
        opts.tol = tol;
        if (file.eta.has_value()) opts.metric = file.eta;
        report = analyze(file.H, opts);
      } catch (const Error& e) {
        report.error = ErrorInfo{e.error_class(), "input", e.what()};
      }
      return report;
    });
  };

  std::size_t next = 0;
  while (next < inputs.size() || !items.empty()) {
    while (next < inputs.size() && in_flight < std::max(1u, jobs)) {
      items.push_back({inputs[next], launch(inputs[next])});
      ++next;
      ++in_flight;
    }
    Item item = std::move(items.front());
    items.erase(items.begin());
    --in_flight;
    const AnalysisReport report = item.future.get();
    const std::string ext = format == "markdown" ? ".report.md" : ".report.json";
    const std::string out_path = item.path + ext;
    std::ofstream out(out_path, std::ios::binary);
    out << render(report, format);
    const int code = report.exit_code();
    std::cout << (code == 0 ? "ok   " : "FAIL ") << item.path << " -> " << out_path;
    if (code != 0) std::cout << " (exit class " << code << ")";
    std::cout << "\n";
    worst = std::max(worst, code);
  }
  return worst;
}

std::optional<Fixture> make_fixture(const std::string& name, double a, double b, double c,
                                         double x, double r, int n, std::uint64_t seed) {
  if (name == "involutory") return example_involutory_metric(r, a);
  if (name == "definite") return example_definite_metric(a, b, c, x);
  if (name == "asym") return family_asym_coupling(a, b, c);
  if (name == "detuned") return family_detuned_symmetric(a, b, c);
  if (name == "scaled") return family_scaled_coupling(a, b, c, x);
  if (name == "hermitian") {
    Fixture f;
    f.name = "hermitian(n=" + std::to_string(n) + ",seed=" + std::to_string(seed) + ")";
    f.hamiltonian = random_hermitian(n, seed);
    f.fundamental_metric = CMatrix::Identity(n, n);
    return f;
  }
  if (name == "random") {
    const RandomConstruction rc = random_real_spectrum(n, seed);
    Fixture f;
    f.name = "random(n=" + std::to_string(n) + ",seed=" + std::to_string(seed) + ")";
    f.hamiltonian = rc.H;
    f.fundamental_metric = metric_from_diagonalizer(rc.D).matrix;
    return f;
  }
  return std::nullopt;
}

int run_check(std::uint64_t seed, int count) {
  int failures = 0;
  const Tolerance tol;
  const auto report = [&failures](const std::string& name, bool ok, double worst) {
    std::cout << (ok ? "PASS " : "FAIL ") << name << " (worst residual " << worst << ")\n";
    if (!ok) ++failures;
  };

  double worst = 0.0;
  for (int k = 0; k < count; ++k) {
    const RandomConstruction rc = random_real_spectrum(2 + k % 5, seed + static_cast<std::uint64_t>(k));
    for (const Complex& e : eig(rc.H, tol).eigenvalues) {
      worst = std::max(worst, std::abs(e.imag()));
    }
  }
  report("converse: real spectrum of D Diag(real) D^-1", worst <= 1e-8, worst);

  worst = 0.0;
  for (int k = 0; k < count; ++k) {
    const RandomConstruction rc = random_real_spectrum(2 + k % 5, seed + static_cast<std::uint64_t>(k));
    const SpectralData sd = decompose(rc.H, metric_from_diagonalizer(rc.D).matrix, tol);
    const Metric eta_plus = metric_from_diagonalizer(sd.diagonalizer, tol);
    worst = std::max(worst, pseudo_hermiticity_residual(rc.H, eta_plus.matrix));
  }
  report("theorem: pseudo-Hermiticity under (D D^dag)^-1", worst <= 1e-8, worst);

  worst = 0.0;
  for (int k = 0; k < count; ++k) {
    const RandomConstruction rc =
        random_conjugate_paired(1 + k % 3, seed + 1000 + static_cast<std::uint64_t>(k));
    const Metric eta_bar = metric_conjugate_paired(rc.D, {}, tol);
    worst = std::max(worst, pseudo_hermiticity_residual(rc.H, eta_bar.matrix));
  }
  report("conjugate pairs: pseudo-Hermiticity under (D S D^dag)^-1", worst <= 1e-8, worst);

  worst = 0.0;
  for (int k = 0; k < count; ++k) {
    const RandomConstruction rc = random_real_spectrum(2 + k % 5, seed + static_cast<std::uint64_t>(k));
    const AnalysisReport rep = analyze(rc.H, {});
    if (!rep.all_pass()) {
      worst = 1.0;
      break;
    }
  }
  report("pipeline: full analysis on random real-spectrum inputs", worst == 0.0, worst);
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudoherm: pseudo-Hermiticity analyzer for complex square matrices"};
  app.require_subcommand(1);

  CommonOpts common;

  auto* analyze_cmd = app.add_subcommand("analyze", "analyze a matrix file");
  std::string input, metric_path, ordering, out_path;
  std::string phases_mode = "auto";
  bool conjugate_pairs = false;
  analyze_cmd->add_option("file", input, "matrix file (json)")->required();
  auto* abs_opt = analyze_cmd->add_option("--tol", common.tol_abs, "absolute tolerance");
  auto* rel_opt = analyze_cmd->add_option("--tol-rel", common.tol_rel, "relative tolerance");
  analyze_cmd->add_option("--metric", metric_path, "fundamental metric file (overrides eta in input)");
  analyze_cmd->add_option("--ordering", ordering, "eigenvalue ordering, e.g. 1,0");
  analyze_cmd->add_option("--phases", phases_mode, "phase convention: auto|file")
      ->check(CLI::IsMember({"auto", "file"}));
  analyze_cmd->add_flag("--conjugate-pairs", conjugate_pairs,
                        "build the conjugate-paired metric for complex-pair spectra");
  analyze_cmd->add_option("--format", common.format, "output format: json|markdown")
      ->check(CLI::IsMember({"json", "markdown"}));
  analyze_cmd->add_option("--out", out_path, "write the report to this path");

  auto* batch_cmd = app.add_subcommand("batch", "analyze several matrix files concurrently");
  std::vector<std::string> batch_inputs;
  unsigned jobs = 4;
  batch_cmd->add_option("files", batch_inputs, "matrix files")->required();
  auto* b_abs = batch_cmd->add_option("--tol", common.tol_abs, "absolute tolerance");
  auto* b_rel = batch_cmd->add_option("--tol-rel", common.tol_rel, "relative tolerance");
  batch_cmd->add_option("--jobs", jobs, "max concurrent analyses");
  batch_cmd->add_option("--format", common.format, "output format: json|markdown")
      ->check(CLI::IsMember({"json", "markdown"}));

  auto* fixture_cmd = app.add_subcommand("fixture", "export a built-in example as a matrix file");
  std::string fixture_name, fixture_out;
  double fa = 1.0, fb = 1.0, fc = 4.0, fx = 2.0, fr = 2.0;
  int fn = 4;
  std::uint64_t fseed = 42;
  fixture_cmd->add_option("name", fixture_name, "involutory|definite|asym|detuned|scaled|hermitian|random")->required();
  fixture_cmd->add_option("--a", fa, "parameter a");
  fixture_cmd->add_option("--b", fb, "parameter b");
  fixture_cmd->add_option("--c", fc, "parameter c");
  fixture_cmd->add_option("--x", fx, "parameter x");
  fixture_cmd->add_option("--r", fr, "parameter r");
  fixture_cmd->add_option("--n", fn, "dimension for generated fixtures");
  fixture_cmd->add_option("--seed", fseed, "seed for generated fixtures");
  fixture_cmd->add_option("--out", fixture_out, "output path (default: stdout)");

  auto* check_cmd = app.add_subcommand("check", "run seeded randomized theorem checks");
  std::uint64_t check_seed = 0;
  int check_count = 50;
  check_cmd->add_option("--seed", check_seed, "base seed");
  check_cmd->add_option("--count", check_count, "instances per check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 64;
  }

  try {
    if (analyze_cmd->parsed()) {
      const Tolerance tol = resolve_tolerance(common, abs_opt->count() > 0, rel_opt->count() > 0);
      return run_analysis(input, metric_path, ordering, phases_mode, conjugate_pairs, tol,
                          common.format, out_path);
    }
    if (batch_cmd->parsed()) {
      const Tolerance tol = resolve_tolerance(common, b_abs->count() > 0, b_rel->count() > 0);
      return run_batch(batch_inputs, tol, common.format, jobs);
    }
    if (fixture_cmd->parsed()) {
      const auto fixture = make_fixture(fixture_name, fa, fb, fc, fx, fr, fn, fseed);
      if (!fixture.has_value()) {
        std::cerr << "unknown fixture: " << fixture_name << "\n";
        return 64;
      }
      const std::string text = write_matrix_text(fixture_to_matrix_file(*fixture));
      if (fixture_out.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(fixture_out, std::ios::binary);
        out << text;
      }
      return 0;
    }
    if (check_cmd->parsed()) {
      return run_check(check_seed, check_count);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.error_class());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(ErrorClass::internal);
  }
  return 0;
}
