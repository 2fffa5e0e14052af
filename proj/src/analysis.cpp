#include "pseudoherm/analysis.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace pseudoherm {

namespace {

void add_verdict(AnalysisReport& rep, const std::string& name, double residual, double threshold,
                 ErrorClass fail_class, bool pass_when_below = true) {
  Verdict v;
  v.name = name;
  v.residual = residual;
  v.threshold = threshold;
  v.pass = pass_when_below ? residual <= threshold : residual > threshold;
  v.fail_class = fail_class;
  rep.verdicts.push_back(v);
  rep.residuals[name] = residual;
}

}  // namespace

bool AnalysisReport::all_pass() const {
  return !error.has_value() &&
         std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

int AnalysisReport::exit_code() const {
  if (error.has_value()) return static_cast<int>(error->cls);
  for (const Verdict& v : verdicts) {
    if (!v.pass) return static_cast<int>(v.fail_class);
  }
  return 0;
}

AnalysisReport analyze(const CMatrix& H, const AnalyzeOptions& options) {
  AnalysisReport rep;
  rep.hamiltonian = H;
  rep.tol = options.tol;
  rep.conjugate_pairs_requested = options.conjugate_pairs;
  rep.eta_supplied = options.metric.has_value();
  rep.eta_input = options.metric;
  const Tolerance& tol = options.tol;

  std::string stage = "input";
  try {
    require_square(H, "H");
    require_finite(H, "H");

    stage = "spectral";
    const EigResult er = eig(H, tol);
    rep.eigenvalues = er.eigenvalues;
    const SpectrumClassification cls = classify_spectrum(er.eigenvalues, tol);
    rep.spectrum_class = cls.cls;

    stage = "metric";
    rep.family = solve_metric_space(H, tol);
    for (const CMatrix& b : rep.family->basis) rep.family_flags.push_back(classify_metric(b, tol));

    stage = "spectral";
    if (cls.cls == SpectrumClass::Mixed) {
      throw MixedSpectrum("mixed spectrum: only all-real and conjugate-paired inputs are supported");
    }
    if (cls.cls == SpectrumClass::ConjugatePaired) {
      if (!options.conjugate_pairs) {
        throw MixedSpectrum("conjugate-paired spectrum: rerun with --conjugate-pairs");
      }
      stage = "metric";
      std::vector<CVector> cols;
      for (int p : cls.pairing) cols.push_back(er.vectors[static_cast<std::size_t>(p)]);
      const CMatrix D = build_diagonalizer(cols);
      rep.diagonalizer_condition = condition_number(D);
      rep.conjugate_metric = metric_conjugate_paired(D, {}, tol);
      const double resid = pseudo_hermiticity_residual(H, rep.conjugate_metric->matrix);
      add_verdict(rep, "conjugate_metric_pseudo_hermitian", resid, tol.bound(1.0),
                  ErrorClass::metric);
      return rep;
    }

    // All-real path. Fix the fundamental metric first; everything downstream
    // hangs off it.
    Metric eta;
    if (options.metric.has_value()) {
      require_square(*options.metric, "eta");
      require_finite(*options.metric, "eta");
      require_same_dim(H, *options.metric, "analyze");
      eta = make_metric(*options.metric, tol);
      rep.metric_selection = "supplied";
    } else {
      const auto choice = select_fundamental_metric(*rep.family, tol);
      if (!choice.has_value()) {
        throw SingularMetric("no usable Hermitian fundamental metric in the solved family");
      }
      eta = choice->metric;
      rep.metric_selection = choice->method;
    }
    rep.fundamental = eta;
    add_verdict(rep, "fundamental_pseudo_hermitian",
                pseudo_hermiticity_residual(H, eta.matrix), tol.bound(1.0), ErrorClass::metric);

    stage = "spectral";
    PhaseConvention phases = options.phase_factors.empty()
                                 ? PhaseConvention::auto_phase()
                                 : PhaseConvention::explicit_factors(options.phase_factors);
    const SpectralData sd = decompose(H, eta.matrix, tol, phases, options.ordering);
    rep.ordering = sd.ordering;
    rep.diagonalizer_condition = sd.condition_number;
    rep.eta_signs = sd.signs;

    stage = "metric";
    const Metric eta_plus = metric_from_diagonalizer(sd.diagonalizer, tol);
    rep.eta_plus = eta_plus;
    add_verdict(rep, "eta_plus_pseudo_hermitian",
                pseudo_hermiticity_residual(H, eta_plus.matrix), tol.bound(1.0),
                ErrorClass::metric);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(eta_plus.matrix);
    add_verdict(rep, "eta_plus_positive_definite", es.eigenvalues().minCoeff(),
                tol.abs, ErrorClass::metric, /*pass_when_below=*/false);

    stage = "suite";
    const BiorthoSystem bio = build_biortho(sd.vectors, eta.matrix, eta_plus.matrix, tol);
    const SymmetrySuite suite = build_suite(H, bio, eta, eta_plus, tol);
    rep.suite = suite;
    SuiteReport sr;
    sr.residuals = suite.residuals;
    sr.valid = true;
    rep.suite_report = sr;
    rep.p2t2 = p2_t2_condition(bio, tol);

    double suite_worst = 0.0;
    for (const char* key : {"involution.C", "involution.PT", "involution.CPT", "commutation.C",
                            "commutation.PT", "commutation.CPT", "action.P", "action.T",
                            "action.PT", "action.C", "action.CPT", "completeness", "gram"}) {
      suite_worst = std::max(suite_worst, suite.residuals.at(key));
    }
    const double suite_scale = std::max(1.0, H.norm()) *
                               std::max({1.0, suite.C.matrix.norm(), suite.T.matrix.norm()});
    add_verdict(rep, "suite_must_pass_residuals", suite_worst, tol.bound(suite_scale),
                ErrorClass::suite);

    stage = "products";
    rep.grams = gram_report(bio, eta.matrix, eta_plus.matrix, suite, tol);
    double worst_imag = 0.0;
    for (const auto& [name, g] : rep.grams->x_grams) worst_imag = std::max(worst_imag, g.max_imag);
    add_verdict(rep, "x_inner_real_definite", worst_imag, tol.bound(1.0), ErrorClass::suite);
  } catch (const Error& e) {
    rep.error = ErrorInfo{e.error_class(), stage, e.what()};
  }
  return rep;
}

}  // namespace pseudoherm
