#include <doctest.h>

#include "pseudoherm/symmetry.hpp"
#include "test_helpers.hpp"
#include "test_pipeline.hpp"

using namespace pseudoherm;
using namespace test_helpers;

TEST_CASE("involutory example suite reproduces the pinned reference operators") {
  const Pipeline p = run_pipeline(example_involutory_metric(2.0));
  const InvolutoryCase i1;

  CHECK_FALSE(p.suite.P.antilinear);
  CHECK(p.suite.T.antilinear);
  CHECK_FALSE(p.suite.C.antilinear);
  CHECK(p.suite.PT.antilinear);
  CHECK(p.suite.CPT.antilinear);

  CHECK(dist(p.suite.P.matrix, i1.P) < 1e-10);
  CHECK(dist(p.suite.T.matrix, i1.T) < 1e-10);
  CHECK(dist(p.suite.C.matrix, i1.C) < 1e-10);
  CHECK(dist(p.suite.PT.matrix, i1.PT) < 1e-10);
  CHECK(dist(p.suite.CPT.matrix, i1.CPT) < 1e-10);
  CHECK(dist(p.eta_plus.matrix, i1.eta_plus) < 1e-10);

  // P lands back on the chosen fundamental metric.
  CHECK(dist(p.suite.P.matrix, i1.eta1) < 1e-10);
}

TEST_CASE("involutory example relations: (CP)^-1 = PC = eta_plus, P and T commute, T^2 = P^2 = 1") {
  const Pipeline p = run_pipeline(example_involutory_metric(2.0));
  const CMatrix PC = p.suite.P.matrix * p.suite.C.matrix;
  const CMatrix CP = p.suite.C.matrix * p.suite.P.matrix;
  CHECK(dist(PC, p.eta_plus.matrix) < 1e-10);
  CHECK(dist(CP.inverse(), p.eta_plus.matrix) < 1e-10);

  const OperatorRep pt = compose(p.suite.P, p.suite.T);
  const OperatorRep tp = compose(p.suite.T, p.suite.P);
  CHECK(dist(pt.matrix, tp.matrix) < 1e-10);

  CHECK(is_involutory(p.suite.P));
  CHECK(is_involutory(p.suite.T));
}

TEST_CASE("definite example suite reproduces the theta-form operators") {
  const Pipeline p = run_pipeline(example_definite_metric(3.0, 1.0, 1.0, 2.0));
  const DefiniteCase i2;

  CHECK(dist(p.suite.P.matrix, i2.P) < 1e-10);
  CHECK(dist(p.suite.T.matrix, i2.T) < 1e-10);
  CHECK(dist(p.suite.C.matrix, i2.C) < 1e-10);
  CHECK(dist(p.eta_plus.matrix, i2.eta) < 1e-10);  // eta is returned as eta_plus

  // P no longer coincides with the fundamental metric here.
  CHECK(dist(p.suite.P.matrix, i2.eta) > 0.1);
}

TEST_CASE("definite example relations: PC != (CP)^-1 = eta_plus, C and P do not commute") {
  const Pipeline p = run_pipeline(example_definite_metric(3.0, 1.0, 1.0, 2.0));
  const CMatrix PC = p.suite.P.matrix * p.suite.C.matrix;
  const CMatrix CP = p.suite.C.matrix * p.suite.P.matrix;
  CHECK(dist(CP.inverse(), p.eta_plus.matrix) < 1e-10);
  CHECK(dist(PC, CP.inverse()) > 0.1);
  CHECK(dist(PC, CP) > 0.1);

  const OperatorRep pt = compose(p.suite.P, p.suite.T);
  const OperatorRep tp = compose(p.suite.T, p.suite.P);
  CHECK(dist(pt.matrix, tp.matrix) < 1e-10);  // P and T still commute

  CHECK_FALSE(is_involutory(p.suite.P));
  CHECK_FALSE(is_involutory(p.suite.T));
}

TEST_CASE("Hermitian limit reuses the same construction") {
  // Descending eigenvalue order puts e0 first for diag(2, 1).
  const CMatrix H = m22(2.0, 0.0, 0.0, 1.0);
  const Pipeline p = run_pipeline(H, CMatrix::Identity(2, 2));
  CHECK(dist(p.suite.P.matrix, m22(1.0, 0.0, 0.0, -1.0)) < 1e-12);
  CHECK(dist(p.suite.C.matrix, p.suite.P.matrix) < 1e-12);
  CHECK(is_identity(p.suite.T.matrix));
  CHECK(p.suite.T.antilinear);
  CHECK(is_involutory(p.suite.P));
  CHECK(is_involutory(p.suite.T));
}

TEST_CASE("verify_suite: involutory example must-pass residuals and the P commutator") {
  const Fixture f = example_involutory_metric(2.0);
  const Pipeline p = run_pipeline(f);
  const SuiteReport report = verify_suite(f.hamiltonian, p.suite, p.bio);
  CHECK(report.valid);
  for (const char* key : {"involution.C", "involution.PT", "involution.CPT", "commutation.C",
                          "commutation.PT", "commutation.CPT", "action.P", "action.T",
                          "action.PT", "action.C", "action.CPT"}) {
    CAPTURE(key);
    CHECK(report.residuals.at(key) < 1e-10);
  }
  CHECK(report.residuals.at("commutation.P") == doctest::Approx(std::sqrt(18.0)));
  CHECK(report.residuals.at("commutation.T") > 0.1);
}

TEST_CASE("verify_suite flags a corrupted suite") {
  const Pipeline p = run_pipeline(example_involutory_metric(2.0));
  SymmetrySuite bad = p.suite;
  bad.C.matrix *= 2.0;
  const CMatrix H = example_involutory_metric(2.0).hamiltonian;
  CHECK_THROWS_AS(verify_suite(H, bad, p.bio), SuiteInvalid);
  const SuiteReport report = verify_suite(H, bad, p.bio, {}, /*enforce=*/false);
  CHECK_FALSE(report.valid);
  CHECK_FALSE(report.failures.empty());
}

TEST_CASE("build_charge rejects an incomplete system") {
  const Pipeline p = run_pipeline(example_involutory_metric(2.0));
  BiorthoSystem bad = p.bio;
  bad.upsilon[0] *= 2.0;
  CHECK_THROWS_AS(build_charge(bad), CompletenessViolation);
}

TEST_CASE("p2_t2_condition on the three reference systems") {
  const P2T2 i1 = p2_t2_condition(run_pipeline(example_involutory_metric(2.0)).bio);
  CHECK(i1.condition_holds);
  CHECK(i1.t2_equals_p2);

  const P2T2 i2 = p2_t2_condition(run_pipeline(example_definite_metric(3.0, 1.0, 1.0, 2.0)).bio);
  CHECK_FALSE(i2.condition_holds);
  CHECK_FALSE(i2.t2_equals_p2);

  const P2T2 herm = p2_t2_condition(run_pipeline(example_definite_metric(3.0, 1.0, 1.0, 1.0)).bio);
  CHECK(herm.condition_holds);
  CHECK(herm.t2_equals_p2);
}

TEST_CASE("p2_t2 biconditional holds on random suites") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    const RandomConstruction rc = random_real_spectrum(n, seed + 900);
    const Pipeline p = run_pipeline(rc.H, metric_from_diagonalizer(rc.D).matrix);
    const P2T2 result = p2_t2_condition(p.bio);
    CAPTURE(seed);
    CHECK(result.condition_holds == result.t2_equals_p2);
  }
}

TEST_CASE("composition consistency and action laws on random suites") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    const RandomConstruction rc = random_real_spectrum(n, seed + 1700);
    const Pipeline p = run_pipeline(rc.H, metric_from_diagonalizer(rc.D).matrix);

    const OperatorRep pt = compose(p.suite.P, p.suite.T);
    CHECK(dist(pt.matrix, p.suite.PT.matrix) < 1e-9);
    CHECK(pt.antilinear == p.suite.PT.antilinear);
    const OperatorRep cpt = compose(p.suite.C, p.suite.PT);
    CHECK(dist(cpt.matrix, p.suite.CPT.matrix) < 1e-9);

    for (std::size_t k = 0; k < p.bio.psi.size(); ++k) {
      const double s = k % 2 == 0 ? 1.0 : -1.0;
      CHECK(dist(pseudoherm::apply(p.suite.P, p.bio.upsilon[k]), CVector(s * p.bio.psi[k])) < 1e-9);
      CHECK(dist(pseudoherm::apply(p.suite.T, p.bio.psi[k]), p.bio.upsilon[k]) < 1e-9);
      CHECK(dist(pseudoherm::apply(p.suite.PT, p.bio.psi[k]), CVector(s * p.bio.psi[k])) < 1e-9);
      CHECK(dist(pseudoherm::apply(p.suite.C, p.bio.psi[k]), CVector(s * p.bio.psi[k])) < 1e-9);
      CHECK(dist(pseudoherm::apply(p.suite.CPT, p.bio.psi[k]), p.bio.psi[k]) < 1e-9);
    }
  }
}

TEST_CASE("phase robustness: P, C, eta_plus are phase-invariant; T is not") {
  const Fixture f = example_involutory_metric(2.0);
  const Pipeline base = run_pipeline(f);

  std::vector<CVector> rotated = base.bio.psi;
  const Complex phase0 = std::polar(1.0, 0.7);
  const Complex phase1 = std::polar(1.0, -1.3);
  rotated[0] *= phase0;
  rotated[1] *= phase1;

  const CMatrix D = build_diagonalizer(rotated);
  const Metric eta_plus = metric_from_diagonalizer(D);
  CHECK(dist(eta_plus.matrix, base.eta_plus.matrix) < 1e-12);

  const BiorthoSystem bio = build_biortho(rotated, f.fundamental_metric, eta_plus.matrix);
  const SymmetrySuite suite = build_suite(f.hamiltonian, bio, base.eta, eta_plus);

  CHECK(dist(suite.P.matrix, base.suite.P.matrix) < 1e-12);
  CHECK(dist(suite.C.matrix, base.suite.C.matrix) < 1e-12);
  CHECK(dist(suite.T.matrix, base.suite.T.matrix) > 0.1);

  // Action laws and every must-pass residual survive the rotation. The
  // reported T figures do not: T itself changes by e^{2i phi_n} per term, so
  // its nonzero involution/commutation residuals move with the phases.
  for (const auto& [name, value] : base.suite.residuals) {
    if (name == "involution.T" || name == "commutation.T") continue;
    CAPTURE(name);
    CHECK(std::abs(suite.residuals.at(name) - value) < 1e-9);
  }
  CHECK(suite.residuals.at("action.T") < 1e-10);
}
