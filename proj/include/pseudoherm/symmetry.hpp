#pragma once

#include <map>
#include <string>
#include <vector>

#include "pseudoherm/metric.hpp"
#include "pseudoherm/spectral.hpp"

namespace pseudoherm {

/// Generalized parity P = sum_n (-1)^n psi_n psi_n^dag, acting as
/// P upsilon_n = (-1)^n psi_n. Linear.
OperatorRep build_parity(const BiorthoSystem& bio);

/// Time reversal T = (sum_n upsilon_n upsilon_n^T) K0, acting as
/// T psi_n = upsilon_n. Antilinear; note the transpose, not the adjoint.
OperatorRep build_time_reversal(const BiorthoSystem& bio);

/// PT = (sum_n (-1)^n psi_n upsilon_n^T) K0, acting as PT psi_n = (-1)^n psi_n.
OperatorRep build_pt(const BiorthoSystem& bio);

/// Charge conjugation C = sum_n (-1)^n psi_n upsilon_n^dag, acting as
/// C psi_n = (-1)^n psi_n. Requires completeness sum_n psi_n upsilon_n^dag = 1.
OperatorRep build_charge(const BiorthoSystem& bio, const Tolerance& tol = {});

/// CPT = (sum_n psi_n upsilon_n^T) K0, acting as CPT psi_n = psi_n.
OperatorRep build_cpt(const BiorthoSystem& bio);

struct SymmetrySuite {
  OperatorRep P;    // linear
  OperatorRep T;    // antilinear
  OperatorRep C;    // linear
  OperatorRep PT;   // antilinear
  OperatorRep CPT;  // antilinear
  Metric eta;
  Metric eta_plus;
  std::map<std::string, double> residuals;
};

/// Residual report for a suite. Must-pass entries are the involutions and
/// commutations of C, PT, CPT plus all action laws and the completeness and
/// Gram identities; P and T figures are reported but allowed to be nonzero.
struct SuiteReport {
  std::map<std::string, double> residuals;
  std::vector<std::string> failures;
  bool valid = false;
};

SuiteReport verify_suite(const CMatrix& H, const SymmetrySuite& suite, const BiorthoSystem& bio,
                         const Tolerance& tol = {}, bool enforce = true);

/// Construct all five operators from a verified biorthonormal system and
/// attach the residual report; throws SuiteInvalid when a must-pass residual
/// is out of tolerance.
SymmetrySuite build_suite(const CMatrix& H, const BiorthoSystem& bio, const Metric& eta,
                          const Metric& eta_plus, const Tolerance& tol = {});

/// T^2 = P^2 holds iff (-1)^(m+n) psi_m^dag psi_n = upsilon_m^dag upsilon_n
/// for all m, n; both sides are evaluated independently.
struct P2T2 {
  bool condition_holds = false;
  bool t2_equals_p2 = false;
  double condition_residual = 0.0;
  double t2_p2_residual = 0.0;
};

P2T2 p2_t2_condition(const BiorthoSystem& bio, const Tolerance& tol = {});

}  // namespace pseudoherm
