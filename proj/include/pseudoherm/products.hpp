#pragma once

#include <map>
#include <string>
#include <vector>

#include "pseudoherm/symmetry.hpp"

namespace pseudoherm {

/// eta-inner product <psi_m | eta psi_n> = psi_m^dag eta psi_n; equals
/// eps_n delta_mn on an eta-normalized system.
Complex eta_inner(const CVector& psi_m, const CVector& psi_n, const CMatrix& eta);

/// X-inner product (X psi_m)^dag eta_plus psi_n. Real-definite whenever X is
/// a symmetry of H.
Complex x_inner(const OperatorRep& X, const CVector& psi_m, const CVector& psi_n,
                const CMatrix& eta_plus);

/// Checked form: verifies symmetry_residual(H, X) first and throws
/// NotASymmetry when X does not commute with H.
Complex x_inner(const CMatrix& H, const OperatorRep& X, const CVector& psi_m,
                const CVector& psi_n, const CMatrix& eta_plus, const Tolerance& tol);

Complex x_norm(const OperatorRep& X, const CVector& psi_n, const CMatrix& eta_plus);
Complex x_norm(const CMatrix& H, const OperatorRep& X, const CVector& psi_n,
               const CMatrix& eta_plus, const Tolerance& tol);

/// Rival product (X psi_m)^T psi_n: transpose, no conjugation, no metric.
/// Not real-definite in general.
Complex rival_inner_transpose(const OperatorRep& X, const CVector& psi_m, const CVector& psi_n);

/// Rival product (X upsilon_m)^T psi_n over the biorthonormal pair; shares
/// the same shortcoming.
Complex rival_inner_biortho(const OperatorRep& X, const CVector& upsilon_m, const CVector& psi_n);

struct InnerProductReport {
  CMatrix values;
  bool real_definite = false;
  std::vector<std::string> diagonal_signs;  // "+1", "-1", or "non-unit"
  double max_imag = 0.0;
};

InnerProductReport make_inner_product_report(const CMatrix& values, const Tolerance& tol = {});

/// Full Gram matrices over the system: eta-inner, eta_plus-inner, X-inner
/// for each suite symmetry, and both rival products (with X = identity).
struct GramReportSet {
  InnerProductReport eta_gram;
  InnerProductReport eta_plus_gram;
  std::map<std::string, InnerProductReport> x_grams;  // keys C, PT, CPT
  InnerProductReport rival_transpose;
  InnerProductReport rival_biortho;
};

GramReportSet gram_report(const BiorthoSystem& bio, const CMatrix& eta, const CMatrix& eta_plus,
                          const SymmetrySuite& suite, const Tolerance& tol = {});

}  // namespace pseudoherm
