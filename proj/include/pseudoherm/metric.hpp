#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pseudoherm/core.hpp"

namespace pseudoherm {

/// Structural properties of a metric, each decided with tolerance.
/// `simple` means unimodular, | |det| - 1 | within tolerance.
struct MetricFlags {
  bool hermitian = false;
  bool involutory = false;
  bool unitary = false;
  bool real_symmetric = false;
  bool simple = false;
  bool positive_definite = false;
};

struct Metric {
  CMatrix matrix;
  MetricFlags flags;
};

MetricFlags classify_metric(const CMatrix& eta, const Tolerance& tol = {});
Metric make_metric(CMatrix eta, const Tolerance& tol = {});

/// ||eta H eta^-1 - H^dag||_F / max(1, ||H||_F). Zero (within tolerance) iff
/// H is pseudo-Hermitian under eta.
double pseudo_hermiticity_residual(const CMatrix& H, const CMatrix& eta);

/// The unique positive-definite metric (D D^dag)^-1 built from a
/// diagonalizer with eta-normalized columns. Hermitian positive definite by
/// construction whenever D is invertible.
Metric metric_from_diagonalizer(const CMatrix& D, const Tolerance& tol = {});

/// Conjugate-paired analogue (D S D^dag)^-1 with S = Diag[sigma_x, ...].
/// D columns must hold the eigenvectors with conjugate pairs adjacent;
/// `pairing`, when nonempty, permutes the columns into that layout first.
Metric metric_conjugate_paired(const CMatrix& D, const std::vector<int>& pairing = {},
                               const Tolerance& tol = {});

/// Basis of the solution space of eta*H = H^dag*eta, Frobenius-orthonormal
/// with a deterministic phase convention (first significant entry in
/// row-major order made real positive).
struct MetricFamily {
  std::vector<CMatrix> basis;
  int dimension = 0;
};

MetricFamily solve_metric_space(const CMatrix& H, const Tolerance& tol = {});

/// ||M - proj_span(M)||_F / ||M||_F against the family's span.
double projection_defect(const MetricFamily& family, const CMatrix& m);

/// True iff the fixed eta stays a metric across every sampled member of a
/// parameterized Hamiltonian family (the metric is "secular": its entries do
/// not track the Hamiltonian's parameters).
bool is_secular(const std::function<CMatrix(const std::vector<double>&)>& family_generator,
                const CMatrix& eta, const std::vector<std::vector<double>>& samples,
                const Tolerance& tol = {});

/// Hidden-symmetry operator built from two metrics of the same H:
/// F = eta_j^-1 * eta_i, which commutes with H whenever both arguments are
/// valid metrics for it.
OperatorRep hidden_symmetry_op(const CMatrix& eta_i, const CMatrix& eta_j);

/// Fundamental-metric choice for a Hamiltonian whose caller supplied none:
/// a Hermitian involutory element of the family's real span when one exists,
/// otherwise any well-conditioned Hermitian invertible element.
struct FundamentalChoice {
  Metric metric;
  std::string method;  // "involutory-search" or "hermitian-fallback"
};

std::optional<FundamentalChoice> select_fundamental_metric(const MetricFamily& family,
                                                           const Tolerance& tol = {});

}  // namespace pseudoherm
