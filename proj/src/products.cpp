#include "pseudoherm/products.hpp"

#include <cmath>

namespace pseudoherm {

namespace {

void check_symmetry(const CMatrix& H, const OperatorRep& X, const Tolerance& tol) {
  const double resid = symmetry_residual(H, X);
  const double scale = std::max(1.0, H.norm()) * std::max(1.0, X.matrix.norm());
  if (!tol.ok(resid, scale)) {
    throw NotASymmetry("operator does not commute with H, residual " + std::to_string(resid));
  }
}

}  // namespace

Complex eta_inner(const CVector& psi_m, const CVector& psi_n, const CMatrix& eta) {
  require_square(eta, "eta");
  if (psi_m.size() != eta.rows() || psi_n.size() != eta.rows()) {
    throw DimensionMismatch("eta_inner: vector dims vs metric dim");
  }
  return (psi_m.adjoint() * eta * psi_n)(0);
}

Complex x_inner(const OperatorRep& X, const CVector& psi_m, const CVector& psi_n,
                const CMatrix& eta_plus) {
  require_square(eta_plus, "eta_plus");
  const CVector xm = apply(X, psi_m);
  if (psi_n.size() != eta_plus.rows()) {
    throw DimensionMismatch("x_inner: vector dim vs metric dim");
  }
  return (xm.adjoint() * eta_plus * psi_n)(0);
}

Complex x_inner(const CMatrix& H, const OperatorRep& X, const CVector& psi_m,
                const CVector& psi_n, const CMatrix& eta_plus, const Tolerance& tol) {
  check_symmetry(H, X, tol);
  return x_inner(X, psi_m, psi_n, eta_plus);
}

Complex x_norm(const OperatorRep& X, const CVector& psi_n, const CMatrix& eta_plus) {
  return x_inner(X, psi_n, psi_n, eta_plus);
}

Complex x_norm(const CMatrix& H, const OperatorRep& X, const CVector& psi_n,
               const CMatrix& eta_plus, const Tolerance& tol) {
  check_symmetry(H, X, tol);
  return x_norm(X, psi_n, eta_plus);
}

Complex rival_inner_transpose(const OperatorRep& X, const CVector& psi_m, const CVector& psi_n) {
  const CVector xm = apply(X, psi_m);
  if (xm.size() != psi_n.size()) throw DimensionMismatch("rival_inner_transpose: vector dims");
  return (xm.transpose() * psi_n)(0);
}

Complex rival_inner_biortho(const OperatorRep& X, const CVector& upsilon_m, const CVector& psi_n) {
  const CVector xm = apply(X, upsilon_m);
  if (xm.size() != psi_n.size()) throw DimensionMismatch("rival_inner_biortho: vector dims");
  return (xm.transpose() * psi_n)(0);
}

InnerProductReport make_inner_product_report(const CMatrix& values, const Tolerance& tol) {
  InnerProductReport report;
  report.values = values;
  double max_imag = 0.0, max_abs = 0.0;
  for (Index i = 0; i < values.rows(); ++i) {
    for (Index j = 0; j < values.cols(); ++j) {
      max_imag = std::max(max_imag, std::abs(values(i, j).imag()));
      max_abs = std::max(max_abs, std::abs(values(i, j)));
    }
  }
  report.max_imag = max_imag;
  report.real_definite = tol.ok(max_imag, std::max(1.0, max_abs));
  for (Index k = 0; k < std::min(values.rows(), values.cols()); ++k) {
    const Complex d = values(k, k);
    if (std::abs(d - Complex(1.0, 0.0)) <= tol.bound(1.0)) {
      report.diagonal_signs.push_back("+1");
    } else if (std::abs(d + Complex(1.0, 0.0)) <= tol.bound(1.0)) {
      report.diagonal_signs.push_back("-1");
    } else {
      report.diagonal_signs.push_back("non-unit");
    }
  }
  return report;
}

GramReportSet gram_report(const BiorthoSystem& bio, const CMatrix& eta, const CMatrix& eta_plus,
                          const SymmetrySuite& suite, const Tolerance& tol) {
  const Index n = static_cast<Index>(bio.psi.size());
  GramReportSet set;

  CMatrix g_eta(n, n), g_plus(n, n), g_rt(n, n), g_rb(n, n);
  const OperatorRep id = identity_op(bio.psi.front().size());
  for (Index m = 0; m < n; ++m) {
    for (Index k = 0; k < n; ++k) {
      const auto& pm = bio.psi[static_cast<std::size_t>(m)];
      const auto& pk = bio.psi[static_cast<std::size_t>(k)];
      g_eta(m, k) = eta_inner(pm, pk, eta);
      g_plus(m, k) = eta_inner(pm, pk, eta_plus);
      g_rt(m, k) = rival_inner_transpose(id, pm, pk);
      g_rb(m, k) = rival_inner_biortho(id, bio.upsilon[static_cast<std::size_t>(m)], pk);
    }
  }
  set.eta_gram = make_inner_product_report(g_eta, tol);
  set.eta_plus_gram = make_inner_product_report(g_plus, tol);
  set.rival_transpose = make_inner_product_report(g_rt, tol);
  set.rival_biortho = make_inner_product_report(g_rb, tol);

  const std::pair<const char*, const OperatorRep*> symmetries[] = {
      {"C", &suite.C}, {"PT", &suite.PT}, {"CPT", &suite.CPT}};
  for (const auto& [name, op] : symmetries) {
    CMatrix g(n, n);
    for (Index m = 0; m < n; ++m) {
      for (Index k = 0; k < n; ++k) {
        g(m, k) = x_inner(*op, bio.psi[static_cast<std::size_t>(m)],
                          bio.psi[static_cast<std::size_t>(k)], eta_plus);
      }
    }
    set.x_grams.emplace(name, make_inner_product_report(g, tol));
  }
  return set;
}

}  // namespace pseudoherm
