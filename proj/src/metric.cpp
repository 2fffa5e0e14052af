#include "pseudoherm/metric.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "pseudoherm/spectral.hpp"

namespace pseudoherm {

namespace {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CMatrix inverse_checked(const CMatrix& m, const char* what) {
  Eigen::FullPivLU<CMatrix> lu(m);
  if (!lu.isInvertible()) {
    throw SingularMetric(std::string(what) + " is not invertible");
  }
  return lu.inverse();
}

// Deterministic sign/phase: rotate so the first significant row-major entry
// becomes real positive.
void canonicalize_phase(CMatrix& m) {
  const double thresh = 1e-12 * std::max(1.0, m.norm());
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (std::abs(m(i, j)) > thresh) {
        m *= std::conj(m(i, j)) / std::abs(m(i, j));
        return;
      }
    }
  }
}

// Sign convention for Hermitian candidates (phase freedom is only +-1):
// first significant row-major entry gets a positive real part, or a negative
// imaginary part when its real part vanishes.
void canonicalize_sign(CMatrix& m) {
  const double thresh = 1e-10 * std::max(1.0, m.norm());
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      const Complex e = m(i, j);
      if (std::abs(e) <= thresh) continue;
      if (std::abs(e.real()) > thresh) {
        if (e.real() < 0.0) m = -m;
      } else if (e.imag() > 0.0) {
        m = -m;
      }
      return;
    }
  }
}

double frob_inner_real(const CMatrix& a, const CMatrix& b) {
  return (a.adjoint() * b).trace().real();
}

// Gauss-Newton for ||M(t)^2 - I||_F^2 over real coefficients of a Hermitian
// basis. Returns the final objective value.
double involutory_descent(const std::vector<CMatrix>& basis, Eigen::VectorXd& t, int max_iter) {
  const Index n = basis.front().rows();
  const Index m = static_cast<Index>(basis.size());
  const Index nn = n * n;
  auto assemble = [&](const Eigen::VectorXd& c) {
    CMatrix sum = CMatrix::Zero(n, n);
    for (Index j = 0; j < m; ++j) sum += c(j) * basis[static_cast<std::size_t>(j)];
    return sum;
  };
  auto vec_real = [&](const CMatrix& a, Eigen::VectorXd& out, Index offset) {
    for (Index i = 0; i < nn; ++i) {
      out(offset + 2 * i) = a(i / n, i % n).real();
      out(offset + 2 * i + 1) = a(i / n, i % n).imag();
    }
  };

  double f = 0.0;
  for (int iter = 0; iter < max_iter; ++iter) {
    const CMatrix M = assemble(t);
    const CMatrix R = M * M - CMatrix::Identity(n, n);
    f = R.squaredNorm();
    if (f <= 1e-28 * static_cast<double>(n)) break;

    Eigen::VectorXd r(2 * nn);
    vec_real(R, r, 0);
    Eigen::MatrixXd J(2 * nn, m);
    for (Index j = 0; j < m; ++j) {
      const CMatrix dj = basis[static_cast<std::size_t>(j)] * M + M * basis[static_cast<std::size_t>(j)];
      Eigen::VectorXd col(2 * nn);
      vec_real(dj, col, 0);
      J.col(j) = col;
    }
    const Eigen::VectorXd step = J.colPivHouseholderQr().solve(r);
    if (!step.allFinite()) break;

    // Backtracking keeps the iteration from overshooting shallow basins.
    double alpha = 1.0;
    bool moved = false;
    for (int ls = 0; ls < 20; ++ls) {
      const Eigen::VectorXd cand = t - alpha * step;
      const CMatrix Mc = assemble(cand);
      const double fc = (Mc * Mc - CMatrix::Identity(n, n)).squaredNorm();
      if (fc < f) {
        t = cand;
        f = fc;
        moved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!moved) break;
  }
  const CMatrix M = assemble(t);
  return (M * M - CMatrix::Identity(n, n)).norm();
}

}  // namespace

MetricFlags classify_metric(const CMatrix& eta, const Tolerance& tol) {
  require_square(eta, "eta");
  require_finite(eta, "eta");
  const Index n = eta.rows();
  const double scale = std::max(1.0, eta.norm());
  MetricFlags f;
  f.hermitian = tol.ok((eta - eta.adjoint()).norm(), scale);
  f.involutory = matrices_close(eta * eta, CMatrix::Identity(n, n), tol);
  f.unitary = matrices_close(eta.adjoint() * eta, CMatrix::Identity(n, n), tol);
  f.real_symmetric = tol.ok(eta.imag().norm(), scale) && tol.ok((eta - eta.transpose()).norm(), scale);
  f.simple = tol.ok(std::abs(std::abs(eta.determinant()) - 1.0), std::pow(scale, n));
  if (f.hermitian) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (eta + eta.adjoint()));
    f.positive_definite = es.eigenvalues().minCoeff() > tol.abs * scale;
  }
  return f;
}

Metric make_metric(CMatrix eta, const Tolerance& tol) {
  MetricFlags flags = classify_metric(eta, tol);
  return {std::move(eta), flags};
}

double pseudo_hermiticity_residual(const CMatrix& H, const CMatrix& eta) {
  require_square(H, "H");
  require_same_dim(H, eta, "pseudo_hermiticity_residual");
  require_finite(H, "H");
  require_finite(eta, "eta");
  const CMatrix inv = inverse_checked(eta, "metric");
  return (eta * H * inv - H.adjoint()).norm() / std::max(1.0, H.norm());
}

Metric metric_from_diagonalizer(const CMatrix& D, const Tolerance& tol) {
  require_square(D, "D");
  require_finite(D, "D");
  if (condition_number(D) > 1e12) throw SingularD("diagonalizer is numerically singular");
  const CMatrix Dinv = D.fullPivLu().inverse();
  // (D D^dag)^-1 = (D^-1)^dag D^-1: exactly Hermitian and positive definite.
  CMatrix eta_plus = Dinv.adjoint() * Dinv;
  eta_plus = 0.5 * (eta_plus + eta_plus.adjoint());
  return make_metric(std::move(eta_plus), tol);
}

Metric metric_conjugate_paired(const CMatrix& D, const std::vector<int>& pairing,
                               const Tolerance& tol) {
  require_square(D, "D");
  require_finite(D, "D");
  const Index n = D.rows();
  if (n % 2 != 0) throw OddDimension("conjugate-paired metric needs even dimension");
  CMatrix Dp = D;
  if (!pairing.empty()) {
    if (static_cast<Index>(pairing.size()) != n) {
      throw DimensionMismatch("metric_conjugate_paired: pairing length vs dimension");
    }
    for (Index k = 0; k < n; ++k) Dp.col(k) = D.col(pairing[static_cast<std::size_t>(k)]);
  }
  if (condition_number(Dp) > 1e12) throw SingularD("diagonalizer is numerically singular");

  CMatrix S = CMatrix::Zero(n, n);
  for (Index k = 0; k < n; k += 2) {
    S(k, k + 1) = 1.0;
    S(k + 1, k) = 1.0;
  }
  const CMatrix Dinv = Dp.fullPivLu().inverse();
  CMatrix eta_bar = Dinv.adjoint() * S * Dinv;  // (D S D^dag)^-1 with S^-1 = S
  eta_bar = 0.5 * (eta_bar + eta_bar.adjoint());
  return make_metric(std::move(eta_bar), tol);
}

MetricFamily solve_metric_space(const CMatrix& H, const Tolerance& tol) {
  (void)tol;
  require_square(H, "H");
  require_finite(H, "H");
  const Index n = H.rows();
  if (n > 16) throw Error(ErrorClass::internal, "dimension exceeds supported envelope (n <= 16)");

  // Column-major vectorization: vec(eta*H - H^dag*eta) = K vec(eta) with
  // K = H^T (x) I - I (x) H^dag.
  const CMatrix eye = CMatrix::Identity(n, n);
  const CMatrix K = kron(H.transpose(), eye) - kron(eye, H.adjoint());

  Eigen::JacobiSVD<CMatrix> svd(K, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = 1e-8 * (sv.size() > 0 ? sv(0) : 0.0);

  MetricFamily family;
  for (Index k = sv.size() - 1; k >= 0; --k) {
    if (sv(k) > cutoff) break;
    CMatrix basis_elem = Eigen::Map<const CMatrix>(svd.matrixV().col(k).data(), n, n);
    canonicalize_phase(basis_elem);
    family.basis.push_back(std::move(basis_elem));
  }
  std::reverse(family.basis.begin(), family.basis.end());
  family.dimension = static_cast<int>(family.basis.size());
  return family;
}

double projection_defect(const MetricFamily& family, const CMatrix& m) {
  require_finite(m, "matrix");
  const double norm = m.norm();
  if (norm == 0.0) return 0.0;
  CMatrix proj = CMatrix::Zero(m.rows(), m.cols());
  for (const CMatrix& b : family.basis) {
    require_same_dim(b, m, "projection_defect");
    proj += (b.adjoint() * m).trace() * b;
  }
  return (m - proj).norm() / norm;
}

bool is_secular(const std::function<CMatrix(const std::vector<double>&)>& family_generator,
                const CMatrix& eta, const std::vector<std::vector<double>>& samples,
                const Tolerance& tol) {
  for (const auto& params : samples) {
    const CMatrix H = family_generator(params);
    if (!tol.ok(pseudo_hermiticity_residual(H, eta))) return false;
  }
  return true;
}

OperatorRep hidden_symmetry_op(const CMatrix& eta_i, const CMatrix& eta_j) {
  require_square(eta_i, "eta_i");
  require_same_dim(eta_i, eta_j, "hidden_symmetry_op");
  Eigen::FullPivLU<CMatrix> lu(eta_j);
  if (!lu.isInvertible()) throw SingularMetric("eta_j is not invertible");
  return {lu.solve(eta_i), false};
}

std::optional<FundamentalChoice> select_fundamental_metric(const MetricFamily& family,
                                                           const Tolerance& tol) {
  if (family.dimension == 0) return std::nullopt;
  const Index n = family.basis.front().rows();

  // The solution space of eta*H = H^dag*eta is closed under the adjoint, so
  // its Hermitian elements form a real span; extract an orthonormal real
  // basis for it.
  std::vector<CMatrix> herm;
  auto add_candidate = [&](CMatrix cand) {
    for (const CMatrix& g : herm) cand -= frob_inner_real(g, cand) * g;
    if (cand.norm() > 1e-8) herm.push_back(cand / cand.norm());
  };
  for (const CMatrix& b : family.basis) {
    add_candidate(0.5 * (b + b.adjoint()));
    add_candidate(Complex(0.0, 0.5) * (b - b.adjoint()));
  }
  if (herm.empty()) return std::nullopt;
  const Index m = static_cast<Index>(herm.size());

  // Deterministic multistart list: projection of the identity first (exact
  // hit for Hermitian Hamiltonians), then axis directions, then a few fixed
  // pseudo-random points.
  std::vector<Eigen::VectorXd> starts;
  {
    Eigen::VectorXd t(m);
    for (Index j = 0; j < m; ++j) t(j) = frob_inner_real(herm[static_cast<std::size_t>(j)],
                                                         CMatrix::Identity(n, n));
    if (t.norm() > 1e-12) starts.push_back(t);
  }
  const double unit = std::sqrt(static_cast<double>(n));
  for (Index j = 0; j < m; ++j) {
    Eigen::VectorXd t = Eigen::VectorXd::Zero(m);
    t(j) = unit;
    starts.push_back(t);
    starts.push_back(-t);
  }
  std::uint64_t state = 0x9e3779b97f4a7c15ULL;
  auto next_unit = [&state]() {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return 2.0 * (static_cast<double>(state >> 11) * 0x1.0p-53) - 1.0;
  };
  for (int k = 0; k < 8; ++k) {
    Eigen::VectorXd t(m);
    for (Index j = 0; j < m; ++j) t(j) = unit * next_unit();
    starts.push_back(t);
  }

  for (const Eigen::VectorXd& start : starts) {
    Eigen::VectorXd t = start;
    const double resid = involutory_descent(herm, t, 60);
    if (resid <= tol.bound(unit)) {
      CMatrix eta = CMatrix::Zero(n, n);
      for (Index j = 0; j < m; ++j) eta += t(j) * herm[static_cast<std::size_t>(j)];
      eta = 0.5 * (eta + eta.adjoint());
      canonicalize_sign(eta);
      Metric metric = make_metric(std::move(eta), tol);
      if (metric.flags.hermitian && metric.flags.involutory) {
        return FundamentalChoice{std::move(metric), "involutory-search"};
      }
    }
  }

  // Fallback: best-conditioned Hermitian invertible element of the real span.
  const CMatrix* best = nullptr;
  double best_cond = 0.0;
  for (const CMatrix& g : herm) {
    const double cond = condition_number(g);
    if (!std::isfinite(cond) || cond > 1e10) continue;
    if (best == nullptr || cond < best_cond) {
      best = &g;
      best_cond = cond;
    }
  }
  if (best == nullptr) return std::nullopt;
  CMatrix eta = unit * (*best);
  canonicalize_sign(eta);
  return FundamentalChoice{make_metric(std::move(eta), tol), "hermitian-fallback"};
}

}  // namespace pseudoherm
