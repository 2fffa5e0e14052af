#include "pseudoherm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace pseudoherm {

namespace {

constexpr Index kMaxDim = 16;

void check_ordering(const std::vector<int>& perm, std::size_t n, const char* what) {
  if (perm.size() != n) {
    throw DimensionMismatch(std::string(what) + ": permutation length " +
                            std::to_string(perm.size()) + " vs " + std::to_string(n));
  }
  std::vector<bool> seen(n, false);
  for (int p : perm) {
    if (p < 0 || static_cast<std::size_t>(p) >= n || seen[static_cast<std::size_t>(p)]) {
      throw Error(ErrorClass::internal, std::string(what) + ": not a permutation");
    }
    seen[static_cast<std::size_t>(p)] = true;
  }
}

// Descending real part; within groups of (near-)equal real part, descending
// imaginary part. Done in two passes so the comparator stays a strict weak
// ordering.
std::vector<int> sort_order(const std::vector<Complex>& ev) {
  const std::size_t n = ev.size();
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (ev[a].real() != ev[b].real()) return ev[a].real() > ev[b].real();
    return ev[a].imag() > ev[b].imag();
  });
  double maxabs = 0.0;
  for (const Complex& e : ev) maxabs = std::max(maxabs, std::abs(e));
  const double tie = 1e-12 * std::max(1.0, maxabs);
  std::size_t lo = 0;
  while (lo < n) {
    std::size_t hi = lo + 1;
    while (hi < n && std::abs(ev[idx[hi]].real() - ev[idx[lo]].real()) <= tie) ++hi;
    std::stable_sort(idx.begin() + lo, idx.begin() + hi,
                     [&](int a, int b) { return ev[a].imag() > ev[b].imag(); });
    lo = hi;
  }
  return idx;
}

// Null vector of (H - E) for a 2x2 H: both candidate rows solve exactly for
// an exact eigenvalue; take the better-conditioned one.
CVector eigvec2(const CMatrix& H, Complex E) {
  CVector a(2), b(2);
  a << H(0, 1), E - H(0, 0);
  b << E - H(1, 1), H(1, 0);
  CVector v = a.norm() >= b.norm() ? a : b;
  if (v.norm() <= 1e-14 * (H.norm() + std::abs(E))) {
    v.setZero();
    v(0) = 1.0;  // H ~ E*I; any direction is an eigenvector
  }
  return v / v.norm();
}

}  // namespace

std::string to_string(SpectrumClass cls) {
  switch (cls) {
    case SpectrumClass::AllReal: return "all_real";
    case SpectrumClass::ConjugatePaired: return "conjugate_paired";
    case SpectrumClass::Mixed: return "mixed";
  }
  return "unknown";
}

EigResult eig(const CMatrix& H, const Tolerance& tol) {
  require_square(H, "H");
  require_finite(H, "H");
  const Index n = H.rows();
  if (n > kMaxDim) {
    throw Error(ErrorClass::internal,
                "dimension " + std::to_string(n) + " exceeds supported envelope (n <= 16)");
  }

  std::vector<Complex> ev;
  std::vector<CVector> vecs;
  if (n == 1) {
    ev.push_back(H(0, 0));
    CVector v(1);
    v << 1.0;
    vecs.push_back(v);
  } else if (n == 2) {
    const Complex tr = H(0, 0) + H(1, 1);
    const Complex det = H(0, 0) * H(1, 1) - H(0, 1) * H(1, 0);
    const Complex disc = std::sqrt(tr * tr - 4.0 * det);
    ev = {0.5 * (tr + disc), 0.5 * (tr - disc)};
    vecs = {eigvec2(H, ev[0]), eigvec2(H, ev[1])};
  } else {
    Eigen::ComplexEigenSolver<CMatrix> solver(H, true);
    if (solver.info() != Eigen::Success) {
      throw NoConvergence("eigensolver did not converge");
    }
    for (Index k = 0; k < n; ++k) {
      ev.push_back(solver.eigenvalues()(k));
      CVector v = solver.eigenvectors().col(k);
      vecs.push_back(v / v.norm());
    }
  }

  const std::vector<int> order = sort_order(ev);
  EigResult out;
  for (int k : order) {
    out.eigenvalues.push_back(ev[static_cast<std::size_t>(k)]);
    out.vectors.push_back(vecs[static_cast<std::size_t>(k)]);
  }

  const double hnorm = H.norm();
  for (std::size_t k = 0; k < out.eigenvalues.size(); ++k) {
    const double resid = (H * out.vectors[k] - out.eigenvalues[k] * out.vectors[k]).norm();
    if (resid > std::max(tol.abs, 1e-10 * hnorm * out.vectors[k].norm())) {
      throw NoConvergence("eigenpair residual " + std::to_string(resid) + " above bound");
    }
  }
  return out;
}

SpectrumClassification classify_spectrum(const std::vector<Complex>& eigenvalues,
                                         const Tolerance& tol) {
  SpectrumClassification out;
  const std::size_t n = eigenvalues.size();
  auto is_real = [&](const Complex& e) {
    return std::abs(e.imag()) <= tol.rel * std::max(1.0, std::abs(e));
  };

  bool all_real = true, none_real = true;
  for (const Complex& e : eigenvalues) {
    if (is_real(e)) none_real = false;
    else all_real = false;
  }
  if (all_real) {
    out.cls = SpectrumClass::AllReal;
    return out;
  }
  if (!none_real || n % 2 != 0) {
    out.cls = SpectrumClass::Mixed;
    return out;
  }

  // Greedy conjugate matching over the (already sorted) list.
  std::vector<bool> used(n, false);
  std::vector<int> pairing;
  for (std::size_t i = 0; i < n; ++i) {
    if (used[i]) continue;
    used[i] = true;
    const Complex want = std::conj(eigenvalues[i]);
    int best = -1;
    double best_d = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j]) continue;
      const double d = std::abs(eigenvalues[j] - want);
      if (best < 0 || d < best_d) {
        best = static_cast<int>(j);
        best_d = d;
      }
    }
    if (best < 0 || best_d > tol.abs + tol.rel * std::max(1.0, std::abs(eigenvalues[i]))) {
      out.cls = SpectrumClass::Mixed;
      out.pairing.clear();
      return out;
    }
    used[static_cast<std::size_t>(best)] = true;
    if (eigenvalues[i].imag() >= 0.0) {
      pairing.push_back(static_cast<int>(i));
      pairing.push_back(best);
    } else {
      pairing.push_back(best);
      pairing.push_back(static_cast<int>(i));
    }
  }
  out.cls = SpectrumClass::ConjugatePaired;
  out.pairing = std::move(pairing);
  return out;
}

EtaNormalized eta_normalize(const std::vector<CVector>& raw, const CMatrix& eta,
                            const Tolerance& tol, const PhaseConvention& phases) {
  require_square(eta, "eta");
  require_finite(eta, "eta");
  if (phases.mode == PhaseConvention::Mode::AlignToTargets && phases.targets.size() != raw.size()) {
    throw DimensionMismatch("eta_normalize: target count vs vector count");
  }
  if (phases.mode == PhaseConvention::Mode::ExplicitFactors && phases.factors.size() != raw.size()) {
    throw DimensionMismatch("eta_normalize: phase factor count vs vector count");
  }

  EtaNormalized out;
  const double eta_norm = eta.norm();
  for (std::size_t k = 0; k < raw.size(); ++k) {
    const CVector& v = raw[k];
    if (v.size() != eta.rows()) throw DimensionMismatch("eta_normalize: vector dim vs eta dim");
    const Complex q = (v.adjoint() * eta * v)(0);
    const double scale = std::max(1.0, v.squaredNorm() * eta_norm);
    if (std::abs(q) <= tol.abs * scale) {
      throw ZeroEtaNorm("eigenvector " + std::to_string(k) +
                        " has (near-)zero eta-norm: complex-pair eigenvector or wrong metric");
    }
    if (std::abs(q.imag()) > tol.abs * scale + tol.rel * std::abs(q)) {
      throw ZeroEtaNorm("eigenvector " + std::to_string(k) +
                        " has a non-real eta-norm: metric inconsistent with H");
    }
    const int sign = q.real() > 0.0 ? 1 : -1;
    CVector psi = v / std::sqrt(std::abs(q.real()));

    // Default phase: largest-modulus component made real positive.
    Index imax = 0;
    double amax = -1.0;
    for (Index i = 0; i < psi.size(); ++i) {
      if (std::abs(psi(i)) > amax) {
        amax = std::abs(psi(i));
        imax = i;
      }
    }
    psi *= std::conj(psi(imax)) / std::abs(psi(imax));

    if (phases.mode == PhaseConvention::Mode::AlignToTargets) {
      const Complex z = (psi.adjoint() * phases.targets[k])(0);
      if (std::abs(z) <= tol.abs * scale) {
        throw Error(ErrorClass::internal,
                    "phase alignment target " + std::to_string(k) + " is orthogonal to the vector");
      }
      psi *= z / std::abs(z);
    } else if (phases.mode == PhaseConvention::Mode::ExplicitFactors) {
      const Complex f = phases.factors[k];
      if (std::abs(std::abs(f) - 1.0) > 1e-6) {
        throw Error(ErrorClass::internal, "phase factor " + std::to_string(k) + " is not unit");
      }
      psi *= f / std::abs(f);
    }

    out.vectors.push_back(std::move(psi));
    out.signs.push_back(sign);
  }

  for (std::size_t k = 0; k < out.vectors.size(); ++k) {
    const Complex check = (out.vectors[k].adjoint() * eta * out.vectors[k])(0);
    if (std::abs(check - Complex(out.signs[k], 0.0)) > tol.bound(eta_norm)) {
      throw ZeroEtaNorm("eta-normalization self-check failed for vector " + std::to_string(k));
    }
  }
  return out;
}

CMatrix build_diagonalizer(const std::vector<CVector>& psi, const std::vector<int>& ordering) {
  if (psi.empty()) throw DimensionMismatch("build_diagonalizer: empty vector set");
  const Index n = psi.front().size();
  if (static_cast<Index>(psi.size()) != n) {
    throw DimensionMismatch("build_diagonalizer: need n vectors of length n");
  }
  std::vector<int> perm(psi.size());
  std::iota(perm.begin(), perm.end(), 0);
  if (!ordering.empty()) {
    check_ordering(ordering, psi.size(), "build_diagonalizer");
    perm = ordering;
  }
  CMatrix D(n, n);
  for (Index k = 0; k < n; ++k) {
    const CVector& col = psi[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])];
    if (col.size() != n) throw DimensionMismatch("build_diagonalizer: ragged vector set");
    D.col(k) = col;
  }
  if (condition_number(D) > 1e12) {
    throw SingularD("eigenvector matrix is numerically singular");
  }
  return D;
}

BiorthoSystem build_biortho(const std::vector<CVector>& psi, const CMatrix& eta,
                            const CMatrix& eta_plus, const Tolerance& tol) {
  require_square(eta, "eta");
  require_square(eta_plus, "eta_plus");
  require_same_dim(eta, eta_plus, "build_biortho");
  BiorthoSystem bio;
  bio.psi = psi;
  for (const CVector& p : psi) {
    if (p.size() != eta.rows()) throw DimensionMismatch("build_biortho: vector dim vs metric dim");
    bio.phi.push_back(eta * p);
    bio.upsilon.push_back(eta_plus * p);
  }
  const std::size_t n = psi.size();
  CMatrix gram(n, n);
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t k = 0; k < n; ++k) {
      gram(static_cast<Index>(m), static_cast<Index>(k)) = (psi[m].adjoint() * bio.upsilon[k])(0);
    }
  }
  if (!is_identity(gram, tol)) {
    throw BiorthogonalityViolation("Gram matrix psi^dag upsilon deviates from identity by " +
                                   std::to_string((gram - CMatrix::Identity(n, n)).norm()));
  }
  return bio;
}

SpectralData decompose(const CMatrix& H, const CMatrix& eta, const Tolerance& tol,
                       const PhaseConvention& phases, const std::vector<int>& ordering_override) {
  EigResult er = eig(H, tol);
  const SpectrumClassification cls = classify_spectrum(er.eigenvalues, tol);
  if (cls.cls != SpectrumClass::AllReal) {
    throw MixedSpectrum("real-spectrum pipeline requires an all-real spectrum, got " +
                        to_string(cls.cls));
  }

  double max_abs = 1.0;
  for (const Complex& e : er.eigenvalues) max_abs = std::max(max_abs, std::abs(e));
  for (std::size_t i = 0; i < er.eigenvalues.size(); ++i) {
    for (std::size_t j = i + 1; j < er.eigenvalues.size(); ++j) {
      if (std::abs(er.eigenvalues[i] - er.eigenvalues[j]) <= tol.abs + tol.rel * max_abs) {
        throw DegenerateSpectrum("repeated eigenvalue near " +
                                 std::to_string(er.eigenvalues[i].real()) +
                                 "; biorthonormal construction requires a nondegenerate spectrum");
      }
    }
  }

  SpectralData sd;
  sd.ordering.resize(er.eigenvalues.size());
  std::iota(sd.ordering.begin(), sd.ordering.end(), 0);
  if (!ordering_override.empty()) {
    check_ordering(ordering_override, er.eigenvalues.size(), "decompose");
    sd.ordering = ordering_override;
  }
  std::vector<CVector> raw;
  for (std::size_t k = 0; k < er.eigenvalues.size(); ++k) {
    const std::size_t p = static_cast<std::size_t>(sd.ordering[k]);
    sd.eigenvalues.push_back(er.eigenvalues[p]);
    raw.push_back(er.vectors[p]);
  }

  EtaNormalized nrm = eta_normalize(raw, eta, tol, phases);
  sd.vectors = std::move(nrm.vectors);
  sd.signs = std::move(nrm.signs);
  sd.spectrum_class = SpectrumClass::AllReal;
  sd.diagonalizer = build_diagonalizer(sd.vectors);
  sd.condition_number = condition_number(sd.diagonalizer);
  if (sd.condition_number > 1.0 / tol.rel) {
    throw NonDiagonalizable("diagonalizer condition number " +
                            std::to_string(sd.condition_number) + " exceeds 1/tol");
  }

  CMatrix diag = CMatrix::Zero(H.rows(), H.cols());
  for (Index k = 0; k < H.rows(); ++k) diag(k, k) = sd.eigenvalues[static_cast<std::size_t>(k)];
  const double resid =
      (sd.diagonalizer.fullPivLu().solve(H * sd.diagonalizer) - diag).norm();
  if (!tol.ok(resid, std::max(1.0, H.norm()) * sd.condition_number)) {
    throw NonDiagonalizable("D^-1 H D deviates from Diag(E) by " + std::to_string(resid));
  }
  return sd;
}

double condition_number(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(sv.size() - 1) <= 0.0) return std::numeric_limits<double>::infinity();
  return sv(0) / sv(sv.size() - 1);
}

}  // namespace pseudoherm
