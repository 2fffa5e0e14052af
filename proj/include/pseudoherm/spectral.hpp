#pragma once

#include <string>
#include <vector>

#include "pseudoherm/core.hpp"

namespace pseudoherm {

enum class SpectrumClass { AllReal, ConjugatePaired, Mixed };

std::string to_string(SpectrumClass cls);

/// Raw eigendecomposition: closed form for n <= 2, Hessenberg + shifted QR
/// (via Eigen's ComplexEigenSolver) above that. Eigenvalues come back sorted
/// by descending real part, ties broken by descending imaginary part;
/// eigenvectors are unit 2-norm.
struct EigResult {
  std::vector<Complex> eigenvalues;
  std::vector<CVector> vectors;
};

EigResult eig(const CMatrix& H, const Tolerance& tol = {});

/// For ConjugatePaired spectra, `pairing` is a permutation of the input
/// indices placing each conjugate pair adjacently (positive-imaginary member
/// first). Empty otherwise.
struct SpectrumClassification {
  SpectrumClass cls = SpectrumClass::Mixed;
  std::vector<int> pairing;
};

SpectrumClassification classify_spectrum(const std::vector<Complex>& eigenvalues,
                                         const Tolerance& tol = {});

/// How eigenvector phases are fixed after eta-normalization.
struct PhaseConvention {
  enum class Mode {
    LargestComponentRealPositive,  // default
    AlignToTargets,                // rotate each vector onto a target's phase
    ExplicitFactors,               // default convention, then multiply factors
  };
  Mode mode = Mode::LargestComponentRealPositive;
  std::vector<CVector> targets;
  std::vector<Complex> factors;

  static PhaseConvention auto_phase() { return {}; }
  static PhaseConvention align(std::vector<CVector> t) {
    PhaseConvention p;
    p.mode = Mode::AlignToTargets;
    p.targets = std::move(t);
    return p;
  }
  static PhaseConvention explicit_factors(std::vector<Complex> f) {
    PhaseConvention p;
    p.mode = Mode::ExplicitFactors;
    p.factors = std::move(f);
    return p;
  }
};

struct EtaNormalized {
  std::vector<CVector> vectors;  // Psi_n with Psi_n^dag eta Psi_n = signs[n]
  std::vector<int> signs;        // eps_n in {+1, -1}
};

/// Rescale raw eigenvectors to |v^dag eta v| = 1 and record the sign of the
/// eta-norm. Throws ZeroEtaNorm for (near-)zero or non-real eta-norms; both
/// signal complex-pair eigenvectors or a metric inconsistent with H.
EtaNormalized eta_normalize(const std::vector<CVector>& raw, const CMatrix& eta,
                            const Tolerance& tol = {}, const PhaseConvention& phases = {});

/// Stack eigenvectors as columns; `ordering`, when nonempty, permutes them
/// (column k gets psi[ordering[k]]).
CMatrix build_diagonalizer(const std::vector<CVector>& psi, const std::vector<int>& ordering = {});

struct BiorthoSystem {
  std::vector<CVector> psi;
  std::vector<CVector> phi;      // eta * psi
  std::vector<CVector> upsilon;  // eta_plus * psi
};

/// Builds the three bases and checks the Gram identity
/// psi_m^dag upsilon_n = delta_mn; violation means eta_plus is inconsistent
/// with the supplied eigenvectors.
BiorthoSystem build_biortho(const std::vector<CVector>& psi, const CMatrix& eta,
                            const CMatrix& eta_plus, const Tolerance& tol = {});

struct SpectralData {
  std::vector<Complex> eigenvalues;
  std::vector<CVector> vectors;  // eta-normalized
  std::vector<int> signs;
  CMatrix diagonalizer;
  SpectrumClass spectrum_class = SpectrumClass::Mixed;
  std::vector<int> ordering;  // permutation applied on top of the default sort
  double condition_number = 0.0;
};

/// Full real-spectrum decomposition: eig, classify, degenerate check,
/// eta-normalize, diagonalizer + verification. `ordering_override` permutes
/// the default eigenvalue order before normalization.
SpectralData decompose(const CMatrix& H, const CMatrix& eta, const Tolerance& tol = {},
                       const PhaseConvention& phases = {},
                       const std::vector<int>& ordering_override = {});

/// 2-norm condition number via SVD.
double condition_number(const CMatrix& m);

}  // namespace pseudoherm
