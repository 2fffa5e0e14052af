#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pseudoherm/metric.hpp"
#include "pseudoherm/spectral.hpp"

namespace pseudoherm {

/// A worked example: Hamiltonian, its fundamental metric, pinned-phase
/// eigenvectors where the reference values depend on them, and the expected
/// operators/values the pipeline must reproduce.
struct Fixture {
  std::string name;
  CMatrix hamiltonian;
  CMatrix fundamental_metric;
  std::vector<CVector> pinned_eigenvectors;  // empty when phases are free
  std::vector<Complex> expected_eigenvalues;
  std::vector<int> expected_signs;  // eta-norm signs, empty when unpinned
  std::map<std::string, CMatrix> expected;  // named matrices (P, T, C, ...)
  std::map<std::string, Complex> expected_values;
  SpectrumClass expected_class = SpectrumClass::AllReal;
  double r = 0.0;      // family shape parameter where meaningful
  double theta = 0.0;  // mixing angle where meaningful
};

/// Two-level family H = [[a, -ib], [ic, a]] with its four metrics; real
/// spectrum a +- sqrt(bc) iff bc > 0, conjugate-paired otherwise. `s` is the
/// free entry of the non-Hermitian metric eta2.
Fixture family_asym_coupling(double a, double b, double c, Complex s = Complex(1.0, 1.0));

/// Family H = [[a-c, ib], [ib, a+c]] with eta = diag(1, -1); real spectrum
/// a +- sqrt(c^2 - b^2) iff c^2 > b^2. Pins the un-normalized eigenvectors
/// [1, -ir], [1, -i/r], which are incidentally transpose-orthogonal.
Fixture family_detuned_symmetric(double a, double b, double c);

/// Family H = [[a, -ic/x], [icx, b]] with eta = diag(x, 1/x); the spectrum
/// is always real and eta is positive definite for x > 0, so eta_plus
/// reproduces eta.
Fixture family_scaled_coupling(double a, double b, double c, double x);

/// Worked example with an involutory fundamental metric:
/// family_asym_coupling at b = 1, c = r^2 with eta1 fixed; the expected
/// operators depend only on r (the free `a` defaults to 1).
Fixture example_involutory_metric(double r, double a = 1.0);

/// Worked example whose fundamental metric is positive definite (and merely
/// Hermitian, not involutory): family_scaled_coupling plus its expected
/// operator set.
Fixture example_definite_metric(double a, double b, double c, double x);

/// Forward-constructed H = D Diag(lambda) D^-1; the construction itself is
/// the oracle for spectral and metric claims. Deterministic per seed;
/// D entries are uniform on [-1,1]+i[-1,1], redrawn until cond(D) < 1e3.
struct RandomConstruction {
  CMatrix H;
  CMatrix D;
  std::vector<Complex> lambdas;
};

/// Real spectrum, descending, adjacent gaps in (0.1, 1.0].
RandomConstruction random_real_spectrum(int n, std::uint64_t seed);

/// Conjugate-paired spectrum, pairs adjacent (positive-imaginary first),
/// |Im lambda| > 0.1.
RandomConstruction random_conjugate_paired(int n_pairs, std::uint64_t seed);

/// Dense random Hermitian matrix for the Hermitian-limit suites.
CMatrix random_hermitian(int n, std::uint64_t seed);

/// Uniform complex test vector with entries in [-1,1]+i[-1,1].
CVector random_vector(int n, std::uint64_t seed);

}  // namespace pseudoherm
