#include "pseudoherm/fixtures.hpp"

#include <cmath>
#include <cstdio>
#include <random>

namespace pseudoherm {

namespace {

const Complex kI(0.0, 1.0);

std::string format_params(const char* fmt, double a, double b, double c, double d = 0.0) {
  char buf[128];
  std::snprintf(buf, sizeof(buf), fmt, a, b, c, d);
  return buf;
}

/// mt19937_64 with doubles drawn from the top 53 bits, so the stream is
/// fully pinned by the standard.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  Complex box() { return {uniform(-1.0, 1.0), uniform(-1.0, 1.0)}; }

 private:
  std::mt19937_64 engine_;
};

CMatrix random_box_matrix(Rng& rng, int n) {
  CMatrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) m(i, j) = rng.box();
  }
  return m;
}

CMatrix well_conditioned_matrix(Rng& rng, int n) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    CMatrix d = random_box_matrix(rng, n);
    if (condition_number(d) < 1e3) return d;
  }
  throw Error(ErrorClass::internal, "failed to draw a well-conditioned matrix");
}

RandomConstruction assemble(const CMatrix& D, const std::vector<Complex>& lambdas) {
  const Index n = D.rows();
  CMatrix diag = CMatrix::Zero(n, n);
  for (Index k = 0; k < n; ++k) diag(k, k) = lambdas[static_cast<std::size_t>(k)];
  RandomConstruction out;
  out.D = D;
  out.lambdas = lambdas;
  out.H = D * diag * D.fullPivLu().inverse();
  return out;
}

}  // namespace

Fixture family_asym_coupling(double a, double b, double c, Complex s) {
  Fixture f;
  f.name = format_params("asym(a=%g,b=%g,c=%g)", a, b, c);
  f.hamiltonian = CMatrix(2, 2);
  f.hamiltonian << Complex(a, 0.0), -kI * b, kI * c, Complex(a, 0.0);

  CMatrix eta1(2, 2), eta2(2, 2), eta4(2, 2);
  eta1 << 0.0, -kI, kI, 0.0;
  eta2 << Complex(c / b, 0.0), -s, s, 1.0;  // r^2 = c/b
  eta4 << 0.0, -1.0, 1.0, 0.0;
  f.expected["eta1"] = eta1;
  f.expected["eta2"] = eta2;
  f.expected["eta4"] = eta4;
  f.fundamental_metric = eta1;

  const Complex root = std::sqrt(Complex(b * c, 0.0));
  f.expected_eigenvalues = {Complex(a, 0.0) + root, Complex(a, 0.0) - root};
  if (b * c > 0.0) {
    f.expected_class = SpectrumClass::AllReal;
    f.r = std::sqrt(c / b);
    CMatrix eta3(2, 2);
    eta3 << Complex(f.r, 0.0), 0.0, 0.0, Complex(1.0 / f.r, 0.0);
    f.expected["eta3"] = eta3;
  } else {
    f.expected_class = SpectrumClass::ConjugatePaired;
  }
  return f;
}

Fixture family_detuned_symmetric(double a, double b, double c) {
  Fixture f;
  f.name = format_params("detuned(a=%g,b=%g,c=%g)", a, b, c);
  f.hamiltonian = CMatrix(2, 2);
  f.hamiltonian << Complex(a - c, 0.0), kI * b, kI * b, Complex(a + c, 0.0);
  CMatrix eta(2, 2);
  eta << 1.0, 0.0, 0.0, -1.0;
  f.fundamental_metric = eta;
  f.expected["eta"] = eta;

  const Complex root = std::sqrt(Complex(c * c - b * b, 0.0));
  f.expected_eigenvalues = {Complex(a, 0.0) + root, Complex(a, 0.0) - root};
  f.expected_class = c * c > b * b ? SpectrumClass::AllReal : SpectrumClass::ConjugatePaired;
  if (f.expected_class == SpectrumClass::AllReal && b != 0.0) {
    f.r = (c + root.real()) / b;
    CVector psi0(2), psi1(2);
    psi0 << 1.0, -kI * f.r;
    psi1 << 1.0, -kI / f.r;
    f.pinned_eigenvectors = {psi0, psi1};
    // Incidental transpose-orthogonality of the raw eigenvectors.
    f.expected_values["psi0_trans_psi1"] = (psi0.transpose() * psi1)(0);
  }
  return f;
}

Fixture family_scaled_coupling(double a, double b, double c, double x) {
  if (x == 0.0) throw Error(ErrorClass::internal, "family_scaled_coupling requires x != 0");
  Fixture f;
  f.name = format_params("scaled(a=%g,b=%g,c=%g,x=%g)", a, b, c, x);
  f.hamiltonian = CMatrix(2, 2);
  f.hamiltonian << Complex(a, 0.0), -kI * (c / x), kI * (c * x), Complex(b, 0.0);
  CMatrix eta(2, 2);
  eta << Complex(x, 0.0), 0.0, 0.0, Complex(1.0 / x, 0.0);
  f.fundamental_metric = eta;
  f.expected["eta"] = eta;

  const double delta = std::sqrt((a - b) * (a - b) + 4.0 * c * c);
  f.expected_eigenvalues = {Complex(0.5 * ((a + b) + delta), 0.0),
                            Complex(0.5 * ((a + b) - delta), 0.0)};
  f.expected_class = SpectrumClass::AllReal;
  f.theta = 0.5 * std::atan2(2.0 * c, a - b);  // pairs theta with the larger root
  if (x < 0.0) return f;  // pinned vectors and the operator set assume x > 0

  f.expected["eta_plus"] = eta;  // (D D^dag)^-1 lands back on eta for this family
  const double ct = std::cos(f.theta), st = std::sin(f.theta);
  const double rx = std::sqrt(std::abs(x));
  CVector psi0(2), psi1(2);
  psi0 << Complex(ct / x, 0.0), kI * st;
  psi1 << kI * st, Complex(x * ct, 0.0);
  f.pinned_eigenvectors = {rx * psi0, (1.0 / rx) * psi1};
  f.expected_signs = {1, 1};

  const double c2 = std::cos(2.0 * f.theta), s2 = std::sin(2.0 * f.theta);
  CMatrix P(2, 2), T(2, 2), C(2, 2), PT(2, 2), CPT(2, 2);
  P << Complex(c2 / x, 0.0), -kI * s2, kI * s2, Complex(-x * c2, 0.0);
  T << Complex(x * c2, 0.0), kI * s2, kI * s2, Complex(c2 / x, 0.0);
  C << Complex(c2, 0.0), -kI * (s2 / x), kI * (x * s2), Complex(-c2, 0.0);
  PT << 1.0, 0.0, 0.0, -1.0;
  CPT << Complex(c2, 0.0), kI * (s2 / x), kI * (x * s2), Complex(c2, 0.0);
  f.expected["P"] = P;
  f.expected["T"] = T;
  f.expected["C"] = C;
  f.expected["PT"] = PT;
  f.expected["CPT"] = CPT;
  f.expected_values["psi0_trans_psi1"] =
      (f.pinned_eigenvectors[0].transpose() * f.pinned_eigenvectors[1])(0);
  return f;
}

Fixture example_involutory_metric(double r, double a) {
  if (r <= 0.0) throw Error(ErrorClass::internal, "example_involutory_metric requires r > 0");
  Fixture f = family_asym_coupling(a, 1.0, r * r);
  f.name = format_params("involutory(r=%g,a=%g)", r, a, 0.0);
  f.r = r;

  const double amp = std::sqrt(r / 2.0);
  CVector psi0(2), psi1(2);
  psi0 << -kI / r, 1.0;
  psi1 << Complex(1.0 / r, 0.0), -kI;
  f.pinned_eigenvectors = {amp * psi0, amp * psi1};
  f.expected_signs = {1, -1};

  CMatrix P(2, 2), T(2, 2), eta_plus(2, 2), C(2, 2), PT(2, 2), CPT(2, 2);
  P << 0.0, -kI, kI, 0.0;
  T << 0.0, -kI, -kI, 0.0;
  eta_plus << Complex(r, 0.0), 0.0, 0.0, Complex(1.0 / r, 0.0);
  C << 0.0, -kI / r, kI * r, 0.0;
  PT << -1.0, 0.0, 0.0, 1.0;
  CPT << 0.0, -kI / r, -kI * r, 0.0;
  f.expected["P"] = P;
  f.expected["T"] = T;
  f.expected["eta_plus"] = eta_plus;
  f.expected["C"] = C;
  f.expected["PT"] = PT;
  f.expected["CPT"] = CPT;
  f.expected_values["psi0_trans_psi1"] = -kI * ((1.0 + r * r) / (2.0 * r));
  return f;
}

Fixture example_definite_metric(double a, double b, double c, double x) {
  Fixture f = family_scaled_coupling(a, b, c, x);
  f.name = format_params("definite(a=%g,b=%g,c=%g,x=%g)", a, b, c, x);
  return f;
}

RandomConstruction random_real_spectrum(int n, std::uint64_t seed) {
  if (n < 1 || n > 16) throw Error(ErrorClass::internal, "random_real_spectrum: n out of range");
  Rng rng(seed);
  std::vector<Complex> lambdas;
  double value = rng.uniform(0.0, 5.0);
  for (int k = 0; k < n; ++k) {
    lambdas.emplace_back(value, 0.0);
    value -= 0.1 + 0.9 * rng.uniform();
  }
  const CMatrix D = well_conditioned_matrix(rng, n);
  return assemble(D, lambdas);
}

RandomConstruction random_conjugate_paired(int n_pairs, std::uint64_t seed) {
  if (n_pairs < 1 || 2 * n_pairs > 16) {
    throw Error(ErrorClass::internal, "random_conjugate_paired: n_pairs out of range");
  }
  Rng rng(seed);
  std::vector<Complex> lambdas;
  double re = rng.uniform(0.0, 5.0);
  for (int k = 0; k < n_pairs; ++k) {
    const double im = 0.1 + 1.9 * rng.uniform();
    lambdas.emplace_back(re, im);
    lambdas.emplace_back(re, -im);
    re -= 0.1 + 0.9 * rng.uniform();
  }
  const CMatrix D = well_conditioned_matrix(rng, 2 * n_pairs);
  return assemble(D, lambdas);
}

CMatrix random_hermitian(int n, std::uint64_t seed) {
  Rng rng(seed);
  const CMatrix A = random_box_matrix(rng, n);
  return 0.5 * (A + A.adjoint());
}

CVector random_vector(int n, std::uint64_t seed) {
  Rng rng(seed);
  CVector v(n);
  for (Index i = 0; i < n; ++i) v(i) = rng.box();
  return v;
}

}  // namespace pseudoherm
