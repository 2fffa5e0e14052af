#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace pseudoherm {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Failure categories; the CLI maps each class to a distinct exit code.
enum class ErrorClass { parse = 2, spectral = 3, metric = 4, suite = 5, internal = 10 };

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& msg) : std::runtime_error(msg), cls_(cls) {}
  ErrorClass error_class() const noexcept { return cls_; }

 private:
  ErrorClass cls_;
};

struct DimensionMismatch final : Error {
  explicit DimensionMismatch(const std::string& m) : Error(ErrorClass::internal, m) {}
};
struct NonFiniteValue final : Error {
  explicit NonFiniteValue(const std::string& m) : Error(ErrorClass::internal, m) {}
};
struct ParseError final : Error {
  explicit ParseError(const std::string& m) : Error(ErrorClass::parse, m) {}
};
struct NonSquare final : Error {
  explicit NonSquare(const std::string& m) : Error(ErrorClass::parse, m) {}
};
struct DegenerateSpectrum final : Error {
  explicit DegenerateSpectrum(const std::string& m) : Error(ErrorClass::spectral, m) {}
};
struct NonDiagonalizable final : Error {
  explicit NonDiagonalizable(const std::string& m) : Error(ErrorClass::spectral, m) {}
};
struct NoConvergence final : Error {
  explicit NoConvergence(const std::string& m) : Error(ErrorClass::spectral, m) {}
};
struct MixedSpectrum final : Error {
  explicit MixedSpectrum(const std::string& m) : Error(ErrorClass::spectral, m) {}
};
struct ZeroEtaNorm final : Error {
  explicit ZeroEtaNorm(const std::string& m) : Error(ErrorClass::spectral, m) {}
};
struct SingularD final : Error {
  explicit SingularD(const std::string& m) : Error(ErrorClass::spectral, m) {}
};
struct OddDimension final : Error {
  explicit OddDimension(const std::string& m) : Error(ErrorClass::metric, m) {}
};
struct SingularMetric final : Error {
  explicit SingularMetric(const std::string& m) : Error(ErrorClass::metric, m) {}
};
struct BiorthogonalityViolation final : Error {
  explicit BiorthogonalityViolation(const std::string& m) : Error(ErrorClass::metric, m) {}
};
struct CompletenessViolation final : Error {
  explicit CompletenessViolation(const std::string& m) : Error(ErrorClass::suite, m) {}
};
struct SuiteInvalid final : Error {
  explicit SuiteInvalid(const std::string& m) : Error(ErrorClass::suite, m) {}
};
struct NotASymmetry final : Error {
  explicit NotASymmetry(const std::string& m) : Error(ErrorClass::suite, m) {}
};

/// Absolute + relative tolerance. A residual passes against a scale s when
/// residual <= abs + rel * s.
struct Tolerance {
  double abs = 1e-10;
  double rel = 1e-9;

  bool ok(double residual, double scale = 1.0) const {
    return residual <= abs + rel * scale;
  }
  double bound(double scale = 1.0) const { return abs + rel * scale; }
};

bool is_finite(const CMatrix& m);
void require_finite(const CMatrix& m, const char* what);
void require_square(const CMatrix& m, const char* what);
void require_same_dim(const CMatrix& a, const CMatrix& b, const char* what);

/// Frobenius-norm closeness scaled by the larger operand.
bool matrices_close(const CMatrix& a, const CMatrix& b, const Tolerance& tol = {});
bool is_identity(const CMatrix& m, const Tolerance& tol = {});

/// A linear or antilinear operator on C^n. An antilinear operator acts as
/// v -> matrix * conj(v); the conjugation stays a flag and is never folded
/// into the matrix.
struct OperatorRep {
  CMatrix matrix;
  bool antilinear = false;

  Index dim() const { return matrix.rows(); }
};

OperatorRep identity_op(Index n);
/// K0, plain complex conjugation.
OperatorRep conjugation_op(Index n);

CVector apply(const OperatorRep& op, const CVector& v);

/// Composition a∘b, defined by (a∘b)(v) = a(b(v)). The antilinear flags XOR;
/// the matrix is A*B when a is linear and A*conj(B) when a is antilinear.
OperatorRep compose(const OperatorRep& a, const OperatorRep& b);

/// ||H*M - M*H||_F for a linear op; ||H*M - M*conj(H)||_F for an antilinear
/// one ([H, M*K0] = 0  <=>  H*M = M*conj(H)).
double symmetry_residual(const CMatrix& H, const OperatorRep& op);

bool is_involutory(const OperatorRep& op, const Tolerance& tol = {});

}  // namespace pseudoherm
