#include "pseudoherm/core.hpp"

#include <cmath>

namespace pseudoherm {

bool is_finite(const CMatrix& m) {
  return m.allFinite();
}

void require_finite(const CMatrix& m, const char* what) {
  if (!m.allFinite()) {
    throw NonFiniteValue(std::string(what) + " contains NaN or Inf entries");
  }
}

void require_square(const CMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw NonSquare(std::string(what) + " must be square with dim >= 1, got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

void require_same_dim(const CMatrix& a, const CMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch(std::string(what) + ": dimension mismatch " +
                            std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                            std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
}

bool matrices_close(const CMatrix& a, const CMatrix& b, const Tolerance& tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  const double scale = std::max(a.norm(), b.norm());
  return tol.ok((a - b).norm(), scale);
}

bool is_identity(const CMatrix& m, const Tolerance& tol) {
  if (m.rows() != m.cols()) return false;
  return matrices_close(m, CMatrix::Identity(m.rows(), m.cols()), tol);
}

OperatorRep identity_op(Index n) {
  return {CMatrix::Identity(n, n), false};
}

OperatorRep conjugation_op(Index n) {
  return {CMatrix::Identity(n, n), true};
}

CVector apply(const OperatorRep& op, const CVector& v) {
  require_square(op.matrix, "operator");
  require_finite(op.matrix, "operator");
  if (op.matrix.cols() != v.size()) {
    throw DimensionMismatch("apply: operator dim " + std::to_string(op.matrix.cols()) +
                            " vs vector dim " + std::to_string(v.size()));
  }
  if (op.antilinear) return op.matrix * v.conjugate();
  return op.matrix * v;
}

OperatorRep compose(const OperatorRep& a, const OperatorRep& b) {
  require_same_dim(a.matrix, b.matrix, "compose");
  require_finite(a.matrix, "compose lhs");
  require_finite(b.matrix, "compose rhs");
  OperatorRep out;
  out.antilinear = a.antilinear != b.antilinear;
  out.matrix = a.antilinear ? CMatrix(a.matrix * b.matrix.conjugate())
                            : CMatrix(a.matrix * b.matrix);
  return out;
}

double symmetry_residual(const CMatrix& H, const OperatorRep& op) {
  require_square(H, "H");
  require_same_dim(H, op.matrix, "symmetry_residual");
  require_finite(H, "H");
  require_finite(op.matrix, "operator");
  if (op.antilinear) return (H * op.matrix - op.matrix * H.conjugate()).norm();
  return (H * op.matrix - op.matrix * H).norm();
}

bool is_involutory(const OperatorRep& op, const Tolerance& tol) {
  const OperatorRep sq = compose(op, op);
  if (sq.antilinear) return false;  // op squared must be plain identity
  return is_identity(sq.matrix, tol);
}

}  // namespace pseudoherm
