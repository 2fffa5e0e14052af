#include "pseudoherm/symmetry.hpp"

#include <cmath>

namespace pseudoherm {

namespace {

Index bio_dim(const BiorthoSystem& bio) {
  if (bio.psi.empty() || bio.psi.size() != bio.upsilon.size()) {
    throw DimensionMismatch("biorthonormal system is empty or ragged");
  }
  return bio.psi.front().size();
}

double sign_of(std::size_t n) { return n % 2 == 0 ? 1.0 : -1.0; }

CMatrix completeness_sum(const BiorthoSystem& bio) {
  const Index n = bio_dim(bio);
  CMatrix sum = CMatrix::Zero(n, n);
  for (std::size_t k = 0; k < bio.psi.size(); ++k) {
    sum += bio.psi[k] * bio.upsilon[k].adjoint();
  }
  return sum;
}

}  // namespace

OperatorRep build_parity(const BiorthoSystem& bio) {
  const Index n = bio_dim(bio);
  CMatrix P = CMatrix::Zero(n, n);
  for (std::size_t k = 0; k < bio.psi.size(); ++k) {
    P += sign_of(k) * (bio.psi[k] * bio.psi[k].adjoint());
  }
  return {std::move(P), false};
}

OperatorRep build_time_reversal(const BiorthoSystem& bio) {
  const Index n = bio_dim(bio);
  CMatrix T = CMatrix::Zero(n, n);
  for (std::size_t k = 0; k < bio.upsilon.size(); ++k) {
    T += bio.upsilon[k] * bio.upsilon[k].transpose();
  }
  return {std::move(T), true};
}

OperatorRep build_pt(const BiorthoSystem& bio) {
  const Index n = bio_dim(bio);
  CMatrix PT = CMatrix::Zero(n, n);
  for (std::size_t k = 0; k < bio.psi.size(); ++k) {
    PT += sign_of(k) * (bio.psi[k] * bio.upsilon[k].transpose());
  }
  return {std::move(PT), true};
}

OperatorRep build_charge(const BiorthoSystem& bio, const Tolerance& tol) {
  const Index n = bio_dim(bio);
  const CMatrix completeness = completeness_sum(bio);
  if (!is_identity(completeness, tol)) {
    throw CompletenessViolation("sum psi_n upsilon_n^dag deviates from identity by " +
                                std::to_string((completeness - CMatrix::Identity(n, n)).norm()));
  }
  CMatrix C = CMatrix::Zero(n, n);
  for (std::size_t k = 0; k < bio.psi.size(); ++k) {
    C += sign_of(k) * (bio.psi[k] * bio.upsilon[k].adjoint());
  }
  return {std::move(C), false};
}

OperatorRep build_cpt(const BiorthoSystem& bio) {
  const Index n = bio_dim(bio);
  CMatrix CPT = CMatrix::Zero(n, n);
  for (std::size_t k = 0; k < bio.psi.size(); ++k) {
    CPT += bio.psi[k] * bio.upsilon[k].transpose();
  }
  return {std::move(CPT), true};
}

SuiteReport verify_suite(const CMatrix& H, const SymmetrySuite& suite, const BiorthoSystem& bio,
                         const Tolerance& tol, bool enforce) {
  require_square(H, "H");
  const Index n = bio_dim(bio);
  SuiteReport report;

  auto involution = [](const OperatorRep& op) {
    const OperatorRep sq = compose(op, op);
    return (sq.matrix - CMatrix::Identity(sq.matrix.rows(), sq.matrix.cols())).norm();
  };
  const struct {
    const char* name;
    const OperatorRep* op;
    bool must_pass;
  } members[] = {
      {"P", &suite.P, false},   {"T", &suite.T, false},     {"C", &suite.C, true},
      {"PT", &suite.PT, true},  {"CPT", &suite.CPT, true},
  };

  const double hnorm = std::max(1.0, H.norm());
  for (const auto& m : members) {
    const double op_scale = std::max(1.0, m.op->matrix.norm());
    report.residuals["involution." + std::string(m.name)] = involution(*m.op);
    report.residuals["commutation." + std::string(m.name)] = symmetry_residual(H, *m.op);
    if (m.must_pass) {
      if (!tol.ok(report.residuals["involution." + std::string(m.name)], op_scale * op_scale)) {
        report.failures.push_back("involution." + std::string(m.name));
      }
      if (!tol.ok(report.residuals["commutation." + std::string(m.name)], hnorm * op_scale)) {
        report.failures.push_back("commutation." + std::string(m.name));
      }
    }
  }

  double act_p = 0.0, act_t = 0.0, act_pt = 0.0, act_c = 0.0, act_cpt = 0.0;
  for (std::size_t k = 0; k < bio.psi.size(); ++k) {
    const double s = sign_of(k);
    act_p = std::max(act_p, (apply(suite.P, bio.upsilon[k]) - s * bio.psi[k]).norm());
    act_t = std::max(act_t, (apply(suite.T, bio.psi[k]) - bio.upsilon[k]).norm());
    act_pt = std::max(act_pt, (apply(suite.PT, bio.psi[k]) - s * bio.psi[k]).norm());
    act_c = std::max(act_c, (apply(suite.C, bio.psi[k]) - s * bio.psi[k]).norm());
    act_cpt = std::max(act_cpt, (apply(suite.CPT, bio.psi[k]) - bio.psi[k]).norm());
  }
  report.residuals["action.P"] = act_p;
  report.residuals["action.T"] = act_t;
  report.residuals["action.PT"] = act_pt;
  report.residuals["action.C"] = act_c;
  report.residuals["action.CPT"] = act_cpt;

  report.residuals["completeness"] =
      (completeness_sum(bio) - CMatrix::Identity(n, n)).norm();

  CMatrix gram(static_cast<Index>(bio.psi.size()), static_cast<Index>(bio.psi.size()));
  for (std::size_t a = 0; a < bio.psi.size(); ++a) {
    for (std::size_t b = 0; b < bio.psi.size(); ++b) {
      gram(static_cast<Index>(a), static_cast<Index>(b)) =
          (bio.psi[a].adjoint() * bio.upsilon[b])(0);
    }
  }
  report.residuals["gram"] = (gram - CMatrix::Identity(gram.rows(), gram.cols())).norm();

  double vec_scale = 1.0;
  for (const CVector& u : bio.upsilon) vec_scale = std::max(vec_scale, u.norm());
  for (const char* key : {"action.P", "action.T", "action.PT", "action.C", "action.CPT",
                          "completeness", "gram"}) {
    if (!tol.ok(report.residuals[key], vec_scale * vec_scale)) report.failures.push_back(key);
  }

  report.valid = report.failures.empty();
  if (enforce && !report.valid) {
    std::string what = "symmetry suite invalid:";
    for (const std::string& f : report.failures) {
      what += " " + f + "=" + std::to_string(report.residuals[f]);
    }
    throw SuiteInvalid(what);
  }
  return report;
}

SymmetrySuite build_suite(const CMatrix& H, const BiorthoSystem& bio, const Metric& eta,
                          const Metric& eta_plus, const Tolerance& tol) {
  SymmetrySuite suite;
  suite.P = build_parity(bio);
  suite.T = build_time_reversal(bio);
  suite.PT = build_pt(bio);
  suite.C = build_charge(bio, tol);
  suite.CPT = build_cpt(bio);
  suite.eta = eta;
  suite.eta_plus = eta_plus;
  suite.residuals = verify_suite(H, suite, bio, tol, true).residuals;
  return suite;
}

P2T2 p2_t2_condition(const BiorthoSystem& bio, const Tolerance& tol) {
  const std::size_t count = bio.psi.size();
  P2T2 out;
  double scale = 1.0;
  for (std::size_t m = 0; m < count; ++m) {
    for (std::size_t n = 0; n < count; ++n) {
      const Complex lhs = sign_of(m) * sign_of(n) * (bio.psi[m].adjoint() * bio.psi[n])(0);
      const Complex rhs = (bio.upsilon[m].adjoint() * bio.upsilon[n])(0);
      out.condition_residual = std::max(out.condition_residual, std::abs(lhs - rhs));
      scale = std::max({scale, std::abs(lhs), std::abs(rhs)});
    }
  }
  out.condition_holds = tol.ok(out.condition_residual, scale);

  const OperatorRep P = build_parity(bio);
  const OperatorRep T = build_time_reversal(bio);
  const CMatrix P2 = compose(P, P).matrix;
  const CMatrix T2 = compose(T, T).matrix;
  out.t2_p2_residual = (T2 - P2).norm();
  out.t2_equals_p2 = tol.ok(out.t2_p2_residual, std::max(P2.norm(), T2.norm()));
  return out;
}

}  // namespace pseudoherm
