#include "xover/information.hpp"

#include <cmath>
#include <string>

#include "xover/error.hpp"

namespace xover {

namespace {

Eigen::MatrixXd to_double(const IntMatrix& m) { return m.cast<double>(); }

double max_abs_or_one(const Eigen::MatrixXd& m) {
  return m.size() ? std::max(1.0, m.cwiseAbs().maxCoeff()) : 1.0;
}

int ubrmd_replication(const CrossoverDesign& design) {
  const auto rep = validate_ubrmd(design);
  if (!rep.pass) throw DesignError("design is not a UBRMD:\n" + rep.summary());
  return design.subjects() / design.treatments();
}

}  // namespace

SymMatrix JointInfo::joint() const {
  const int t = treatments();
  Eigen::MatrixXd c(2 * t, 2 * t);
  c.topLeftCorner(t, t) = c11.matrix();
  c.topRightCorner(t, t) = c12;
  c.bottomLeftCorner(t, t) = c12.transpose();
  c.bottomRightCorner(t, t) = c22.matrix();
  return SymMatrix(c);
}

JointInfo joint_info_projection(const CrossoverDesign& design,
                                const std::optional<DropoutPattern>& pattern) {
  if (pattern) pattern->check_against(design);
  const int t = design.treatments();
  const int p = design.periods();
  const int s = design.subjects();

  int n = 0;
  for (int i = 0; i < s; ++i) n += pattern ? pattern->completion()[i] : p;
  if (n == 0) throw DesignError("design has no observed cells");

  // Treatment columns [direct | carryover], nuisance columns [subjects | periods].
  Eigen::MatrixXd x_t = Eigen::MatrixXd::Zero(n, 2 * t);
  Eigen::MatrixXd x_n = Eigen::MatrixXd::Zero(n, s + p);
  int row = 0;
  for (int i = 0; i < s; ++i) {
    const int last = pattern ? pattern->completion()[i] : p;
    for (int period = 1; period <= last; ++period, ++row) {
      x_t(row, design.treatment(period, i)) = 1.0;
      if (period > 1) x_t(row, t + design.treatment(period - 1, i)) = 1.0;
      x_n(row, i) = 1.0;
      x_n(row, s + period - 1) = 1.0;
    }
  }

  const SymMatrix nn_pinv = moore_penrose(SymMatrix(x_n.transpose() * x_n));
  const Eigen::MatrixXd tn = x_t.transpose() * x_n;
  const Eigen::MatrixXd c =
      x_t.transpose() * x_t - tn * nn_pinv.matrix() * tn.transpose();
  const SymMatrix joint(0.5 * (c + c.transpose()));

  return {SymMatrix(joint.matrix().topLeftCorner(t, t)),
          joint.matrix().topRightCorner(t, t),
          SymMatrix(joint.matrix().bottomRightCorner(t, t))};
}

JointInfo joint_info_orthogonal(const CrossoverDesign& design,
                                const std::optional<DropoutPattern>& pattern) {
  if (pattern) {
    pattern->check_against(design);
    if (!pattern->is_complete(design)) {
      throw DesignError("orthogonal closed form needs a complete layout");
    }
  }
  const double p = design.periods();
  const double s = design.subjects();
  const IncidenceSet inc = incidences(design);
  const Eigen::MatrixXd n_ds = to_double(inc.n_ds);
  const Eigen::MatrixXd n_cs = to_double(inc.n_cs);
  const Eigen::MatrixXd n_dp = to_double(inc.n_dp);
  const Eigen::MatrixXd n_cp = to_double(inc.n_cp);
  const Eigen::VectorXd r_d = inc.r_d.cast<double>();
  const Eigen::VectorXd r_c = inc.r_c.cast<double>();

  const Eigen::MatrixXd c11 = Eigen::MatrixXd(r_d.asDiagonal()) +
                              r_d * r_d.transpose() / (p * s) -
                              n_ds * n_ds.transpose() / p - n_dp * n_dp.transpose() / s;
  const Eigen::MatrixXd c22 = Eigen::MatrixXd(r_c.asDiagonal()) +
                              r_c * r_c.transpose() / (p * s) -
                              n_cs * n_cs.transpose() / p - n_cp * n_cp.transpose() / s;
  const Eigen::MatrixXd c12 = to_double(inc.n_dc) + r_d * r_c.transpose() / (p * s) -
                              n_ds * n_cs.transpose() / p - n_dp * n_cp.transpose() / s;
  return {SymMatrix(c11), c12, SymMatrix(c22)};
}

SymMatrix direct_info(const JointInfo& info) {
  const SymMatrix g = moore_penrose(info.c22);
  const Eigen::MatrixXd cd =
      info.c11.matrix() - info.c12 * g.matrix() * info.c12.transpose();
  return SymMatrix(0.5 * (cd + cd.transpose()));
}

SymMatrix residual_info(const JointInfo& info) {
  const SymMatrix g = moore_penrose(info.c11);
  const Eigen::MatrixXd cr =
      info.c22.matrix() - info.c12.transpose() * g.matrix() * info.c12;
  return SymMatrix(0.5 * (cr + cr.transpose()));
}

double lambda_min_a_formula(int t, int m, int g) {
  const double tm = t - m;
  return g / tm * (tm * tm - (t + 1) - m * (m + 1.0));
}

MinimalClosedForm minimal_closed_form(const CrossoverDesign& design, int m) {
  const int g = ubrmd_replication(design);
  const int t = design.treatments();
  if (m < 1 || m >= t - 1) {
    throw InvalidArgument("minimal design needs 1 <= m < t-1, got m=" +
                          std::to_string(m) + ", t=" + std::to_string(t));
  }
  const double tm = t - m;
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(t, t);
  const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(t, t);
  auto u = [&](int j, int k) { return to_double(coincidence(design, j, k).matrix); };

  // Off-diagonal sums of U_jk over the tail index ranges.
  Eigen::MatrixXd sum_direct = Eigen::MatrixXd::Zero(t, t);  // j != k in 0..m-1
  Eigen::MatrixXd sum_carry = Eigen::MatrixXd::Zero(t, t);   // j != k in 0..m
  Eigen::MatrixXd sum_cross = Eigen::MatrixXd::Zero(t, t);   // j in 0..m-1, k in 0..m, j != k
  Eigen::MatrixXd sum_adjacent = Eigen::MatrixXd::Zero(t, t);
  for (int j = 0; j <= m; ++j) {
    for (int k = 0; k <= m; ++k) {
      if (j == k) continue;
      const Eigen::MatrixXd ujk = u(j, k);
      sum_carry += ujk;
      if (j < m) {
        sum_cross += ujk;
        if (k < m) sum_direct += ujk;
      }
    }
  }
  for (int j = 0; j < m; ++j) sum_adjacent += u(j, j + 1);

  const double q = tm * tm - (t + 1);
  const Eigen::MatrixXd c11 =
      g * (tm * tm - m) / tm * eye - g * (t - 2.0 * m) / tm * ones - sum_direct / tm;
  const Eigen::MatrixXd c22 = g / tm * (q * eye - (q - m * (m + 1.0)) / t * ones) -
                              sum_carry / tm;
  const Eigen::MatrixXd c12 =
      g / tm * ((m + 1.0) * ones - t * eye) - sum_adjacent - sum_cross / tm;
  const Eigen::MatrixXd a = g / tm * q * eye - sum_carry / tm;

  MinimalClosedForm out{t,
                        m,
                        g,
                        SymMatrix(c11),
                        c12,
                        SymMatrix(c22),
                        SymMatrix(a),
                        lambda_min_a_formula(t, m, g),
                        t >= 2 * m + 2,
                        std::nullopt};
  if (out.a_path_available) {
    SymMatrix a_inv = moore_penrose(out.a);
    const Eigen::MatrixXd check = c22 * a_inv.matrix() * c22 - c22;
    if (check.cwiseAbs().maxCoeff() > 1e-8 * max_abs_or_one(c22)) {
      throw NumericalError("A^-1 failed the generalized-inverse check for C22");
    }
    out.a_inverse = std::move(a_inv);
  }
  return out;
}

SymMatrix direct_info_a_path(const MinimalClosedForm& form) {
  if (!form.a_inverse) {
    throw InvalidArgument("A is not guaranteed nonsingular unless t >= 2m+2 (t=" +
                          std::to_string(form.t) + ", m=" + std::to_string(form.m) + ")");
  }
  const Eigen::MatrixXd cd =
      form.c11.matrix() - form.c12 * form.a_inverse->matrix() * form.c12.transpose();
  return SymMatrix(0.5 * (cd + cd.transpose()));
}

SymMatrix residual_info_minimal_m1(const CrossoverDesign& design) {
  const int g = ubrmd_replication(design);
  const int t = design.treatments();
  if (t < 3) throw InvalidArgument("residual closed form needs t >= 3");
  const double td = t;
  const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(t, t);
  const Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(t, t);
  const Eigen::MatrixXd u = to_double(coincidence(design, 0, 1).matrix);
  const Eigen::MatrixXd cr =
      g * td * (td * td - 5 * td + 5) / ((td - 1) * (td - 2)) * (eye - ones / td) -
      2.0 / (td - 2) * (u + u.transpose()) -
      td / (g * (td - 1) * (td - 2)) * u.transpose() * u +
      g * (5 * td - 4) / (td * (td - 1) * (td - 2)) * ones;
  return SymMatrix(cr);
}

bool estimable(const SymMatrix& info, const Eigen::VectorXd& contrast) {
  if (contrast.size() != info.order()) {
    throw InvalidArgument("contrast length must equal the matrix order");
  }
  const double norm = contrast.norm();
  if (std::abs(contrast.sum()) > 1e-12 * std::max(1.0, norm)) {
    throw InvalidArgument("coefficients must sum to zero");
  }
  if (norm == 0.0) return true;
  const SymMatrix pinv = moore_penrose(info);
  const Eigen::VectorXd resid = contrast - info.matrix() * (pinv.matrix() * contrast);
  return resid.norm() <= 1e-8 * norm;
}

}  // namespace xover
