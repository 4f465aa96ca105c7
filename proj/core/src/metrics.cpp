#include "xover/metrics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "xover/error.hpp"
#include "xover/information.hpp"

namespace xover {

namespace {

void require_bound_domain(int t, int m) {
  if (m < 1 || t < 2 * m + 2) {
    throw InvalidArgument("bounds require m >= 1 and t >= 2m+2 (t=" + std::to_string(t) +
                          ", m=" + std::to_string(m) + ")");
  }
}

double denom(int t, int m) {
  const double tm = t - m;
  return tm * tm - (t + 1) - m * (m + 1.0);
}

double psi(int t, int r) { return std::cos(2.0 * std::numbers::pi * r / t); }

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double sum_inverse(const std::vector<double>& theta) {
  double s = 0.0;
  for (double x : theta) s += 1.0 / x;
  return s;
}

}  // namespace

ACriterion a_criterion(const SymMatrix& direct) {
  const SpectralSummary spec = eigensym(direct);
  ACriterion out;
  out.rank = spec.rank;
  out.connected = spec.rank == direct.order() - 1;
  out.trace_mp = spec.trace_mp;
  out.h = out.connected ? (direct.order() - 1) / spec.trace_mp : 0.0;
  out.eigenvalues.assign(spec.eigenvalues.data(),
                         spec.eigenvalues.data() + spec.eigenvalues.size());
  return out;
}

Loss loss(const ACriterion& plan, const ACriterion& implemented) {
  if (!plan.connected || !implemented.connected) return {1.0, false};
  return {loss(plan.trace_mp, implemented.trace_mp), true};
}

double loss(double plan_trace_mp, double implemented_trace_mp) {
  if (!(plan_trace_mp > 0.0) || !(implemented_trace_mp > 0.0)) {
    throw InvalidArgument("loss needs positive traces");
  }
  return 1.0 - plan_trace_mp / implemented_trace_mp;
}

double theta_lower(int t, int m) {
  require_bound_domain(t, m);
  const double mp1 = m + 1.0;
  return t / double(t - m) * ((t - 2.0 * m) - t * mp1 * mp1 / denom(t, m));
}

double theta_lower_star(int t, int m) {
  require_bound_domain(t, m);
  const double p1 = psi(t, 1);
  return t / double(t - m) *
         ((t - 2.0 * m) + m * (m - 1.0) / t * (1.0 - p1) -
          t * (1.0 + 2.0 * p1 * m + double(m) * m) / denom(t, m));
}

double uml(int t, int m, bool star) {
  const double theta = star ? theta_lower_star(t, m) : theta_lower(t, m);
  const double td = t;
  return 1.0 - (td * td - td - 1.0) * theta / (td * (td - 2.0) * (td + 1.0));
}

ConnectCondition connect_condition(int t, int m) {
  if (m < 1) throw InvalidArgument("m must be >= 1");
  const long long tl = t;
  const long long ml = m;
  const long long v = (tl - 2 * ml) * ((tl - ml) * (tl - ml) - (tl + 1) - ml * (ml + 1)) -
                      tl * (ml + 1) * (ml + 1);
  return {v, v > 0};
}

int t_star(int m) {
  if (m < 1) throw InvalidArgument("m must be >= 1");
  for (int t = 2 * m + 2;; ++t) {
    if (connect_condition(t, m).satisfied) return t;
  }
}

double mtr(int t, int m) {
  require_bound_domain(t, m);
  const double a = double(t) * (t - m - 1);
  return a - (a + 1.0) / (double(t - m) * (t - m - 1));
}

EfficiencyBounds efficiency_bounds(int t, int m) {
  const double denom_tr = mtr(t, m);
  return {(t - 1) * theta_lower(t, m) / denom_tr,
          (t - 1) * theta_lower_star(t, m) / denom_tr};
}

BoundsReport bounds_report(int t, int m) {
  require_bound_domain(t, m);
  const auto eff = efficiency_bounds(t, m);
  const auto cond = connect_condition(t, m);
  return {t,
          m,
          psi(t, 1),
          theta_lower(t, m),
          theta_lower_star(t, m),
          uml(t, m, false),
          uml(t, m, true),
          mtr(t, m),
          eff.el,
          eff.el_star,
          cond.value,
          cond.satisfied,
          t_star(m)};
}

std::vector<double> class_ab_spectrum(int t, SquareClass cls) {
  if (t < 4) throw InvalidArgument("class A/B spectrum needs t >= 4");
  std::vector<double> theta;
  const double td = t;
  for (int r = 1; r < t; ++r) {
    const double c = psi(t, r);
    const double num = cls == SquareClass::A ? 2.0 * td * (1.0 + c)
                                             : td * (1.0 + c) * (1.0 + c);
    theta.push_back(td / (td - 1.0) * (td - 2.0 - num / (td * (td - 3.0) - 2.0 * c)));
  }
  return theta;
}

double class_ab_ml(int t, SquareClass cls) {
  if (t < 5) throw InvalidArgument("class A/B minimal design is disconnected for t < 5");
  const double td = t;
  return 1.0 - (td - 1.0) * (td * td - td - 1.0) / (td * (td - 2.0) * (td + 1.0)) /
                   sum_inverse(class_ab_spectrum(t, cls));
}

double el_ab(int t, SquareClass cls) {
  if (t < 5) throw InvalidArgument("class A/B minimal design is disconnected for t < 5");
  const double td = t;
  return (td - 1.0) * (td - 1.0) / mtr(t, 1) / sum_inverse(class_ab_spectrum(t, cls));
}

SymMatrix planned_direct_info(int t, int g) {
  if (t < 3 || g < 1) throw InvalidArgument("planned information needs t >= 3, g >= 1");
  const double td = t;
  const double a = g * td * (td - 2.0) * (td + 1.0) / (td * td - td - 1.0);
  return SymMatrix(a * (Eigen::MatrixXd::Identity(t, t) - Eigen::MatrixXd::Ones(t, t) / td));
}

double planned_trace_mp(int t, int g) {
  if (t < 3 || g < 1) throw InvalidArgument("planned information needs t >= 3, g >= 1");
  const double td = t;
  return (td - 1.0) * (td * td - td - 1.0) / (g * td * (td - 2.0) * (td + 1.0));
}

double extreme_a(int t) {
  if (t < 4) throw InvalidArgument("extreme design formulas need t >= 4");
  const double td = t;
  return (std::pow(td, 4) - 5 * std::pow(td, 3) + 6 * td * td + td - 2) /
         (std::pow(td, 3) - 4 * td * td + 3 * td + 2);
}

double extreme_ml(int t) {
  const double a = extreme_a(t);
  const double td = t;
  return 1.0 - a * (td * td - td - 1.0) / ((td - 1.0) * (td - 1.0) * (td + 1.0));
}

SymMatrix extreme_minimal_direct_info(int t) {
  const double td = t;
  const double k = extreme_a(t) * td * (td - 2.0) * factorial(t - 2) / (td - 1.0);
  return SymMatrix(k * (Eigen::MatrixXd::Identity(t, t) - Eigen::MatrixXd::Ones(t, t) / td));
}

double efficiency_lower_bound(const ACriterion& minimal, int t, int m, int g) {
  if (!minimal.connected) {
    throw InvalidArgument("efficiency bound needs a connected minimal design");
  }
  const double tm1 = t - 1.0;
  return tm1 * tm1 / (g * mtr(t, m) * minimal.trace_mp);
}

MaxLoss max_loss(const CrossoverDesign& plan, int m) {
  if (m < 1 || m >= plan.periods() - 1) {
    throw InvalidArgument("maximum loss needs 1 <= m < p-1, got m=" + std::to_string(m));
  }
  MaxLoss out;
  // Both layouts are complete, so the orthogonal path applies.
  out.plan = a_criterion(direct_info(joint_info_orthogonal(plan)));
  out.minimal = a_criterion(direct_info(joint_info_orthogonal(truncate(plan, m))));
  out.ml = loss(out.plan, out.minimal);
  return out;
}

}  // namespace xover
