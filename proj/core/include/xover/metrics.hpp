#pragma once

#include <vector>

#include "xover/design.hpp"
#include "xover/numerics.hpp"

namespace xover {

// A-criterion summary of a direct-effects information matrix.
struct ACriterion {
  int rank = 0;
  bool connected = false;  // rank == t - 1
  double trace_mp = 0.0;   // trace of the Moore-Penrose inverse
  double h = 0.0;          // (t-1)/trace_mp when connected, else 0
  std::vector<double> eigenvalues;  // ascending, full spectrum
};

ACriterion a_criterion(const SymMatrix& direct);

// Relative loss of precision 1 - plan/imp of the traces.
struct Loss {
  double value = 1.0;
  bool defined = false;  // false when the implemented design is disconnected
};

Loss loss(const ACriterion& plan, const ACriterion& implemented);
// Scalar form; both traces must be positive.
double loss(double plan_trace_mp, double implemented_trace_mp);

// Eigenvalue floor for the minimal design, per unit replication.
// Both require m >= 1 and t >= 2m + 2.
double theta_lower(int t, int m);
double theta_lower_star(int t, int m);  // type-W_m designs

double uml(int t, int m, bool star);

struct ConnectCondition {
  long long value;  // (t-2m)[(t-m)^2-(t+1)-m(m+1)] - t(m+1)^2
  bool satisfied;   // value > 0
};

ConnectCondition connect_condition(int t, int m);

// Smallest t >= 2m + 2 for which connect_condition holds.
int t_star(int m);

// Upper bound on trace(C_D)/g over connected designs with t - m periods.
double mtr(int t, int m);

struct EfficiencyBounds {
  double el;
  double el_star;
};

EfficiencyBounds efficiency_bounds(int t, int m);

struct BoundsReport {
  int t;
  int m;
  double psi1;
  double theta_l;
  double theta_l_star;
  double uml;
  double uml_star;
  double mtr;
  double el;
  double el_star;
  long long condition15;
  bool connected_sufficient;
  int t_star_m;
};

BoundsReport bounds_report(int t, int m);

enum class SquareClass { A, B };

// theta_1..theta_{t-1} of the one-period minimal design. Requires t >= 4.
std::vector<double> class_ab_spectrum(int t, SquareClass cls);
// Requires t >= 5.
double class_ab_ml(int t, SquareClass cls);
double el_ab(int t, SquareClass cls);

// Completely symmetric direct information of a UBRMD with all periods.
SymMatrix planned_direct_info(int t, int g);
double planned_trace_mp(int t, int g);

// Design on all t! sequences, one-period minimal design. Requires t >= 4.
double extreme_a(int t);
double extreme_ml(int t);
SymMatrix extreme_minimal_direct_info(int t);

// (t-1)^2 / (g MTr(t,m) trace_mp) for a connected minimal design.
double efficiency_lower_bound(const ACriterion& minimal, int t, int m, int g);

struct MaxLoss {
  ACriterion plan;
  ACriterion minimal;
  Loss ml;
};

// Projection-path evaluation of the planned and minimal designs.
MaxLoss max_loss(const CrossoverDesign& plan, int m);

}  // namespace xover
