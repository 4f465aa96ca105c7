#pragma once

#include <optional>

#include <Eigen/Core>

#include "xover/design.hpp"
#include "xover/numerics.hpp"

namespace xover {

// Partitioned information matrix for direct (block 1) and carryover
// (block 2) treatment effects, after eliminating subject and period effects.
struct JointInfo {
  SymMatrix c11;
  Eigen::MatrixXd c12;
  SymMatrix c22;

  int treatments() const noexcept { return c11.order(); }
  SymMatrix joint() const;
};

// Builds observation-level design matrices over the observed cells and
// projects out [subjects | periods] with a Moore-Penrose generalized inverse.
// Works for any prefix dropout pattern.
JointInfo joint_info_projection(const CrossoverDesign& design,
                                const std::optional<DropoutPattern>& pattern = std::nullopt);

// Closed form from incidence counts. Valid only for a complete rectangular
// layout; throws DesignError if `pattern` drops any cell.
JointInfo joint_info_orthogonal(const CrossoverDesign& design,
                                const std::optional<DropoutPattern>& pattern = std::nullopt);

// C_D = C11 - C12 C22^+ C21.
SymMatrix direct_info(const JointInfo& info);
// C_R = C22 - C21 C11^+ C12.
SymMatrix residual_info(const JointInfo& info);

// Blocks of the minimal design (first t - m periods of a UBRMD) built from
// sums of tail coincidence matrices, plus the auxiliary matrix A whose
// inverse is a generalized inverse of C22 when t >= 2m + 2.
struct MinimalClosedForm {
  int t;
  int m;
  int g;
  SymMatrix c11;
  Eigen::MatrixXd c12;
  SymMatrix c22;
  SymMatrix a;
  double lambda_min_a;  // closed-form smallest eigenvalue of A
  bool a_path_available;
  std::optional<SymMatrix> a_inverse;  // certified: C22 A^-1 C22 = C22

  JointInfo joint() const { return {c11, c12, c22}; }
};

// Requires a UBRMD and 1 <= m < t - 1.
MinimalClosedForm minimal_closed_form(const CrossoverDesign& design, int m);

// (g / (t-m)) [(t-m)^2 - (t+1) - m(m+1)].
double lambda_min_a_formula(int t, int m, int g);

// C11 - C12 A^-1 C21. Throws InvalidArgument when t < 2m + 2.
SymMatrix direct_info_a_path(const MinimalClosedForm& form);

// Carryover information of the one-period minimal design from U = U_01.
// Requires a UBRMD with t >= 3.
SymMatrix residual_info_minimal_m1(const CrossoverDesign& design);

// True when the contrast c (c^T 1 = 0) lies in the column space of `info`.
bool estimable(const SymMatrix& info, const Eigen::VectorXd& contrast);

}  // namespace xover
