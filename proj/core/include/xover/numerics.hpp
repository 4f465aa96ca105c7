#pragma once

#include <span>
#include <vector>

#include <Eigen/Core>

#include "xover/design.hpp"

namespace xover {

// Dense real symmetric matrix. Construction accepts inputs that are symmetric
// to within 1e-12 relative and averages away the residual asymmetry.
class SymMatrix {
 public:
  static constexpr double kSymmetryTolerance = 1e-12;

  explicit SymMatrix(const Eigen::MatrixXd& m);

  static SymMatrix identity(int n);
  static SymMatrix zero(int n);

  int order() const noexcept { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& matrix() const noexcept { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  friend SymMatrix operator-(const SymMatrix& a, const SymMatrix& b);
  friend SymMatrix operator+(const SymMatrix& a, const SymMatrix& b);
  friend SymMatrix operator*(double k, const SymMatrix& a);

 private:
  Eigen::MatrixXd m_;
};

struct SpectralSummary {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // orthonormal columns, matching order
  int rank = 0;
  double trace_mp = 0.0;   // sum of 1/lambda over the nonzero spectrum
  double threshold = 0.0;  // |lambda| above this counts toward rank
  int sweeps = 0;

  std::vector<double> nonzero_eigenvalues() const;
};

// Eigenvalues at or below this magnitude are treated as structural zeros.
double rank_threshold(int n, double max_abs_eigenvalue);

// Cyclic Jacobi rotations. Converges when the off-diagonal Frobenius mass
// drops below 1e-14 of the matrix norm; throws NumericalError after 100
// sweeps.
SpectralSummary eigensym(const SymMatrix& m);

SymMatrix moore_penrose(const SymMatrix& m);

bool is_psd(const SymMatrix& m, double tol);

// Cycle lengths of a permutation, sorted descending. The vector form maps
// i -> perm[i]; the matrix form must have a single 1 in every row and column
// and maps row i to the column of its 1.
std::vector<int> cycle_type(std::span<const int> perm);
std::vector<int> cycle_type(const IntMatrix& perm_matrix);

}  // namespace xover
