#include "xover/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "xover/error.hpp"

namespace xover {

SymMatrix::SymMatrix(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) {
    throw InvalidArgument("symmetric matrix must be square, got " +
                          std::to_string(m.rows()) + "x" +
                          std::to_string(m.cols()));
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (m.size() > 0 && !(asym <= kSymmetryTolerance * scale)) {
    throw NumericalError("matrix is not symmetric (max asymmetry " +
                         std::to_string(asym) + ")");
  }
  m_ = 0.5 * (m + m.transpose());
}

SymMatrix SymMatrix::identity(int n) {
  return SymMatrix(Eigen::MatrixXd::Identity(n, n));
}

SymMatrix SymMatrix::zero(int n) {
  return SymMatrix(Eigen::MatrixXd::Zero(n, n));
}

SymMatrix operator-(const SymMatrix& a, const SymMatrix& b) {
  return SymMatrix(a.m_ - b.m_);
}

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
  return SymMatrix(a.m_ + b.m_);
}

SymMatrix operator*(double k, const SymMatrix& a) { return SymMatrix(k * a.m_); }

std::vector<double> SpectralSummary::nonzero_eigenvalues() const {
  std::vector<double> out;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    if (std::abs(eigenvalues(i)) > threshold) out.push_back(eigenvalues(i));
  }
  return out;
}

double rank_threshold(int n, double max_abs_eigenvalue) {
  return std::max(n * max_abs_eigenvalue * 1e-10, 1e-12);
}

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kConvergence = 1e-14;

double off_diagonal_norm(const Eigen::MatrixXd& a) {
  double sum = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j) sum += a(i, j) * a(i, j);
    }
  }
  return std::sqrt(sum);
}

}  // namespace

SpectralSummary eigensym(const SymMatrix& m) {
  const int n = m.order();
  Eigen::MatrixXd a = m.matrix();
  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  const double norm = a.norm();

  int sweeps = 0;
  bool converged = false;
  for (; sweeps <= kMaxSweeps; ++sweeps) {
    if (off_diagonal_norm(a) <= kConvergence * norm) {
      converged = true;
      break;
    }
    if (sweeps == kMaxSweeps) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged) {
    throw NumericalError("Jacobi eigensolver did not converge in " +
                         std::to_string(kMaxSweeps) + " sweeps");
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a(i, i) < a(j, j); });

  SpectralSummary out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (int i = 0; i < n; ++i) {
    out.eigenvalues(i) = a(order[i], order[i]);
    out.eigenvectors.col(i) = v.col(order[i]);
  }
  const double max_abs = n > 0 ? out.eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  out.threshold = rank_threshold(n, max_abs);
  for (int i = 0; i < n; ++i) {
    if (std::abs(out.eigenvalues(i)) > out.threshold) {
      ++out.rank;
      out.trace_mp += 1.0 / out.eigenvalues(i);
    }
  }
  out.sweeps = sweeps;
  return out;
}

SymMatrix moore_penrose(const SymMatrix& m) {
  const SpectralSummary spec = eigensym(m);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(m.order());
  for (int i = 0; i < m.order(); ++i) {
    if (std::abs(spec.eigenvalues(i)) > spec.threshold) {
      inv(i) = 1.0 / spec.eigenvalues(i);
    }
  }
  return SymMatrix(spec.eigenvectors * inv.asDiagonal() *
                   spec.eigenvectors.transpose());
}

bool is_psd(const SymMatrix& m, double tol) {
  if (m.order() == 0) return true;
  return eigensym(m).eigenvalues(0) >= -tol;
}

std::vector<int> cycle_type(std::span<const int> perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<char> seen(n, 0);
  for (int x : perm) {
    if (x < 0 || x >= n || seen[x]) {
      throw InvalidArgument("not a permutation of 0.." + std::to_string(n - 1));
    }
    seen[x] = 1;
  }
  std::fill(seen.begin(), seen.end(), 0);
  std::vector<int> cycles;
  for (int start = 0; start < n; ++start) {
    if (seen[start]) continue;
    int len = 0;
    for (int x = start; !seen[x]; x = perm[x]) {
      seen[x] = 1;
      ++len;
    }
    cycles.push_back(len);
  }
  std::sort(cycles.begin(), cycles.end(), std::greater<>());
  return cycles;
}

std::vector<int> cycle_type(const IntMatrix& perm_matrix) {
  if (perm_matrix.rows() != perm_matrix.cols()) {
    throw InvalidArgument("permutation matrix must be square");
  }
  const int n = static_cast<int>(perm_matrix.rows());
  std::vector<int> perm(n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int x = perm_matrix(i, j);
      if (x == 1) {
        if (perm[i] != -1) {
          throw InvalidArgument("row " + std::to_string(i) +
                                " has more than one nonzero entry");
        }
        perm[i] = j;
      } else if (x != 0) {
        throw InvalidArgument("permutation matrix entries must be 0 or 1");
      }
    }
    if (perm[i] == -1) {
      throw InvalidArgument("row " + std::to_string(i) + " has no nonzero entry");
    }
  }
  return cycle_type(std::span<const int>(perm));
}

}  // namespace xover
