#include <doctest.h>

#include "support/near.hpp"

#include "support/oracles.hpp"
#include "xover/constructors.hpp"
#include "xover/error.hpp"
#include "xover/information.hpp"
#include "xover/numerics.hpp"

using namespace xover;
using Eigen::MatrixXd;

TEST_CASE("SymMatrix rejects asymmetric input") {
  MatrixXd m(2, 2);
  m << 1, 2, 2.1, 1;
  CHECK_THROWS_AS(SymMatrix{m}, NumericalError);
  m(1, 0) = 2.0 + 1e-14;
  const SymMatrix s(m);
  CHECK(s(0, 1) == s(1, 0));
  CHECK_THROWS_AS(SymMatrix{MatrixXd(2, 3)}, Error);
}

TEST_CASE("eigensym small cases") {
  const auto i4 = eigensym(SymMatrix::identity(4));
  for (int k = 0; k < 4; ++k) CHECK(near(i4.eigenvalues(k), 1.0, 1e-12));
  CHECK(i4.rank == 4);

  const auto j3 = eigensym(SymMatrix(MatrixXd::Ones(3, 3)));
  CHECK(std::abs(j3.eigenvalues(0)) < 1e-12);
  CHECK(std::abs(j3.eigenvalues(1)) < 1e-12);
  CHECK(near(j3.eigenvalues(2), 3.0, 1e-14));
  CHECK(j3.rank == 1);
  CHECK(near(j3.trace_mp, 1.0 / 3.0, 1e-12));

  const auto z = eigensym(SymMatrix::zero(3));
  CHECK(z.rank == 0);
  CHECK(z.trace_mp == 0.0);
}

TEST_CASE("eigensym matches closed forms on 2x2 and 3x3") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int trial = 0; trial < 200; ++trial) {
    const double a = u(rng), b = u(rng), d = u(rng);
    MatrixXd m2(2, 2);
    m2 << a, b, b, d;
    const auto e2 = eigensym(SymMatrix(m2));
    const auto o2 = oracle::eig2(a, b, d);
    CHECK(e2.eigenvalues(0) == doctest::Approx(o2[0]).epsilon(1e-12).scale(10));
    CHECK(e2.eigenvalues(1) == doctest::Approx(o2[1]).epsilon(1e-12).scale(10));

    Eigen::Matrix3d m3;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) m3(i, j) = m3(j, i) = u(rng);
    const auto e3 = eigensym(SymMatrix(MatrixXd(m3)));
    const auto o3 = oracle::eig3(m3);
    for (int k = 0; k < 3; ++k) {
      CHECK(e3.eigenvalues(k) == doctest::Approx(o3[k]).epsilon(1e-9).scale(10));
    }
  }
}

TEST_CASE("property: eigensym decomposition reconstructs random matrices") {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> z;
  for (int n : {1, 2, 5, 9, 16, 24}) {
    MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) a(i, j) = a(j, i) = z(rng);
    const auto s = eigensym(SymMatrix(a));
    const MatrixXd& v = s.eigenvectors;
    CHECK((v.transpose() * v - MatrixXd::Identity(n, n)).norm() < 1e-12 * n);
    CHECK((v * s.eigenvalues.asDiagonal() * v.transpose() - a).norm() < 1e-11 * n);
    for (int k = 1; k < n; ++k) CHECK(s.eigenvalues(k - 1) <= s.eigenvalues(k));
    const Eigen::VectorXd ref = oracle::spectrum(a);
    CHECK((ref - s.eigenvalues).norm() < 1e-10 * n);
  }
}

TEST_CASE("property: Penrose conditions on random PSD matrices") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 9;
    const int r = 1 + trial % n;
    const MatrixXd a = oracle::random_psd(rng, n, r);
    const SymMatrix sa(a);
    const MatrixXd g = moore_penrose(sa).matrix();
    const double scale = std::max(1.0, a.norm());
    CHECK((a * g * a - a).norm() < 1e-8 * scale);
    CHECK((g * a * g - g).norm() < 1e-8 * std::max(1.0, g.norm()));
    CHECK(((a * g).transpose() - a * g).norm() < 1e-8);
    CHECK(((g * a).transpose() - g * a).norm() < 1e-8);
    CHECK(eigensym(sa).rank == r);
    CHECK((g - oracle::pinv(a)).norm() < 1e-7 * std::max(1.0, g.norm()));
  }
}

TEST_CASE("moore_penrose of a completely symmetric matrix") {
  const int t = 5;
  const double a = 3.5;
  const MatrixXd c = a * (MatrixXd::Identity(t, t) - MatrixXd::Ones(t, t) / t);
  const MatrixXd g = moore_penrose(SymMatrix(c)).matrix();
  const MatrixXd expect = (MatrixXd::Identity(t, t) - MatrixXd::Ones(t, t) / t) / a;
  CHECK((g - expect).norm() < 1e-13);
}

TEST_CASE("rank threshold") {
  CHECK(near(rank_threshold(4, 0.0), 1e-12, 1e-12));
  CHECK(near(rank_threshold(10, 100.0), 1e-7, 1e-12));
  MatrixXd m = MatrixXd::Zero(3, 3);
  m(0, 0) = 1.0;
  m(1, 1) = 1e-13;
  CHECK(eigensym(SymMatrix(m)).rank == 1);
}

TEST_CASE("is_psd") {
  CHECK(is_psd(SymMatrix::identity(2), 1e-12));
  CHECK_FALSE(is_psd(-1.0 * SymMatrix::identity(2), 1e-12));
  const auto d = fixture("d2plan");
  const SymMatrix plan = direct_info(joint_info_projection(d));
  const SymMatrix minimal = direct_info(joint_info_projection(d, DropoutPattern::truncated(d, 1)));
  CHECK(is_psd(plan - minimal, 1e-9));
}

TEST_CASE("cycle_type") {
  const std::vector<int> id{0, 1, 2};
  CHECK(cycle_type(id) == std::vector<int>{1, 1, 1});
  const std::vector<int> tr{1, 0, 2, 3};
  CHECK(cycle_type(tr) == std::vector<int>{2, 1, 1});
  const IntMatrix u = coincidence(fixture("d2plan"), 0, 1).matrix;
  CHECK(cycle_type(u) == std::vector<int>{4});
  CHECK_THROWS(cycle_type(std::vector<int>{0, 0, 1}));
  CHECK_THROWS(cycle_type(IntMatrix::Ones(2, 2)));
}

TEST_CASE("property: cycle count equals multiplicity of eigenvalue 1 in P + P^T") {
  // For a permutation matrix P, the number of cycles equals dim ker(2I - P - P^T).
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 10;
    const auto perm = oracle::random_perm(rng, n);
    MatrixXd p = MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) p(i, perm[i]) = 1.0;
    const MatrixXd l = 2.0 * MatrixXd::Identity(n, n) - p - p.transpose();
    const auto s = eigensym(SymMatrix(l));
    const auto cyc = cycle_type(perm);
    CHECK(static_cast<int>(cyc.size()) == n - s.rank);
    int total = 0;
    for (int c : cyc) total += c;
    CHECK(total == n);
  }
}
