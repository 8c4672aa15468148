#include <doctest.h>

#include "mlspectra/badness.hpp"
#include "mlspectra/builtins.hpp"
#include "mlspectra/linalg.hpp"
#include "mlspectra/mlgeometry.hpp"

#include <Eigen/Eigenvalues>

using namespace mlspectra;

namespace {

double lambda_min(const Eigen::MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

// Best lambda_min(M) / |M| over M in L found by random-restart hill climbing.
double hill_climb_lambda_min(const LinearSubspace& L, int starts, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Eigen::MatrixXd> basis;
  for (const auto& b : L.basis()) basis.push_back(to_eigen(b));
  auto value = [&](const Eigen::VectorXd& c) {
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(L.n(), L.n());
    for (int i = 0; i < L.k(); ++i) m += c(i) * basis[i];
    const double norm = m.norm();
    return norm == 0.0 ? -1.0 : lambda_min(m) / norm;
  };
  double best = -1.0;
  for (int s = 0; s < starts; ++s) {
    Eigen::VectorXd c(L.k());
    for (int i = 0; i < L.k(); ++i) c(i) = rng.normal();
    double f = value(c), step = 1.0;
    while (step > 1e-9) {
      bool improved = false;
      for (int trial = 0; trial < 20 && !improved; ++trial) {
        Eigen::VectorXd d(L.k());
        for (int i = 0; i < L.k(); ++i) d(i) = rng.normal();
        const Eigen::VectorXd cand = c + step * c.norm() * d.normalized();
        const double g = value(cand);
        if (g > f) {
          c = cand;
          f = g;
          improved = true;
        }
      }
      if (!improved) step *= 0.5;
    }
    best = std::max(best, f);
  }
  return best;
}

// span{X, B_1, ..., B_{k-1}} with X = diag(I_s, 0) and random integer B_i
// orthogonal to Y = diag(0, I_{n-s}).
LinearSubspace face_construction(int n, int s, int k, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<SymMatQ> basis;
  SymMatQ X(n);
  for (int i = 0; i < s; ++i) X.set(i, i, Rational(1));
  basis.push_back(X);
  while (int(basis.size()) < k) {
    SymMatQ B(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) B.set(i, j, Rational(rng.uniform_int(-5, 5)));
    Rational tail(0);
    for (int i = s; i < n - 1; ++i) tail += B(i, i);
    B.set(n - 1, n - 1, -tail);
    basis.push_back(B);
  }
  return LinearSubspace::rational(n, basis);
}

}  // namespace

TEST_CASE("maximal PSD rank") {
  SUBCASE("diagonal net contains the identity") {
    const auto r = max_rank_psd(builtin_subspace("diagonal-net"), 1);
    CHECK(r.ok);
    CHECK(r.rank == 3);
  }
  SUBCASE("nonclosed pencil") {
    const auto r = max_rank_psd(builtin_subspace("nonclosed-2x2"), 1);
    REQUIRE(r.ok);
    CHECK(r.rank == 1);
    CHECK(angular_distance(r.W.cast<Complex>(), SymMatC::unit(2, 0, 0)) <= 1e-9);
  }
  SUBCASE("off-diagonal net has no PSD element") {
    const auto r = max_rank_psd(builtin_subspace("diagonal-net-polar"), 1);
    CHECK(r.ok);
    CHECK(r.rank == 0);
  }
  SUBCASE("face through diag(I_s, 0)") {
    for (int s = 1; s <= 3; ++s) {
      CAPTURE(s);
      const int n = 4;
      const auto L = face_construction(n, s, 4, 30 + s);
      // Y = diag(0, I_{n-s}) lies in the annihilator, so a PSD W in L has
      // WY = 0 and rank at most s; X itself attains s. No definite element
      // shows up from 100 random starts either.
      CHECK(hill_climb_lambda_min(L, 100, 90 + s) <= 1e-9);
      const auto r = max_rank_psd(L, 5);
      REQUIRE(r.ok);
      CHECK(r.rank == s);
      const Eigen::MatrixXd W = to_eigen(r.W);
      CHECK(lambda_min(W) >= -1e-9 * W.norm());
      CHECK(W.bottomRightCorner(n - s, n - s).norm() <= 1e-9 * W.norm());
    }
  }
}

TEST_CASE("max lambda_min on the trace slice") {
  std::vector<Eigen::MatrixXd> basis;
  for (int i = 0; i < 3; ++i) basis.push_back(to_eigen(SymMatR::unit(3, i, i)));
  Eigen::VectorXd c;
  CHECK(max_min_eigenvalue(basis, &c) == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
  for (int i = 0; i < 3; ++i) CHECK(c(i) == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("nonclosed pencil is bad") {
  const auto c = pataki_certificate(builtin_subspace("nonclosed-2x2"), 1);
  CHECK(c.s_L == 1);
  CHECK(c.s_Lperp == 1);
  CHECK(c.cond10);
  CHECK_FALSE(c.cond11);
  CHECK(c.verdict == Verdict::bad);
  REQUIRE(c.violating_exact.has_value());
  const auto& v = *c.violating_exact;
  CHECK(is_exact_zero(v(0, 0)));
  CHECK(is_exact_zero(v(1, 1)));
  CHECK_FALSE(is_exact_zero(v(0, 1)));
}

TEST_CASE("verdicts agree with ML-maximality") {
  SUBCASE("diagonal net") {
    const auto L = builtin_subspace("diagonal-net");
    const auto c = pataki_certificate(L, 2);
    CHECK(c.verdict == Verdict::not_bad);
    CHECK(c.s_L == 3);
    CHECK(c.cond11_vacuous);
    CHECK(ml_report(L, 2).is_ml_maximal);
  }
  SUBCASE("Type C net") {
    const auto L = builtin_subspace("type-c-net");
    const auto c = pataki_certificate(L, 2);
    CHECK(c.verdict == Verdict::bad);
    CHECK_FALSE(c.cond10);
    CHECK_FALSE(ml_report(L, 2).is_ml_maximal);
  }
  SUBCASE("generic sample") {
    const auto L = sample_generic_subspace(3, 3, 7);
    CHECK(pataki_certificate(L, 7).verdict == Verdict::not_bad);
    CHECK(ml_report(L, 7).is_ml_maximal);
  }
  SUBCASE("constructed tangency") {
    for (int k = 2; k <= 3; ++k) {
      CAPTURE(k);
      const auto t = tangency_subspace(3, k, 800 + k);
      const auto c = pataki_certificate(t.L, 3);
      CHECK(c.verdict == Verdict::bad);
      CHECK(c.s_L == 2);
      CHECK(c.s_Lperp == 1);
      CHECK_FALSE(c.cond11);
      CHECK_FALSE(ml_report(t.L, 3).is_ml_maximal);
    }
  }
}

TEST_CASE("certificate transform is orthogonal") {
  const auto c = pataki_certificate(tangency_subspace(3, 2, 4).L, 9);
  const Eigen::MatrixXd& Q = c.transform;
  REQUIRE(Q.rows() == 3);
  CHECK((Q.transpose() * Q - Eigen::MatrixXd::Identity(3, 3)).norm() <= 1e-10);
}

TEST_CASE("PSD rank is monotone under inclusion") {
  for (int trial = 0; trial < 4; ++trial) {
    CAPTURE(trial);
    const auto t = tangency_subspace(3, 3, 900 + trial);
    const auto& b = t.L.exact_basis();
    const auto inner = LinearSubspace::rational(3, {b[1]});
    const auto middle = LinearSubspace::rational(3, {b[0], b[1]});
    const int s1 = max_rank_psd(inner, 1).rank, s2 = max_rank_psd(middle, 1).rank, s3 = max_rank_psd(t.L, 1).rank;
    CHECK(s1 <= s2);
    CHECK(s2 <= s3);
    CHECK(s2 >= 2);
  }
  const auto gen = sample_generic_subspace(4, 5, 3);
  const auto& g = gen.exact_basis();
  int prev = 0;
  for (int j = 1; j <= gen.k(); ++j) {
    const auto sub = LinearSubspace::rational(4, std::vector<SymMatQ>(g.begin(), g.begin() + j));
    const int s = max_rank_psd(sub, 2).rank;
    CHECK(s >= prev);
    prev = s;
  }
}

TEST_CASE("cond11 does not depend on the chosen diagonalization") {
  std::vector<LinearSubspace> cases{builtin_subspace("nonclosed-2x2"), builtin_subspace("type-c-net"),
                                    tangency_subspace(3, 2, 61).L, tangency_subspace(3, 3, 62).L,
                                    sample_generic_subspace(3, 4, 63)};
  for (std::size_t i = 0; i < cases.size(); ++i) {
    CAPTURE(i);
    const auto first = pataki_certificate(cases[i], 1);
    for (std::uint64_t seed = 2; seed <= 5; ++seed) {
      const auto other = pataki_certificate(cases[i], seed);
      CHECK(other.cond11 == first.cond11);
      CHECK(other.verdict == first.verdict);
      CHECK(other.s_L == first.s_L);
      CHECK(other.s_Lperp == first.s_Lperp);
    }
  }
}
