#include <doctest.h>

#include "mlspectra/builtins.hpp"
#include "mlspectra/eps_adjugate.hpp"
#include "mlspectra/errors.hpp"
#include "mlspectra/linalg.hpp"
#include "mlspectra/random.hpp"
#include "mlspectra/subspace.hpp"

using namespace mlspectra;

namespace {

SymMatQ diag(std::initializer_list<int> d) {
  std::vector<Rational> v;
  for (int x : d) v.emplace_back(x);
  return SymMatQ::diagonal(v);
}

SymMatQ random_rational(int n, Rng& rng) {
  SymMatQ m(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m.set(i, j, Rational(rng.uniform_int(-9, 9), rng.uniform_int(1, 4)));
  return m;
}

Matrix<Rational> scaled_identity(int n, const Rational& s) {
  Matrix<Rational> m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = s;
  return m;
}

// Inverse from the explicit 3x3 cofactor formula, independent of adjugate().
Matrix<Rational> cofactor_inverse3(const SymMatQ& y) {
  Matrix<Rational> inv(3, 3);
  const Rational det = y(0, 0) * (y(1, 1) * y(2, 2) - y(1, 2) * y(2, 1)) -
                       y(0, 1) * (y(1, 0) * y(2, 2) - y(1, 2) * y(2, 0)) +
                       y(0, 2) * (y(1, 0) * y(2, 1) - y(1, 1) * y(2, 0));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      inv(i, j) = (y(r0, c0) * y(r1, c1) - y(r0, c1) * y(r1, c0)) / det;
    }
  return inv;
}

}  // namespace

TEST_CASE("adjugate of small matrices") {
  CHECK(adjugate(diag({1, 1, 0})) == diag({0, 0, 1}));

  SymMatQ m(2);
  m.set(0, 0, Rational(3));
  m.set(0, 1, Rational(-7, 2));
  m.set(1, 1, Rational(5));
  SymMatQ want(2);
  want.set(0, 0, Rational(5));
  want.set(0, 1, Rational(7, 2));
  want.set(1, 1, Rational(3));
  CHECK(adjugate(m) == want);
}

TEST_CASE("adjugate identity and rank behaviour") {
  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 4;
    const SymMatQ m = random_rational(n, rng);
    CHECK(m.dense() * adjugate(m).dense() == scaled_identity(n, determinant(m)));
  }
  for (int n = 2; n <= 4; ++n)
    for (int trial = 0; trial < 5; ++trial) {
      const SymMatQ corank1 = random_integer_matrix_of_rank(n, n - 1, 100 * n + trial);
      REQUIRE(exact_rank(corank1.dense()) == n - 1);
      CHECK(exact_rank(adjugate(corank1).dense()) == 1);
      if (n >= 3) {
        const SymMatQ corank2 = random_integer_matrix_of_rank(n, n - 2, 200 * n + trial);
        REQUIRE(exact_rank(corank2.dense()) == n - 2);
        CHECK(adjugate(corank2).is_zero());
      }
    }

  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 4;
    SymMatR m(n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) m.set(i, j, rng.normal());
    const Eigen::MatrixXd err =
        to_eigen(m) * to_eigen(adjugate(m)) - determinant(m) * Eigen::MatrixXd::Identity(n, n);
    CHECK(err.norm() <= 1e-10 * std::max(1.0, frobenius_norm(m) * frobenius_norm(adjugate(m))));
  }
}

TEST_CASE("trace pairing") {
  CHECK(trace_pairing(SymMatQ::identity(3), SymMatQ::identity(3)) == Rational(3));
  CHECK(trace_pairing(SymMatQ::unit(3, 0, 0), SymMatQ::unit(3, 1, 1)) == Rational(0));
  // Off-diagonal units count twice.
  CHECK(trace_pairing(SymMatQ::unit(3, 0, 1), SymMatQ::unit(3, 0, 1)) == Rational(2));

  Rng rng(5);
  SymMatQ y = random_rational(3, rng);
  while (is_exact_zero(determinant(y))) y = random_rational(3, rng);
  CHECK(trace_pairing(SymMatQ::from_dense(cofactor_inverse3(y)), y) == Rational(3));

  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 4;
    const SymMatQ a = random_rational(n, rng), b = random_rational(n, rng), c = random_rational(n, rng);
    const Rational s(rng.uniform_int(-5, 5), rng.uniform_int(1, 3));
    CHECK(trace_pairing(a, b) == trace_pairing(b, a));
    CHECK(trace_pairing(a * s + b, c) == s * trace_pairing(a, c) + trace_pairing(b, c));
  }
}

TEST_CASE("annihilator") {
  SUBCASE("nonclosed pencil in 2x2") {
    const auto P = annihilator(builtin_subspace("nonclosed-2x2"));
    REQUIRE(P.k() == 1);
    CHECK(same_span(P, LinearSubspace::rational(2, {SymMatQ::unit(2, 1, 1)})));
  }
  SUBCASE("diagonal net") {
    const auto P = annihilator(builtin_subspace("diagonal-net"));
    CHECK(same_span(P, builtin_subspace("diagonal-net-polar")));
  }
  SUBCASE("full space has zero annihilator") {
    const auto L = sample_generic_subspace(2, 3, 9);
    CHECK(annihilator(L).k() == 0);
  }
  SUBCASE("dimension and double annihilator") {
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 2 + trial % 3, N = n * (n + 1) / 2;
      const auto L = sample_generic_subspace(n, 1 + trial % (N - 1), 300 + trial);
      const auto P = annihilator(L);
      CHECK(L.k() + P.k() == N);
      CHECK(same_span(annihilator(P), L));
      for (const auto& a : L.exact_basis())
        for (const auto& b : P.exact_basis()) CHECK(is_exact_zero(trace_pairing(a, b)));
    }
  }
}

TEST_CASE("numeric rank") {
  CHECK(numeric_rank(diag({1, 1, 0}).cast<double>()) == 2);
  CHECK(numeric_rank(SymMatR(3)) == 0);
  for (int n = 2; n <= 4; ++n) {
    const SymMatQ x = random_integer_matrix_of_rank(n, n - 1, 40 + n);
    const SymMatQ adj = adjugate(x);
    REQUIRE(exact_rank(adj.dense()) == 1);
    CHECK(numeric_rank(adj.cast<double>()) == 1);
  }
}

TEST_CASE("generic subspaces") {
  const auto full = sample_generic_subspace(2, 3, 1);
  CHECK(full.k() == 3);
  CHECK(annihilator(full).k() == 0);

  const auto a = sample_generic_subspace(3, 4, 77), b = sample_generic_subspace(3, 4, 77);
  CHECK(a.exact_basis() == b.exact_basis());

  const auto L = sample_generic_subspace(3, 3, 12);
  Rng rng(3);
  std::vector<Rational> c;
  for (int i = 0; i < 3; ++i) c.emplace_back(rng.uniform_int(-20, 20));
  CHECK_FALSE(is_exact_zero(determinant(L.combine<Rational>(c))));
}

TEST_CASE("dependent bases are rejected") {
  CHECK_THROWS_AS(LinearSubspace::rational(2, {SymMatQ::identity(2), SymMatQ::identity(2) * Rational(3)}),
                  DependentBasis);
}

TEST_CASE("eps adjugate of the blow-up example") {
  const auto basis = example53_basis();
  const std::vector<SymMatQ> dirs(basis.begin() + 1, basis.end());
  const std::vector<std::string> names{"e", "b01", "b02", "b1", "b2"};
  auto p = [&](const char* s) { return parse_polynomial(s, names); };

  const auto t = eps_adjugate_leading_term(basis[0], dirs, {p("b01"), p("b02"), p("b1"), p("b2")});
  CHECK(t.d == 1);
  CHECK(t.Z(0, 0).is_zero());
  CHECK(t.Z(0, 1).is_zero());
  CHECK(t.Z(0, 2).is_zero());
  CHECK(t.Z(1, 1) == p("-b1"));
  CHECK(t.Z(1, 2) == p("-b2"));
  CHECK(t.Z(2, 2) == p("b1"));
  CHECK(t.adjugate(0, 0) == p("-e^2*(b1^2+b2^2)"));
  CHECK(t.adjugate(1, 1) == p("-e*(b1+e*b01^2)"));
  CHECK(t.adjugate(1, 2) == p("-e*(b2-e*b01*b02)"));

  const std::vector<std::string> cn{"e", "c01", "c02", "c1", "c2"};
  auto c = [&](const char* s) { return parse_polynomial(s, cn); };
  const auto u = eps_adjugate_leading_term(basis[0], dirs, {c("c01"), c("e*c02"), c("e*c1"), c("e*c2")});
  CHECK(u.d == 2);
  CHECK(u.Z(1, 1) == c("-(c1+c01^2)"));
  CHECK(u.adjugate(0, 2) == c("e^3*(e*c02*c2-c01*c1)"));
  CHECK(u.adjugate(2, 2) == c("e^2*(c1-e^2*c02^2)"));
  const auto z = constant_matrix(substitute_params(u.Z, {Rational(1), Rational(0), Rational(1), Rational(0)}));
  REQUIRE(z.has_value());
  CHECK((*z)(1, 1) == Rational(-2));
  CHECK((*z)(1, 2) == Rational(0));
  CHECK((*z)(2, 2) == Rational(1));
}

TEST_CASE("eps adjugate at an invertible point is the adjugate") {
  Rng rng(21);
  const std::vector<std::string> names{"e", "t1", "t2"};
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 3;
    SymMatQ x = random_rational(n, rng);
    while (is_exact_zero(determinant(x))) x = random_rational(n, rng);
    const std::vector<SymMatQ> dirs{random_rational(n, rng), random_rational(n, rng)};
    const auto t = eps_adjugate_leading_term(
        x, dirs, {parse_polynomial("t1", names), parse_polynomial("t2+e", names)});
    CHECK(t.d == 0);
    const auto z = constant_matrix(t.Z);
    REQUIRE(z.has_value());
    CHECK(*z == adjugate(x));
  }
}

TEST_CASE("eps adjugate errors") {
  const auto basis = example53_basis();
  const std::vector<std::string> names{"e", "t"};
  CHECK_THROWS_AS(eps_adjugate_leading_term(basis[0], {basis[1]}, {QPoly(2)}), std::invalid_argument);
  // Rank at most two in 4x4, so every cofactor vanishes.
  CHECK_THROWS_AS(eps_adjugate_leading_term(SymMatQ::unit(4, 0, 0), {SymMatQ::unit(4, 1, 1)},
                                            {parse_polynomial("t", names)}),
                  DegenerateAdjugate);
}
