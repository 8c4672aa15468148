#include <doctest.h>

#include "mlspectra/polysolve.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>

using namespace mlspectra;

namespace {

CPoly poly(int vars, std::initializer_list<std::pair<std::vector<int>, double>> terms) {
  CPoly p(vars);
  for (const auto& [e, c] : terms) p.add_term(e, Complex(c));
  return p;
}

// Coefficients of f(x, y) = sum c[i][j] x^i y^j with i + j <= deg.
using Dense2 = std::vector<std::vector<Complex>>;

Dense2 random_dense(int deg, Rng& rng) {
  Dense2 c(deg + 1, std::vector<Complex>(deg + 1, 0.0));
  for (int i = 0; i <= deg; ++i)
    for (int j = 0; i + j <= deg; ++j) c[i][j] = Complex(double(rng.uniform_int(-9, 9)));
  c[0][deg] = Complex(double(1 + rng.uniform_int(0, 8)));
  c[deg][0] = Complex(double(1 + rng.uniform_int(0, 8)));
  return c;
}

CPoly to_poly(const Dense2& c) {
  CPoly p(2);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < c[i].size(); ++j) p.add_term({int(i), int(j)}, c[i][j]);
  return p;
}

// Coefficients in y of f at a fixed x.
std::vector<Complex> in_y(const Dense2& c, Complex x) {
  const int deg = int(c.size()) - 1;
  std::vector<Complex> out(deg + 1, 0.0);
  for (int i = 0; i <= deg; ++i)
    for (int j = 0; i + j <= deg; ++j) out[j] += c[i][j] * std::pow(x, i);
  return out;
}

Complex sylvester_det(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  const int m = int(a.size()) - 1, n = int(b.size()) - 1, s = m + n;
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(s, s);
  for (int r = 0; r < n; ++r)
    for (int j = 0; j <= m; ++j) S(r, r + j) = a[m - j];
  for (int r = 0; r < m; ++r)
    for (int j = 0; j <= n; ++j) S(n + r, r + j) = b[n - j];
  return S.determinant();
}

// x-coordinates of the common roots: roots of Res_y(f, g), a polynomial of
// degree deg_f * deg_g recovered by interpolation.
std::vector<Complex> resultant_roots(const Dense2& f, const Dense2& g) {
  const int D = (int(f.size()) - 1) * (int(g.size()) - 1);
  Eigen::MatrixXcd V(D + 1, D + 1);
  Eigen::VectorXcd r(D + 1);
  for (int m = 0; m <= D; ++m) {
    const Complex x = std::polar(1.0, 2.0 * M_PI * m / (D + 1));
    for (int p = 0; p <= D; ++p) V(m, p) = std::pow(x, p);
    r(m) = sylvester_det(in_y(f, x), in_y(g, x));
  }
  const Eigen::VectorXcd coef = V.fullPivLu().solve(r);
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(D, D);
  for (int i = 1; i < D; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < D; ++i) companion(i, D - 1) = -coef(i) / coef(D);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion);
  std::vector<Complex> roots(es.eigenvalues().data(), es.eigenvalues().data() + D);
  return roots;
}

}  // namespace

TEST_CASE("univariate quadratic") {
  PolySystem sys{1, {poly(1, {{{2}, 1.0}, {{0}, -1.0}})}};
  const auto s = solve_total_degree(sys);
  REQUIRE(s.solutions.size() == 2);
  std::vector<double> xs;
  for (const auto& t : s.solutions) {
    CHECK(std::abs(t.point[0].imag()) < 1e-10);
    xs.push_back(t.point[0].real());
  }
  std::sort(xs.begin(), xs.end());
  CHECK(xs[0] == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(xs[1] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("linear system") {
  PolySystem sys{2, {poly(2, {{{1, 0}, 1.0}, {{0, 1}, 1.0}, {{0, 0}, -2.0}}), poly(2, {{{1, 0}, 1.0}, {{0, 1}, -1.0}})}};
  const auto s = solve_total_degree(sys);
  REQUIRE(s.solutions.size() == 1);
  CHECK(std::abs(s.solutions[0].point[0] - Complex(1.0)) < 1e-10);
  CHECK(std::abs(s.solutions[0].point[1] - Complex(1.0)) < 1e-10);
}

TEST_CASE("dense (2,3) systems have six solutions") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    CAPTURE(seed);
    Rng rng(1000 + seed);
    const Dense2 f = random_dense(2, rng), g = random_dense(3, rng);
    const PolySystem sys{2, {to_poly(f), to_poly(g)}};
    SolveOptions opts;
    opts.seed = seed;
    const auto s = solve_total_degree(sys, opts);
    auto roots = resultant_roots(f, g);
    REQUIRE(roots.size() == 6);
    CHECK(s.solutions.size() == 6);
    for (const auto& t : s.solutions) {
      CHECK(t.status == PathStatus::converged);
      CHECK(t.residual <= 1e-9);
      auto it = std::min_element(roots.begin(), roots.end(), [&](Complex a, Complex b) {
        return std::abs(a - t.point[0]) < std::abs(b - t.point[0]);
      });
      CHECK(std::abs(*it - t.point[0]) <= 1e-6 * (1.0 + std::abs(*it)));
      roots.erase(it);
    }
  }
}

TEST_CASE("same seed gives the same endpoints") {
  Rng rng(3);
  const Dense2 f = random_dense(2, rng), g = random_dense(3, rng);
  const PolySystem sys{2, {to_poly(f), to_poly(g)}};
  SolveOptions opts;
  opts.seed = 99;
  const auto a = solve_total_degree(sys, opts), b = solve_total_degree(sys, opts);
  REQUIRE(a.endpoints.size() == b.endpoints.size());
  for (std::size_t i = 0; i < a.endpoints.size(); ++i) CHECK(a.endpoints[i].point == b.endpoints[i].point);
}

TEST_CASE("non-square systems are rejected") {
  PolySystem sys{2, {poly(2, {{{1, 0}, 1.0}})}};
  CHECK_THROWS_AS(solve_total_degree(sys), std::invalid_argument);
}

TEST_CASE("projective deduplication") {
  const auto one = dedup_projective({{1.0, 2.0}, {2.0, 4.0}}, 1e-6);
  REQUIRE(one.solutions.size() == 1);
  CHECK(one.solutions[0].multiplicity == 2);
  CHECK(dedup_projective({{1.0, 0.0}, {0.0, 1.0}}, 1e-6).solutions.size() == 2);
  CHECK(dedup_projective({{Complex(0, 1), 1.0}, {-1.0, Complex(0, 1)}}, 1e-6).solutions.size() == 1);
}

TEST_CASE("linear systems agree with elimination") {
  Rng rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const int m = 2 + trial % 3;
    Eigen::MatrixXcd A(m, m);
    Eigen::VectorXcd b(m);
    PolySystem sys{m, {}};
    for (int i = 0; i < m; ++i) {
      CPoly f(m);
      for (int j = 0; j < m; ++j) {
        A(i, j) = rng.gaussian_complex();
        std::vector<int> e(m, 0);
        e[j] = 1;
        f.add_term(e, A(i, j));
      }
      b(i) = rng.gaussian_complex();
      f.add_term(std::vector<int>(m, 0), -b(i));
      sys.equations.push_back(f);
    }
    const Eigen::VectorXcd x = A.fullPivLu().solve(b);
    const auto s = solve_total_degree(sys);
    REQUIRE(s.solutions.size() == 1);
    for (int j = 0; j < m; ++j) CHECK(std::abs(s.solutions[0].point[j] - x(j)) <= 1e-10 * (1.0 + x.norm()));
  }
}

TEST_CASE("converged solutions are stable under extra Newton steps") {
  Rng rng(23);
  const Dense2 f = random_dense(2, rng), g = random_dense(3, rng);
  const PolySystem sys{2, {to_poly(f), to_poly(g)}};
  SolveOptions opts;
  const auto s = solve_total_degree(sys, opts);
  for (const auto& t : s.solutions) {
    CHECK(t.residual <= opts.residual_tol);
    const auto moved = newton_refine(sys, t.point, 3);
    double dist = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < moved.size(); ++i) {
      dist += std::norm(moved[i] - t.point[i]);
      norm += std::norm(t.point[i]);
    }
    CHECK(std::sqrt(dist) <= opts.dedup_tol / 10 * (1.0 + std::sqrt(norm)));
  }
}
