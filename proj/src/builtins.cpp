#include "mlspectra/builtins.hpp"

#include "mlspectra/errors.hpp"
#include "mlspectra/random.hpp"

namespace mlspectra {

namespace {

SymMatQ from_rows(int n, std::initializer_list<int> entries) {
  Matrix<Rational> a(n, n);
  int idx = 0;
  for (int v : entries) {
    a(idx / n, idx % n) = Rational(v);
    ++idx;
  }
  return SymMatQ::from_dense(a);
}

SymMatQ sym_unit(int n, int i, int j) { return SymMatQ::unit(n, i, j); }

}  // namespace

std::vector<BuiltinInfo> builtin_catalog() {
  return {
      {"type-c-net", "net of conics of Type C: span(E11, E13+E31+E22, E23+E32)"},
      {"diagonal-net", "diagonal 3x3 matrices"},
      {"diagonal-net-polar", "annihilator of the diagonal net (off-diagonal 3x3 matrices)"},
      {"identity-line", "span of the 3x3 identity"},
      {"nonclosed-2x2", "span(E11, E12+E21) in 2x2 symmetric matrices"},
      {"example53", "polar of diag(0,1,1) with basis X, B01, B02, B1, B2"},
      {"segre-21-pencil", "pencil span([[0,1,0],[1,1,0],[0,0,2]], [[0,1,0],[1,0,0],[0,0,1]]) of Segre symbol [2,1]"},
  };
}

std::vector<SymMatQ> example53_basis() {
  return {
      sym_unit(3, 0, 0),
      sym_unit(3, 0, 2),
      sym_unit(3, 0, 1),
      from_rows(3, {0, 0, 0, 0, 1, 0, 0, 0, -1}),
      sym_unit(3, 1, 2),
  };
}

LinearSubspace builtin_subspace(const std::string& name) {
  if (name == "type-c-net") {
    return LinearSubspace::rational(3, {from_rows(3, {1, 0, 0, 0, 0, 0, 0, 0, 0}),
                                        from_rows(3, {0, 0, 1, 0, 1, 0, 1, 0, 0}),
                                        from_rows(3, {0, 0, 0, 0, 0, 1, 0, 1, 0})});
  }
  if (name == "diagonal-net") {
    return LinearSubspace::rational(3, {sym_unit(3, 0, 0), sym_unit(3, 1, 1), sym_unit(3, 2, 2)});
  }
  if (name == "diagonal-net-polar") {
    return LinearSubspace::rational(3, {sym_unit(3, 0, 1), sym_unit(3, 0, 2), sym_unit(3, 1, 2)});
  }
  if (name == "identity-line") return LinearSubspace::rational(3, {SymMatQ::identity(3)});
  if (name == "nonclosed-2x2") return LinearSubspace::rational(2, {sym_unit(2, 0, 0), sym_unit(2, 0, 1)});
  if (name == "example53") return LinearSubspace::rational(3, example53_basis());
  if (name == "segre-21-pencil") {
    return LinearSubspace::rational(3, {from_rows(3, {0, 1, 0, 1, 1, 0, 0, 0, 2}),
                                        from_rows(3, {0, 1, 0, 1, 0, 0, 0, 0, 1})});
  }
  std::string known;
  for (const auto& b : builtin_catalog()) known += (known.empty() ? "" : ", ") + b.name;
  throw LoadError("unknown builtin \"" + name + "\" (known: " + known + ")");
}

TangencyConstruction tangency_subspace(int n, int k, std::uint64_t seed) {
  if (n < 2 || k < 1 || k > n * (n + 1) / 2 - 1)
    throw std::invalid_argument("tangency_subspace: need n >= 2 and 1 <= k < n(n+1)/2");
  Rng rng(seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<Rational> w(static_cast<std::size_t>(n));
    bool zero = true;
    for (auto& v : w) {
      v = Rational(rng.uniform_int(-3, 3));
      zero = zero && is_exact_zero(v);
    }
    if (zero) continue;
    // X0 = sum of a a^T over a rational basis of w-perp, cleared to integers.
    Matrix<Rational> wt(1, n);
    for (int i = 0; i < n; ++i) wt(0, i) = w[std::size_t(i)];
    Matrix<Rational> mix(n - 1, n - 1);
    for (int i = 0; i < n - 1; ++i)
      for (int j = 0; j < n - 1; ++j) mix(i, j) = Rational(rng.uniform_int(-3, 3));
    const auto perp = exact_nullspace(wt);
    SymMatQ X0(n);
    for (int c = 0; c < n - 1; ++c) {
      std::vector<Rational> a(std::size_t(n), Rational(0));
      for (int j = 0; j < n - 1; ++j)
        for (int i = 0; i < n; ++i) a[std::size_t(i)] += mix(c, j) * perp[std::size_t(j)][std::size_t(i)];
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) X0.at(i, j) += a[std::size_t(i)] * a[std::size_t(j)];
    }
    if (exact_rank(X0.dense()) != n - 1) continue;
    Rational wtw(0);
    for (const auto& v : w) wtw += v * v;
    std::vector<SymMatQ> basis{X0};
    for (int b = 1; b < k; ++b) {
      SymMatQ B(n);
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) B.set(i, j, Rational(rng.uniform_int(-5, 5)));
      Rational q(0);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) q += w[std::size_t(i)] * w[std::size_t(j)] * B(i, j);
      // Remove the w w^T component so that w^T B w = 0.
      const Rational f = q / (wtw * wtw);
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) B.at(i, j) -= f * w[std::size_t(i)] * w[std::size_t(j)];
      basis.push_back(std::move(B));
    }
    try {
      return {LinearSubspace::rational(n, std::move(basis)), X0, w};
    } catch (const DependentBasis&) {
    }
  }
  throw SolverError("tangency_subspace: no independent sample after 100 attempts");
}

LinearSubspace polar_of(const SymMatQ& A) { return annihilator(LinearSubspace::rational(A.n(), {A})); }

SymMatQ random_integer_matrix_of_rank(int n, int rank, std::uint64_t seed) {
  Rng rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    // Sum of `rank` signed rank-one terms v v^T, or a dense draw at full rank.
    SymMatQ m(n);
    if (rank == n) {
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m.set(i, j, Rational(rng.uniform_int(-5, 5)));
    } else {
      for (int r = 0; r < rank; ++r) {
        std::vector<std::int64_t> v(static_cast<std::size_t>(n));
        for (auto& x : v) x = rng.uniform_int(-3, 3);
        const Rational sign(rng.uniform_int(0, 1) == 0 ? -1 : 1);
        for (int i = 0; i < n; ++i)
          for (int j = i; j < n; ++j) m.at(i, j) += sign * Rational(v[std::size_t(i)] * v[std::size_t(j)]);
      }
    }
    if (exact_rank(m.dense()) == rank) return m;
  }
  throw SolverError("random_integer_matrix_of_rank: no sample of the requested rank");
}

}  // namespace mlspectra
