#include <doctest.h>

#include "mlspectra/builtins.hpp"
#include "mlspectra/linalg.hpp"
#include "mlspectra/mlgeometry.hpp"

#include <map>

using namespace mlspectra;

namespace {

constexpr std::uint64_t kSeed = 4242;

const MLReport& report(const std::string& name) {
  static std::map<std::string, MLReport> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, ml_report(builtin_subspace(name), kSeed)).first;
  return it->second;
}

SymMatC complex_of(const SymMatQ& m) { return m.cast<Complex>(); }

}  // namespace

TEST_CASE("Type C net") {
  const auto& r = report("type-c-net");
  CHECK(r.ml_degree == 2);
  CHECK(r.reciprocal_degree == 3);
  CHECK_FALSE(r.is_ml_maximal);
  CHECK(r.tangency.witnesses.empty());
  REQUIRE(r.ckn.witness.has_value());
  const auto& w = *r.ckn.witness;
  CHECK(w.residual <= 1e-7);
  CHECK(angular_distance(w.Y, SymMatC::unit(3, 2, 2)) <= 1e-6);
  CHECK(r.violations.empty());
}

TEST_CASE("polar of the diagonal net") {
  const auto& r = report("diagonal-net-polar");
  CHECK(r.ml_degree == 1);
  CHECK(r.reciprocal_degree == 4);
  CHECK_FALSE(r.is_ml_maximal);
  CHECK(r.violations.empty());
}

TEST_CASE("diagonal net") {
  const auto& r = report("diagonal-net");
  CHECK(r.reciprocal_degree == 1);
  CHECK(r.is_ml_maximal);
  CHECK(r.tangency.witnesses.empty());
  CHECK(r.ckn.witness.has_value());

  // The critical equations decouple into 1/k_i = S_ii, so for any S the
  // unique critical point is diag(1/S_ii).
  REQUIRE(r.ml_degree == 1);
  const auto L = builtin_subspace("diagonal-net");
  SymMatQ S(3);
  Rng rng(8);
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) S.set(i, j, Rational(rng.uniform_int(1, 9), rng.uniform_int(1, 9)));
  const PolySystem sys = critical_system(L, S);
  std::vector<Complex> x;
  for (int i = 0; i < 3; ++i) x.push_back(Complex(to_double(Rational(1) / S(i, i))));
  CHECK(relative_residual(sys, x) < 1e-14);
  const auto d = ml_degree(L, kSeed);
  REQUIRE(d.count == 1);
}

TEST_CASE("identity line and regular pencils in 2x2") {
  const auto& r = report("identity-line");
  CHECK(r.ml_degree == 1);
  CHECK(r.reciprocal_degree == 1);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto L = sample_generic_subspace(2, 2, 60 + s);
    CHECK(reciprocal_degree(L, s).count == 1);
    CHECK(ml_degree(L, s).count == 1);
  }
}

TEST_CASE("non-closed pencil has no critical points") {
  // K = [[a, b], [b, 0]]: the critical equations force b = 0 and det K = 0.
  const auto& r = report("nonclosed-2x2");
  CHECK(r.ml_degree == 0);
  CHECK(r.reciprocal_degree == 1);
}

TEST_CASE("constructed tangency is recovered") {
  for (int k = 2; k <= 3; ++k) {
    CAPTURE(k);
    const auto t = tangency_subspace(3, k, 500 + k);
    // adj(X0) pairs to zero with every basis element.
    const SymMatQ adj = adjugate(t.X0);
    REQUIRE(exact_rank(t.X0.dense()) == 2);
    for (const auto& b : t.L.exact_basis()) REQUIRE(is_exact_zero(trace_pairing(adj, b)));

    const auto tw = tangency_witnesses(t.L, kSeed);
    bool found = false;
    for (const auto& w : tw.witnesses) found = found || angular_distance(w, complex_of(t.X0)) <= 1e-6;
    CHECK(found);
    const auto r = ml_report(t.L, kSeed);
    CHECK_FALSE(r.is_ml_maximal);
  }
}

TEST_CASE("generic nets are ML-maximal") {
  for (std::uint64_t s = 0; s < 3; ++s) {
    const auto L = sample_generic_subspace(3, 3, 700 + s);
    const auto r = ml_report(L, s);
    CHECK(r.ml_degree == r.reciprocal_degree);
    CHECK(r.ml_degree == 4);
    CHECK(r.is_ml_maximal);
    CHECK(r.tangency.witnesses.empty());
    CHECK_FALSE(r.ckn.witness.has_value());
  }
  const auto r = ml_report(sample_generic_subspace(3, 4, 71), 1);
  CHECK(r.is_ml_maximal);
}

TEST_CASE("witnesses are singular and dual") {
  for (const char* name : {"type-c-net", "diagonal-net"}) {
    CAPTURE(name);
    const auto& r = report(name);
    REQUIRE(r.ckn.witness.has_value());
    const auto& w = *r.ckn.witness;
    CHECK(w.rank_X < 3);
    CHECK(w.rank_Y < 3);
    CHECK(numeric_rank(w.X) < 3);
    CHECK(numeric_rank(w.Y) < 3);
    const auto L = builtin_subspace(name);
    CHECK(verify_ckn(L, w.X, w.Y, 1e-7));
    CHECK(verify_ckn(annihilator(L), w.Y, w.X, 1e-7));
    CHECK_FALSE(verify_ckn(annihilator(L), w.X, w.Y, 1e-7));
  }
}

TEST_CASE("Segre [2,1] pencil is not ML-maximal") {
  const auto& r = report("segre-21-pencil");
  CHECK(r.ml_degree == 1);
  CHECK(r.reciprocal_degree == 2);
  CHECK_FALSE(r.tangency.witnesses.empty());
}

TEST_CASE("singular matrices are rejected as subspaces") {
  const auto L = LinearSubspace::rational(3, {SymMatQ::unit(3, 0, 0), SymMatQ::unit(3, 0, 1)});
  CHECK_THROWS(ml_degree(L, 1));
}

TEST_CASE("blow-up example subspace") {
  const auto r = ml_report(builtin_subspace("example53"), kSeed);
  CHECK(r.ml_degree == 1);
  CHECK(r.reciprocal_degree == 2);
  CHECK_FALSE(r.is_ml_maximal);
}

TEST_CASE("Type C critical system") {
  const auto L = builtin_subspace("type-c-net");
  SymMatQ S(3);
  Rng rng(12);
  // Nonzero entries keep every equation at full degree 3.
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j)
      S.set(i, j, Rational(rng.uniform_int(1, 9) * (rng.uniform_int(0, 1) ? 1 : -1), rng.uniform_int(1, 9)));
  const PolySystem sys = critical_system(L, S);
  CHECK(sys.bezout() == 27);
  SolveOptions opts;
  opts.seed = 3;
  const auto s = solve_total_degree(sys, opts);
  CHECK(s.endpoints.size() == 27);
  // The determinant filter leaves the two genuine critical points.
  int genuine = 0;
  for (const auto& t : s.solutions) {
    SymMatC K(3);
    for (int i = 0; i < 3; ++i) K += L.exact_basis()[i].cast<Complex>() * t.point[i];
    if (std::abs(determinant(K)) > 1e-7 * std::pow(frobenius_norm(K), 3)) ++genuine;
  }
  CHECK(genuine == 2);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    CHECK(ml_degree(L, seed).count == 2);
    CHECK(reciprocal_degree(L, seed).count == 3);
  }
}

TEST_CASE("witness pairs for simple nets") {
  const auto diag = ckn_witness(builtin_subspace("diagonal-net"), 3);
  REQUIRE(diag.witness.has_value());
  CHECK(diag.witness->rank_X < 3);
  CHECK(diag.witness->residual <= 1e-7);
  // Y is traceless for span(I), so I Y = Y cannot vanish.
  CHECK_FALSE(ckn_witness(builtin_subspace("identity-line"), 3).witness.has_value());
}

TEST_CASE("tangency witnesses are corank one and tangent") {
  const auto t = tangency_subspace(3, 2, 31);
  const auto tw = tangency_witnesses(t.L, 4);
  REQUIRE_FALSE(tw.witnesses.empty());
  for (std::size_t i = 0; i < tw.witnesses.size(); ++i) {
    CHECK(numeric_rank(tw.witnesses[i]) == 2);
    REQUIRE(tw.exact[i].has_value());
    const SymMatQ adj = adjugate(*tw.exact[i]);
    for (const auto& b : t.L.exact_basis()) CHECK(is_exact_zero(trace_pairing(adj, b)));
  }
}

TEST_CASE("ML degree never exceeds the reciprocal degree") {
  for (const char* name : {"type-c-net", "diagonal-net", "diagonal-net-polar", "identity-line", "nonclosed-2x2",
                           "segre-21-pencil"}) {
    CAPTURE(name);
    const auto& r = report(name);
    CHECK(r.ml_degree <= r.reciprocal_degree);
  }
}
