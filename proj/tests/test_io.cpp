#include <doctest.h>

#include "mlspectra/builtins.hpp"
#include "mlspectra/errors.hpp"
#include "mlspectra/json_io.hpp"
#include "mlspectra/linalg.hpp"

using namespace mlspectra;

namespace {

LinearSubspace parse(const std::string& text) { return subspace_from_json(nlohmann::json::parse(text)); }

std::string load_error(const std::string& text) {
  try {
    parse(text);
  } catch (const LoadError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("subspace JSON loading") {
  const auto L = parse(R"({"n": 2, "basis": [[[1, "1/2"], ["1/2", 0]], [0, 0, 0, 3]]})");
  CHECK(L.is_exact());
  CHECK(L.k() == 2);
  CHECK(L.exact_basis()[0](0, 1) == Rational(1, 2));
  CHECK(L.exact_basis()[1](1, 1) == Rational(3));

  const auto R = parse(R"({"n": 2, "field": "real", "basis": [[0.25, 1e-3, 1e-3, 2]]})");
  CHECK_FALSE(R.is_exact());
  CHECK(R.basis()[0](0, 1) == doctest::Approx(1e-3));
}

TEST_CASE("malformed input names the basis index") {
  CHECK(load_error(R"({"n": 2, "basis": [[1, 0, 0, 1], [1, 2, 3, 4]]})").find("basis[1]") != std::string::npos);
  CHECK(load_error(R"({"n": 2, "basis": [[1, 0, 0, 1], [2, 0, 0, 2]]})").find("basis[1]") != std::string::npos);
  CHECK(load_error(R"({"n": 2, "basis": [[1, 0, 0]]})").find("basis[0]") != std::string::npos);
  CHECK(load_error(R"({"n": 2, "basis": [[1, "x", "x", 1]]})").find("basis[0]") != std::string::npos);
  CHECK_FALSE(load_error(R"({"basis": []})").empty());
  CHECK_FALSE(load_error(R"({"n": 2, "field": "complex", "basis": [[1, 0, 0, 1]]})").empty());
}

TEST_CASE("round trip through JSON") {
  for (const auto& info : builtin_catalog()) {
    CAPTURE(info.name);
    const auto L = builtin_subspace(info.name);
    const auto back = subspace_from_json(nlohmann::json::parse(to_json(L).dump()));
    CHECK(back.exact_basis() == L.exact_basis());
  }
  CHECK_THROWS_AS(builtin_subspace("no-such-net"), LoadError);
}

TEST_CASE("builtins match the displayed matrices") {
  const auto c = builtin_subspace("type-c-net").exact_basis();
  REQUIRE(c.size() == 3);
  CHECK(c[0] == SymMatQ::unit(3, 0, 0));
  CHECK(c[1] == SymMatQ::unit(3, 0, 2) + SymMatQ::unit(3, 1, 1));
  CHECK(c[2] == SymMatQ::unit(3, 1, 2));

  // The blow-up example lives in the annihilator of diag(0, 1, 1).
  const SymMatQ D = SymMatQ::unit(3, 1, 1) + SymMatQ::unit(3, 2, 2);
  const auto e = example53_basis();
  REQUIRE(e.size() == 5);
  for (const auto& b : e) CHECK(is_exact_zero(trace_pairing(b, D)));
  CHECK(same_span(builtin_subspace("example53"), polar_of(D)));
}

TEST_CASE("report JSON is deterministic") {
  const auto L = builtin_subspace("identity-line");
  const GeometryOptions g;
  CHECK(to_json(ml_report(L, 5), g).dump() == to_json(ml_report(L, 5), g).dump());
}
