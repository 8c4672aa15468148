#pragma once

#include "mlspectra/subspace.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace mlspectra {

struct BuiltinInfo {
  std::string name;
  std::string description;
};

std::vector<BuiltinInfo> builtin_catalog();

// Throws LoadError for an unknown name.
LinearSubspace builtin_subspace(const std::string& name);

// Basis X, B01, B02, B1, B2 of the polar of diag(0, 1, 1) used for the
// eps blow-up computation.
std::vector<SymMatQ> example53_basis();

// span{X0} plus k-1 random integer matrices B with w^T B w = 0, where X0 is
// PSD of rank n-1 with kernel spanned by the integer vector w. Every element
// then lies in the tangent space of the determinant hypersurface at X0.
struct TangencyConstruction {
  LinearSubspace L;
  SymMatQ X0;
  std::vector<Rational> w;
};
TangencyConstruction tangency_subspace(int n, int k, std::uint64_t seed);

// The annihilator of span{A}.
LinearSubspace polar_of(const SymMatQ& A);

// Random integer symmetric matrices with entries in [-5, 5] and the
// requested rank.
SymMatQ random_integer_matrix_of_rank(int n, int rank, std::uint64_t seed);

}  // namespace mlspectra
