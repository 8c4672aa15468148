#pragma once

#include "mlspectra/linalg.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace mlspectra {

// Coordinates in which the Euclidean inner product is the trace pairing:
// diagonal entries, then off-diagonal entries scaled by sqrt(2).
Eigen::VectorXd svec(const SymMatR& m);
Eigen::VectorXcd svec(const SymMatC& m);
SymMatR from_svec(int n, const Eigen::VectorXd& v);

// Ordered basis of a subspace of symmetric n x n matrices. Immutable.
// Rational subspaces keep their exact basis; every subspace carries a real
// copy and a trace-orthonormal frame computed once at construction.
class LinearSubspace {
 public:
  LinearSubspace() = default;

  // Both factories throw DependentBasis naming the first offending index.
  static LinearSubspace rational(int n, std::vector<SymMatQ> basis);
  static LinearSubspace real(int n, std::vector<SymMatR> basis, double tol = 1e-10);

  int n() const { return n_; }
  int k() const { return static_cast<int>(real_.size()); }
  // n(n+1)/2
  int ambient_dim() const { return n_ * (n_ + 1) / 2; }
  Field field() const { return field_; }
  bool is_exact() const { return field_ == Field::rational; }

  // Throws std::logic_error for a real subspace.
  const std::vector<SymMatQ>& exact_basis() const;
  const std::vector<SymMatR>& basis() const { return real_; }
  const std::vector<SymMatR>& frame() const { return frame_; }

  template <class T>
  SymMat<T> combine(std::span<const T> coeffs) const {
    if (static_cast<int>(coeffs.size()) != k()) throw std::invalid_argument("combine: wrong coefficient count");
    SymMat<T> out(n_);
    for (int i = 0; i < k(); ++i) {
      if constexpr (std::is_same_v<T, Rational>) {
        out += exact_basis()[i] * coeffs[i];
      } else {
        out += real_[i].template cast<T>() * coeffs[i];
      }
    }
    return out;
  }

  // Columns are svec of the basis elements (N x k).
  Eigen::MatrixXd basis_matrix() const;

 private:
  void build_frame();

  int n_ = 0;
  Field field_ = Field::real;
  std::vector<SymMatQ> exact_;
  std::vector<SymMatR> real_;
  std::vector<SymMatR> frame_;
};

// All Y with tr(XY) = 0 for X in L. Exact for rational subspaces. The
// result may have dimension zero when L is the whole space.
LinearSubspace annihilator(const LinearSubspace& L, double tol = 1e-10);

// k matrices with integer entries in [-10, 10], resampled until independent.
LinearSubspace sample_generic_subspace(int n, int k, std::uint64_t seed);

// Whether the two subspaces have the same span (exact when both rational).
bool same_span(const LinearSubspace& a, const LinearSubspace& b, double tol = 1e-9);

// A seeded random integer combination with nonzero determinant, if one is
// found within `attempts` draws.
std::optional<SymMatR> find_invertible_element(const LinearSubspace& L, std::uint64_t seed,
                                               int attempts = 20);

}  // namespace mlspectra
