#pragma once

#include "mlspectra/subspace.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mlspectra {

struct BadnessOptions {
  // Optimal lambda_min (on the slice tr X = 1) above this counts as a
  // definite element.
  double definite_tol = 1e-7;
  // Relative eigenvalue threshold separating a face kernel from its range.
  double face_tol = 1e-6;
  // Eigenvalues >= -psd_tol * ||W|| are accepted as PSD.
  double psd_tol = 1e-9;
  // Relative size below which an off-diagonal block counts as zero
  // (float subspaces only; exact subspaces compare exactly).
  double block_tol = 1e-8;
};

struct PsdRankResult {
  int rank = 0;
  SymMatR W;
  std::optional<SymMatQ> W_exact;
  // Coordinates of W in the basis of L.
  std::vector<double> coefficients;
  std::optional<std::vector<Rational>> exact_coefficients;
  // Every face reduction and the final definite element were verified in
  // exact arithmetic.
  bool exact = false;
  // False when the search broke down; the rank is then not trustworthy.
  bool ok = true;
  int face_reductions = 0;
  std::vector<std::string> diagnostics;
};

// PSD element of maximal rank in L, by maximizing lambda_min over the slice
// tr X = 1 of L and reducing to a face through a PSD element of the
// annihilator whenever no definite element exists.
// The seed only perturbs the starting point of the barrier iteration.
PsdRankResult max_rank_psd(const LinearSubspace& L, std::uint64_t seed,
                           const BadnessOptions& opts = {});

enum class Verdict { bad, not_bad, undetermined };
std::string to_string(Verdict v);

struct BadCertificate {
  int n = 0;
  int s_L = 0;
  int s_Lperp = 0;
  bool cond10 = false;
  bool cond11 = false;
  // cond11 holds because s_L = 0 or s_Lperp = 0 makes the block empty.
  bool cond11_vacuous = false;
  std::optional<SymMatR> violating_matrix;
  std::optional<SymMatQ> violating_exact;
  // Orthogonal Q whose columns span range(W), then ker(W) minus range(W'),
  // then range(W') for the maximal PSD elements W of L and W' of L-perp.
  Eigen::MatrixXd transform;
  Verdict verdict = Verdict::undetermined;
  PsdRankResult psd_L;
  PsdRankResult psd_Lperp;
  bool exact = false;
  std::vector<std::string> diagnostics;
};

BadCertificate pataki_certificate(const LinearSubspace& L, std::uint64_t seed,
                                  const BadnessOptions& opts = {});

// max lambda_min(X) over X in span(basis) with tr(X) = 1, by a log-barrier
// method. Returns -infinity when every element is traceless; `coords`
// receives the maximizer in the given basis.
double max_min_eigenvalue(const std::vector<Eigen::MatrixXd>& basis, Eigen::VectorXd* coords = nullptr,
                          std::uint64_t seed = 0);

}  // namespace mlspectra
