#pragma once

#include "mlspectra/polynomial.hpp"
#include "mlspectra/random.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace mlspectra {

struct PolySystem {
  int num_vars = 0;
  std::vector<CPoly> equations;

  // Product of total degrees.
  std::uint64_t bezout() const;
};

enum class PathStatus { converged, diverged, at_infinity, singular_endpoint };
std::string to_string(PathStatus s);

struct TrackedSolution {
  std::vector<Complex> point;
  // max_i |f_i(x)| / sum_t |c_t x^e_t|, i.e. relative to term magnitudes
  double residual = 0.0;
  PathStatus status = PathStatus::diverged;
  int path_id = -1;
  int multiplicity = 1;
  // ratio of the last two Newton updates at the endpoint
  double contraction = 0.0;
  int steps = 0;
};

struct PathStats {
  int total = 0;
  int converged = 0;
  int diverged = 0;
  int at_infinity = 0;
  int singular_endpoint = 0;
};

struct SolutionSet {
  // Deduplicated converged solutions, ordered by representative path_id.
  std::vector<TrackedSolution> solutions;
  // Every path endpoint in path order.
  std::vector<TrackedSolution> endpoints;
  std::uint64_t bezout_bound = 0;
  std::vector<std::uint64_t> seeds;
  PathStats stats;
  bool suspected_positive_dimensional = false;
};

struct SolveOptions {
  std::uint64_t seed = kDefaultSeed;
  double residual_tol = 1e-9;
  double dedup_tol = 1e-6;
  int max_steps = 10000;
  // When set, one JSON object per path is written here, in path order.
  std::ostream* trace = nullptr;
};

// Total-degree homotopy with the gamma trick, tracked on a random affine
// patch of projective space. Throws std::invalid_argument for a non-square
// system and SolverError when more than 20% of the paths fail.
SolutionSet solve_total_degree(const PolySystem& sys, const SolveOptions& opts = {});

// Newton refinement at a point; returns the refined point and updates the
// residual/contraction fields of `out`.
std::vector<Complex> newton_refine(const PolySystem& sys, std::vector<Complex> x, int iterations,
                                   TrackedSolution* out = nullptr);

double relative_residual(const PolySystem& sys, std::span<const Complex> x);

// Gauss-Newton on a possibly overdetermined system (least-squares steps).
std::vector<Complex> gauss_newton(const PolySystem& sys, std::vector<Complex> x, int iterations);

// Clusters nonzero vectors by angular distance sin(angle) <= tol. The first
// member of a cluster is its representative; multiplicity is the cluster size.
SolutionSet dedup_projective(const std::vector<std::vector<Complex>>& points, double tol);

}  // namespace mlspectra
