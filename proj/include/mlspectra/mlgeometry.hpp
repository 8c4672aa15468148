#pragma once

#include "mlspectra/polysolve.hpp"
#include "mlspectra/subspace.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace mlspectra {

struct GeometryOptions {
  double residual_tol = 1e-9;
  double dedup_tol = 1e-6;
  double verify_tol = 1e-7;
  double rank_tol = 1e-8;
  // |det K| below det_tol * ||K||^n marks a spurious critical point.
  double det_tol = 1e-7;
  int max_steps = 10000;
  // Fresh solver seeds tried after a path-failure error.
  int retries = 3;
  std::ostream* paths_debug = nullptr;
};

// Path statistics of one homotopy solve.
struct StageStats {
  std::string stage;
  std::uint64_t seed = 0;
  std::uint64_t bezout = 0;
  PathStats paths;
  bool suspected_positive_dimensional = false;
  int count = 0;
  double max_residual = 0.0;
};

struct DegreeResult {
  int count = 0;
  // Critical points K (ML degree) or adjugate images (reciprocal degree)
  // from the first draw.
  std::vector<SymMatC> points;
  std::vector<StageStats> draws;
};

struct TangencyResult {
  std::vector<SymMatC> witnesses;
  // Exact form of each witness when rationalization verifies exactly.
  std::vector<std::optional<SymMatQ>> exact;
  std::vector<double> residuals;
  int candidates = 0;
  StageStats stats;
};

struct CknWitness {
  SymMatC X;
  SymMatC Y;
  std::optional<SymMatQ> X_exact;
  std::optional<SymMatQ> Y_exact;
  // ||XY|| / (||X|| ||Y||)
  double residual = 0.0;
  int rank_X = 0;
  int rank_Y = 0;
};

struct CknResult {
  std::optional<CknWitness> witness;
  int candidates = 0;
  double best_residual = -1.0;
  StageStats stats;
  std::string note;
};

struct MLReport {
  std::uint64_t seed = 0;
  int ml_degree = 0;
  int reciprocal_degree = 0;
  bool is_ml_maximal = false;
  DegreeResult ml;
  DegreeResult reciprocal;
  TangencyResult tangency;
  CknResult ckn;
  // Hard consistency failures; never reconciled.
  std::vector<std::string> violations;
  std::vector<std::string> diagnostics;
};

// Equations tr(B_i adj K) - det K tr(B_i S) in the coordinates of K in the
// basis of L. Throws NotRegular when no sampled element is invertible.
PolySystem critical_system(const LinearSubspace& L, const SymMatQ& S);
PolySystem critical_system(const LinearSubspace& L, const SymMatR& S);

// Entries of adj(sum x_i B_i) as polynomials in x (row-major n x n), and
// optionally the determinant.
std::vector<CPoly> symbolic_adjugate(const LinearSubspace& L, CPoly* det = nullptr);

DegreeResult ml_degree(const LinearSubspace& L, std::uint64_t seed, const GeometryOptions& opts = {});
DegreeResult reciprocal_degree(const LinearSubspace& L, std::uint64_t seed,
                               const GeometryOptions& opts = {});
TangencyResult tangency_witnesses(const LinearSubspace& L, std::uint64_t seed,
                                  const GeometryOptions& opts = {});
CknResult ckn_witness(const LinearSubspace& L, std::uint64_t seed, const GeometryOptions& opts = {});
MLReport ml_report(const LinearSubspace& L, std::uint64_t seed, const GeometryOptions& opts = {});

// Checks X in L, Y in annihilator(L) and XY = 0, all relative to tol.
bool verify_ckn(const LinearSubspace& L, const SymMatC& X, const SymMatC& Y, double tol);

// Scales m so its largest entry is 1 and rounds the entries to rationals
// with bounded denominators; nullopt when m is not (nearly) real or an entry
// does not round within tol.
std::optional<SymMatQ> rationalize_matrix(const SymMatC& m, double tol = 1e-9,
                                          std::int64_t max_den = 10000);

// sin of the angle between the two matrices viewed as vectors.
double angular_distance(const SymMatC& a, const SymMatC& b);

}  // namespace mlspectra
