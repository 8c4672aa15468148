#pragma once

#include "mlspectra/matrix.hpp"
#include "mlspectra/polynomial.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mlspectra {

// Symmetric matrix over Q[eps, params]. Variable 0 is eps.
using EpsPolyMat = SymMat<QPoly>;

struct EpsLeadingTerm {
  int d = 0;            // lowest eps-degree present in adj
  EpsPolyMat Z;         // coefficient of eps^d (eps set to zero)
  EpsPolyMat adjugate;  // full adjugate in Q[eps, params]
  QPoly determinant;
};

// X + eps * sum_i b_i * dirs_i, with the b_i polynomials in (eps, params...).
EpsPolyMat perturbation(const SymMatQ& X, const std::vector<SymMatQ>& dirs,
                        const std::vector<QPoly>& b);

EpsPolyMat eps_adjugate(const EpsPolyMat& m);

// Throws DegenerateAdjugate when the adjugate vanishes identically and
// std::invalid_argument when the perturbation is zero.
EpsLeadingTerm eps_adjugate_leading_term(const SymMatQ& X, const std::vector<SymMatQ>& dirs,
                                         const std::vector<QPoly>& b);

// Exact rational matrix when every entry is a constant polynomial.
std::optional<SymMatQ> constant_matrix(const EpsPolyMat& m);

// Substitutes rational values for the parameters (variables 1..); eps is kept.
EpsPolyMat substitute_params(const EpsPolyMat& m, const std::vector<Rational>& params);

}  // namespace mlspectra
