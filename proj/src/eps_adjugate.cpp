#include "mlspectra/eps_adjugate.hpp"

#include "mlspectra/errors.hpp"

namespace mlspectra {

EpsPolyMat perturbation(const SymMatQ& X, const std::vector<SymMatQ>& dirs,
                        const std::vector<QPoly>& b) {
  if (dirs.size() != b.size()) throw std::invalid_argument("perturbation: dirs and b differ in length");
  int nv = 1;
  for (const auto& p : b) nv = std::max(nv, p.num_vars());
  const int n = X.n();
  const QPoly eps = QPoly::variable(nv, 0);
  QPoly direction_sum(nv);
  EpsPolyMat m(n);
  bool nonzero = false;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      QPoly entry = QPoly::constant(nv, X(i, j));
      QPoly delta(nv);
      for (std::size_t t = 0; t < dirs.size(); ++t) {
        if (dirs[t].n() != n) throw std::invalid_argument("perturbation: direction has wrong size");
        if (!is_exact_zero(dirs[t](i, j))) delta += b[t] * dirs[t](i, j);
      }
      if (!delta.is_zero()) nonzero = true;
      entry += eps * delta;
      m.set(i, j, std::move(entry));
    }
  if (!nonzero) throw std::invalid_argument("perturbation: direction is zero");
  return m;
}

EpsPolyMat eps_adjugate(const EpsPolyMat& m) {
  const int n = m.n();
  int nv = 1;
  for (const auto& e : m.packed()) nv = std::max(nv, e.num_vars());
  std::vector<std::vector<QPoly>> a(n, std::vector<QPoly>(n, QPoly(nv)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = m(i, j);
  const auto adj = cofactor_adjugate(a, QPoly::constant(nv, Rational(1)));
  EpsPolyMat out(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) out.set(i, j, adj[i][j]);
  return out;
}

EpsLeadingTerm eps_adjugate_leading_term(const SymMatQ& X, const std::vector<SymMatQ>& dirs,
                                         const std::vector<QPoly>& b) {
  const EpsPolyMat m = perturbation(X, dirs, b);
  EpsLeadingTerm out;
  out.adjugate = eps_adjugate(m);
  {
    const int n = m.n();
    std::vector<std::vector<QPoly>> a(n, std::vector<QPoly>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a[i][j] = m(i, j);
    out.determinant = cofactor_determinant(a);
  }
  int d = -1;
  for (const auto& e : out.adjugate.packed()) {
    if (e.is_zero()) continue;
    const int low = e.min_degree_in(0);
    d = d < 0 ? low : std::min(d, low);
  }
  if (d < 0) throw DegenerateAdjugate("adjugate of the perturbed matrix vanishes identically (base locus)");
  out.d = d;
  out.Z = EpsPolyMat(m.n());
  for (int i = 0; i < m.n(); ++i)
    for (int j = i; j < m.n(); ++j) out.Z.set(i, j, out.adjugate(i, j).coefficient_of(0, d));
  return out;
}

std::optional<SymMatQ> constant_matrix(const EpsPolyMat& m) {
  SymMatQ out(m.n());
  for (int i = 0; i < m.n(); ++i)
    for (int j = i; j < m.n(); ++j) {
      const QPoly& e = m(i, j);
      if (e.is_zero()) continue;
      if (e.total_degree() != 0) return std::nullopt;
      out.set(i, j, e.terms().begin()->second);
    }
  return out;
}

EpsPolyMat substitute_params(const EpsPolyMat& m, const std::vector<Rational>& params) {
  EpsPolyMat out(m.n());
  for (int i = 0; i < m.n(); ++i)
    for (int j = i; j < m.n(); ++j) {
      QPoly r(1);
      for (const auto& [e, c] : m(i, j).terms()) {
        Rational v = c;
        for (std::size_t p = 1; p < e.size(); ++p) {
          if (e[p] == 0) continue;
          if (p - 1 >= params.size()) throw std::invalid_argument("substitute_params: too few values");
          for (int t = 0; t < e[p]; ++t) v *= params[p - 1];
        }
        r.add_term({e[0]}, v);
      }
      out.set(i, j, std::move(r));
    }
  return out;
}

}  // namespace mlspectra
