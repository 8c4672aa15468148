#include "mlspectra/mlgeometry.hpp"

#include "mlspectra/errors.hpp"
#include "mlspectra/parallel.hpp"
#include "mlspectra/random.hpp"

#include <json.hpp>

#include <cmath>

namespace mlspectra {

namespace {

constexpr std::uint64_t kRegularitySeed = 0x5eed5eedULL;

template <class T>
std::vector<std::vector<Polynomial<T>>> generic_element(const std::vector<SymMat<T>>& basis, int n) {
  const int k = static_cast<int>(basis.size());
  std::vector<std::vector<Polynomial<T>>> a(n, std::vector<Polynomial<T>>(n, Polynomial<T>(k)));
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int i = 0; i < k; ++i)
        if (!is_exact_zero(basis[i](p, q))) a[p][q] += Polynomial<T>::variable(k, i) * basis[i](p, q);
  return a;
}

std::vector<SymMatC> complex_basis(const std::vector<SymMatR>& basis) {
  std::vector<SymMatC> out;
  for (const auto& b : basis) out.push_back(b.cast<Complex>());
  return out;
}

void require_regular(const LinearSubspace& L) {
  if (!find_invertible_element(L, kRegularitySeed))
    throw NotRegular("subspace is not regular: every sampled element is singular");
}

template <class T>
PolySystem critical_system_impl(const std::vector<SymMat<T>>& basis, int n, const SymMat<T>& S) {
  const int k = static_cast<int>(basis.size());
  auto a = generic_element(basis, n);
  const auto adj = cofactor_adjugate(a, Polynomial<T>::constant(k, T(1)));
  const Polynomial<T> det = cofactor_determinant(a);
  PolySystem sys;
  sys.num_vars = k;
  for (int i = 0; i < k; ++i) {
    Polynomial<T> f(k);
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q)
        if (!is_exact_zero(basis[i](p, q))) f += adj[q][p] * basis[i](p, q);
    f -= det * trace_pairing(basis[i], S);
    sys.equations.push_back(f.template cast<Complex>());
  }
  return sys;
}

SymMatQ random_rational_symmetric(int n, Rng& rng) {
  SymMatQ S(n);
  for (int p = 0; p < n; ++p)
    for (int q = p; q < n; ++q) {
      std::int64_t num = 0;
      while (num == 0) num = rng.uniform_int(-999, 999);
      S.set(p, q, Rational(num) / Rational(rng.uniform_int(1, 999)));
    }
  return S;
}

SymMatC random_complex_symmetric(int n, Rng& rng) {
  SymMatC R(n);
  for (int p = 0; p < n; ++p)
    for (int q = p; q < n; ++q) R.set(p, q, rng.gaussian_complex());
  return R;
}

StageStats stats_of(const std::string& stage, std::uint64_t seed, const SolutionSet& s) {
  StageStats st;
  st.stage = stage;
  st.seed = seed;
  st.bezout = s.bezout_bound;
  st.paths = s.stats;
  st.suspected_positive_dimensional = s.suspected_positive_dimensional;
  return st;
}

// Solves with the given seed, moving to derived seeds after a path-failure error.
std::pair<SolutionSet, std::uint64_t> solve_with_retries(const PolySystem& sys, std::uint64_t seed,
                                                         const GeometryOptions& opts,
                                                         const std::string& stage) {
  SolveOptions so;
  so.residual_tol = opts.residual_tol;
  so.dedup_tol = opts.dedup_tol;
  so.max_steps = opts.max_steps;
  so.trace = opts.paths_debug;
  std::string last;
  for (int attempt = 0; attempt <= opts.retries; ++attempt) {
    so.seed = attempt == 0 ? seed : derive_seed(seed, 0x7e7a + attempt);
    if (opts.paths_debug != nullptr) {
      nlohmann::ordered_json h;
      h["stage"] = stage;
      h["seed"] = so.seed;
      h["bezout"] = sys.bezout();
      *opts.paths_debug << h.dump() << '\n';
    }
    try {
      return {solve_total_degree(sys, so), so.seed};
    } catch (const SolverError& e) {
      last = e.what();
    }
  }
  throw SolverError(stage + ": " + last + " (after " + std::to_string(opts.retries) + " retries)");
}

double norm_c(const SymMatC& m) { return frobenius_norm(m); }

std::vector<Complex> packed_vector(const SymMatC& m) {
  return {m.packed().begin(), m.packed().end()};
}

CPoly combine_polys(const std::vector<CPoly>& entries, const SymMatC& R, int n, int nv) {
  CPoly f(nv);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) f += entries[std::size_t(p) * n + q] * R(p, q);
  return f;
}

CPoly chart(int nv, int first, int count, Rng& rng) {
  CPoly c = CPoly::constant(nv, Complex(-1.0));
  for (int i = 0; i < count; ++i) c += CPoly::variable(nv, first + i) * rng.gaussian_complex();
  return c;
}

SymMatC element(const LinearSubspace& L, std::span<const Complex> x) {
  return L.combine<Complex>(x.subspan(0, std::size_t(L.k())));
}

// Divides by the entry of largest modulus.
SymMatC normalize_phase(const SymMatC& m) {
  Complex big = 0;
  for (const auto& v : m.packed())
    if (std::abs(v) > std::abs(big)) big = v;
  return big == Complex(0) ? m : m * (Complex(1) / big);
}

bool in_span_exact(const LinearSubspace& L, const SymMatQ& M) {
  const int N = L.ambient_dim();
  Matrix<Rational> rows(L.k() + 1, N);
  for (int i = 0; i < L.k(); ++i) {
    const auto p = L.exact_basis()[i].packed();
    for (int c = 0; c < N; ++c) rows(i, c) = p[c];
  }
  const auto p = M.packed();
  for (int c = 0; c < N; ++c) rows(L.k(), c) = p[c];
  return exact_rank(rows) == L.k();
}

double membership_residual(const LinearSubspace& L, const SymMatC& M) {
  // Distance from M to span(L) relative to ||M||, via the orthonormal frame.
  Eigen::VectorXcd v = svec(M);
  Eigen::VectorXcd r = v;
  for (const auto& f : L.frame()) {
    const Eigen::VectorXcd fc = svec(f).cast<Complex>();
    r -= fc * (fc.transpose() * v)(0);
  }
  const double nv = v.norm();
  return nv > 0 ? r.norm() / nv : 0.0;
}

}  // namespace

std::optional<SymMatQ> rationalize_matrix(const SymMatC& m, double tol, std::int64_t max_den) {
  const SymMatC u = normalize_phase(m);
  SymMatQ out(m.n());
  for (int p = 0; p < m.n(); ++p)
    for (int q = p; q < m.n(); ++q) {
      const Complex v = u(p, q);
      if (std::abs(v.imag()) > tol) return std::nullopt;
      auto r = rationalize(v.real(), max_den, tol);
      if (!r) return std::nullopt;
      out.set(p, q, *r);
    }
  return out;
}

double angular_distance(const SymMatC& a, const SymMatC& b) {
  const Eigen::VectorXcd u = svec(a), v = svec(b);
  const double nu = u.norm(), nv = v.norm();
  if (nu == 0 || nv == 0) return 1.0;
  const double c = std::min(1.0, std::abs(u.dot(v)) / (nu * nv));
  return std::sqrt(std::max(0.0, 1.0 - c * c));
}

std::vector<CPoly> symbolic_adjugate(const LinearSubspace& L, CPoly* det) {
  const int n = L.n(), k = L.k();
  std::vector<CPoly> out;
  if (L.is_exact()) {
    auto a = generic_element(L.exact_basis(), n);
    const auto adj = cofactor_adjugate(a, QPoly::constant(k, Rational(1)));
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) out.push_back(adj[p][q].cast<Complex>());
    if (det != nullptr) *det = cofactor_determinant(a).cast<Complex>();
  } else {
    auto a = generic_element(complex_basis(L.basis()), n);
    const auto adj = cofactor_adjugate(a, CPoly::constant(k, Complex(1)));
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) out.push_back(adj[p][q]);
    if (det != nullptr) *det = cofactor_determinant(a);
  }
  return out;
}

PolySystem critical_system(const LinearSubspace& L, const SymMatQ& S) {
  require_regular(L);
  if (S.n() != L.n()) throw std::invalid_argument("critical_system: S has wrong size");
  if (L.is_exact()) return critical_system_impl(L.exact_basis(), L.n(), S);
  return critical_system_impl(complex_basis(L.basis()), L.n(), S.cast<double>().cast<Complex>());
}

PolySystem critical_system(const LinearSubspace& L, const SymMatR& S) {
  require_regular(L);
  if (S.n() != L.n()) throw std::invalid_argument("critical_system: S has wrong size");
  return critical_system_impl(complex_basis(L.basis()), L.n(), S.cast<Complex>());
}

DegreeResult ml_degree(const LinearSubspace& L, std::uint64_t seed, const GeometryOptions& opts) {
  require_regular(L);
  const int n = L.n();
  DegreeResult result;
  for (int draw = 0; draw < 2; ++draw) {
    Rng rng(derive_seed(seed, 100 + draw));
    const SymMatQ S = random_rational_symmetric(n, rng);
    const PolySystem sys = critical_system(L, S);
    auto [sol, used] = solve_with_retries(sys, derive_seed(seed, 110 + draw), opts, "ml_degree");
    StageStats st = stats_of("ml_degree", used, sol);
    std::vector<SymMatC> points;
    // tr(K S) = tr(K K^-1) = n at a critical point, so |K| |S| >= n.
    const double k_floor = 0.5 * n / frobenius_norm(S.cast<double>());
    for (const auto& s : sol.solutions) {
      const SymMatC K = element(L, s.point);
      // K = 0 solves the equations and is a simple root when n = 2.
      if (norm_c(K) < k_floor) continue;
      const double scale = std::pow(norm_c(K), n);
      if (std::abs(determinant(K)) < opts.det_tol * scale) continue;
      points.push_back(K);
      st.max_residual = std::max(st.max_residual, s.residual);
    }
    st.count = static_cast<int>(points.size());
    result.draws.push_back(st);
    if (draw == 0) {
      result.count = st.count;
      result.points = std::move(points);
    } else if (st.count != result.count) {
      throw CountInstability("ml_degree", result.count, st.count);
    }
  }
  return result;
}

DegreeResult reciprocal_degree(const LinearSubspace& L, std::uint64_t seed, const GeometryOptions& opts) {
  require_regular(L);
  const int n = L.n(), k = L.k();
  DegreeResult result;
  if (k == 1 || n == 1) {
    // P(L^-1) is the single point adj(B).
    result.count = 1;
    result.points.push_back(adjugate(L.basis()[0].cast<Complex>()));
    StageStats st;
    st.stage = "reciprocal_degree";
    st.count = 1;
    result.draws.push_back(st);
    return result;
  }
  const std::vector<CPoly> adj = symbolic_adjugate(L);
  for (int draw = 0; draw < 2; ++draw) {
    Rng rng(derive_seed(seed, 200 + draw));
    PolySystem sys;
    sys.num_vars = k;
    for (int j = 0; j < k - 1; ++j) sys.equations.push_back(combine_polys(adj, random_complex_symmetric(n, rng), n, k));
    sys.equations.push_back(chart(k, 0, k, rng));
    auto [sol, used] = solve_with_retries(sys, derive_seed(seed, 210 + draw), opts, "reciprocal_degree");
    StageStats st = stats_of("reciprocal_degree", used, sol);
    std::vector<std::vector<Complex>> images;
    std::vector<SymMatC> mats;
    for (const auto& s : sol.solutions) {
      const SymMatC X = element(L, s.point);
      const SymMatC A = adjugate(X);
      if (norm_c(A) <= opts.verify_tol * std::pow(norm_c(X), n - 1)) continue;  // base locus
      images.push_back(packed_vector(A));
      mats.push_back(A);
      st.max_residual = std::max(st.max_residual, s.residual);
    }
    const SolutionSet distinct = dedup_projective(images, opts.dedup_tol);
    st.count = static_cast<int>(distinct.solutions.size());
    result.draws.push_back(st);
    if (draw == 0) {
      result.count = st.count;
      for (const auto& d : distinct.solutions) result.points.push_back(mats[std::size_t(d.path_id)]);
    } else if (st.count != result.count) {
      throw CountInstability("reciprocal_degree", result.count, st.count);
    }
  }
  return result;
}

TangencyResult tangency_witnesses(const LinearSubspace& L, std::uint64_t seed, const GeometryOptions& opts) {
  require_regular(L);
  const int n = L.n(), k = L.k();
  TangencyResult result;
  result.stats.stage = "tangency";
  std::vector<SymMatC> candidates;

  const std::vector<CPoly> adj = symbolic_adjugate(L);
  std::vector<CPoly> full;  // tr(F_j adj X(x)), j = 1..k
  for (const auto& F : L.frame()) full.push_back(combine_polys(adj, F.cast<Complex>(), n, k));

  if (k == 1) {
    candidates.push_back(L.basis()[0].cast<Complex>());
  } else {
    Rng rng(derive_seed(seed, 300));
    PolySystem sys;
    sys.num_vars = k;
    for (int j = 0; j < k - 1; ++j) {
      CPoly g(k);
      for (int i = 0; i < k; ++i) g += full[i] * rng.gaussian_complex();
      sys.equations.push_back(g);
    }
    const CPoly c = chart(k, 0, k, rng);
    sys.equations.push_back(c);
    auto [sol, used] = solve_with_retries(sys, derive_seed(seed, 310), opts, "tangency");
    result.stats = stats_of("tangency", used, sol);
    PolySystem overdetermined;
    overdetermined.num_vars = k;
    overdetermined.equations = full;
    overdetermined.equations.push_back(c);
    for (const auto& s : sol.endpoints) {
      if (s.point.empty()) continue;
      candidates.push_back(element(L, gauss_newton(overdetermined, s.point, 12)));
    }
  }

  result.candidates = static_cast<int>(candidates.size());
  std::vector<std::vector<Complex>> accepted;
  for (const auto& raw : candidates) {
    const SymMatC X = normalize_phase(raw);
    const SymMatC A = adjugate(X);
    const double na = norm_c(A);
    if (!(na > 1e-6 * std::pow(norm_c(X), n - 1))) continue;
    if (numeric_rank(X, opts.rank_tol) != n - 1) continue;
    double res = 0.0;
    for (const auto& B : L.basis()) {
      const SymMatC Bc = B.cast<Complex>();
      res = std::max(res, std::abs(trace_pairing(Bc, A)) / (norm_c(Bc) * na));
    }
    if (res > opts.verify_tol) continue;
    bool duplicate = false;
    for (const auto& w : result.witnesses)
      if (angular_distance(w, X) <= opts.dedup_tol) duplicate = true;
    if (duplicate) continue;
    std::optional<SymMatQ> exact;
    if (L.is_exact()) {
      if (auto q = rationalize_matrix(X)) {
        bool ok = exact_rank(q->dense()) == n - 1 && in_span_exact(L, *q);
        if (ok) {
          const SymMatQ aq = adjugate(*q);
          for (const auto& B : L.exact_basis()) ok = ok && is_exact_zero(trace_pairing(B, aq));
        }
        if (ok) exact = q;
      }
    }
    result.witnesses.push_back(X);
    result.exact.push_back(exact);
    result.residuals.push_back(res);
  }
  result.stats.count = static_cast<int>(result.witnesses.size());
  return result;
}

bool verify_ckn(const LinearSubspace& L, const SymMatC& X, const SymMatC& Y, double tol) {
  const double nx = norm_c(X), ny = norm_c(Y);
  if (nx == 0 || ny == 0) return false;
  if (membership_residual(L, X) > tol) return false;
  for (const auto& B : L.basis())
    if (std::abs(trace_pairing(B.cast<Complex>(), Y)) > tol * frobenius_norm(B) * ny) return false;
  return frobenius_norm(X * Y) <= tol * nx * ny;
}

CknResult ckn_witness(const LinearSubspace& L, std::uint64_t seed, const GeometryOptions& opts) {
  CknResult result;
  result.stats.stage = "ckn";
  const int n = L.n(), k = L.k(), N = L.ambient_dim();
  if (k == N) {
    result.note = "annihilator is zero";
    return result;
  }
  const LinearSubspace P = annihilator(L);
  const int kp = P.k();
  // (XY)_{pq} = sum_ij x_i y_j (B_i C_j)_{pq}
  std::vector<CPoly> entries(std::size_t(n) * n, CPoly(N));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < kp; ++j) {
      const Matrix<double> prod = L.basis()[i] * P.basis()[j];
      const CPoly xy = CPoly::variable(N, i) * CPoly::variable(N, k + j);
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
          if (prod(p, q) != 0.0) entries[std::size_t(p) * n + q] += xy * Complex(prod(p, q));
    }
  std::vector<CPoly> nonzero;
  for (auto& e : entries)
    if (!e.is_zero()) nonzero.push_back(e);

  Rng rng(derive_seed(seed, 400));
  const CPoly cx = chart(N, 0, k, rng);
  const CPoly cy = chart(N, k, kp, rng);
  PolySystem sys;
  sys.num_vars = N;
  for (int r = 0; r < N - 2; ++r) {
    CPoly g(N);
    for (const auto& e : nonzero) g += e * rng.gaussian_complex();
    sys.equations.push_back(g);
  }
  sys.equations.push_back(cx);
  sys.equations.push_back(cy);
  for (const auto& e : sys.equations)
    if (e.is_zero()) {
      result.note = "XY vanishes identically on L x annihilator(L)";
      break;
    }
  PolySystem overdetermined;
  overdetermined.num_vars = N;
  overdetermined.equations = nonzero;
  overdetermined.equations.push_back(cx);
  overdetermined.equations.push_back(cy);

  std::vector<std::vector<Complex>> starts;
  if (result.note.empty()) {
    auto [sol, used] = solve_with_retries(sys, derive_seed(seed, 410), opts, "ckn");
    result.stats = stats_of("ckn", used, sol);
    for (const auto& s : sol.endpoints)
      if (!s.point.empty()) starts.push_back(s.point);
  }
  result.candidates = static_cast<int>(starts.size());

  for (const auto& start : starts) {
    const std::vector<Complex> z = gauss_newton(overdetermined, start, 12);
    const std::span<const Complex> zs(z);
    const SymMatC X = normalize_phase(L.combine<Complex>(zs.subspan(0, std::size_t(k))));
    const SymMatC Y = normalize_phase(P.combine<Complex>(zs.subspan(std::size_t(k), std::size_t(kp))));
    const double nx = norm_c(X), ny = norm_c(Y);
    if (!std::isfinite(nx) || !std::isfinite(ny) || nx == 0 || ny == 0) continue;
    const double res = frobenius_norm(X * Y) / (nx * ny);
    if (!std::isfinite(res)) continue;
    if (result.best_residual < 0 || res < result.best_residual) result.best_residual = res;
    if (res > opts.verify_tol) continue;
    if (result.witness && result.witness->residual <= res) continue;
    CknWitness w;
    w.X = X;
    w.Y = Y;
    w.residual = res;
    w.rank_X = numeric_rank(X, opts.rank_tol);
    w.rank_Y = numeric_rank(Y, opts.rank_tol);
    result.witness = w;
  }
  if (result.witness && L.is_exact()) {
    auto qx = rationalize_matrix(result.witness->X);
    auto qy = rationalize_matrix(result.witness->Y);
    if (qx && qy && in_span_exact(L, *qx) && in_span_exact(P, *qy) &&
        (*qx * *qy) == Matrix<Rational>(n, n)) {
      result.witness->X_exact = qx;
      result.witness->Y_exact = qy;
    }
  }
  result.stats.count = result.witness ? 1 : 0;
  return result;
}

MLReport ml_report(const LinearSubspace& L, std::uint64_t seed, const GeometryOptions& opts) {
  require_regular(L);
  MLReport r;
  r.seed = seed;
  std::exception_ptr errors[4];
  auto stage = [&](std::size_t i) {
    try {
      switch (i) {
        case 0: r.ml = ml_degree(L, derive_seed(seed, 1), opts); break;
        case 1: r.reciprocal = reciprocal_degree(L, derive_seed(seed, 2), opts); break;
        case 2: r.tangency = tangency_witnesses(L, derive_seed(seed, 3), opts); break;
        default: r.ckn = ckn_witness(L, derive_seed(seed, 4), opts); break;
      }
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  // Path traces must come out in a fixed order.
  if (opts.paths_debug != nullptr) {
    for (std::size_t i = 0; i < 4; ++i) stage(i);
  } else {
    parallel_for(4, stage);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  r.ml_degree = r.ml.count;
  r.reciprocal_degree = r.reciprocal.count;
  r.is_ml_maximal = r.ml_degree == r.reciprocal_degree;
  if (r.ml_degree > r.reciprocal_degree)
    r.violations.push_back("ml_degree " + std::to_string(r.ml_degree) + " exceeds reciprocal_degree " +
                           std::to_string(r.reciprocal_degree));
  if (!r.tangency.witnesses.empty() && r.is_ml_maximal)
    r.violations.push_back("tangency witness present but counts report ML-maximality");
  if (!r.is_ml_maximal && !r.ckn.witness)
    r.violations.push_back("not ML-maximal but no C_{k,n} witness was found");

  for (const auto* d : {&r.ml.draws, &r.reciprocal.draws})
    for (const auto& st : *d)
      if (st.suspected_positive_dimensional)
        r.diagnostics.push_back(st.stage + ": suspected positive-dimensional solution set (seed " +
                                std::to_string(st.seed) + ")");
  if (r.tangency.stats.suspected_positive_dimensional)
    r.diagnostics.push_back("tangency: suspected positive-dimensional solution set");
  if (r.ckn.stats.suspected_positive_dimensional)
    r.diagnostics.push_back("ckn: suspected positive-dimensional solution set");
  if (!r.ckn.note.empty()) r.diagnostics.push_back("ckn: " + r.ckn.note);
  return r;
}

}  // namespace mlspectra
