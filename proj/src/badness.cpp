#include "mlspectra/badness.hpp"

#include "mlspectra/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mlspectra {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd dense(const SymMatR& m) { return to_eigen(m); }

SymMatR combine_real(const std::vector<SymMatR>& basis, const VectorXd& c, int n) {
  SymMatR out(n);
  for (std::size_t i = 0; i < basis.size(); ++i) out += basis[i] * c(Eigen::Index(i));
  return out;
}

SymMatQ combine_exact(const std::vector<SymMatQ>& basis, const std::vector<Rational>& c, int n) {
  SymMatQ out(n);
  for (std::size_t i = 0; i < basis.size(); ++i) out += basis[i] * c[i];
  return out;
}

Matrix<Rational> dense_q(const SymMatQ& m) { return m.dense(); }

Matrix<Rational> columns(const std::vector<std::vector<Rational>>& vs, int rows) {
  Matrix<Rational> out(rows, int(vs.size()));
  for (std::size_t j = 0; j < vs.size(); ++j)
    for (int i = 0; i < rows; ++i) out(i, int(j)) = vs[j][std::size_t(i)];
  return out;
}

MatrixXd to_double_matrix(const Matrix<Rational>& m) {
  MatrixXd out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
  return out;
}

std::optional<Matrix<Rational>> exact_inverse(const Matrix<Rational>& a) {
  const int n = a.rows();
  Matrix<Rational> aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = Rational(1);
  }
  const Rref r = rref(aug);
  if (int(r.pivots.size()) < n || r.pivots[std::size_t(n - 1)] >= n) return std::nullopt;
  Matrix<Rational> inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = r.reduced(i, n + j);
  return inv;
}

// Solves sum c_i basis_i = m exactly; nullopt when m is not in the span.
std::optional<std::vector<Rational>> exact_coordinates(const std::vector<SymMatQ>& basis, const SymMatQ& m) {
  const int N = int(m.packed().size());
  const int k = int(basis.size());
  Matrix<Rational> aug(N, k + 1);
  for (int j = 0; j < k; ++j)
    for (int p = 0; p < N; ++p) aug(p, j) = basis[std::size_t(j)].packed()[std::size_t(p)];
  for (int p = 0; p < N; ++p) aug(p, k) = m.packed()[std::size_t(p)];
  const Rref r = rref(aug);
  std::vector<Rational> c(std::size_t(k), Rational(0));
  for (std::size_t row = 0; row < r.pivots.size(); ++row) {
    if (r.pivots[row] == k) return std::nullopt;
    c[std::size_t(r.pivots[row])] = r.reduced(int(row), k);
  }
  return c;
}

VectorXd least_squares_coordinates(const std::vector<SymMatR>& basis, const SymMatR& m) {
  MatrixXd a(Eigen::Index(svec(m).size()), Eigen::Index(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) a.col(Eigen::Index(j)) = svec(basis[j]);
  return a.completeOrthogonalDecomposition().solve(svec(m));
}

// A rational point of span(basis) near the float matrix m whose exact PSD
// rank equals `rank`. Small denominators are tried before dyadic rounding.
std::optional<std::pair<SymMatQ, std::vector<Rational>>> rational_psd_point(const std::vector<SymMatQ>& basis,
                                                                            const SymMatR& m, int rank) {
  if (basis.empty()) return std::nullopt;
  const int n = m.n();
  std::vector<SymMatR> real;
  for (const auto& b : basis) real.push_back(b.cast<double>());
  const VectorXd c = least_squares_coordinates(real, m);
  const double scale = c.cwiseAbs().maxCoeff();
  if (!(scale > 0) || !std::isfinite(scale)) return std::nullopt;
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::vector<Rational> q;
    bool ok = true;
    for (Eigen::Index i = 0; i < c.size() && ok; ++i) {
      const double v = c(i) / scale;
      if (attempt == 0) {
        const auto r = rationalize(v, 1000, 1e-6);
        if (!r) ok = false;
        else q.push_back(*r);
      } else {
        q.push_back(rational_from_double(std::ldexp(std::round(std::ldexp(v, 30)), -30)));
      }
    }
    if (!ok) continue;
    SymMatQ w = combine_exact(basis, q, n);
    if (exact_psd_rank(w) == std::optional<int>(rank)) return std::make_pair(std::move(w), std::move(q));
  }
  return std::nullopt;
}

// Basis of the column space of v (n x m, orthonormal) in echelon form with
// small-denominator rational entries.
std::optional<Matrix<Rational>> rational_column_space(const MatrixXd& v) {
  const int n = int(v.rows()), m = int(v.cols());
  Eigen::ColPivHouseholderQR<MatrixXd> qr(v.transpose());
  std::vector<int> piv;
  for (int j = 0; j < m; ++j) piv.push_back(qr.colsPermutation().indices()(j));
  MatrixXd sub(m, m);
  for (int a = 0; a < m; ++a) sub.row(a) = v.row(piv[std::size_t(a)]);
  const MatrixXd e = v * sub.inverse();
  Matrix<Rational> out(n, m);
  for (int i = 0; i < n; ++i) {
    const auto it = std::find(piv.begin(), piv.end(), i);
    for (int j = 0; j < m; ++j) {
      if (it != piv.end()) {
        out(i, j) = Rational(int(it - piv.begin()) == j ? 1 : 0);
        continue;
      }
      const auto r = rationalize(e(i, j), 10000, 1e-7);
      if (!r) return std::nullopt;
      out(i, j) = *r;
    }
  }
  return out;
}

std::vector<MatrixXd> eigen_basis(const std::vector<SymMatR>& b) {
  std::vector<MatrixXd> out;
  for (const auto& m : b) out.push_back(dense(m));
  return out;
}

struct Compressed {
  LinearSubspace sub;
  // n x m; W in L equals V W' V^T for W' in sub.
  MatrixXd V;
  std::optional<Matrix<Rational>> V_exact;
};

// {X in L : X u = 0 for u in range}, written in the coordinates of the
// complement spanned by the columns of V.
std::optional<Compressed> compress_exact(const LinearSubspace& L, const Matrix<Rational>& Vq) {
  const int n = L.n(), m = Vq.cols(), k = L.k();
  const auto u = exact_nullspace(Vq.transpose());
  const int r = int(u.size());
  const Matrix<Rational> U = columns(u, n);
  Matrix<Rational> cond(n * r, k);
  for (int i = 0; i < k; ++i) {
    const Matrix<Rational> bu = dense_q(L.exact_basis()[std::size_t(i)]) * U;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < r; ++b) cond(a * r + b, i) = bu(a, b);
  }
  const auto xs = exact_nullspace(cond);
  const auto ginv = exact_inverse(Vq.transpose() * Vq);
  if (!ginv) return std::nullopt;
  const Matrix<Rational> left = *ginv * Vq.transpose();
  std::vector<SymMatQ> basis;
  for (const auto& x : xs) {
    const Matrix<Rational> M = dense_q(combine_exact(L.exact_basis(), x, n));
    basis.push_back(SymMatQ::from_dense(left * M * left.transpose()));
  }
  Compressed c{LinearSubspace::rational(m, std::move(basis)), to_double_matrix(Vq), Vq};
  return c;
}

Compressed compress_float(const LinearSubspace& L, const MatrixXd& V, const MatrixXd& U) {
  const int n = L.n(), m = int(V.cols()), r = int(U.cols()), k = L.k();
  MatrixXd cond(n * r, k);
  for (int i = 0; i < k; ++i) {
    const MatrixXd bu = dense(L.basis()[std::size_t(i)]) * U;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < r; ++b) cond(a * r + b, i) = bu(a, b);
  }
  const MatrixXd xs = k > 0 ? float_nullspace(cond, 1e-9) : MatrixXd(0, 0);
  std::vector<SymMatR> basis;
  for (Eigen::Index c = 0; c < xs.cols(); ++c) {
    const MatrixXd M = dense(combine_real(L.basis(), xs.col(c), n));
    MatrixXd a = V.transpose() * M * V;
    basis.push_back(symmat_from_eigen(0.5 * (a + a.transpose())));
  }
  return Compressed{LinearSubspace::real(m, std::move(basis), 1e-12), V, std::nullopt};
}

PsdRankResult rank_in(const LinearSubspace& L, std::uint64_t seed, const BadnessOptions& opts) {
  const int n = L.n();
  PsdRankResult res;
  res.W = SymMatR(n);
  res.exact = L.is_exact();
  if (L.k() == 0) {
    res.diagnostics.push_back("zero subspace at size " + std::to_string(n));
    return res;
  }

  VectorXd z;
  const double lam = max_min_eigenvalue(eigen_basis(L.frame()), &z, derive_seed(seed, 1));
  if (std::isnan(lam)) {
    res.ok = false;
    res.diagnostics.push_back("barrier iteration failed");
    return res;
  }
  if (lam > opts.definite_tol) {
    SymMatR X = combine_real(L.frame(), z, n);
    res.rank = n;
    res.W = X * (1.0 / frobenius_norm(X));
    if (L.is_exact()) {
      if (auto p = rational_psd_point(L.exact_basis(), X, n)) {
        res.W_exact = std::move(p->first);
      } else {
        res.exact = false;
        res.diagnostics.push_back("definite element could not be made exact");
      }
    }
    return res;
  }

  const LinearSubspace P = annihilator(L);
  VectorXd zp;
  const double lamp = P.k() > 0 ? max_min_eigenvalue(eigen_basis(P.frame()), &zp, derive_seed(seed, 2))
                                : -std::numeric_limits<double>::infinity();
  if (lamp > opts.definite_tol) {
    // A definite element of the annihilator pairs positively with every
    // nonzero PSD matrix, so L meets the cone only at 0.
    res.diagnostics.push_back("annihilator has a definite element at size " + std::to_string(n) +
                              "; no nonzero PSD element");
    if (L.is_exact() && !rational_psd_point(P.exact_basis(), combine_real(P.frame(), zp, n), n)) {
      res.exact = false;
      res.diagnostics.push_back("annihilator certificate could not be made exact");
    }
    return res;
  }
  if (P.k() == 0) {
    res.ok = false;
    res.diagnostics.push_back("full space without a definite element");
    return res;
  }

  const SymMatR Y = combine_real(P.frame(), zp, n);
  const SymEigen ey = sym_eigen_descending(Y);
  const double top = ey.values(0);
  int r = 0;
  while (r < n && ey.values(r) > opts.face_tol * top) ++r;
  if (!(top > 0) || r == n) {
    res.ok = false;
    res.diagnostics.push_back("face reduction found no PSD element of the annihilator");
    return res;
  }
  const int m = n - r;
  const MatrixXd V = ey.vectors.rightCols(m);
  const MatrixXd U = ey.vectors.leftCols(r);

  std::optional<Compressed> comp;
  if (L.is_exact()) {
    if (auto Vq = rational_column_space(V)) {
      // Exact PSD element of the annihilator with kernel exactly span(Vq).
      Matrix<Rational> cond(n * m, P.k());
      for (int j = 0; j < P.k(); ++j) {
        const Matrix<Rational> yv = dense_q(P.exact_basis()[std::size_t(j)]) * *Vq;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < m; ++b) cond(a * m + b, j) = yv(a, b);
      }
      std::vector<SymMatQ> sigma;
      for (const auto& y : exact_nullspace(cond)) sigma.push_back(combine_exact(P.exact_basis(), y, n));
      if (rational_psd_point(sigma, Y, r)) comp = compress_exact(L, *Vq);
    }
    if (!comp) {
      res.exact = false;
      res.diagnostics.push_back("face at size " + std::to_string(n) + " is not rational; continuing in floating point");
    }
  }
  if (!comp) comp = compress_float(L, V, U);

  PsdRankResult inner = rank_in(comp->sub, derive_seed(seed, 3), opts);
  res.rank = inner.rank;
  res.ok = inner.ok;
  res.face_reductions = inner.face_reductions + 1;
  res.exact = res.exact && comp->V_exact.has_value() && inner.exact;
  for (auto& d : inner.diagnostics) res.diagnostics.push_back(std::move(d));
  const MatrixXd w = comp->V * dense(inner.W) * comp->V.transpose();
  res.W = symmat_from_eigen(0.5 * (w + w.transpose()));
  const double nw = frobenius_norm(res.W);
  if (nw > 0) res.W = res.W * (1.0 / nw);
  if (res.exact && inner.W_exact) {
    const Matrix<Rational>& Vq = *comp->V_exact;
    res.W_exact = SymMatQ::from_dense(Vq * inner.W_exact->dense() * Vq.transpose());
  } else if (inner.rank > 0) {
    res.exact = false;
  }
  return res;
}

// Rank-revealing split of a PSD matrix: (range, kernel) orthonormal bases.
std::pair<MatrixXd, MatrixXd> range_kernel(const SymMatR& w, int rank) {
  const SymEigen e = sym_eigen_descending(w);
  const int n = w.n();
  return {e.vectors.leftCols(rank), e.vectors.rightCols(n - rank)};
}

MatrixXd random_orthogonal(int m, Rng& rng) {
  if (m == 0) return MatrixXd(0, 0);
  MatrixXd g(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) g(i, j) = rng.normal();
  Eigen::HouseholderQR<MatrixXd> qr(g);
  return qr.householderQ() * MatrixXd::Identity(m, m);
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::bad: return "bad";
    case Verdict::not_bad: return "not_bad";
    case Verdict::undetermined: return "undetermined";
  }
  return "undetermined";
}

double max_min_eigenvalue(const std::vector<MatrixXd>& basis, VectorXd* coords, std::uint64_t seed) {
  const int k = int(basis.size());
  if (k == 0) return -std::numeric_limits<double>::infinity();
  const int n = int(basis[0].rows());
  VectorXd c(k);
  double scale = 0.0;
  for (int i = 0; i < k; ++i) {
    c(i) = basis[std::size_t(i)].trace();
    scale = std::max(scale, basis[std::size_t(i)].norm());
  }
  if (c.norm() <= 1e-12 * scale) return -std::numeric_limits<double>::infinity();

  // x = x0 + N z parametrizes the slice tr X = 1.
  const VectorXd x0 = c / c.squaredNorm();
  Eigen::HouseholderQR<MatrixXd> qr(c);
  const MatrixXd Q = qr.householderQ() * MatrixXd::Identity(k, k);
  const MatrixXd N = Q.rightCols(k - 1);
  MatrixXd X0 = MatrixXd::Zero(n, n);
  for (int i = 0; i < k; ++i) X0 += x0(i) * basis[std::size_t(i)];
  std::vector<MatrixXd> D(std::size_t(k - 1), MatrixXd::Zero(n, n));
  for (int j = 0; j < k - 1; ++j)
    for (int i = 0; i < k; ++i) D[std::size_t(j)] += N(i, j) * basis[std::size_t(i)];

  const int p = k;  // z (k-1) and t
  VectorXd u = VectorXd::Zero(p);
  if (seed != 0) {
    Rng rng(seed);
    for (int j = 0; j < k - 1; ++j) u(j) = 0.1 * rng.normal();
  }
  const MatrixXd I = MatrixXd::Identity(n, n);
  auto slack = [&](const VectorXd& v) {
    MatrixXd a = X0 - v(p - 1) * I;
    for (int j = 0; j < k - 1; ++j) a += v(j) * D[std::size_t(j)];
    return a;
  };
  auto element = [&](const VectorXd& v) {
    MatrixXd a = X0;
    for (int j = 0; j < k - 1; ++j) a += v(j) * D[std::size_t(j)];
    return a;
  };
  {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(element(u), Eigen::EigenvaluesOnly);
    u(p - 1) = es.eigenvalues()(0) - 1.0;
  }

  auto barrier = [&](const VectorXd& v, double mu, double* f) {
    Eigen::LLT<MatrixXd> llt(slack(v));
    if (llt.info() != Eigen::Success) return false;
    const MatrixXd& L = llt.matrixL();
    double logdet = 0.0;
    for (int i = 0; i < n; ++i) {
      if (!(L(i, i) > 0)) return false;
      logdet += 2.0 * std::log(L(i, i));
    }
    *f = -v(p - 1) / mu - logdet;
    return std::isfinite(*f);
  };

  for (double mu = 1.0;; mu *= 0.2) {
    for (int it = 0; it < 100; ++it) {
      const MatrixXd A = slack(u);
      Eigen::LLT<MatrixXd> llt(A);
      const MatrixXd G = llt.solve(I);
      std::vector<MatrixXd> GE;
      VectorXd g(p);
      for (int j = 0; j < k - 1; ++j) {
        GE.push_back(G * D[std::size_t(j)]);
        g(j) = -GE.back().trace();
      }
      GE.push_back(-G);
      g(p - 1) = -1.0 / mu + G.trace();
      MatrixXd H(p, p);
      for (int a = 0; a < p; ++a)
        for (int b = a; b < p; ++b) H(a, b) = H(b, a) = GE[std::size_t(a)].cwiseProduct(GE[std::size_t(b)].transpose()).sum();
      const VectorXd step = -H.ldlt().solve(g);
      const double decrement = -g.dot(step);
      if (!std::isfinite(decrement) || decrement < 1e-12) break;
      double f0 = 0.0;
      barrier(u, mu, &f0);
      double alpha = 1.0;
      bool moved = false;
      while (alpha > 1e-12) {
        double f1 = 0.0;
        const VectorXd trial = u + alpha * step;
        if (barrier(trial, mu, &f1) && f1 <= f0 - 0.25 * alpha * decrement) {
          u = trial;
          moved = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!moved) break;
    }
    if (double(n) * mu < 1e-13) break;
  }

  const VectorXd x = x0 + N * u.head(k - 1);
  if (coords != nullptr) *coords = x;
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(element(u), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

PsdRankResult max_rank_psd(const LinearSubspace& L, std::uint64_t seed, const BadnessOptions& opts) {
  PsdRankResult res = rank_in(L, seed, opts);
  if (res.rank == 0) {
    res.coefficients.assign(std::size_t(L.k()), 0.0);
    if (L.is_exact() && res.exact) res.exact_coefficients = std::vector<Rational>(std::size_t(L.k()), Rational(0));
    return res;
  }
  if (res.W_exact && L.is_exact()) {
    // Scale to largest entry 1 for readable certificates.
    Rational big(0);
    for (const auto& v : res.W_exact->packed()) big = std::max(big, Rational(abs(v)));
    *res.W_exact *= Rational(1) / big;
    res.exact_coefficients = exact_coordinates(L.exact_basis(), *res.W_exact);
    if (!res.exact_coefficients) {
      res.exact = false;
      res.W_exact.reset();
      res.diagnostics.push_back("exact element fell outside the subspace");
    } else {
      res.W = res.W_exact->cast<double>();
      res.W = res.W * (1.0 / frobenius_norm(res.W));
    }
  }
  const VectorXd c = least_squares_coordinates(L.basis(), res.W);
  res.coefficients.assign(c.data(), c.data() + c.size());
  const SymEigen e = sym_eigen_descending(res.W);
  if (e.values(e.values.size() - 1) < -opts.psd_tol * frobenius_norm(res.W)) {
    res.ok = false;
    res.diagnostics.push_back("returned element is not PSD within tolerance");
  }
  return res;
}

BadCertificate pataki_certificate(const LinearSubspace& L, std::uint64_t seed, const BadnessOptions& opts) {
  const int n = L.n();
  BadCertificate cert;
  cert.n = n;
  const LinearSubspace P = annihilator(L);
  cert.psd_L = max_rank_psd(L, derive_seed(seed, 1), opts);
  cert.psd_Lperp = max_rank_psd(P, derive_seed(seed, 2), opts);
  cert.s_L = cert.psd_L.rank;
  cert.s_Lperp = cert.psd_Lperp.rank;
  const int s = cert.s_L, sp = cert.s_Lperp;
  cert.cond10 = s + sp == n;
  cert.cond11_vacuous = s == 0 || sp == 0;
  cert.exact = L.is_exact() && cert.psd_L.exact && cert.psd_Lperp.exact;
  if (cert.exact && s > 0 && !cert.psd_L.W_exact) cert.exact = false;
  if (cert.exact && sp > 0 && !cert.psd_Lperp.W_exact) cert.exact = false;

  // Orthogonal block coordinates: range(W), ker(W) minus range(W'), range(W').
  {
    Rng rng(derive_seed(seed, 3));
    auto [range, kernel] = range_kernel(cert.psd_L.W, s);
    MatrixXd inner_top(n - s, 0), inner_rest = MatrixXd::Identity(n - s, n - s);
    if (sp > 0 && n - s > 0) {
      const MatrixXd wp = kernel.transpose() * dense(cert.psd_Lperp.W) * kernel;
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (wp + wp.transpose()));
      const int keep = std::min(sp, n - s);
      inner_top = es.eigenvectors().rightCols(keep);
      inner_rest = es.eigenvectors().leftCols(n - s - keep);
    }
    MatrixXd q(n, n);
    q << range * random_orthogonal(s, rng), kernel * inner_rest * random_orthogonal(int(inner_rest.cols()), rng),
        kernel * inner_top * random_orthogonal(int(inner_top.cols()), rng);
    cert.transform = q;
  }

  if (!cert.psd_L.ok || !cert.psd_Lperp.ok || s + sp > n) {
    cert.verdict = Verdict::undetermined;
    cert.diagnostics.push_back("spectrahedral rank search did not certify both ranks");
    for (const auto& d : cert.psd_L.diagnostics) cert.diagnostics.push_back("L: " + d);
    for (const auto& d : cert.psd_Lperp.diagnostics) cert.diagnostics.push_back("annihilator: " + d);
    return cert;
  }

  cert.cond11 = true;
  std::vector<SymMatR> zero_block;  // basis of {M in L : lower-right block = 0}
  if (!cert.cond11_vacuous) {
    if (cert.exact) {
      // Kernel K of W, a complement R, and range(W'); the test below does not
      // depend on which bases are chosen.
      const auto kv = exact_nullspace(cert.psd_L.W_exact->dense());
      const Matrix<Rational> K = columns(kv, n);
      Matrix<Rational> kt(int(kv.size()), n);
      for (std::size_t a = 0; a < kv.size(); ++a)
        for (int i = 0; i < n; ++i) kt(int(a), i) = kv[a][std::size_t(i)];
      const Matrix<Rational> R = columns(exact_nullspace(kt), n);
      const auto pker = exact_nullspace(cert.psd_Lperp.W_exact->dense());
      Matrix<Rational> pkt(int(pker.size()), n);
      for (std::size_t a = 0; a < pker.size(); ++a)
        for (int i = 0; i < n; ++i) pkt(int(a), i) = pker[a][std::size_t(i)];
      const Matrix<Rational> Kp = columns(exact_nullspace(pkt), n);
      const int m = K.cols();
      Matrix<Rational> cond(m * (m + 1) / 2, L.k());
      for (int i = 0; i < L.k(); ++i) {
        const Matrix<Rational> b = K.transpose() * dense_q(L.exact_basis()[std::size_t(i)]) * K;
        int row = 0;
        for (int a = 0; a < m; ++a)
          for (int c = a; c < m; ++c) cond(row++, i) = b(a, c);
      }
      for (const auto& x : exact_nullspace(cond)) {
        const SymMatQ M = combine_exact(L.exact_basis(), x, n);
        zero_block.push_back(M.cast<double>());
        const Matrix<Rational> blk = R.transpose() * M.dense() * Kp;
        bool zero = true;
        for (int a = 0; a < blk.rows() && zero; ++a)
          for (int c = 0; c < blk.cols() && zero; ++c) zero = is_exact_zero(blk(a, c));
        if (!zero && cert.cond11) {
          cert.cond11 = false;
          cert.violating_exact = M;
          cert.violating_matrix = M.cast<double>();
        }
      }
    } else {
      auto [R, K] = range_kernel(cert.psd_L.W, s);
      auto [Kp, unused] = range_kernel(cert.psd_Lperp.W, sp);
      const int m = int(K.cols());
      MatrixXd cond(m * (m + 1) / 2, L.k());
      for (int i = 0; i < L.k(); ++i) {
        const MatrixXd b = K.transpose() * dense(L.basis()[std::size_t(i)]) * K;
        int row = 0;
        for (int a = 0; a < m; ++a)
          for (int c = a; c < m; ++c) cond(row++, i) = b(a, c);
      }
      const MatrixXd xs = float_nullspace(cond, 1e-9);
      for (Eigen::Index c = 0; c < xs.cols(); ++c) {
        const SymMatR M = combine_real(L.basis(), xs.col(c), n);
        zero_block.push_back(M);
        const double blk = (R.transpose() * dense(M) * Kp).norm();
        if (blk > opts.block_tol * frobenius_norm(M) && cert.cond11) {
          cert.cond11 = false;
          cert.violating_matrix = M;
        }
      }
    }
    // Same test read off in the orthogonal block coordinates.
    bool block_violation = false;
    for (const auto& M : zero_block) {
      const MatrixXd t = cert.transform.transpose() * dense(M) * cert.transform;
      const double scale = std::max(frobenius_norm(M), 1e-300);
      if (t.bottomRightCorner(n - s, n - s).norm() > 1e-6 * scale)
        cert.diagnostics.push_back("lower-right block of a zero-block matrix is not small in the transform");
      if (t.topRightCorner(s, sp).norm() > 1e-6 * scale) block_violation = true;
    }
    if (block_violation == cert.cond11)
      cert.diagnostics.push_back("block test in the orthogonal transform disagrees with the exact test");
  } else {
    cert.diagnostics.push_back("cond11 holds vacuously: s(L) = " + std::to_string(s) +
                               ", s(L-perp) = " + std::to_string(sp));
  }
  cert.verdict = cert.cond10 && cert.cond11 ? Verdict::not_bad : Verdict::bad;
  return cert;
}

}  // namespace mlspectra
