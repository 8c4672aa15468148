#include "mlspectra/subspace.hpp"

#include "mlspectra/errors.hpp"
#include "mlspectra/random.hpp"

#include <cmath>

namespace mlspectra {

namespace {

const double kSqrt2 = std::sqrt(2.0);

// Column index in svec coordinates of entry (i, j), i <= j.
int svec_index(int n, int i, int j) {
  if (i == j) return i;
  // off-diagonal pairs in row-major order after the n diagonal slots
  int idx = n;
  for (int r = 0; r < i; ++r) idx += n - 1 - r;
  return idx + (j - i - 1);
}

}  // namespace

Eigen::VectorXd svec(const SymMatR& m) {
  const int n = m.n();
  Eigen::VectorXd v(n * (n + 1) / 2);
  for (int i = 0; i < n; ++i) {
    v(svec_index(n, i, i)) = m(i, i);
    for (int j = i + 1; j < n; ++j) v(svec_index(n, i, j)) = kSqrt2 * m(i, j);
  }
  return v;
}

Eigen::VectorXcd svec(const SymMatC& m) {
  const int n = m.n();
  Eigen::VectorXcd v(n * (n + 1) / 2);
  for (int i = 0; i < n; ++i) {
    v(svec_index(n, i, i)) = m(i, i);
    for (int j = i + 1; j < n; ++j) v(svec_index(n, i, j)) = kSqrt2 * m(i, j);
  }
  return v;
}

SymMatR from_svec(int n, const Eigen::VectorXd& v) {
  SymMatR m(n);
  for (int i = 0; i < n; ++i) {
    m.set(i, i, v(svec_index(n, i, i)));
    for (int j = i + 1; j < n; ++j) m.set(i, j, v(svec_index(n, i, j)) / kSqrt2);
  }
  return m;
}

LinearSubspace LinearSubspace::rational(int n, std::vector<SymMatQ> basis) {
  if (n < 1) throw std::invalid_argument("subspace: n must be >= 1");
  const int N = n * (n + 1) / 2;
  Matrix<Rational> rows(0, N);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].n() != n) throw std::invalid_argument("basis element " + std::to_string(i) + " has wrong size");
    Matrix<Rational> next(int(i) + 1, N);
    for (int r = 0; r < int(i); ++r)
      for (int c = 0; c < N; ++c) next(r, c) = rows(r, c);
    const auto packed = basis[i].packed();
    for (int c = 0; c < N; ++c) next(int(i), c) = packed[c];
    if (exact_rank(next) != int(i) + 1) throw DependentBasis(int(i));
    rows = std::move(next);
  }
  LinearSubspace L;
  L.n_ = n;
  L.field_ = Field::rational;
  for (const auto& b : basis) L.real_.push_back(b.cast<double>());
  L.exact_ = std::move(basis);
  L.build_frame();
  return L;
}

LinearSubspace LinearSubspace::real(int n, std::vector<SymMatR> basis, double tol) {
  if (n < 1) throw std::invalid_argument("subspace: n must be >= 1");
  const int N = n * (n + 1) / 2;
  Eigen::MatrixXd cols(N, 0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].n() != n) throw std::invalid_argument("basis element " + std::to_string(i) + " has wrong size");
    Eigen::MatrixXd next(N, cols.cols() + 1);
    next << cols, svec(basis[i]);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(next);
    const auto& sv = svd.singularValues();
    if (sv.size() < next.cols() || sv(sv.size() - 1) <= tol * sv(0)) throw DependentBasis(int(i));
    cols = std::move(next);
  }
  LinearSubspace L;
  L.n_ = n;
  L.field_ = Field::real;
  L.real_ = std::move(basis);
  L.build_frame();
  return L;
}

const std::vector<SymMatQ>& LinearSubspace::exact_basis() const {
  if (field_ != Field::rational) throw std::logic_error("exact_basis: subspace is not rational");
  return exact_;
}

Eigen::MatrixXd LinearSubspace::basis_matrix() const {
  Eigen::MatrixXd a(ambient_dim(), k());
  for (int i = 0; i < k(); ++i) a.col(i) = svec(real_[i]);
  return a;
}

void LinearSubspace::build_frame() {
  frame_.clear();
  if (k() == 0) return;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(basis_matrix());
  const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(ambient_dim(), k());
  for (int i = 0; i < k(); ++i) frame_.push_back(from_svec(n_, q.col(i)));
}

LinearSubspace annihilator(const LinearSubspace& L, double tol) {
  const int n = L.n();
  const int N = L.ambient_dim();
  if (L.is_exact()) {
    // Row i holds the coefficients of tr(B_i Y) in the packed entries of Y.
    Matrix<Rational> rows(L.k(), N);
    for (int i = 0; i < L.k(); ++i) {
      const auto& b = L.exact_basis()[i];
      for (int p = 0; p < n; ++p)
        for (int q = p; q < n; ++q)
          rows(i, int(SymMatQ::index(n, p, q))) = p == q ? b(p, q) : Rational(2) * b(p, q);
    }
    std::vector<SymMatQ> basis;
    for (auto& v : exact_nullspace(rows)) basis.push_back(SymMatQ::from_packed(n, std::move(v)));
    return LinearSubspace::rational(n, std::move(basis));
  }
  Eigen::MatrixXd a = L.basis_matrix().transpose();
  const Eigen::MatrixXd ns = float_nullspace(a, tol);
  std::vector<SymMatR> basis;
  for (Eigen::Index c = 0; c < ns.cols(); ++c) basis.push_back(from_svec(n, ns.col(c)));
  return LinearSubspace::real(n, std::move(basis));
}

LinearSubspace sample_generic_subspace(int n, int k, std::uint64_t seed) {
  const int N = n * (n + 1) / 2;
  if (n < 1 || k < 1 || k > N)
    throw std::invalid_argument("sample_generic_subspace: need 1 <= k <= n(n+1)/2");
  Rng rng(seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<SymMatQ> basis;
    for (int i = 0; i < k; ++i) {
      SymMatQ m(n);
      for (int p = 0; p < n; ++p)
        for (int q = p; q < n; ++q) m.set(p, q, Rational(rng.uniform_int(-10, 10)));
      basis.push_back(std::move(m));
    }
    try {
      return LinearSubspace::rational(n, std::move(basis));
    } catch (const DependentBasis&) {
    }
  }
  throw SolverError("sample_generic_subspace: no independent basis after 100 draws");
}

bool same_span(const LinearSubspace& a, const LinearSubspace& b, double tol) {
  if (a.n() != b.n() || a.k() != b.k()) return false;
  if (a.k() == 0) return true;
  if (a.is_exact() && b.is_exact()) {
    const int N = a.ambient_dim();
    Matrix<Rational> rows(a.k() + b.k(), N);
    for (int i = 0; i < a.k(); ++i) {
      const auto p = a.exact_basis()[i].packed();
      for (int c = 0; c < N; ++c) rows(i, c) = p[c];
    }
    for (int i = 0; i < b.k(); ++i) {
      const auto p = b.exact_basis()[i].packed();
      for (int c = 0; c < N; ++c) rows(a.k() + i, c) = p[c];
    }
    return exact_rank(rows) == a.k();
  }
  // Orthonormal frames: spans agree iff the projection of one onto the other
  // is an isometry.
  Eigen::MatrixXd qa(a.ambient_dim(), a.k()), qb(b.ambient_dim(), b.k());
  for (int i = 0; i < a.k(); ++i) qa.col(i) = svec(a.frame()[i]);
  for (int i = 0; i < b.k(); ++i) qb.col(i) = svec(b.frame()[i]);
  const Eigen::MatrixXd residual = qb - qa * (qa.transpose() * qb);
  return residual.norm() <= tol * std::sqrt(double(a.k()));
}

std::optional<SymMatR> find_invertible_element(const LinearSubspace& L, std::uint64_t seed,
                                               int attempts) {
  Rng rng(seed);
  for (int t = 0; t < attempts; ++t) {
    if (L.is_exact()) {
      std::vector<Rational> c;
      for (int i = 0; i < L.k(); ++i) c.emplace_back(rng.uniform_int(-20, 20));
      SymMatQ m = L.combine<Rational>(c);
      if (!is_exact_zero(determinant(m))) return m.cast<double>();
    } else {
      std::vector<double> c;
      for (int i = 0; i < L.k(); ++i) c.push_back(rng.normal());
      SymMatR m = L.combine<double>(c);
      const double scale = std::pow(frobenius_norm(m), m.n());
      if (std::abs(determinant(m)) > 1e-10 * scale) return m;
    }
  }
  return std::nullopt;
}

}  // namespace mlspectra
