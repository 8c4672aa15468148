#include "mlspectra/linalg.hpp"

#include <cmath>

namespace mlspectra {

template <class T>
T determinant(Matrix<T> a) {
  const int n = a.rows();
  if (n != a.cols()) throw std::invalid_argument("determinant: matrix not square");
  T det = T(1);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    if constexpr (is_exact_v<T>) {
      for (int r = col; r < n; ++r)
        if (!is_exact_zero(a(r, col))) {
          pivot = r;
          break;
        }
    } else {
      double best = 0.0;
      for (int r = col; r < n; ++r) {
        const double m = magnitude(a(r, col));
        if (m > best) {
          best = m;
          pivot = r;
        }
      }
    }
    if (pivot < 0) return T(0);
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
      det = -det;
    }
    const T p = a(col, col);
    det *= p;
    for (int r = col + 1; r < n; ++r) {
      if (is_exact_zero(a(r, col))) continue;
      const T f = a(r, col) / p;
      for (int j = col; j < n; ++j) a(r, j) -= f * a(col, j);
    }
  }
  return det;
}

template Rational determinant(Matrix<Rational>);
template double determinant(Matrix<double>);
template Complex determinant(Matrix<Complex>);

template <class T>
SymMat<T> adjugate(const SymMat<T>& m) {
  const int n = m.n();
  SymMat<T> adj(n);
  if (n == 1) {
    adj.set(0, 0, T(1));
    return adj;
  }
  const Matrix<T> a = m.dense();
  Matrix<T> minor(n - 1, n - 1);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      // cofactor C_ji = (-1)^{i+j} det(a without row j, col i)
      int rr = 0;
      for (int r = 0; r < n; ++r) {
        if (r == j) continue;
        int cc = 0;
        for (int c = 0; c < n; ++c) {
          if (c == i) continue;
          minor(rr, cc++) = a(r, c);
        }
        ++rr;
      }
      T d = determinant(minor);
      adj.set(i, j, (i + j) % 2 == 0 ? d : T(-d));
    }
  return adj;
}

template SymMat<Rational> adjugate(const SymMat<Rational>&);
template SymMat<double> adjugate(const SymMat<double>&);
template SymMat<Complex> adjugate(const SymMat<Complex>&);

std::optional<std::string> adjugate_diagnostic(const SymMatR& adj) {
  for (double v : adj.packed())
    if (!std::isfinite(v)) return std::string("adjugate overflow: non-finite entries");
  return std::nullopt;
}

std::optional<std::string> adjugate_diagnostic(const SymMatC& adj) {
  for (const Complex& v : adj.packed())
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      return std::string("adjugate overflow: non-finite entries");
  return std::nullopt;
}

double frobenius_norm(const SymMatR& m) {
  double s = 0;
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j) s += m(i, j) * m(i, j);
  return std::sqrt(s);
}

double frobenius_norm(const SymMatC& m) {
  double s = 0;
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

double frobenius_norm(const Matrix<Complex>& m) {
  double s = 0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) s += std::norm(m(i, j));
  return std::sqrt(s);
}

double frobenius_norm(const Matrix<double>& m) {
  double s = 0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) s += m(i, j) * m(i, j);
  return std::sqrt(s);
}

Rref rref(Matrix<Rational> a) {
  Rref out;
  int row = 0;
  for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
    int pivot = -1;
    for (int r = row; r < a.rows(); ++r)
      if (!is_exact_zero(a(r, col))) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != row)
      for (int j = 0; j < a.cols(); ++j) std::swap(a(pivot, j), a(row, j));
    const Rational inv = Rational(1) / a(row, col);
    for (int j = col; j < a.cols(); ++j) a(row, j) *= inv;
    for (int r = 0; r < a.rows(); ++r) {
      if (r == row || is_exact_zero(a(r, col))) continue;
      const Rational f = a(r, col);
      for (int j = col; j < a.cols(); ++j) a(r, j) -= f * a(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(a);
  return out;
}

int exact_rank(const Matrix<Rational>& a) { return static_cast<int>(rref(a).pivots.size()); }

std::vector<std::vector<Rational>> exact_nullspace(const Matrix<Rational>& a) {
  const Rref r = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int p : r.pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (int free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(a.cols(), Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < r.pivots.size(); ++i) v[r.pivots[i]] = -r.reduced(int(i), free);
    basis.push_back(std::move(v));
  }
  return basis;
}

Eigen::MatrixXd to_eigen(const SymMatR& m) {
  Eigen::MatrixXd a(m.n(), m.n());
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j) a(i, j) = m(i, j);
  return a;
}

Eigen::MatrixXcd to_eigen(const SymMatC& m) {
  Eigen::MatrixXcd a(m.n(), m.n());
  for (int i = 0; i < m.n(); ++i)
    for (int j = 0; j < m.n(); ++j) a(i, j) = m(i, j);
  return a;
}

Eigen::MatrixXd to_eigen(const Matrix<double>& m) {
  Eigen::MatrixXd a(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) a(i, j) = m(i, j);
  return a;
}

SymMatR symmat_from_eigen(const Eigen::MatrixXd& m) {
  SymMatR s(static_cast<int>(m.rows()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = i; j < m.cols(); ++j) s.set(i, j, 0.5 * (m(i, j) + m(j, i)));
  return s;
}

namespace {

int rank_from_singular_values(const Eigen::VectorXd& sv, double tol) {
  if (sv.size() == 0) return 0;
  const double top = sv.maxCoeff();
  if (top <= 0.0) return 0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * top) ++r;
  return r;
}

}  // namespace

int numeric_rank(const SymMatR& m, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(m), Eigen::EigenvaluesOnly);
  return rank_from_singular_values(es.eigenvalues().cwiseAbs(), tol);
}

int numeric_rank(const SymMatC& m, double tol) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
  return rank_from_singular_values(svd.singularValues(), tol);
}

int numeric_rank(const Matrix<double>& m, double tol) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(m));
  return rank_from_singular_values(svd.singularValues(), tol);
}

int numeric_rank(const Matrix<Complex>& m, double tol) {
  Eigen::MatrixXcd a(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) a(i, j) = m(i, j);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  return rank_from_singular_values(svd.singularValues(), tol);
}

int numeric_rank(const SymMatQ& m, double /*tol*/) { return exact_rank(m.dense()); }

template <class M>
static M nullspace_impl(const M& a, double rel_tol) {
  const auto cols = a.cols();
  if (a.rows() == 0) return M::Identity(cols, cols);
  Eigen::JacobiSVD<M> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double top = sv.size() > 0 ? sv(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > rel_tol * top && top > 0.0) ++rank;
  return svd.matrixV().rightCols(cols - rank);
}

Eigen::MatrixXd float_nullspace(const Eigen::MatrixXd& a, double rel_tol) {
  return nullspace_impl(a, rel_tol);
}

Eigen::MatrixXcd float_nullspace(const Eigen::MatrixXcd& a, double rel_tol) {
  return nullspace_impl(a, rel_tol);
}

SymEigen sym_eigen_descending(const SymMatR& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(to_eigen(m));
  const Eigen::Index n = m.n();
  SymEigen out{Eigen::VectorXd(n), Eigen::MatrixXd(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = es.eigenvalues()(n - 1 - i);
    out.vectors.col(i) = es.eigenvectors().col(n - 1 - i);
  }
  return out;
}

std::optional<int> exact_psd_rank(const SymMatQ& m) {
  Matrix<Rational> a = m.dense();
  const int n = a.rows();
  std::vector<bool> done(n, false);
  int rank = 0;
  while (true) {
    int pivot = -1;
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      if (a(i, i) < 0) return std::nullopt;
      if (a(i, i) > 0 && pivot < 0) pivot = i;
    }
    if (pivot < 0) break;
    done[pivot] = true;
    ++rank;
    const Rational p = a(pivot, pivot);
    for (int i = 0; i < n; ++i) {
      if (done[i] || is_exact_zero(a(i, pivot))) continue;
      const Rational f = a(i, pivot) / p;
      for (int j = 0; j < n; ++j) a(i, j) -= f * a(pivot, j);
    }
  }
  // Remaining block has zero diagonal; PSD forces it to vanish.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!done[i] && !done[j] && !is_exact_zero(a(i, j))) return std::nullopt;
  return rank;
}

}  // namespace mlspectra
