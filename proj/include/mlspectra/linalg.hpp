#pragma once

#include "mlspectra/matrix.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace mlspectra {

inline constexpr double kDefaultRankTol = 1e-8;

template <class T>
T determinant(Matrix<T> a);

template <class T>
T determinant(const SymMat<T>& m) {
  return determinant(m.dense());
}

// adj(M) with M adj(M) = det(M) I; the 1x1 adjugate is [1].
template <class T>
SymMat<T> adjugate(const SymMat<T>& m);

// Non-empty when a floating adjugate contains non-finite entries.
std::optional<std::string> adjugate_diagnostic(const SymMatR& adj);
std::optional<std::string> adjugate_diagnostic(const SymMatC& adj);

// tr(AB). Bilinear (no conjugation) for complex entries.
template <class T>
T trace_pairing(const SymMat<T>& a, const SymMat<T>& b) {
  if (a.n() != b.n()) throw std::invalid_argument("trace_pairing: dimension mismatch");
  T sum = T(0);
  const int n = a.n();
  for (int i = 0; i < n; ++i) {
    sum += a(i, i) * b(i, i);
    for (int j = i + 1; j < n; ++j) sum += T(2) * a(i, j) * b(i, j);
  }
  return sum;
}

// Frobenius norm.
double frobenius_norm(const SymMatR& m);
double frobenius_norm(const SymMatC& m);
double frobenius_norm(const Matrix<Complex>& m);
double frobenius_norm(const Matrix<double>& m);

// ---- exact elimination over Q ----

struct Rref {
  Matrix<Rational> reduced;
  std::vector<int> pivots;  // pivot column of each nonzero row
};

Rref rref(Matrix<Rational> a);
int exact_rank(const Matrix<Rational>& a);
// Basis of {x : A x = 0}, one vector per free column.
std::vector<std::vector<Rational>> exact_nullspace(const Matrix<Rational>& a);

// ---- floating ----

// Number of singular values above tol * (largest singular value).
int numeric_rank(const SymMatR& m, double tol = kDefaultRankTol);
int numeric_rank(const SymMatC& m, double tol = kDefaultRankTol);
int numeric_rank(const Matrix<double>& m, double tol = kDefaultRankTol);
int numeric_rank(const Matrix<Complex>& m, double tol = kDefaultRankTol);
// Exact rank; tol is ignored.
int numeric_rank(const SymMatQ& m, double tol = kDefaultRankTol);

Eigen::MatrixXd to_eigen(const SymMatR& m);
Eigen::MatrixXcd to_eigen(const SymMatC& m);
Eigen::MatrixXd to_eigen(const Matrix<double>& m);
SymMatR symmat_from_eigen(const Eigen::MatrixXd& m);

// Orthonormal basis (columns) of the null space of a, via SVD.
Eigen::MatrixXd float_nullspace(const Eigen::MatrixXd& a, double rel_tol);
Eigen::MatrixXcd float_nullspace(const Eigen::MatrixXcd& a, double rel_tol);

// Symmetric eigen-decomposition with eigenvalues sorted descending.
struct SymEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};
SymEigen sym_eigen_descending(const SymMatR& m);

// Exact semidefiniteness test by symmetric elimination with diagonal
// pivots. Returns the rank when m is PSD, nullopt otherwise.
std::optional<int> exact_psd_rank(const SymMatQ& m);

}  // namespace mlspectra
