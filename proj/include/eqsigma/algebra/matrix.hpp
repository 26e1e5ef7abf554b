#pragma once

#include <string>
#include <vector>

#include "eqsigma/algebra/mu_polynomial.hpp"

namespace eqsigma {

using PolyMatrix = std::vector<std::vector<MuPolynomial>>;
using PolyVector = std::vector<MuPolynomial>;

inline PolyMatrix zero_matrix(std::size_t rows, std::size_t cols) {
  return PolyMatrix(rows, PolyVector(cols));
}

inline PolyMatrix identity_matrix(std::size_t n) {
  PolyMatrix m = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = MuPolynomial(1);
  return m;
}

inline PolyMatrix transpose(const PolyMatrix& a) {
  if (a.empty()) return {};
  PolyMatrix t = zero_matrix(a[0].size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

inline PolyMatrix matmul(const PolyMatrix& a, const PolyMatrix& b) {
  PolyMatrix c = zero_matrix(a.size(), b.empty() ? 0 : b[0].size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < b[k].size(); ++j)
        if (!b[k][j].is_zero()) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

// Gaussian elimination over Q[mu] using only pivots that are nonzero rational
// constants. This is enough for the unimodular systems that occur here; a
// system without such pivots raises SingularSystem. Returns x with A x = b
// and writes det(A) to *det when given.
inline PolyVector solve_unimodular(PolyMatrix A, PolyVector b, MuPolynomial* det = nullptr) {
  std::size_t n = A.size();
  if (b.size() != n) throw Error(ErrorCode::SingularSystem, "dimension mismatch");
  std::vector<std::size_t> col_of_row(n, n);
  std::vector<bool> used_row(n, false);
  Rational d = 1;
  std::vector<std::size_t> pivot_row(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = n;
    for (std::size_t r = 0; r < n; ++r)
      if (!used_row[r] && !A[r][col].is_zero() && A[r][col].is_constant()) {
        piv = r;
        break;
      }
    if (piv == n) throw Error(ErrorCode::SingularSystem, "no constant pivot in column " + std::to_string(col));
    used_row[piv] = true;
    pivot_row[col] = piv;
    Rational inv = 1 / A[piv][col].constant_term();
    d *= A[piv][col].constant_term();
    for (std::size_t r = 0; r < n; ++r) {
      if (r == piv || A[r][col].is_zero()) continue;
      MuPolynomial factor = A[r][col] * inv;
      for (std::size_t k = col; k < n; ++k)
        if (!A[piv][k].is_zero()) A[r][k] -= factor * A[piv][k];
      b[r] -= factor * b[piv];
    }
  }
  // The pivot rows form a permutation of the rows; its sign enters det.
  std::vector<std::size_t> perm = pivot_row;
  int sign = 1;
  for (std::size_t i = 0; i < n; ++i)
    while (perm[i] != i) {
      std::swap(perm[i], perm[perm[i]]);
      sign = -sign;
    }
  if (det) *det = MuPolynomial(Rational(d * sign));
  PolyVector x(n);
  for (std::size_t col = 0; col < n; ++col) x[col] = b[pivot_row[col]] * Rational(1 / A[pivot_row[col]][col].constant_term());
  return x;
}

// Inverse of a unit upper triangular matrix.
inline PolyMatrix unit_upper_inverse(const PolyMatrix& U) {
  std::size_t n = U.size();
  PolyMatrix X = identity_matrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (U[i][i] != MuPolynomial(1)) throw Error(ErrorCode::SingularSystem, "not unit upper triangular");
    for (std::size_t j = 0; j < i; ++j)
      if (!U[i][j].is_zero()) throw Error(ErrorCode::SingularSystem, "not upper triangular");
  }
  for (std::size_t jj = n; jj-- > 0;) {
    for (std::size_t ii = jj; ii-- > 0;) {
      MuPolynomial acc;
      for (std::size_t k = ii + 1; k <= jj; ++k)
        if (!U[ii][k].is_zero() && !X[k][jj].is_zero()) acc += U[ii][k] * X[k][jj];
      X[ii][jj] = -acc;
    }
  }
  return X;
}

}  // namespace eqsigma
