#pragma once

// Exact congruence diagonalization of symmetric rational matrices:
// T * A * T^tr = diag(d). Used for signature detection and for finding a
// vector of negative norm.

#include "hyplat/matrix.hpp"

namespace hyplat {

struct DiagResult {
  RatVector d;   // diagonal entries
  RatMatrix T;   // unimodular over Q (det != 0)
};

// Throws SingularError when A is singular (a zero diagonal block appears
// before all rows are processed).
inline DiagResult rational_diagonalize(const RatMatrix& A) {
  if (!is_symmetric(A)) throw InternalError("rational_diagonalize: not symmetric");
  const int n = A.rows;
  RatMatrix W = A;
  RatMatrix T = RatMatrix::identity(n);

  auto add_row_col = [&](int dst, int src, const Rat& f) {
    for (int j = 0; j < n; ++j) W(dst, j) += f * W(src, j);
    for (int i = 0; i < n; ++i) W(i, dst) += f * W(i, src);
    for (int j = 0; j < n; ++j) T(dst, j) += f * T(src, j);
  };
  auto swap_row_col = [&](int a, int b) {
    for (int j = 0; j < n; ++j) std::swap(W(a, j), W(b, j));
    for (int i = 0; i < n; ++i) std::swap(W(i, a), W(i, b));
    for (int j = 0; j < n; ++j) std::swap(T(a, j), T(b, j));
  };

  for (int k = 0; k < n; ++k) {
    if (sgn(W(k, k)) == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (sgn(W(i, i)) != 0) { p = i; break; }
      if (p >= 0) {
        swap_row_col(k, p);
      } else {
        int oi = -1, oj = -1;
        for (int i = k; i < n && oi < 0; ++i)
          for (int j = i + 1; j < n; ++j)
            if (sgn(W(i, j)) != 0) { oi = i; oj = j; break; }
        if (oi < 0) throw SingularError("rational_diagonalize: singular matrix");
        add_row_col(oi, oj, Rat(1));  // W(oi,oi) becomes 2*W(oi,oj) != 0
        if (oi != k) swap_row_col(k, oi);
      }
    }
    Rat piv = W(k, k);
    for (int i = k + 1; i < n; ++i) {
      if (sgn(W(i, k)) == 0) continue;
      add_row_col(i, k, -W(i, k) / piv);
    }
  }
  RatVector d(n);
  for (int k = 0; k < n; ++k) d[k] = W(k, k);
  return {d, T};
}

inline DiagResult rational_diagonalize(const IntMatrix& A) {
  return rational_diagonalize(to_rat(A));
}

struct Signature {
  int positive = 0;
  int negative = 0;
};

inline Signature signature(const IntMatrix& A) {
  DiagResult dr = rational_diagonalize(A);
  Signature s;
  for (const Rat& x : dr.d) (sgn(x) > 0 ? s.positive : s.negative)++;
  return s;
}

inline bool is_positive_definite(const RatMatrix& A) {
  if (A.rows == 0) return true;
  DiagResult dr;
  try {
    dr = rational_diagonalize(A);
  } catch (const SingularError&) {
    return false;
  }
  for (const Rat& x : dr.d)
    if (sgn(x) <= 0) return false;
  return true;
}

inline bool is_positive_definite(const IntMatrix& A) {
  return is_positive_definite(to_rat(A));
}

}  // namespace hyplat
