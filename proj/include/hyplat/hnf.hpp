#pragma once

// Hermite and Smith normal forms over Z, plus the lattice plumbing built on
// them (saturated kernels, sums and intersections of row lattices, membership
// tests). HNF convention: row-style and lower-triangular. Pivots are the last
// nonzero entry of their row, positive, with pivot columns increasing down the
// rows; entries below a pivot are reduced into [0, pivot); zero rows sit on
// top. This form is unique for a given row lattice, so equal lattices give
// byte-equal bases.

#include "hyplat/matrix.hpp"

namespace hyplat {

struct HnfResult {
  IntMatrix H;  // H = U * M
  IntMatrix U;  // unimodular
};

inline HnfResult hnf(const IntMatrix& M) {
  const int r = M.rows, c = M.cols;
  IntMatrix H = M;
  IntMatrix U = IntMatrix::identity(r);
  int cur = r - 1;
  for (int j = c - 1; j >= 0 && cur >= 0; --j) {
    // Fold rows 0..cur-1 into row cur so that column j has a single gcd
    // entry at (cur, j) and zeros above it.
    for (int i = 0; i < cur; ++i) {
      if (sgn(H(i, j)) == 0) continue;
      const Int a = H(cur, j), b = H(i, j);
      Int u, v;
      Int g = gcdext(a, b, u, v);
      Int as = exact_div(a, g), bs = exact_div(b, g);
      for (int k = 0; k < c; ++k) {
        Int hc = H(cur, k), hi = H(i, k);
        H(cur, k) = u * hc + v * hi;
        H(i, k) = as * hi - bs * hc;
      }
      for (int k = 0; k < r; ++k) {
        Int uc = U(cur, k), ui = U(i, k);
        U(cur, k) = u * uc + v * ui;
        U(i, k) = as * ui - bs * uc;
      }
    }
    if (sgn(H(cur, j)) == 0) continue;  // no pivot in this column
    if (sgn(H(cur, j)) < 0) {
      for (int k = 0; k < c; ++k) H(cur, k) = -H(cur, k);
      for (int k = 0; k < r; ++k) U(cur, k) = -U(cur, k);
    }
    const Int& p = H(cur, j);
    for (int i = cur + 1; i < r; ++i) {
      Int q = floor_div(H(i, j), p);
      if (sgn(q) == 0) continue;
      for (int k = 0; k < c; ++k) H(i, k) -= q * H(cur, k);
      for (int k = 0; k < r; ++k) U(i, k) -= q * U(cur, k);
    }
    --cur;
  }
  return {H, U};
}

// Nonzero rows of the HNF: the canonical basis of the row lattice of M.
inline IntMatrix hnf_basis(const IntMatrix& M) {
  IntMatrix H = hnf(M).H;
  int z = 0;
  while (z < H.rows && is_zero(H.row(z))) ++z;
  IntMatrix B(H.rows - z, H.cols);
  for (int i = z; i < H.rows; ++i)
    for (int j = 0; j < H.cols; ++j) B(i - z, j) = H(i, j);
  return B;
}

// Basis of {v in Z^rows : v*M = 0}, saturated (Z^rows modulo the kernel is
// torsion-free). Rows of U matching zero rows of H do the job because U is
// unimodular.
inline IntMatrix kernel_saturated(const IntMatrix& M) {
  HnfResult h = hnf(M);
  int z = 0;
  while (z < h.H.rows && is_zero(h.H.row(z))) ++z;
  IntMatrix K(z, M.rows);
  for (int i = 0; i < z; ++i)
    for (int j = 0; j < M.rows; ++j) K(i, j) = h.U(i, j);
  return K;
}

struct SnfResult {
  IntMatrix S;  // S = U * M * V, diagonal, d_i | d_{i+1}, d_i >= 0
  IntMatrix U;
  IntMatrix V;
};

inline SnfResult snf(const IntMatrix& M) {
  const int r = M.rows, c = M.cols;
  IntMatrix S = M;
  IntMatrix U = IntMatrix::identity(r);
  IntMatrix V = IntMatrix::identity(c);

  // When the pivot already divides the target a single subtraction clears it
  // without touching the pivot row/column; the full gcd transform is reserved
  // for the strict-gcd-drop case so the clearing loop provably terminates
  // (GMP's gcdext may return a swap-like cofactor pair when a | b, which
  // would re-dirty already cleared entries).
  auto row_gcd_op = [&](int t, int i) {
    const Int a = S(t, t), b = S(i, t);
    if (divides(a, b)) {
      Int q = exact_div(b, a);
      for (int k = 0; k < c; ++k) S(i, k) -= q * S(t, k);
      for (int k = 0; k < r; ++k) U(i, k) -= q * U(t, k);
      return;
    }
    Int u, v;
    Int g = gcdext(a, b, u, v);
    Int as = exact_div(a, g), bs = exact_div(b, g);
    for (int k = 0; k < c; ++k) {
      Int st = S(t, k), si = S(i, k);
      S(t, k) = u * st + v * si;
      S(i, k) = as * si - bs * st;
    }
    for (int k = 0; k < r; ++k) {
      Int ut = U(t, k), ui = U(i, k);
      U(t, k) = u * ut + v * ui;
      U(i, k) = as * ui - bs * ut;
    }
  };
  auto col_gcd_op = [&](int t, int j) {
    const Int a = S(t, t), b = S(t, j);
    if (divides(a, b)) {
      Int q = exact_div(b, a);
      for (int k = 0; k < r; ++k) S(k, j) -= q * S(k, t);
      for (int k = 0; k < c; ++k) V(k, j) -= q * V(k, t);
      return;
    }
    Int u, v;
    Int g = gcdext(a, b, u, v);
    Int as = exact_div(a, g), bs = exact_div(b, g);
    for (int k = 0; k < r; ++k) {
      Int st = S(k, t), sj = S(k, j);
      S(k, t) = u * st + v * sj;
      S(k, j) = as * sj - bs * st;
    }
    for (int k = 0; k < c; ++k) {
      Int vt = V(k, t), vj = V(k, j);
      V(k, t) = u * vt + v * vj;
      V(k, j) = as * vj - bs * vt;
    }
  };

  int m = std::min(r, c);
  for (int t = 0; t < m; ++t) {
    // Bring a nonzero entry to (t, t); if the remaining block is zero, stop.
    int pi = -1, pj = -1;
    for (int i = t; i < r && pi < 0; ++i)
      for (int j = t; j < c; ++j)
        if (sgn(S(i, j)) != 0) { pi = i; pj = j; break; }
    if (pi < 0) break;
    if (pi != t) {
      for (int k = 0; k < c; ++k) std::swap(S(t, k), S(pi, k));
      for (int k = 0; k < r; ++k) std::swap(U(t, k), U(pi, k));
    }
    if (pj != t) {
      for (int k = 0; k < r; ++k) std::swap(S(k, t), S(k, pj));
      for (int k = 0; k < c; ++k) std::swap(V(k, t), V(k, pj));
    }
    for (;;) {
      bool dirty = true;
      while (dirty) {
        dirty = false;
        for (int i = t + 1; i < r; ++i)
          if (sgn(S(i, t)) != 0) row_gcd_op(t, i);
        for (int j = t + 1; j < c; ++j)
          if (sgn(S(t, j)) != 0) col_gcd_op(t, j);
        for (int i = t + 1; i < r; ++i)
          if (sgn(S(i, t)) != 0) { dirty = true; break; }
      }
      // Ensure the pivot divides the whole remaining block, so the
      // divisibility chain holds without a separate pass.
      int bi = -1, bj = -1;
      for (int i = t + 1; i < r && bi < 0; ++i)
        for (int j = t + 1; j < c; ++j)
          if (!divides(S(t, t), S(i, j))) { bi = i; bj = j; break; }
      if (bi < 0) break;
      (void)bj;
      for (int k = 0; k < c; ++k) S(t, k) += S(bi, k);
      for (int k = 0; k < r; ++k) U(t, k) += U(bi, k);
    }
    if (sgn(S(t, t)) < 0) {
      for (int k = 0; k < c; ++k) S(t, k) = -S(t, k);
      for (int k = 0; k < r; ++k) U(t, k) = -U(t, k);
    }
  }
  return {S, U, V};
}

// Elementary divisors (nonzero diagonal of the SNF), in chain order.
inline std::vector<Int> elementary_divisors(const IntMatrix& M) {
  SnfResult s = snf(M);
  std::vector<Int> d;
  int m = std::min(M.rows, M.cols);
  for (int t = 0; t < m; ++t)
    if (sgn(s.S(t, t)) != 0) d.push_back(s.S(t, t));
  return d;
}

// Canonical basis of the sum of two row lattices.
inline IntMatrix lattice_sum(const IntMatrix& A, const IntMatrix& B) {
  return hnf_basis(stack_rows(A, B));
}

// Canonical basis of the intersection of two row lattices: pairs (x, y) with
// x*A = y*B form the kernel of the stacked map, and the x-parts hit the
// intersection.
inline IntMatrix lattice_intersection(const IntMatrix& A, const IntMatrix& B) {
  IntMatrix stacked = stack_rows(A, -B);
  IntMatrix K = kernel_saturated(stacked);
  IntMatrix X(K.rows, A.rows);
  for (int i = 0; i < K.rows; ++i)
    for (int j = 0; j < A.rows; ++j) X(i, j) = K(i, j);
  return hnf_basis(X * A);
}

// Whether v lies in the row lattice of B; if so and coeffs is non-null, fills
// the integer coefficients with coeffs * B = v.
inline bool in_row_lattice(const IntVector& v, const IntMatrix& B,
                           IntVector* coeffs = nullptr) {
  HnfResult h = hnf(B);
  IntVector w = v;
  IntVector ch(static_cast<size_t>(B.rows), Int(0));
  for (int i = B.rows - 1; i >= 0; --i) {
    // pivot = last nonzero entry of row i (rows are scanned bottom-up so
    // larger pivot columns are cleared first)
    int pj = -1;
    for (int j = B.cols - 1; j >= 0; --j)
      if (sgn(h.H(i, j)) != 0) { pj = j; break; }
    if (pj < 0) continue;
    if (!divides(h.H(i, pj), w[pj])) return false;
    Int q = exact_div(w[pj], h.H(i, pj));
    ch[static_cast<size_t>(i)] = q;
    if (sgn(q) != 0)
      for (int j = 0; j < B.cols; ++j) w[j] -= q * h.H(i, j);
  }
  if (!is_zero(w)) return false;
  if (coeffs) *coeffs = ch * h.U;
  return true;
}

// Shape predicate for the HNF convention above (used by tests and asserts).
inline bool is_hnf_shape(const IntMatrix& H) {
  int last_piv = -1;
  bool seen_nonzero = false;
  for (int i = 0; i < H.rows; ++i) {
    int pj = -1;
    for (int j = H.cols - 1; j >= 0; --j)
      if (sgn(H(i, j)) != 0) { pj = j; break; }
    if (pj < 0) {
      if (seen_nonzero) return false;  // zero rows only on top
      continue;
    }
    seen_nonzero = true;
    if (pj <= last_piv) return false;
    if (sgn(H(i, pj)) < 0) return false;
    for (int k = i + 1; k < H.rows; ++k) {
      if (sgn(H(k, pj)) < 0) return false;
      if (H(k, pj) >= H(i, pj)) return false;
    }
    last_piv = pj;
  }
  return true;
}

}  // namespace hyplat
