#pragma once

// Exact LLL reduction working on Gram matrices only (no embedding needed):
// given a positive definite rational Gram G, returns a unimodular U and the
// reduced Gram U*G*U^tr. Gram-Schmidt data is recomputed from scratch after
// every transform; fine at the sizes this library runs at, and trivially
// correct.

#include "hyplat/matrix.hpp"

namespace hyplat {

struct LllResult {
  RatMatrix G;  // reduced Gram = U * G_in * U^tr
  IntMatrix U;
};

namespace detail {

struct GsData {
  std::vector<RatVector> mu;  // mu[i][j], j < i
  RatVector B;                // squared GS norms
};

inline GsData gram_schmidt(const RatMatrix& W) {
  const int n = W.rows;
  GsData gs;
  gs.mu.assign(n, {});
  gs.B.assign(n, Rat(0));
  for (int i = 0; i < n; ++i) {
    gs.mu[i].assign(i, Rat(0));
    for (int j = 0; j < i; ++j) {
      Rat s = W(i, j);
      for (int k = 0; k < j; ++k) s -= gs.mu[j][k] * gs.mu[i][k] * gs.B[k];
      if (sgn(gs.B[j]) <= 0) throw InternalError("lll: gram not positive definite");
      gs.mu[i][j] = s / gs.B[j];
    }
    Rat b = W(i, i);
    for (int k = 0; k < i; ++k) b -= gs.mu[i][k] * gs.mu[i][k] * gs.B[k];
    gs.B[i] = b;
    if (sgn(b) <= 0) throw InternalError("lll: gram not positive definite");
  }
  return gs;
}

}  // namespace detail

inline LllResult lll_reduce(const RatMatrix& G_in) {
  const int n = G_in.rows;
  RatMatrix W = G_in;
  IntMatrix U = IntMatrix::identity(n);
  if (n <= 1) return {W, U};

  auto apply_sub = [&](int dst, const Int& q, int src) {
    // row_dst -= q * row_src, symmetrically on the Gram
    Rat qr(q);
    for (int j = 0; j < n; ++j) W(dst, j) -= qr * W(src, j);
    for (int i = 0; i < n; ++i) W(i, dst) -= qr * W(i, src);
    for (int j = 0; j < n; ++j) U(dst, j) -= q * U(src, j);
  };
  auto apply_swap = [&](int a, int b) {
    for (int j = 0; j < n; ++j) std::swap(W(a, j), W(b, j));
    for (int i = 0; i < n; ++i) std::swap(W(i, a), W(i, b));
    for (int j = 0; j < n; ++j) std::swap(U(a, j), U(b, j));
  };

  const Rat delta(3, 4);
  detail::GsData gs = detail::gram_schmidt(W);
  int k = 1;
  while (k < n) {
    for (int j = k - 1; j >= 0; --j) {
      Int q = round_nearest(gs.mu[k][j]);
      if (sgn(q) != 0) {
        apply_sub(k, q, j);
        gs = detail::gram_schmidt(W);
      }
    }
    Rat lhs = gs.B[k];
    Rat rhs = (delta - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.B[k - 1];
    if (lhs >= rhs) {
      ++k;
    } else {
      apply_swap(k, k - 1);
      gs = detail::gram_schmidt(W);
      k = std::max(1, k - 1);
    }
  }
  return {W, U};
}

inline LllResult lll_reduce(const IntMatrix& G_in) {
  LllResult r = lll_reduce(to_rat(G_in));
  return r;
}

}  // namespace hyplat
