#pragma once

// The two dual cones attached to a hyperbolic integral form A of signature
// (n-1, 1):
//
//   V1 = { x real : x A x^tr < 0 },        one fixed component
//   V2 = { d real : d A^{-1} d^tr < 0 },   the component dual to V1
//
// A fixed interior anchor x0 picks the V1 component; the V2 component is the
// one containing -x0 A. Membership in V2 is decided integrally through the
// adjugate: sign(d A^{-1} d^tr) = sign(d adjA d^tr) * sign(det A), and
// det A < 0 throughout. The discrete set driving everything is
//
//   D = Z^n  intersect  closure(V2) minus {0},
//
// i.e. integral d != 0 with d adjA d^tr >= 0 and d . x0 > 0. For x in the
// chosen V1 component, sigma(x, d) = x . d^tr is positive on D, reaches
// N(x) = -x A x^tr at d = -x A, and its minimum mu(x) over D is computed by
// scanning pairing levels k = g, 2g, ... (g the content of x): the d with
// x . d = k form a coset of the saturated kernel of x, on which the
// constraint "d adjA d^tr >= 0" becomes a close-vector problem for the
// positive definite form induced by A^{-1} on the kernel.

#include "hyplat/diagonalize.hpp"
#include "hyplat/hnf.hpp"
#include "hyplat/matrix.hpp"
#include "hyplat/pdlat.hpp"

namespace hyplat {

enum class ConePosition { interior, boundary, outside };

struct ConeFrame {
  int n = 0;
  IntMatrix A;
  IntMatrix adjA;
  Int detA;
  IntVector anchor1;  // primitive integral, anchor1 A anchor1^tr < 0
  IntVector anchor2;  // = -anchor1 * A
};

inline ConeFrame make_frame(const IntMatrix& A) {
  if (!is_symmetric(A)) throw SignatureError("form must be symmetric");
  const int n = A.rows;
  if (n < 2) throw SignatureError("form must have dimension at least 2");
  Int d = det(A);
  if (sgn(d) == 0) throw SingularError("form is singular");
  Signature sig = signature(A);
  if (sig.negative != 1 || sig.positive != n - 1)
    throw SignatureError("form must have signature (n-1, 1)");

  ConeFrame f;
  f.n = n;
  f.A = A;
  f.detA = d;
  f.adjA = adjugate(A);

  // Anchor: a diagonal entry of negative norm if available, otherwise the
  // negative-norm row of a diagonalizing transform, cleared to a primitive
  // integer vector.
  int neg_i = -1;
  for (int i = 0; i < n; ++i)
    if (sgn(A(i, i)) < 0) { neg_i = i; break; }
  if (neg_i >= 0) {
    IntVector e(n, Int(0));
    e[neg_i] = 1;
    f.anchor1 = e;
  } else {
    DiagResult dr = rational_diagonalize(A);
    int row = -1;
    for (int i = 0; i < n; ++i)
      if (sgn(dr.d[static_cast<size_t>(i)]) < 0) { row = i; break; }
    f.anchor1 = primitive(dr.T.row(row));
  }
  if (sgn(form_value(f.anchor1, A, f.anchor1)) >= 0)
    throw InternalError("anchor construction failed");
  f.anchor2 = -(f.anchor1 * A);
  return f;
}

// N(x) = -x A x^tr, positive exactly on V1.
inline Int norm_N(const ConeFrame& f, const IntVector& x) {
  return -form_value(x, f.A, x);
}

inline Int sigma(const IntVector& x, const IntVector& d) { return dot(x, d); }

inline ConePosition in_V1(const ConeFrame& f, const IntVector& x) {
  Int q = form_value(x, f.A, x);
  if (sgn(q) > 0) return ConePosition::outside;
  if (is_zero(x)) return ConePosition::boundary;  // cone tip
  Int comp = form_value(x, f.A, f.anchor1);
  // same-component test for vectors of nonpositive norm: x A x0^tr < 0
  if (sgn(comp) >= 0) return ConePosition::outside;
  return sgn(q) < 0 ? ConePosition::interior : ConePosition::boundary;
}

inline ConePosition in_V2(const ConeFrame& f, const IntVector& d) {
  // d A^{-1} d^tr < 0  <=>  d adjA d^tr > 0  (det A < 0)
  Int q = form_value(d, f.adjA, d);
  if (sgn(q) < 0) return ConePosition::outside;
  if (is_zero(d)) return ConePosition::boundary;
  Int comp = dot(d, f.anchor1);
  if (sgn(comp) <= 0) return ConePosition::outside;
  return sgn(q) > 0 ? ConePosition::interior : ConePosition::boundary;
}

// d in D, i.e. d integral nonzero in closure(V2) on the chosen side.
inline bool in_D(const ConeFrame& f, const IntVector& d) {
  ConePosition p = in_V2(f, d);
  return p != ConePosition::outside && !is_zero(d);
}

namespace detail {

// Per-x data for enumerating { d in D : x . d = k } level by level.
struct PairingLevels {
  const ConeFrame* f = nullptr;
  IntVector x;
  Int g;          // content of x
  Int N;          // -x A x^tr > 0
  IntVector u0;   // integral, x . u0 = g
  IntMatrix K;    // saturated kernel of x, (n-1) x n
  RatMatrix Gc;   // K A^{-1} K^tr, positive definite
  RatMatrix KKt_inv;  // (K K^tr)^{-1}, for projecting onto the kernel
  RatVector xA;   // x * A as rationals
};

inline PairingLevels make_levels(const ConeFrame& f, const IntVector& x) {
  if (in_V1(f, x) != ConePosition::interior)
    throw InternalError("pairing levels need an interior point");
  PairingLevels pl;
  pl.f = &f;
  pl.x = x;
  pl.g = content(x);
  pl.N = norm_N(f, x);

  // particular solution of x . u = g by folding in one coordinate at a time
  const int n = f.n;
  pl.u0.assign(static_cast<size_t>(n), Int(0));
  Int acc = 0;
  for (int i = 0; i < n; ++i) {
    if (sgn(x[i]) == 0) continue;
    if (sgn(acc) == 0) {
      // first nonzero coordinate
      pl.u0[i] = sgn(x[i]) > 0 ? 1 : -1;
      acc = abs(x[i]);
      continue;
    }
    Int u, v;
    Int g2 = gcdext(acc, x[i], u, v);
    for (int j = 0; j < i; ++j) pl.u0[j] *= u;
    pl.u0[i] = v;
    acc = g2;
  }
  if (acc != pl.g) throw InternalError("content mismatch");

  IntMatrix xcol(n, 1);
  for (int i = 0; i < n; ++i) xcol(i, 0) = x[i];
  pl.K = kernel_saturated(xcol);
  RatMatrix Ainv = inverse(f.A);
  RatMatrix Kr = to_rat(pl.K);
  pl.Gc = Kr * Ainv * transpose(Kr);
  pl.KKt_inv = inverse(to_int(Kr * transpose(Kr)));
  pl.xA = to_rat(x) * to_rat(f.A);
  return pl;
}

// All d in D with x . d = k (k a positive multiple of the content).
inline std::vector<IntVector> level_set(const PairingLevels& pl, const Int& k) {
  const int n = pl.f->n;
  std::vector<IntVector> out;
  if (!divides(pl.g, k) || sgn(k) <= 0) return out;
  Int scale = exact_div(k, pl.g);
  RatVector part(n);
  for (int i = 0; i < n; ++i) part[i] = Rat(scale * pl.u0[i]);

  // split part = c0 * xA + c * K with c0 = -k/N
  Rat c0 = Rat(-k) / Rat(pl.N);
  RatVector r(n);
  for (int i = 0; i < n; ++i) r[i] = part[i] - c0 * pl.xA[i];
  // c = r K^tr (K K^tr)^{-1}
  RatMatrix Kr = to_rat(pl.K);
  RatVector c = (r * transpose(Kr)) * pl.KKt_inv;

  // d = c0 xA + (c + w) K lies in closure(V2) iff (c+w) Gc (c+w)^tr <= k^2/N
  Rat bound = Rat(k * k) / Rat(pl.N);
  RatVector target(c.size());
  for (size_t i = 0; i < c.size(); ++i) target[i] = -c[i];
  std::vector<IntVector> ws = close_vectors(pl.Gc, target, bound);
  for (const IntVector& w : ws) {
    IntVector d(static_cast<size_t>(n), Int(0));
    for (int i = 0; i < n; ++i) {
      d[i] = scale * pl.u0[i];
      for (int j = 0; j < pl.K.rows; ++j) d[i] += w[static_cast<size_t>(j)] * pl.K(j, i);
    }
    out.push_back(d);
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

}  // namespace detail

struct MinimalVectorData {
  Int min;                        // mu(x)
  std::vector<IntVector> vectors; // all d in D attaining it, lex sorted
  int rank = 0;                   // rank of the span of those d
};

inline MinimalVectorData minimal_vectors(const ConeFrame& f, const IntVector& x) {
  detail::PairingLevels pl = detail::make_levels(f, x);
  for (Int k = pl.g; k <= pl.N; k += pl.g) {
    std::vector<IntVector> vs = detail::level_set(pl, k);
    if (vs.empty()) continue;
    MinimalVectorData md;
    md.min = k;
    md.vectors = std::move(vs);
    md.rank = rank_of_rows(md.vectors, f.n);
    return md;
  }
  // d = -x A witnesses mu(x) <= N(x), so the loop cannot fall through
  throw InternalError("minimal_vectors: no level found up to N(x)");
}

inline Int mu_of(const ConeFrame& f, const IntVector& x) {
  return minimal_vectors(f, x).min;
}

// All d in D with z . d <= C, lex sorted. Used by the neighbour certificate.
inline std::vector<IntVector> d_short_vectors(const ConeFrame& f, const IntVector& z,
                                              const Int& C) {
  detail::PairingLevels pl = detail::make_levels(f, z);
  std::vector<IntVector> out;
  for (Int k = pl.g; k <= C; k += pl.g) {
    std::vector<IntVector> vs = detail::level_set(pl, k);
    out.insert(out.end(), vs.begin(), vs.end());
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

inline bool is_perfect_point(const ConeFrame& f, const IntVector& x) {
  if (in_V1(f, x) != ConePosition::interior) return false;
  return minimal_vectors(f, x).rank == f.n;
}

}  // namespace hyplat
