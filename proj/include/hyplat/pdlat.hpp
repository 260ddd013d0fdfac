#pragma once

// Exact short- and close-vector enumeration on positive definite rational
// Gram matrices (Fincke-Pohst with rational quadratic completion, LLL
// preprocessing, no floating point).

#include "hyplat/lll.hpp"
#include "hyplat/matrix.hpp"

#include <functional>

namespace hyplat {

namespace detail {

// Q(x) = sum_i d[i] * (x_i + sum_{j>i} u(i,j) x_j)^2
struct QuadCompletion {
  RatVector d;
  RatMatrix u;
};

inline QuadCompletion quad_completion(const RatMatrix& G) {
  const int n = G.rows;
  RatMatrix q = G;
  QuadCompletion qc;
  qc.d.assign(n, Rat(0));
  qc.u = RatMatrix::identity(n);
  for (int i = 0; i < n; ++i) {
    if (sgn(q(i, i)) <= 0) throw InternalError("quad_completion: not positive definite");
    qc.d[i] = q(i, i);
    for (int j = i + 1; j < n; ++j) qc.u(i, j) = q(i, j) / qc.d[i];
    for (int k = i + 1; k < n; ++k)
      for (int l = i + 1; l < n; ++l)
        q(k, l) -= qc.d[i] * qc.u(i, k) * qc.u(i, l);
  }
  return qc;
}

// Enumerates all integer x with Q(x - t) <= bound, in the coordinates of G.
inline void ellipsoid_enum(const QuadCompletion& qc, const RatVector& t,
                           const Rat& bound,
                           const std::function<void(const IntVector&)>& emit) {
  const int n = static_cast<int>(qc.d.size());
  if (n == 0) {
    if (sgn(bound) >= 0) emit(IntVector{});
    return;
  }
  IntVector x(n, Int(0));
  // rem[k]: budget left at level k; filled on the way down
  std::function<void(int, const Rat&)> rec = [&](int k, const Rat& rem) {
    // center of the level-k square term: x_k must be close to
    // t_k - sum_{j>k} u(k,j) (x_j - t_j)
    Rat c = t[k];
    for (int j = k + 1; j < n; ++j) c -= qc.u(k, j) * (Rat(x[j]) - t[j]);
    Int lo, hi;
    quad_interval(c, rem / qc.d[k], lo, hi);
    for (Int v = lo; v <= hi; ++v) {
      x[k] = v;
      Rat diff = Rat(v) - c;
      Rat used = qc.d[k] * diff * diff;
      if (k == 0) {
        emit(x);
      } else {
        rec(k - 1, rem - used);
      }
    }
    x[k] = 0;
  };
  rec(n - 1, bound);
}

}  // namespace detail

// All v in Z^n with 0 < v G v^tr <= bound, one representative per antipodal
// pair {v, -v}, sign-normalized (first nonzero entry positive), lex sorted.
inline std::vector<IntVector> short_vectors(const RatMatrix& G, const Rat& bound) {
  const int n = G.rows;
  if (n == 0 || sgn(bound) < 0) return {};
  LllResult red = lll_reduce(G);
  detail::QuadCompletion qc = detail::quad_completion(red.G);
  RatVector zero(n, Rat(0));
  std::vector<IntVector> out;
  detail::ellipsoid_enum(qc, zero, bound, [&](const IntVector& w) {
    if (is_zero(w)) return;
    out.push_back(sign_normalized(w * red.U));
  });
  std::sort(out.begin(), out.end(), lex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<IntVector> short_vectors(const IntMatrix& G, const Int& bound) {
  return short_vectors(to_rat(G), Rat(bound));
}

// All v in Z^n with (v - t) G (v - t)^tr <= bound; includes t itself when
// integral. Lex sorted.
inline std::vector<IntVector> close_vectors(const RatMatrix& G, const RatVector& t,
                                            const Rat& bound) {
  const int n = G.rows;
  if (sgn(bound) < 0) return {};
  if (n == 0) return {IntVector{}};
  LllResult red = lll_reduce(G);
  // v = w * U, so enumerate w against the reduced Gram with shifted target
  RatVector tw = t * inverse(red.U);
  detail::QuadCompletion qc = detail::quad_completion(red.G);
  std::vector<IntVector> out;
  detail::ellipsoid_enum(qc, tw, bound, [&](const IntVector& w) {
    out.push_back(w * red.U);
  });
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

// Minimum nonzero value of the form together with all vectors attaining it
// (one per antipodal pair).
struct ShortestVectors {
  Rat min;
  std::vector<IntVector> vectors;
};

inline ShortestVectors shortest_vectors(const RatMatrix& G) {
  const int n = G.rows;
  if (n == 0) throw InternalError("shortest_vectors: empty lattice");
  LllResult red = lll_reduce(G);
  Rat bound = red.G(0, 0);
  for (int i = 1; i < n; ++i) bound = std::min(bound, red.G(i, i));
  std::vector<IntVector> all = short_vectors(G, bound);
  Rat best = bound;
  for (const IntVector& v : all) {
    Rat q = form_value(to_rat(v), G, to_rat(v));
    if (q < best) best = q;
  }
  ShortestVectors sv;
  sv.min = best;
  for (const IntVector& v : all)
    if (form_value(to_rat(v), G, to_rat(v)) == best) sv.vectors.push_back(v);
  return sv;
}

inline ShortestVectors shortest_vectors(const IntMatrix& G) {
  return shortest_vectors(to_rat(G));
}

}  // namespace hyplat
