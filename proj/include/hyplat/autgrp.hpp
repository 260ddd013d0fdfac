#pragma once

// Automorphism groups and isometry testing for positive definite integral
// Gram matrices, by backtrack search over short vectors in the style of
// Plesken-Souvignier: images of basis vectors must reproduce the Gram row by
// row, candidates are pruned by norm, running inner products, and a
// fingerprint against the minimal layer. A stabilizer-chain bookkeeping
// (orbit of e_lev under the subgroup fixing the prefix) yields the group
// order as a product of orbit sizes without listing all elements.

#include "hyplat/diagonalize.hpp"
#include "hyplat/matrix.hpp"
#include "hyplat/pdlat.hpp"

#include <map>
#include <optional>
#include <set>

namespace hyplat {

struct FiniteMatrixGroup {
  std::vector<IntMatrix> gens;
  Int order = 1;
};

namespace detail {

// Candidate vectors bucketed by norm (both signs), plus fingerprint data.
struct AutContext {
  const IntMatrix* A;               // domain gram
  std::map<Int, std::vector<IntVector>> layer;  // norm -> vectors, both signs
  std::vector<IntVector> min_layer;             // both signs, minimal norm
  std::map<std::string, std::vector<Int>> fp_cache;

  const std::vector<Int>& fingerprint(const IntVector& v) {
    std::string k = key_of(v);
    auto it = fp_cache.find(k);
    if (it != fp_cache.end()) return it->second;
    std::vector<Int> f;
    f.reserve(min_layer.size());
    IntVector va = v * *A;
    for (const IntVector& w : min_layer) f.push_back(dot(va, w));
    std::sort(f.begin(), f.end());
    return fp_cache.emplace(std::move(k), std::move(f)).first->second;
  }

  const std::vector<IntVector>& candidates(const Int& norm) {
    static const std::vector<IntVector> empty;
    auto it = layer.find(norm);
    return it == layer.end() ? empty : it->second;
  }
};

inline AutContext make_aut_context(const IntMatrix& A, const std::vector<Int>& norms) {
  AutContext ctx;
  ctx.A = &A;
  Int maxn(0);
  for (const Int& b : norms)
    if (b > maxn) maxn = b;
  std::vector<IntVector> vs = short_vectors(A, maxn);
  for (const IntVector& v : vs) {
    Int q = form_value(v, A, v);
    ctx.layer[q].push_back(v);
    ctx.layer[q].push_back(-v);
  }
  ShortestVectors sv = shortest_vectors(to_rat(A));
  for (const IntVector& v : sv.vectors) {
    ctx.min_layer.push_back(v);
    ctx.min_layer.push_back(-v);
  }
  return ctx;
}

// Extends the partial images list (rows 0..k-1 chosen) to a full matrix T
// with T * A * T^tr = B; returns the first completion found.
inline bool complete_map(AutContext& ctx, const IntMatrix& B,
                         std::vector<IntVector>& imgs, int k,
                         const std::vector<std::vector<Int>>& target_fp) {
  const int n = B.rows;
  if (k == n) return true;
  for (const IntVector& c : ctx.candidates(B(k, k))) {
    bool ok = true;
    for (int j = 0; j < k && ok; ++j)
      if (form_value(c, *ctx.A, imgs[j]) != B(k, j)) ok = false;
    if (!ok) continue;
    if (ctx.fingerprint(c) != target_fp[k]) continue;
    imgs.push_back(c);
    if (complete_map(ctx, B, imgs, k + 1, target_fp)) return true;
    imgs.pop_back();
  }
  return false;
}

}  // namespace detail

// Full automorphism group { g : g A g^tr = A } as generators plus order.
// -identity is always present (and returned among the generators for n > 0).
inline FiniteMatrixGroup automorphism_group(const IntMatrix& A) {
  const int n = A.rows;
  FiniteMatrixGroup grp;
  if (n == 0) return grp;
  if (!is_positive_definite(A)) throw InternalError("automorphism_group: gram not positive definite");

  std::vector<Int> norms;
  for (int i = 0; i < n; ++i) norms.push_back(A(i, i));
  detail::AutContext ctx = detail::make_aut_context(A, norms);

  std::vector<std::vector<Int>> base_fp(n);
  for (int i = 0; i < n; ++i) {
    IntVector e(n, Int(0));
    e[i] = 1;
    base_fp[i] = ctx.fingerprint(e);
  }

  grp.gens.push_back(-IntMatrix::identity(n));
  grp.order = 1;

  for (int lev = n - 1; lev >= 0; --lev) {
    IntVector e(n, Int(0));
    e[lev] = 1;
    auto orbit_of = [&]() {
      std::set<std::string> seen;
      std::vector<IntVector> orb{e};
      seen.insert(key_of(e));
      for (size_t head = 0; head < orb.size(); ++head) {
        for (const IntMatrix& g : grp.gens) {
          // only elements fixing e_0..e_{lev-1} act at this level
          bool fixes = true;
          for (int j = 0; j < lev && fixes; ++j) {
            for (int kcol = 0; kcol < n; ++kcol)
              if (g(j, kcol) != (kcol == j ? 1 : 0)) { fixes = false; break; }
          }
          if (!fixes) continue;
          IntVector img = orb[head] * g;
          if (seen.insert(key_of(img)).second) orb.push_back(img);
        }
      }
      return orb;
    };

    for (const IntVector& c : ctx.candidates(A(lev, lev))) {
      bool ok = true;
      for (int j = 0; j < lev && ok; ++j) {
        IntVector ej(n, Int(0));
        ej[j] = 1;
        if (form_value(c, A, ej) != A(lev, j)) ok = false;
      }
      if (!ok) continue;
      if (ctx.fingerprint(c) != base_fp[lev]) continue;
      std::vector<IntVector> orb = orbit_of();
      bool in_orbit = false;
      for (const IntVector& o : orb)
        if (o == c) { in_orbit = true; break; }
      if (in_orbit) continue;

      std::vector<IntVector> imgs;
      imgs.reserve(n);
      for (int j = 0; j < lev; ++j) {
        IntVector ej(n, Int(0));
        ej[j] = 1;
        imgs.push_back(ej);
      }
      imgs.push_back(c);
      if (detail::complete_map(ctx, A, imgs, lev + 1, base_fp))
        grp.gens.push_back(from_rows(imgs, n));
    }
    grp.order *= Int(static_cast<long>(orbit_of().size()));
  }
  return grp;
}

// One isometry T with T * A * T^tr = B, if any exists.
inline std::optional<IntMatrix> find_isometry(const IntMatrix& A, const IntMatrix& B) {
  if (A.rows != B.rows) return std::nullopt;
  const int n = A.rows;
  if (n == 0) return IntMatrix(0, 0);
  if (!is_positive_definite(A) || !is_positive_definite(B))
    throw InternalError("find_isometry: gram not positive definite");
  if (det(A) != det(B)) return std::nullopt;
  ShortestVectors sa = shortest_vectors(to_rat(A));
  ShortestVectors sb = shortest_vectors(to_rat(B));
  if (sa.min != sb.min || sa.vectors.size() != sb.vectors.size()) return std::nullopt;

  std::vector<Int> norms;
  for (int i = 0; i < n; ++i) norms.push_back(B(i, i));
  detail::AutContext ctx = detail::make_aut_context(A, norms);

  // fingerprints of the target basis vectors, computed inside B
  detail::AutContext ctx_b = detail::make_aut_context(B, norms);
  std::vector<std::vector<Int>> target_fp(n);
  for (int i = 0; i < n; ++i) {
    IntVector e(n, Int(0));
    e[i] = 1;
    target_fp[i] = ctx_b.fingerprint(e);
  }

  std::vector<IntVector> imgs;
  imgs.reserve(n);
  if (detail::complete_map(ctx, B, imgs, 0, target_fp))
    return from_rows(imgs, n);
  return std::nullopt;
}

// Rational gram overloads: scale to a common integral multiple (the group and
// the isometries are unchanged by scaling).
inline FiniteMatrixGroup automorphism_group(const RatMatrix& A) {
  Int m = denominator_lcm(A);
  return automorphism_group(scale_to_int(A, m));
}

inline std::optional<IntMatrix> find_isometry(const RatMatrix& A, const RatMatrix& B) {
  Int m = lcm(denominator_lcm(A), denominator_lcm(B));
  return find_isometry(scale_to_int(A, m), scale_to_int(B, m));
}

}  // namespace hyplat
