#pragma once

// Extreme rays of a pointed polyhedral cone { y : y . d >= 0 for all d } by
// the double description method. Starts from a simplicial subcone spanned by
// n linearly independent constraints and adds the remaining constraints one
// by one; new rays come from adjacent (positive, negative) ray pairs, with
// adjacency decided exactly by the rank of the common tight set. The input
// constraints must span R^n (otherwise the cone has a lineality space and no
// extreme rays; that raises RankError).

#include "hyplat/hnf.hpp"
#include "hyplat/matrix.hpp"

#include <bit>
#include <cstdint>

namespace hyplat {

struct Ray {
  IntVector r;             // primitive direction
  std::vector<int> tight;  // sorted indices of constraints with r . d = 0
};

namespace detail {

struct BitRay {
  IntVector r;
  std::vector<uint64_t> tight;  // bitset over constraint indices
};

inline int popcount_and(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) {
  int c = 0;
  for (size_t i = 0; i < a.size(); ++i) c += std::popcount(a[i] & b[i]);
  return c;
}

}  // namespace detail

inline std::vector<Ray> extreme_rays(const std::vector<IntVector>& constraints, int n) {
  const int m = static_cast<int>(constraints.size());
  for (const IntVector& d : constraints)
    if (is_zero(d)) throw InternalError("extreme_rays: zero constraint");
  if (rank_of_rows(constraints, n) < n)
    throw RankError("constraints do not span the space");

  // greedy simplicial subset
  std::vector<int> simp;
  std::vector<IntVector> picked;
  for (int i = 0; i < m && static_cast<int>(simp.size()) < n; ++i) {
    picked.push_back(constraints[static_cast<size_t>(i)]);
    if (rank_of_rows(picked, n) == static_cast<int>(picked.size())) {
      simp.push_back(i);
    } else {
      picked.pop_back();
    }
  }

  const size_t words = static_cast<size_t>((m + 63) / 64);
  auto set_bit = [&](std::vector<uint64_t>& bs, int i) {
    bs[static_cast<size_t>(i) / 64] |= uint64_t{1} << (static_cast<size_t>(i) % 64);
  };

  // initial rays: rows of sign(det) * adj(M^tr) pair to |det| * identity
  // against the chosen constraints
  IntMatrix M = from_rows(picked, n);
  IntMatrix adjT = adjugate(transpose(M));
  int s = sgn(det(M));
  std::vector<detail::BitRay> rays;
  for (int j = 0; j < n; ++j) {
    detail::BitRay br;
    IntVector row = adjT.row(j);
    if (s < 0) row = -row;
    br.r = primitive(row);
    br.tight.assign(words, 0);
    for (int i = 0; i < n; ++i)
      if (i != j) set_bit(br.tight, simp[static_cast<size_t>(i)]);
    rays.push_back(std::move(br));
  }

  std::vector<bool> processed(static_cast<size_t>(m), false);
  for (int i : simp) processed[static_cast<size_t>(i)] = true;

  for (int ci = 0; ci < m; ++ci) {
    if (processed[static_cast<size_t>(ci)]) continue;
    processed[static_cast<size_t>(ci)] = true;
    const IntVector& d = constraints[static_cast<size_t>(ci)];
    std::vector<Int> sig(rays.size());
    for (size_t i = 0; i < rays.size(); ++i) sig[i] = dot(rays[i].r, d);

    std::vector<detail::BitRay> next;
    for (size_t i = 0; i < rays.size(); ++i) {
      if (sgn(sig[i]) > 0) next.push_back(rays[i]);
      if (sgn(sig[i]) == 0) {
        detail::BitRay br = rays[i];
        set_bit(br.tight, ci);
        next.push_back(std::move(br));
      }
    }
    for (size_t p = 0; p < rays.size(); ++p) {
      if (sgn(sig[p]) <= 0) continue;
      for (size_t q = 0; q < rays.size(); ++q) {
        if (sgn(sig[q]) >= 0) continue;
        // adjacency prefilter, then exact rank test on the common tight set
        if (detail::popcount_and(rays[p].tight, rays[q].tight) < n - 2) continue;
        std::vector<IntVector> common;
        for (int i = 0; i < m; ++i) {
          size_t w = static_cast<size_t>(i) / 64, b = static_cast<size_t>(i) % 64;
          if ((rays[p].tight[w] >> b & 1) && (rays[q].tight[w] >> b & 1))
            common.push_back(constraints[static_cast<size_t>(i)]);
        }
        if (!common.empty() && rank_of_rows(common, n) != n - 2) continue;
        if (common.empty() && n != 2) continue;

        detail::BitRay br;
        br.r.assign(static_cast<size_t>(n), Int(0));
        for (int k = 0; k < n; ++k)
          br.r[static_cast<size_t>(k)] =
              sig[p] * rays[q].r[static_cast<size_t>(k)] - sig[q] * rays[p].r[static_cast<size_t>(k)];
        br.r = primitive(br.r);
        br.tight.assign(words, 0);
        // recompute tight set among processed constraints
        for (int i = 0; i < m; ++i)
          if (processed[static_cast<size_t>(i)] &&
              sgn(dot(br.r, constraints[static_cast<size_t>(i)])) == 0)
            set_bit(br.tight, i);
        next.push_back(std::move(br));
      }
    }
    rays = std::move(next);
    // defensive dedupe (identical directions can arise from duplicate input
    // constraints)
    std::sort(rays.begin(), rays.end(),
              [](const detail::BitRay& a, const detail::BitRay& b) { return lex_less(a.r, b.r); });
    rays.erase(std::unique(rays.begin(), rays.end(),
                           [](const detail::BitRay& a, const detail::BitRay& b) { return a.r == b.r; }),
               rays.end());
  }

  // final pass: recompute tight sets against all constraints and check the
  // defining property of extreme rays of a pointed cone
  std::vector<Ray> out;
  for (const detail::BitRay& br : rays) {
    Ray ray;
    ray.r = br.r;
    std::vector<IntVector> tight_rows;
    for (int i = 0; i < m; ++i) {
      Int sv = dot(br.r, constraints[static_cast<size_t>(i)]);
      if (sgn(sv) < 0) throw InternalError("extreme_rays: infeasible ray");
      if (sgn(sv) == 0) {
        ray.tight.push_back(i);
        tight_rows.push_back(constraints[static_cast<size_t>(i)]);
      }
    }
    if (rank_of_rows(tight_rows, n) != n - 1)
      throw InternalError("extreme_rays: ray not extreme");
    out.push_back(std::move(ray));
  }
  std::sort(out.begin(), out.end(), [](const Ray& a, const Ray& b) { return lex_less(a.r, b.r); });
  return out;
}

}  // namespace hyplat
