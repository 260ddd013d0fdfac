#pragma once

// Traversal of the perfect-point graph of a hyperbolic form.
//
// A perfect point is a primitive interior x whose minimal-pairing directions
// span Q^n. The traversal walks the residue classes of perfect points under
// the integral isometries preserving the cone component, collecting for each
// class its stabilizer and, for each facet of the local cone, the adjacent
// class together with a connecting isometry. The stabilizers, the connecting
// elements and -I together generate the full integral automorphism group.
//
// Stepping to a neighbour along a ray r uses an exact certificate: for a
// trial step tau = p/q the directions d with step value rho_d <= tau all
// satisfy sigma(z', d) <= floor(q mu / gamma) where z' is the primitive
// rescale of q x + p r, so a single bounded enumeration either certifies the
// true minimum or shows the trial was too small.

#include "hyplat/autgrp.hpp"
#include "hyplat/cone.hpp"
#include "hyplat/hnf.hpp"
#include "hyplat/lll.hpp"
#include "hyplat/matrix.hpp"
#include "hyplat/orbit.hpp"
#include "hyplat/polycone.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>

namespace hyplat {

struct PerfectPoint {
  IntVector x;
  MinimalVectorData mv;
};

struct Advance {
  Rat rho;          // exact step length
  IntVector point;  // primitive rescale of x + rho r
  IntVector dstar;  // direction attaining the step
};

// Smallest rho > 0 with mu(x + rho r) attained by a direction leaving the
// local cone, together with the resulting point. Throws BlindDirectionError
// when r stays inside the closed cone (no neighbour in that direction).
inline Advance advance_along(const ConeFrame& f, const IntVector& x, const Int& mu,
                             const IntVector& r) {
  if (in_V1(f, r) != ConePosition::outside)
    throw BlindDirectionError("direction does not leave the cone");

  const int n = f.n;
  auto scaled_point = [&](const Rat& t, Int* gamma_out) {
    Int p = t.get_num(), q = t.get_den();
    IntVector z(n);
    for (int i = 0; i < n; ++i) z[i] = q * x[i] + p * r[i];
    Int g = content(z);
    for (int i = 0; i < n; ++i) z[i] = exact_div(z[i], g);
    if (gamma_out) *gamma_out = g;
    return z;
  };
  auto interior_at = [&](const Rat& t) {
    return in_V1(f, scaled_point(t, nullptr)) == ConePosition::interior;
  };

  Rat tau(1);
  while (!interior_at(tau)) tau /= 2;
  std::optional<Rat> hi;  // known step past the cone boundary

  for (;;) {
    Int gamma;
    IntVector z = scaled_point(tau, &gamma);
    Int bound = floor_div(tau.get_den() * mu, gamma);
    std::optional<Rat> best;
    IntVector best_d;
    for (const IntVector& d : d_short_vectors(f, z, bound)) {
      Int s = sigma(r, d);
      if (s >= 0) continue;
      Rat rho(sigma(x, d) - mu, -s);
      rho.canonicalize();
      if (!best || rho < *best) {
        best = rho;
        best_d = d;
      }
    }
    if (best && *best <= tau) {
      Advance adv;
      adv.rho = *best;
      adv.point = scaled_point(*best, nullptr);
      adv.dstar = best_d;
      return adv;
    }
    Rat next = hi ? Rat((tau + *hi) / 2) : Rat(tau * 2);
    while (!interior_at(next)) {
      hi = next;
      next = (tau + next) / 2;
    }
    tau = next;
  }
}

inline PerfectPoint neighbour(const ConeFrame& f, const PerfectPoint& p, const IntVector& r) {
  Advance adv = advance_along(f, p.x, p.mv.min, r);
  return {adv.point, minimal_vectors(f, adv.point)};
}

// Rank-raising walk from the anchor to a first perfect point: while the
// minimal directions do not span, move inside their common annihilator.
inline PerfectPoint initial_perfect_point(const ConeFrame& f) {
  const int n = f.n;
  IntVector x = f.anchor1;
  MinimalVectorData mv = minimal_vectors(f, x);
  while (mv.rank < n) {
    IntMatrix M(n, static_cast<int>(mv.vectors.size()));
    for (size_t j = 0; j < mv.vectors.size(); ++j)
      for (int i = 0; i < n; ++i) M(i, static_cast<int>(j)) = mv.vectors[j][i];
    IntVector r = kernel_saturated(M).row(0);
    if (in_V1(f, r) != ConePosition::outside) r = -r;
    Advance adv = advance_along(f, x, mv.min, r);
    x = adv.point;
    mv = minimal_vectors(f, x);
  }
  return {x, mv};
}

// Stabilizer of a perfect point: the automorphisms of the positive definite
// orthogonal lattice L(x) extend uniquely to rational isometries fixing x;
// the integral ones among them are found by orbit-stabilizer on Z^n.
struct StabilizerData {
  IntMatrix Kx;                     // basis of L(x) = x^perp in Z^n
  IntMatrix Gx;                     // gram of L(x), positive definite
  RatMatrix Binv;                   // inverse of stack(Kx, x)
  std::vector<RatMatrix> ext_gens;  // extensions of Aut(Gx) generators
  OrbitResult orbit;                // orbit of Z^n under the extension group
  std::vector<IntMatrix> gens;      // integral stabilizer generators
  Int order;
};

inline StabilizerData stabilizer(const ConeFrame& f, const IntVector& x, long budget) {
  const int n = f.n;
  StabilizerData sd;
  IntVector xA = x * f.A;
  IntMatrix col(n, 1);
  for (int i = 0; i < n; ++i) col(i, 0) = xA[i];
  sd.Kx = kernel_saturated(col);
  if (sd.Kx.rows != n - 1) throw InternalError("stabilizer: kernel rank");
  sd.Gx = sd.Kx * f.A * transpose(sd.Kx);
  // reduce the orthogonal basis; keeps the later enumeration bounds small
  LllResult red = lll_reduce(sd.Gx);
  sd.Kx = red.U * sd.Kx;
  sd.Gx = to_int(red.G);
  IntMatrix B(n, n);
  for (int i = 0; i < n - 1; ++i)
    for (int j = 0; j < n; ++j) B(i, j) = sd.Kx(i, j);
  for (int j = 0; j < n; ++j) B(n - 1, j) = x[j];
  sd.Binv = inverse(B);

  FiniteMatrixGroup link = automorphism_group(sd.Gx);
  for (const IntMatrix& h : link.gens) {
    IntMatrix hK = h * sd.Kx;
    IntMatrix S(n, n);
    for (int i = 0; i < n - 1; ++i)
      for (int j = 0; j < n; ++j) S(i, j) = hK(i, j);
    for (int j = 0; j < n; ++j) S(n - 1, j) = x[j];
    sd.ext_gens.push_back(sd.Binv * to_rat(S));
  }
  sd.orbit = lattice_orbit(RatMatrix::identity(n), sd.ext_gens, budget);
  for (const RatMatrix& s : sd.orbit.schreier_gens) {
    if (!is_integral(s)) throw InternalError("stabilizer: non-integral schreier generator");
    sd.gens.push_back(to_int(s));
  }
  sd.order = exact_div(link.order, Int(static_cast<long>(sd.orbit.keys.size())));
  return sd;
}

struct PerfectClass {
  int id = 0;
  int parent = -1;  // class this one was discovered from
  IntVector x;
  MinimalVectorData mv;
  StabilizerData stab;
  std::vector<Int> pair_profile;  // sorted d_i adjA d_j^tr over i <= j
  int rays = 0;                   // extreme rays of the local cone
  int blind = 0;                  // rays staying inside the closed cone
  int neighbours() const { return rays - blind; }
};

inline std::vector<Int> pairing_profile(const ConeFrame& f, const std::vector<IntVector>& ds) {
  std::vector<Int> prof;
  for (size_t i = 0; i < ds.size(); ++i) {
    IntVector w = ds[i] * f.adjA;
    for (size_t j = i; j < ds.size(); ++j) prof.push_back(dot(w, ds[j]));
  }
  std::sort(prof.begin(), prof.end());
  return prof;
}

// Connecting isometry omega with x_p * omega = x_q, if the two perfect points
// are in the same class. Uses the coset trick: any such omega is g0 * e with
// g0 one rational isometry matching the orthogonal lattices and e in the
// extension group of q, so it exists iff the lattice Z^n g0 lies in the
// cached orbit of Z^n.
inline std::optional<IntMatrix> equivalent(const ConeFrame& f, const IntVector& xp,
                                           const MinimalVectorData& mvp,
                                           const std::vector<Int>& profp,
                                           const PerfectClass& q) {
  const int n = f.n;
  if (norm_N(f, xp) != norm_N(f, q.x)) return std::nullopt;
  if (mvp.min != q.mv.min) return std::nullopt;
  if (mvp.vectors.size() != q.mv.vectors.size()) return std::nullopt;
  if (profp != q.pair_profile) return std::nullopt;

  IntVector xA = xp * f.A;
  IntMatrix col(n, 1);
  for (int i = 0; i < n; ++i) col(i, 0) = xA[i];
  IntMatrix Kp = kernel_saturated(col);
  IntMatrix Gp = Kp * f.A * transpose(Kp);
  LllResult red = lll_reduce(Gp);
  Kp = red.U * Kp;
  Gp = to_int(red.G);
  std::optional<IntMatrix> h = find_isometry(q.stab.Gx, Gp);
  if (!h) return std::nullopt;

  IntMatrix Bp(n, n);
  for (int i = 0; i < n - 1; ++i)
    for (int j = 0; j < n; ++j) Bp(i, j) = Kp(i, j);
  for (int j = 0; j < n; ++j) Bp(n - 1, j) = xp[j];
  IntMatrix hKq = (*h) * q.stab.Kx;
  IntMatrix S(n, n);
  for (int i = 0; i < n - 1; ++i)
    for (int j = 0; j < n; ++j) S(i, j) = hKq(i, j);
  for (int j = 0; j < n; ++j) S(n - 1, j) = q.x[j];
  RatMatrix g0 = inverse(Bp) * to_rat(S);

  auto it = q.stab.orbit.index.find(lattice_key(g0));
  if (it == q.stab.orbit.index.end()) return std::nullopt;
  RatMatrix omega = g0 * inverse(q.stab.orbit.transversal[static_cast<size_t>(it->second)]);
  if (!is_integral(omega)) throw InternalError("equivalent: non-integral connecting element");
  return to_int(omega);
}

struct GraphEdge {
  int from = 0;
  int to = 0;
  IntVector ray;                   // orbit representative at `from`
  IntVector neighbour;             // literal neighbour of x_from that was matched
  std::optional<IntMatrix> omega;  // neighbour * omega = x_to; absent for a literal match
  Rat rho;                         // step length along the ray
};

struct TraverseResult {
  IntMatrix A;
  ConeFrame frame;
  std::vector<PerfectClass> classes;
  std::vector<GraphEdge> edges;
  std::vector<IntMatrix> generators;  // stabilizer and connecting elements
  bool minus_identity = true;         // -I completes the two-component group
  long orbit_checks = 0;              // non-blind ray orbits processed
};

struct TraverseOptions {
  long orbit_budget = 1L << 20;
};

namespace detail {

inline std::vector<IntVector> point_orbit(const IntVector& v, const std::vector<IntMatrix>& gens,
                                          size_t cap = 0) {
  std::vector<IntVector> orb{v};
  std::set<std::string> seen{key_of(v)};
  for (size_t head = 0; head < orb.size(); ++head)
    for (const IntMatrix& g : gens) {
      IntVector w = orb[head] * g;
      if (seen.insert(key_of(w)).second) {
        if (cap && orb.size() >= cap) throw OrbitBudgetError("point orbit exceeded the cap");
        orb.push_back(w);
      }
    }
  return orb;
}

}  // namespace detail

inline TraverseResult traverse(const IntMatrix& A, const TraverseOptions& opt = {}) {
  TraverseResult tr;
  tr.A = A;
  tr.frame = make_frame(A);
  const ConeFrame& f = tr.frame;
  const int n = f.n;

  std::map<std::string, int> rep_index;
  std::set<std::string> gen_keys;
  auto add_generator = [&](const IntMatrix& g) {
    if (g == IntMatrix::identity(n)) return;
    if (gen_keys.insert(key_of(g)).second) tr.generators.push_back(g);
  };
  auto new_class = [&](const IntVector& x, MinimalVectorData mv, int parent) {
    PerfectClass c;
    c.id = static_cast<int>(tr.classes.size());
    c.parent = parent;
    c.x = x;
    c.mv = std::move(mv);
    c.stab = stabilizer(f, x, opt.orbit_budget);
    c.pair_profile = pairing_profile(f, c.mv.vectors);
    rep_index[key_of(x)] = c.id;
    for (const IntMatrix& g : c.stab.gens) add_generator(g);
    tr.classes.push_back(std::move(c));
    return tr.classes.back().id;
  };

  PerfectPoint p0 = initial_perfect_point(f);
  std::deque<int> queue{new_class(p0.x, p0.mv, -1)};

  while (!queue.empty()) {
    int ci = queue.front();
    queue.pop_front();
    // the reverse of the tree edge that discovered this class is skipped
    // once; everything else it meets is recorded
    bool parent_skipped = tr.classes[static_cast<size_t>(ci)].parent < 0;

    std::vector<Ray> rays = extreme_rays(tr.classes[static_cast<size_t>(ci)].mv.vectors, n);
    tr.classes[ci].rays = static_cast<int>(rays.size());

    // partition the rays into stabilizer orbits, keeping lex order
    std::set<std::string> assigned;
    std::vector<IntVector> orbit_reps;
    for (const Ray& ray : rays) {
      bool blind = in_V1(f, ray.r) != ConePosition::outside;
      if (blind) tr.classes[ci].blind++;
      if (assigned.count(key_of(ray.r))) continue;
      std::vector<IntVector> orb = detail::point_orbit(ray.r, tr.classes[ci].stab.gens);
      for (const IntVector& w : orb) assigned.insert(key_of(w));
      if (!blind) orbit_reps.push_back(ray.r);
    }

    for (const IntVector& r : orbit_reps) {
      tr.orbit_checks++;
      Advance adv = advance_along(f, tr.classes[ci].x, tr.classes[ci].mv.min, r);
      std::vector<IntVector> Y = detail::point_orbit(adv.point, tr.classes[ci].stab.gens);

      GraphEdge e;
      e.from = ci;
      e.ray = r;
      e.rho = adv.rho;

      IntVector z = *std::min_element(Y.begin(), Y.end(), lex_less);
      MinimalVectorData mvz = minimal_vectors(f, z);
      std::vector<Int> profz = pairing_profile(f, mvz.vectors);

      // a literal hit in the orbit pins the class; otherwise scan in id order
      int found = -1;
      for (const IntVector& w : Y) {
        auto it = rep_index.find(key_of(w));
        if (it != rep_index.end()) {
          found = it->second;
          break;
        }
      }
      std::optional<IntMatrix> omega;
      if (found >= 0) {
        omega = equivalent(f, z, mvz, profz, tr.classes[static_cast<size_t>(found)]);
        if (!omega) throw InternalError("traverse: literal neighbour failed the equivalence test");
      } else {
        for (const PerfectClass& q : tr.classes) {
          omega = equivalent(f, z, mvz, profz, q);
          if (omega) {
            found = q.id;
            break;
          }
        }
      }

      if (found >= 0) {
        if (!parent_skipped && found == tr.classes[static_cast<size_t>(ci)].parent) {
          parent_skipped = true;
          continue;
        }
        e.to = found;
        e.neighbour = z;
        e.omega = omega;
        add_generator(*omega);
        tr.edges.push_back(std::move(e));
      } else {
        int nid = new_class(z, std::move(mvz), ci);
        queue.push_back(nid);
        e.to = nid;
        e.neighbour = z;
        tr.edges.push_back(std::move(e));
      }
    }
  }
  return tr;
}

struct Violation {
  std::string code;
  std::string detail;
};

struct VerifyReport {
  bool ok = true;
  std::vector<Violation> violations;
};

namespace detail {

inline std::vector<IntVector> common_minvecs(const std::vector<IntVector>& a,
                                             const std::vector<IntVector>& b) {
  std::vector<IntVector> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out), lex_less);
  return out;
}

}  // namespace detail

// Independent re-check of a traversal: generator sanity, perfectness of the
// representatives, stabilizer and edge consistency, coverage of every
// non-blind direction, and connectivity of the class graph.
inline VerifyReport verify(const TraverseResult& tr) {
  VerifyReport rep;
  auto fail = [&](const std::string& code, const std::string& detail) {
    rep.ok = false;
    rep.violations.push_back({code, detail});
  };
  const ConeFrame& f = tr.frame;
  const int n = f.n;
  if (tr.classes.empty()) {
    fail("no classes", "traversal produced no perfect point classes");
    return rep;
  }
  const IntVector& x0 = tr.classes[0].x;

  auto check_isometry = [&](const IntMatrix& g, const std::string& where) {
    if (g * tr.A * transpose(g) != tr.A) fail("form not preserved", where);
    Int dg = det(g);
    if (dg != 1 && dg != -1) fail("not unimodular", where);
    if (in_V1(f, x0 * g) != ConePosition::interior) fail("component not preserved", where);
  };
  for (size_t i = 0; i < tr.generators.size(); ++i)
    check_isometry(tr.generators[i], "generator " + std::to_string(i));

  std::vector<bool> stab_ok(tr.classes.size(), true);
  for (const PerfectClass& c : tr.classes) {
    std::string where = "class " + std::to_string(c.id);
    if (content(c.x) != 1) fail("representative not primitive", where);
    if (in_V1(f, c.x) != ConePosition::interior) {
      fail("representative not interior", where);
      continue;
    }
    MinimalVectorData mv = minimal_vectors(f, c.x);
    if (mv.rank != n) fail("representative not perfect", where);
    if (mv.min != c.mv.min || mv.vectors != c.mv.vectors) fail("minimal vectors stale", where);
    for (size_t i = 0; i < c.stab.gens.size(); ++i) {
      const IntMatrix& g = c.stab.gens[i];
      std::string gw = where + " stabilizer generator " + std::to_string(i);
      size_t before = rep.violations.size();
      check_isometry(g, gw);
      if (c.x * g != c.x) fail("stabilizer does not fix representative", gw);
      // a generator that fails either check need not have finite order, so
      // orbits under it cannot be trusted (or even enumerated)
      if (rep.violations.size() != before) stab_ok[static_cast<size_t>(c.id)] = false;
    }
  }

  for (size_t ei = 0; ei < tr.edges.size(); ++ei) {
    const GraphEdge& e = tr.edges[ei];
    std::string where = "edge " + std::to_string(ei);
    if (e.from < 0 || e.from >= static_cast<int>(tr.classes.size()) || e.to < 0 ||
        e.to >= static_cast<int>(tr.classes.size())) {
      fail("edge endpoint out of range", where);
      continue;
    }
    IntVector y = e.neighbour;
    if (e.omega) {
      check_isometry(*e.omega, where + " connecting element");
      if (y * *e.omega != tr.classes[static_cast<size_t>(e.to)].x) fail("edge map mismatch", where);
    } else if (y != tr.classes[static_cast<size_t>(e.to)].x) {
      fail("edge map mismatch", where);
    }
    if (in_V1(f, y) != ConePosition::interior) {
      fail("neighbour not perfect", where);
      continue;
    }
    MinimalVectorData mvy = minimal_vectors(f, y);
    if (mvy.rank != n) fail("neighbour not perfect", where);
    std::vector<IntVector> shared =
        detail::common_minvecs(tr.classes[static_cast<size_t>(e.from)].mv.vectors, mvy.vectors);
    if (rank_of_rows(shared, n) != n - 1) fail("edge does not share a facet", where);
  }

  // coverage: every non-blind ray orbit of every class must lead to a class
  // joined by an edge in one direction or the other
  std::set<std::pair<int, int>> edge_pairs;
  for (const GraphEdge& e : tr.edges) {
    edge_pairs.insert({e.from, e.to});
    edge_pairs.insert({e.to, e.from});
  }
  for (const PerfectClass& c : tr.classes) {
    if (in_V1(f, c.x) != ConePosition::interior) continue;  // reported above
    if (!stab_ok[static_cast<size_t>(c.id)]) continue;      // reported above
    std::vector<Ray> rays;
    try {
      rays = extreme_rays(c.mv.vectors, n);
    } catch (const Error& err) {
      fail("direction not covered", "class " + std::to_string(c.id) + ": " + err.what());
      continue;
    }
    std::set<std::string> assigned;
    const size_t orbit_cap = 1u << 20;
    for (const Ray& ray : rays) {
      if (assigned.count(key_of(ray.r))) continue;
      std::string where = "class " + std::to_string(c.id) + " ray " + to_string(ray.r);
      try {
        std::vector<IntVector> orb = detail::point_orbit(ray.r, c.stab.gens, orbit_cap);
        for (const IntVector& w : orb) assigned.insert(key_of(w));
        if (in_V1(f, ray.r) != ConePosition::outside) continue;
        Advance adv = advance_along(f, c.x, c.mv.min, ray.r);
        std::vector<IntVector> Y = detail::point_orbit(adv.point, c.stab.gens, orbit_cap);
        IntVector z = *std::min_element(Y.begin(), Y.end(), lex_less);
        MinimalVectorData mvz = minimal_vectors(f, z);
        std::vector<Int> profz = pairing_profile(f, mvz.vectors);
        int found = -1;
        for (const PerfectClass& q : tr.classes) {
          bool lit = false;
          for (const IntVector& w : Y)
            if (w == q.x) {
              lit = true;
              break;
            }
          if (lit || equivalent(f, z, mvz, profz, q)) {
            found = q.id;
            break;
          }
        }
        if (found < 0)
          fail("direction not covered", where + ": neighbour matches no class");
        else if (!edge_pairs.count({c.id, found}))
          fail("direction not covered", where);
      } catch (const Error& err) {
        fail("direction not covered", where + ": " + err.what());
      }
    }
  }

  // connectivity of the class graph
  std::vector<int> comp(tr.classes.size());
  for (size_t i = 0; i < comp.size(); ++i) comp[i] = static_cast<int>(i);
  std::function<int(int)> root = [&](int v) {
    while (comp[static_cast<size_t>(v)] != v) v = comp[static_cast<size_t>(v)] = comp[static_cast<size_t>(comp[static_cast<size_t>(v)])];
    return v;
  };
  for (const GraphEdge& e : tr.edges) comp[static_cast<size_t>(root(e.from))] = root(e.to);
  for (size_t i = 0; i < comp.size(); ++i)
    if (root(static_cast<int>(i)) != root(0))
      fail("graph not connected", "class " + std::to_string(i));

  return rep;
}

}  // namespace hyplat
