#pragma once

// Orbit-stabilizer on full-rank lattices in Q^n acted on by rational matrices
// (L -> L * g). Lattices are identified by an exact canonical key: the
// smallest positive integer q with q*L inside Z^n together with the HNF basis
// of q*L. Breadth-first orbit enumeration keeps a transversal and collects
// Schreier generators of the stabilizer of the start lattice.

#include "hyplat/hnf.hpp"
#include "hyplat/matrix.hpp"

#include <map>
#include <string>

namespace hyplat {

// Canonical (scale, basis) pair: q minimal positive with q*L in Z^n, B the
// HNF basis of q*L. Unique per lattice, independent of the generators given.
struct CanonicalLattice {
  Int q;
  IntMatrix B;
};

inline CanonicalLattice canonical_lattice(const RatMatrix& M) {
  Int q0 = denominator_lcm(M);
  IntMatrix Mi = scale_to_int(M, q0);
  IntMatrix H = hnf_basis(Mi);
  if (H.rows != M.cols) throw InternalError("canonical_lattice: not full rank");
  Int c = 0;
  for (const Int& x : H.a) c = gcd(c, x);
  Int t = gcd(c, q0);
  CanonicalLattice cl;
  cl.q = exact_div(q0, t);
  cl.B = IntMatrix(H.rows, H.cols);
  for (size_t i = 0; i < H.a.size(); ++i) cl.B.a[i] = exact_div(H.a[i], t);
  return cl;
}

inline std::string lattice_key(const RatMatrix& M) {
  CanonicalLattice cl = canonical_lattice(M);
  return cl.q.get_str() + "|" + key_of(cl.B);
}

inline std::string key_of(const RatMatrix& m) {
  std::string s = std::to_string(m.rows) + "x" + std::to_string(m.cols) + ":";
  for (const Rat& x : m.a) s += x.get_str() + ",";
  return s;
}

struct OrbitResult {
  std::vector<std::string> keys;        // BFS order; keys[0] is the start
  std::map<std::string, int> index;     // key -> position
  std::vector<RatMatrix> transversal;   // start * t_i has key keys[i]
  std::vector<RatMatrix> schreier_gens; // stabilizer generators of the start
};

// Orbit of the lattice generated by the rows of `start` under the group
// generated by `gens`. Throws OrbitBudgetError when the orbit exceeds
// `budget` points.
inline OrbitResult lattice_orbit(const RatMatrix& start,
                                 const std::vector<RatMatrix>& gens,
                                 long budget) {
  const int n = start.cols;
  OrbitResult res;
  std::vector<RatMatrix> basis;  // generator matrix per orbit point

  res.keys.push_back(lattice_key(start));
  res.index[res.keys[0]] = 0;
  res.transversal.push_back(RatMatrix::identity(n));
  basis.push_back(start);

  std::map<std::string, bool> seen_gen;
  for (size_t head = 0; head < res.keys.size(); ++head) {
    for (const RatMatrix& g : gens) {
      RatMatrix img = basis[head] * g;
      std::string k = lattice_key(img);
      auto it = res.index.find(k);
      if (it == res.index.end()) {
        if (static_cast<long>(res.keys.size()) >= budget)
          throw OrbitBudgetError("lattice orbit exceeded the configured budget");
        res.index[k] = static_cast<int>(res.keys.size());
        res.keys.push_back(k);
        res.transversal.push_back(res.transversal[head] * g);
        basis.push_back(img);
      } else {
        // Schreier generator: t_head * g * t_dest^{-1} stabilizes the start
        RatMatrix s = res.transversal[head] * g * inverse(res.transversal[static_cast<size_t>(it->second)]);
        std::string sk = key_of(s);
        if (!seen_gen.count(sk)) {
          seen_gen[sk] = true;
          if (s != RatMatrix::identity(n)) res.schreier_gens.push_back(s);
        }
      }
    }
  }
  return res;
}

}  // namespace hyplat
