#pragma once

// Discriminant reduction for integral lattices. A p-filling adjoins the
// vectors of L cap p^2 L^# divided by p, which strips one level-two step from
// the p-adic Jordan decomposition; iterating over all applicable primes gives
// the Watson lattice, whose discriminant group has squarefree exponent. The
// automorphism group of the original lattice is recovered from the Watson one
// by an orbit-stabilizer computation on lattice images.

#include "hyplat/cone.hpp"
#include "hyplat/hnf.hpp"
#include "hyplat/matrix.hpp"
#include "hyplat/orbit.hpp"

#include <vector>

namespace hyplat {

// Full-rank lattice (1/scale) * rowspan(basis) inside the ambient Q^n, with
// the ambient form rescaled by 1/scale^2 so that gram stays integral:
// gram = basis * A * basis^tr / scale^2.
struct LatticeInSpace {
  IntMatrix basis;
  IntMatrix gram;
  Int scale = 1;
};

inline LatticeInSpace ambient_lattice(const IntMatrix& A) {
  return {IntMatrix::identity(A.rows), A, Int(1)};
}

namespace detail {

// Smallest prime p with p^2 | d, or 0 when d is squarefree enough.
inline Int smallest_square_prime(Int d) {
  if (sgn(d) < 0) d = -d;
  for (Int q = 2; q * q <= d; q = (q == 2 ? Int(3) : Int(q + 2))) {
    if (d % (q * q) == 0) return q;
    while (d % q == 0) d = exact_div(d, q);
  }
  return 0;
}

}  // namespace detail

// The p-filling of L. Requires the discriminant group to contain an element
// of order p^2, i.e. p^2 to divide the largest elementary divisor of gram.
// The new lattice is L + (1/p)(L cap p^2 L^#) carrying the unchanged ambient
// form; stored scaled by p so the basis stays integral.
inline LatticeInSpace p_filling(const LatticeInSpace& L, const Int& p) {
  const int n = L.gram.rows;
  if (p < 2) throw Error("p_filling: p must be a prime");
  const Int p2 = p * p;
  SnfResult s = snf(L.gram);
  if (s.S(n - 1, n - 1) % p2 != 0)
    throw NotFillableError("p_filling: no element of order p^2 in the discriminant group");

  // w * gram lies in p^2 Z^n iff y = w * U^{-1} has y_i divisible by
  // p^2 / gcd(d_i, p^2); the solution lattice has basis diag(...) * U
  IntMatrix M(n, n);
  for (int i = 0; i < n; ++i) {
    Int f = exact_div(p2, gcd(s.S(i, i), p2));
    for (int j = 0; j < n; ++j) M(i, j) = f * s.U(i, j);
  }
  IntMatrix pI(n, n);
  for (int i = 0; i < n; ++i) pI(i, i) = p;
  IntMatrix N = hnf_basis(stack_rows(pI, M));

  LatticeInSpace out;
  out.basis = N * L.basis;
  out.scale = L.scale * p;
  IntMatrix g = N * L.gram * transpose(N);
  out.gram = IntMatrix(n, n);
  for (size_t i = 0; i < g.a.size(); ++i) out.gram.a[i] = exact_div(g.a[i], p2);
  return out;
}

struct WatsonResult {
  LatticeInSpace W;
  std::vector<Int> chain;  // primes in the order the fillings were applied
};

// Iterated p-fillings, smallest applicable prime first, until the largest
// elementary divisor is squarefree.
inline WatsonResult watson(const IntMatrix& A) {
  WatsonResult r{ambient_lattice(A), {}};
  for (;;) {
    const int n = r.W.gram.rows;
    SnfResult s = snf(r.W.gram);
    Int p = detail::smallest_square_prime(s.S(n - 1, n - 1));
    if (p == 0) return r;
    r.W = p_filling(r.W, p);
    r.chain.push_back(p);
  }
}

// Generators of the stabilizer of the standard lattice Z^n inside the group
// generated by gens_W, the latter given in coordinates of W's basis. When
// gens_W generates Aut(W) this stabilizer is exactly Aut of the original
// lattice; the orbit is finite because the index is. Schreier generators are
// integral by construction (they fix Z^n) and preserve the ambient form.
inline std::vector<IntMatrix> recover_aut(const ConeFrame& f, const LatticeInSpace& W,
                                          const std::vector<IntMatrix>& gens_W,
                                          long budget = 1L << 20) {
  const int n = W.basis.rows;
  RatMatrix B = to_rat(W.basis);
  RatMatrix Binv = inverse(B);
  std::vector<RatMatrix> acting;
  acting.reserve(gens_W.size());
  for (const IntMatrix& g : gens_W) acting.push_back(Binv * to_rat(g) * B);

  OrbitResult orb = lattice_orbit(RatMatrix::identity(n), acting, budget);
  std::vector<IntMatrix> out;
  out.reserve(orb.schreier_gens.size());
  for (const RatMatrix& g : orb.schreier_gens) {
    if (!is_integral(g)) throw InternalError("recover_aut: stabilizer generator not integral");
    IntMatrix gi = to_int(g);
    if (gi * f.A * transpose(gi) != f.A)
      throw InternalError("recover_aut: stabilizer generator breaks the form");
    out.push_back(std::move(gi));
  }
  return out;
}

}  // namespace hyplat
