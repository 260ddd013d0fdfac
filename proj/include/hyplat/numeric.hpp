#pragma once

// Exact arbitrary-precision scalars plus the small number-theoretic helpers
// shared across the library. GMP-backed throughout; no floating point is used
// on any certified code path.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hyplat {

using Int = mpz_class;
using Rat = mpq_class;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SignatureError : Error { using Error::Error; };
struct SingularError : Error { using Error::Error; };
struct RankError : Error { using Error::Error; };
struct NotFillableError : Error { using Error::Error; };
struct OrbitBudgetError : Error { using Error::Error; };
struct BlindDirectionError : Error { using Error::Error; };
struct InternalError : Error { using Error::Error; };

struct ParseError : Error {
  int line = 0;
  int col = 0;
  ParseError(const std::string& msg, int line_, int col_)
      : Error(msg + " (line " + std::to_string(line_) + ", column " +
              std::to_string(col_) + ")"),
        line(line_), col(col_) {}
};

inline int sgn(const Int& x) { return mpz_sgn(x.get_mpz_t()); }
inline int sgn(const Rat& x) { return mpq_sgn(x.get_mpq_t()); }

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

// g = gcd(a,b) together with u,v such that u*a + v*b = g.
inline Int gcdext(const Int& a, const Int& b, Int& u, Int& v) {
  Int g;
  mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return g;
}

inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

inline Int mod_floor(const Int& a, const Int& b) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline bool divides(const Int& d, const Int& a) {
  if (sgn(d) == 0) return sgn(a) == 0;
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline Int exact_div(const Int& a, const Int& b) {
  if (!divides(b, a)) throw InternalError("exact_div: not divisible");
  Int q;
  mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// Floor of the square root; a must be >= 0.
inline Int isqrt(const Int& a) {
  if (sgn(a) < 0) throw InternalError("isqrt of negative");
  Int r;
  mpz_sqrt(r.get_mpz_t(), a.get_mpz_t());
  return r;
}

inline Int floor_rat(const Rat& q) { return floor_div(q.get_num(), q.get_den()); }

inline Int ceil_rat(const Rat& q) {
  Int f = floor_rat(q);
  return (Rat(f) == q) ? f : Int(f + 1);
}

inline Int round_nearest(const Rat& q) { return floor_rat(q + Rat(1, 2)); }

// The integer solutions of (t - center)^2 <= radius2 form the interval
// [lo, hi]; empty (lo > hi) when no integer fits. Exact: an isqrt seeds the
// endpoints and a couple of exact comparisons fix them up.
inline void quad_interval(const Rat& center, const Rat& radius2, Int& lo, Int& hi) {
  if (sgn(radius2) < 0) {
    lo = 1;
    hi = 0;
    return;
  }
  Rat bound(isqrt(radius2.get_num() * radius2.get_den()) + 1, radius2.get_den());
  bound.canonicalize();
  hi = floor_rat(center + bound);
  lo = ceil_rat(center - bound);
  auto ok = [&](const Int& t) {
    Rat d = Rat(t) - center;
    return d * d <= radius2;
  };
  while (hi >= lo && !ok(hi)) --hi;
  while (lo <= hi && !ok(lo)) ++lo;
}

// Trial-division factorization, adequate for desk-scale determinants.
inline std::vector<std::pair<Int, int>> factor(Int n) {
  std::vector<std::pair<Int, int>> out;
  if (sgn(n) < 0) n = -n;
  if (n <= 1) return out;
  auto strip = [&](const Int& p) {
    int e = 0;
    while (divides(p, n)) {
      n = exact_div(n, p);
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  };
  strip(2);
  for (Int p = 3; p * p <= n; p += 2) strip(p);
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline std::string to_string(const Int& x) { return x.get_str(); }
inline std::string to_string(const Rat& x) { return x.get_str(); }

}  // namespace hyplat
