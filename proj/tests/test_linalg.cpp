#include <hyplat/diagonalize.hpp>
#include <hyplat/hnf.hpp>
#include <hyplat/lll.hpp>
#include <hyplat/matrix.hpp>
#include <hyplat/numeric.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace hyplat;

TEST_CASE("integer helpers") {
  CHECK(floor_div(Int(7), Int(2)) == 3);
  CHECK(floor_div(Int(-7), Int(2)) == -4);
  CHECK(mod_floor(Int(-7), Int(2)) == 1);
  CHECK(exact_div(Int(-12), Int(3)) == -4);
  CHECK_THROWS_AS(exact_div(Int(7), Int(2)), InternalError);
  CHECK(isqrt(Int(0)) == 0);
  CHECK(isqrt(Int(15)) == 3);
  CHECK(isqrt(Int(16)) == 4);
  CHECK(gcd(Int(12), Int(-18)) == 6);
  CHECK(lcm(Int(4), Int(6)) == 12);

  Int u, v;
  Int g = gcdext(Int(12), Int(18), u, v);
  CHECK(g == 6);
  CHECK(u * 12 + v * 18 == g);

  CHECK(floor_rat(Rat(7, 2)) == 3);
  CHECK(floor_rat(Rat(-7, 2)) == -4);
  CHECK(ceil_rat(Rat(7, 2)) == 4);
  CHECK(round_nearest(Rat(5, 2)) == 3);
  CHECK(round_nearest(Rat(-5, 2)) == -2);
  CHECK(round_nearest(Rat(1, 3)) == 0);

  auto f = factor(Int(360));
  REQUIRE(f.size() == 3);
  CHECK(f[0] == std::pair<Int, int>{Int(2), 3});
  CHECK(f[1] == std::pair<Int, int>{Int(3), 2});
  CHECK(f[2] == std::pair<Int, int>{Int(5), 1});
}

TEST_CASE("quad_interval brackets the exact real interval") {
  // (t - c)^2 <= r2 with c = 1/2, r2 = 1/4: t in [0, 1]
  Int lo, hi;
  quad_interval(Rat(1, 2), Rat(1, 4), lo, hi);
  CHECK(lo == 0);
  CHECK(hi == 1);
  // empty integer range: c = 1/2, r2 = 1/16: t in [1/4, 3/4]
  quad_interval(Rat(1, 2), Rat(1, 16), lo, hi);
  CHECK(lo > hi);
  // degenerate: r2 = 0, c integral
  quad_interval(Rat(3), Rat(0), lo, hi);
  CHECK(lo == 3);
  CHECK(hi == 3);

  testhelp::Rng rng(12345);
  for (int iter = 0; iter < 200; ++iter) {
    Rat c(rng.uniform(-50, 50), rng.uniform(1, 9));
    Rat r2(rng.uniform(0, 400), rng.uniform(1, 7));
    quad_interval(c, r2, lo, hi);
    for (long t = -60; t <= 60; ++t) {
      Rat diff = Rat(t) - c;
      bool inside = diff * diff <= r2;
      bool claimed = Int(t) >= lo && Int(t) <= hi;
      REQUIRE(inside == claimed);
    }
  }
}

TEST_CASE("matrix basics") {
  IntMatrix a{{1, 2}, {3, 4}};
  IntMatrix b{{0, 1}, {1, 0}};
  IntMatrix p = a * b;
  CHECK(p == IntMatrix{{2, 1}, {4, 3}});
  CHECK(transpose(a) == IntMatrix{{1, 3}, {2, 4}});

  IntVector v{Int(1), Int(-1)};
  IntVector r = v * a;
  CHECK(r == IntVector{Int(-2), Int(-2)});
  CHECK(dot(v, v) == 2);
  CHECK(form_value(v, a, v) == 0);  // (1,-1) A (1,-1)^tr = 1-2-3+4

  CHECK(content(IntVector{Int(4), Int(-6), Int(0)}) == 2);
  CHECK(primitive(IntVector{Int(4), Int(-6)}) == IntVector{Int(2), Int(-3)});
  CHECK(sign_normalized(IntVector{Int(0), Int(-2), Int(5)}) ==
        IntVector{Int(0), Int(2), Int(-5)});
  CHECK(lex_less(IntVector{Int(1), Int(2)}, IntVector{Int(1), Int(3)}));
}

TEST_CASE("determinant and adjugate") {
  IntMatrix a{{-1, -3, -1}, {-3, 14, 8}, {-1, 8, 11}};
  CHECK(det(a) == -155);

  IntMatrix adj = adjugate(a);
  IntMatrix prod = a * adj;
  IntMatrix expect(3, 3);
  for (int i = 0; i < 3; ++i) expect(i, i) = -155;
  CHECK(prod == expect);

  CHECK(det(IntMatrix{{0, 1}, {1, 0}}) == -1);
  CHECK(det(IntMatrix{{2, 0}, {0, 0}}) == 0);
  CHECK_THROWS_AS(adjugate(IntMatrix{{1, 1}, {1, 1}}), SingularError);

  testhelp::Rng rng(777);
  for (int iter = 0; iter < 60; ++iter) {
    int n = static_cast<int>(rng.uniform(1, 4));
    IntMatrix m = testhelp::rand_matrix(rng, n, n, 6);
    Int d = det(m);
    CHECK(Rat(d) == det(to_rat(m)));
    if (sgn(d) != 0) {
      RatMatrix inv = inverse(m);
      CHECK(to_rat(m) * inv == RatMatrix::identity(n));
    }
  }
}

TEST_CASE("rank") {
  CHECK(rank(IntMatrix{{1, 2}, {2, 4}}) == 1);
  CHECK(rank(IntMatrix{{1, 2}, {3, 4}}) == 2);
  CHECK(rank(IntMatrix{{0, 0}, {0, 0}}) == 0);
  CHECK(rank(IntMatrix{{1, 2, 3}, {4, 5, 6}, {5, 7, 9}}) == 2);
}

TEST_CASE("hnf frozen cases") {
  {
    HnfResult h = hnf(IntMatrix::identity(3));
    CHECK(h.H == IntMatrix::identity(3));
    CHECK(h.U == IntMatrix::identity(3));
  }
  {
    HnfResult h = hnf(IntMatrix{{2, 0}, {0, 2}});
    CHECK(h.H == IntMatrix{{2, 0}, {0, 2}});
    CHECK(h.U == IntMatrix::identity(2));
  }
  {
    IntMatrix m{{1, 2}, {3, 4}};
    HnfResult h = hnf(m);
    CHECK(h.H(0, 0) == 1);
    CHECK(h.H(1, 1) == 2);
    CHECK(det(h.H) == 2);
    CHECK(h.U * m == h.H);
    Int du = det(h.U);
    CHECK((du == 1 || du == -1));
    CHECK(is_hnf_shape(h.H));
  }
}

TEST_CASE("hnf properties on random input") {
  testhelp::Rng rng(4242);
  for (int iter = 0; iter < 120; ++iter) {
    int r = static_cast<int>(rng.uniform(1, 5));
    int c = static_cast<int>(rng.uniform(1, 4));
    IntMatrix m = testhelp::rand_matrix(rng, r, c, 9);
    HnfResult h = hnf(m);
    REQUIRE(h.U * m == h.H);
    Int du = det(h.U);
    REQUIRE((du == 1 || du == -1));
    REQUIRE(is_hnf_shape(h.H));
    HnfResult h2 = hnf(h.H);
    REQUIRE(h2.H == h.H);
    REQUIRE(h2.U == IntMatrix::identity(r));
    // Same row lattice under a unimodular change of generators: same basis.
    IntMatrix u = testhelp::rand_unimodular(rng, r, 8, 3);
    CHECK(hnf_basis(u * m) == hnf_basis(m));
  }
}

TEST_CASE("kernel_saturated") {
  {
    IntMatrix m(3, 1);
    m(0, 0) = 1;
    IntMatrix k = kernel_saturated(m);
    REQUIRE(k.rows == 2);
    for (int i = 0; i < 2; ++i) CHECK(k(i, 0) == 0);
    CHECK(rank(k) == 2);
  }
  {
    IntMatrix m(2, 1);
    m(0, 0) = 2;
    m(1, 0) = 2;
    IntMatrix k = kernel_saturated(m);
    REQUIRE(k.rows == 1);
    IntVector row = sign_normalized(k.row(0));
    CHECK(row == IntVector{Int(1), Int(-1)});
  }
  {
    IntMatrix m(3, 1);
    m(0, 0) = 1;
    m(1, 0) = 2;
    m(2, 0) = 3;
    IntMatrix k = kernel_saturated(m);
    REQUIRE(k.rows == 2);
    for (int i = 0; i < 2; ++i) CHECK(dot(k.row(i), IntVector{Int(1), Int(2), Int(3)}) == 0);
    // saturation: all elementary divisors of the basis are 1
    for (const Int& d : elementary_divisors(k)) CHECK(d == 1);
  }

  testhelp::Rng rng(9001);
  for (int iter = 0; iter < 80; ++iter) {
    int r = static_cast<int>(rng.uniform(1, 5));
    int c = static_cast<int>(rng.uniform(1, 4));
    IntMatrix m = testhelp::rand_matrix(rng, r, c, 7);
    IntMatrix k = kernel_saturated(m);
    CHECK(k.rows == r - rank(m));
    for (int i = 0; i < k.rows; ++i) {
      IntVector prod = k.row(i) * m;
      REQUIRE(is_zero(prod));
    }
    for (const Int& d : elementary_divisors(k)) REQUIRE(d == 1);
  }
}

TEST_CASE("snf frozen and properties") {
  {
    SnfResult s = snf(IntMatrix{{2, 0}, {0, 3}});
    CHECK(s.S == IntMatrix{{1, 0}, {0, 6}});
  }
  testhelp::Rng rng(31337);
  for (int iter = 0; iter < 80; ++iter) {
    int r = static_cast<int>(rng.uniform(1, 4));
    int c = static_cast<int>(rng.uniform(1, 4));
    IntMatrix m = testhelp::rand_matrix(rng, r, c, 8);
    SnfResult s = snf(m);
    REQUIRE(s.U * m * s.V == s.S);
    Int du = det(s.U), dv = det(s.V);
    REQUIRE((du == 1 || du == -1));
    REQUIRE((dv == 1 || dv == -1));
    int mm = std::min(r, c);
    for (int t = 0; t < mm; ++t) {
      REQUIRE(sgn(s.S(t, t)) >= 0);
      for (int j = 0; j < c; ++j)
        if (j != t) REQUIRE(s.S(t, j) == 0);
      if (t + 1 < mm && sgn(s.S(t + 1, t + 1)) != 0)
        REQUIRE(divides(s.S(t, t), s.S(t + 1, t + 1)));
    }
    if (r == c) {
      Int prod(1);
      for (int t = 0; t < r; ++t) prod *= s.S(t, t);
      Int d = det(m);
      REQUIRE(prod == abs(d));
    }
  }
}

TEST_CASE("lattice sum and intersection") {
  IntMatrix two = IntMatrix{{2, 0}, {0, 2}};
  IntMatrix three = IntMatrix{{3, 0}, {0, 3}};
  CHECK(lattice_intersection(two, three) == IntMatrix{{6, 0}, {0, 6}});
  CHECK(lattice_sum(two, three) == IntMatrix::identity(2));

  testhelp::Rng rng(555);
  for (int iter = 0; iter < 60; ++iter) {
    int n = static_cast<int>(rng.uniform(1, 3));
    IntMatrix a = testhelp::rand_matrix(rng, static_cast<int>(rng.uniform(1, 3)), n, 5);
    IntMatrix b = testhelp::rand_matrix(rng, static_cast<int>(rng.uniform(1, 3)), n, 5);
    IntMatrix cap = lattice_intersection(a, b);
    for (int i = 0; i < cap.rows; ++i) {
      REQUIRE(in_row_lattice(cap.row(i), a));
      REQUIRE(in_row_lattice(cap.row(i), b));
    }
    IntMatrix sum = lattice_sum(a, b);
    for (int i = 0; i < a.rows; ++i) REQUIRE(in_row_lattice(a.row(i), sum));
    for (int i = 0; i < b.rows; ++i) REQUIRE(in_row_lattice(b.row(i), sum));
  }
}

TEST_CASE("in_row_lattice coefficients") {
  IntMatrix b{{2, 1}, {0, 3}};
  IntVector v{Int(4), Int(8)};  // 2*(2,1) + 2*(0,3)
  IntVector coeffs;
  REQUIRE(in_row_lattice(v, b, &coeffs));
  CHECK(coeffs * b == v);
  CHECK_FALSE(in_row_lattice(IntVector{Int(1), Int(0)}, b));
}

TEST_CASE("rational_diagonalize") {
  {
    DiagResult d = rational_diagonalize(IntMatrix{{0, 1}, {1, 0}});
    REQUIRE(d.d.size() == 2);
    int pos = 0, neg = 0;
    for (const Rat& x : d.d) (sgn(x) > 0 ? pos : neg)++;
    CHECK(pos == 1);
    CHECK(neg == 1);
  }
  CHECK_THROWS_AS(rational_diagonalize(IntMatrix{{1, 1}, {1, 1}}), SingularError);

  IntMatrix a{{-1, -3, -1}, {-3, 14, 8}, {-1, 8, 11}};
  Signature s = signature(a);
  CHECK(s.positive == 2);
  CHECK(s.negative == 1);

  testhelp::Rng rng(2024);
  int done = 0;
  while (done < 60) {
    int n = static_cast<int>(rng.uniform(1, 4));
    IntMatrix m = testhelp::rand_symmetric(rng, n, 9);
    if (sgn(det(m)) == 0) continue;
    ++done;
    DiagResult d = rational_diagonalize(m);
    RatMatrix check = d.T * to_rat(m) * transpose(d.T);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        REQUIRE(check(i, j) == (i == j ? d.d[static_cast<size_t>(i)] : Rat(0)));
  }
}

TEST_CASE("positive definiteness") {
  CHECK(is_positive_definite(IntMatrix{{2, 1}, {1, 2}}));
  CHECK_FALSE(is_positive_definite(IntMatrix{{0, 1}, {1, 0}}));
  CHECK_FALSE(is_positive_definite(IntMatrix{{1, 1}, {1, 1}}));
  CHECK_FALSE(is_positive_definite(IntMatrix{{-2, 0}, {0, 3}}));
}

TEST_CASE("lll frozen cases") {
  {
    LllResult r = lll_reduce(IntMatrix{{1, 1000}, {1000, 1000001}});
    CHECK(r.G == to_rat(IntMatrix::identity(2)));
    CHECK(to_rat(r.U) * to_rat(IntMatrix{{1, 1000}, {1000, 1000001}}) *
              to_rat(transpose(r.U)) ==
          r.G);
  }
  {
    LllResult r = lll_reduce(IntMatrix{{4, 2}, {2, 4}});
    CHECK(r.G(0, 0) == 4);
    CHECK(r.G(1, 1) == 4);
    Rat off = r.G(0, 1);
    CHECK((off == 2 || off == -2));
  }
}

TEST_CASE("lll properties on random positive definite grams") {
  testhelp::Rng rng(86);
  for (int iter = 0; iter < 50; ++iter) {
    int n = static_cast<int>(rng.uniform(1, 5));
    IntMatrix g = testhelp::rand_pd_gram(rng, n, 5);
    LllResult r = lll_reduce(g);
    Int du = det(r.U);
    REQUIRE((du == 1 || du == -1));
    REQUIRE(to_rat(r.U) * to_rat(g) * to_rat(transpose(r.U)) == r.G);
    // reduction conditions
    auto gs = hyplat::detail::gram_schmidt(r.G);
    const Rat half(1, 2);
    const Rat delta(3, 4);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < i; ++j) REQUIRE(abs(gs.mu[i][j]) <= half);
    for (int k = 1; k < n; ++k)
      REQUIRE(gs.B[k] >= (delta - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.B[k - 1]);
  }
}
