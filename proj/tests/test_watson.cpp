#include <catch2/catch_amalgamated.hpp>

#include "hyplat/voronoi.hpp"
#include "hyplat/watson.hpp"

#include "oracles.hpp"

using namespace hyplat;

namespace {

IntMatrix hyper(int n) {
  IntMatrix A = IntMatrix::identity(n);
  A(0, 0) = -1;
  return A;
}

IntMatrix diag2(long a, long b) {
  IntMatrix m(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

// the recurring 4x4 with determinant -2^5 and discriminant group Z/32
const IntMatrix A32{{17, -17, 20, -9}, {-17, -25, 15, -6}, {20, 15, 4, -2}, {-9, -6, -2, 1}};

std::vector<Int> divisors_of(const IntMatrix& g) {
  SnfResult s = snf(g);
  std::vector<Int> d;
  for (int i = 0; i < g.rows; ++i) d.push_back(s.S(i, i));
  return d;
}

bool preserves_lattice(const IntMatrix& basis, const IntMatrix& g) {
  RatMatrix B = to_rat(basis);
  return is_integral(B * to_rat(g) * inverse(B));
}

}  // namespace

TEST_CASE("p-fillings of small diagonal forms") {
  LatticeInSpace f = p_filling(ambient_lattice(diag2(1, 4)), 2);
  CHECK(f.basis == IntMatrix{{2, 0}, {0, 1}});
  CHECK(f.scale == 2);
  CHECK(f.gram == IntMatrix::identity(2));

  // a block at level one must survive while the level-three block drops
  LatticeInSpace g = p_filling(ambient_lattice(diag2(2, 8)), 2);
  CHECK(g.gram == diag2(2, 2));
  CHECK(det(g.gram) == 4);

  // both levels at two fill simultaneously
  LatticeInSpace h = p_filling(ambient_lattice(diag2(4, 4)), 2);
  CHECK(h.gram == IntMatrix::identity(2));

  CHECK_THROWS_AS(p_filling(ambient_lattice(diag2(1, 2)), 2), NotFillableError);
  CHECK_THROWS_AS(p_filling(ambient_lattice(diag2(1, 2)), 3), NotFillableError);
  CHECK_THROWS_AS(p_filling(ambient_lattice(diag2(1, 4)), 1), Error);
}

TEST_CASE("watson reaches the squarefree fixed point") {
  WatsonResult triv = watson(hyper(2));
  CHECK(triv.chain.empty());
  CHECK(triv.W.basis == IntMatrix::identity(2));
  CHECK(triv.W.gram == hyper(2));
  CHECK(triv.W.scale == 1);

  WatsonResult one = watson(diag2(1, 4));
  REQUIRE(one.chain.size() == 1);
  CHECK(one.chain[0] == 2);
  CHECK(det(one.W.gram) == 1);

  // Z/32 steps down through Z/8 to Z/2: two fillings at 2
  CHECK(det(A32) == -32);
  LatticeInSpace mid = p_filling(ambient_lattice(A32), 2);
  CHECK(det(mid.gram) == -8);
  CHECK(divisors_of(mid.gram) == std::vector<Int>{1, 1, 1, 8});

  WatsonResult w = watson(A32);
  CHECK(w.chain == std::vector<Int>{2, 2});
  CHECK(w.W.scale == 4);
  CHECK(det(w.W.gram) == -2);
  CHECK(divisors_of(w.W.gram) == std::vector<Int>{1, 1, 1, 2});
  Signature sig = signature(w.W.gram);
  CHECK(sig.negative == 1);
  CHECK(sig.positive == 3);

  // defining invariant: basis * A * basis^tr = scale^2 * gram
  IntMatrix lhs = w.W.basis * A32 * transpose(w.W.basis);
  for (size_t i = 0; i < lhs.a.size(); ++i) CHECK(lhs.a[i] == w.W.scale * w.W.scale * w.W.gram.a[i]);
}

TEST_CASE("recover_aut returns stabilizer generators") {
  TraverseResult t3 = traverse(hyper(3));
  std::vector<IntMatrix> same =
      recover_aut(t3.frame, ambient_lattice(hyper(3)), t3.generators);
  CHECK(same == t3.generators);

  CHECK(recover_aut(t3.frame, ambient_lattice(hyper(3)), {}).empty());

  WatsonResult w = watson(A32);
  TraverseResult tw = traverse(w.W.gram);
  REQUIRE(tw.classes.size() == 2);
  TraverseResult td = traverse(A32);
  REQUIRE(td.classes.size() == 19);

  std::vector<IntMatrix> rec = recover_aut(td.frame, w.W, tw.generators);
  REQUIRE(!rec.empty());
  for (const IntMatrix& g : rec) {
    CHECK(g * A32 * transpose(g) == A32);
    Int d = det(g);
    CHECK((d == 1 || d == -1));
  }

  // index of the recovered group inside the Watson group
  RatMatrix B = to_rat(w.W.basis), Binv = inverse(B);
  std::vector<RatMatrix> acting;
  for (const IntMatrix& g : tw.generators) acting.push_back(Binv * to_rat(g) * B);
  OrbitResult orb = lattice_orbit(RatMatrix::identity(4), acting, 1L << 20);
  CHECK(orb.keys.size() == 24);

  CHECK_THROWS_AS(recover_aut(td.frame, w.W, tw.generators, 8), OrbitBudgetError);

  // the direct group embeds: every direct generator preserves the Watson
  // lattice, every recovered generator preserves the standard one
  for (const IntMatrix& g : td.generators) CHECK(preserves_lattice(w.W.basis, g));
}

TEST_CASE("random forms keep the watson invariants") {
  testhelp::Rng rng(0xacc01ade);
  int done = 0, compared = 0;
  while (done < 12) {
    int n = 3 + static_cast<int>(rng.uniform(0, 1));
    IntMatrix A = testhelp::rand_hyperbolic(rng, n, 6);
    WatsonResult w = watson(A);
    INFO("form " << to_string(A));

    CHECK(hyplat::detail::smallest_square_prime(divisors_of(w.W.gram).back()) == 0);

    Int da = det(A), dw = det(w.W.gram);
    CHECK(da % dw == 0);
    Int ratio = abs(exact_div(da, dw));
    CHECK(mpz_perfect_square_p(ratio.get_mpz_t()) != 0);
    for (const Int& p : w.chain)
      while (ratio % p == 0) ratio = exact_div(ratio, p);
    CHECK(ratio == 1);

    IntMatrix lhs = w.W.basis * A * transpose(w.W.basis);
    Int s2 = w.W.scale * w.W.scale;
    bool match = true;
    for (size_t i = 0; i < lhs.a.size(); ++i) match = match && lhs.a[i] == s2 * w.W.gram.a[i];
    CHECK(match);

    Signature sig = signature(w.W.gram);
    CHECK(sig.negative == 1);
    CHECK(sig.positive == n - 1);

    if (!w.chain.empty() && abs(da) <= 64) {
      TraverseResult tw = traverse(w.W.gram);
      TraverseResult td = traverse(A);
      std::vector<IntMatrix> rec = recover_aut(td.frame, w.W, tw.generators);
      for (const IntMatrix& g : rec) CHECK(g * A * transpose(g) == A);
      for (const IntMatrix& g : td.generators) CHECK(preserves_lattice(w.W.basis, g));
      compared++;
    }
    done++;
  }
  CHECK(compared > 0);
}
