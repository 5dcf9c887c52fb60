#include "doctest.h"

#include "bbreg/groupring.hpp"

using namespace bbreg;

namespace {

Tower tower23(std::vector<i64> primes, i64 h = 1, std::vector<i64> g1 = {}) {
  return Tower(TowerSpec{-23, h, std::move(g1), std::move(primes)});
}

// cyclic group of order n realized inside a tower: n = l + 1 uses the prime
// slot, otherwise a gamma1 factor of order n
Group cyclic_g5(const Tower& tw) { return Group(tw, 5, GroupKind::G); }

GroupRingElem sparse_random(const CoeffRing& R, const Group& G, Rng& rng, int terms) {
  GroupRingElem a(R, G);
  for (int t = 0; t < terms; ++t)
    a.add_term(G.elem_at(rng.uniform(0, G.order() - 1)),
               RingElem::from_int(R, rng.uniform(0, R.q() - 1)));
  return a;
}

// independent oracle: I^r as the span of all r-fold products of augmentation
// generators (g - 1), enumerated over every tuple of group elements
RSpan brute_power(const CoeffRing& R, const Group& G, int r) {
  std::vector<Vec> rows;
  const i64 n = G.order();
  std::vector<i64> tup((size_t)r, 0);
  while (true) {
    ZGroupRingElem prod = ZGroupRingElem::one(G);
    for (i64 i : tup) {
      ZGroupRingElem f = ZGroupRingElem::of(G, G.elem_at(i));
      f.add_term(G.identity(), -1);
      prod = prod * f;
    }
    rows.push_back(prod.to_ring(R).dense());
    int k = r - 1;
    while (k >= 0 && tup[(size_t)k] == n - 1) tup[(size_t)k--] = 0;
    if (k < 0) break;
    ++tup[(size_t)k];
  }
  return RSpan(R, (int)n, rows);
}

}  // namespace

TEST_CASE("group-ring arithmetic basics") {
  Tower tw = tower23({5});
  Group G = cyclic_g5(tw);
  CoeffRing R = CoeffRing::zp(3, 2);
  GroupRingElem one = GroupRingElem::one(R, G);
  GroupRingElem s = GroupRingElem::of(R, G, G.sigma(5));
  CHECK((s * s).coeff(G.sigma(5, 2)) == RingElem::one(R));
  CHECK((s - s).is_zero());
  CHECK(s * one == s);
  // sigma^6 = 1
  GroupRingElem p = one;
  for (int i = 0; i < 6; ++i) p = p * s;
  CHECK(p == one);
  // distributivity on random elements
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    GroupRingElem a = sparse_random(R, G, rng, 3);
    GroupRingElem b = sparse_random(R, G, rng, 3);
    GroupRingElem c = sparse_random(R, G, rng, 3);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a * b).aug() == a.aug() * b.aug());
  }
}

TEST_CASE("augmentation of a weighted sum: sum i*sigma^i over Z/9") {
  Tower tw = tower23({5});
  Group G = cyclic_g5(tw);
  ZGroupRingElem D(G);
  for (i64 i = 1; i <= 5; ++i) D.add_term(G.sigma(5, i), i);
  CHECK(D.aug() == 15);
  CoeffRing R = CoeffRing::zp(3, 2);
  CHECK(D.to_ring(R).aug() == RingElem::from_int(R, 6));
}

TEST_CASE("star is the coefficient-preserving inversion involution") {
  Tower tw = tower23({5, 11}, 2, {2});
  Group G(tw, 55, GroupKind::Gamma);
  CoeffRing R = CoeffRing::zp(3, 2);
  Rng rng(4);
  for (int t = 0; t < 10; ++t) {
    GroupRingElem a = sparse_random(R, G, rng, 4);
    GroupRingElem b = sparse_random(R, G, rng, 4);
    CHECK(a.star().star() == a);
    CHECK((a * b).star() == a.star() * b.star());
    CHECK(a.star().aug() == a.aug());
  }
  GroupElem g = G.elem_at(rng.uniform(0, G.order() - 1));
  CHECK(GroupRingElem::of(R, G, g).star() == GroupRingElem::of(R, G, G.inv(g)));
}

TEST_CASE("dense round trip") {
  Tower tw = tower23({5});
  Group G = cyclic_g5(tw);
  CoeffRing R = CoeffRing::galois(3, 2, 2);
  Rng rng(7);
  for (int t = 0; t < 10; ++t) {
    GroupRingElem a = sparse_random(R, G, rng, 4);
    CHECK(GroupRingElem::from_dense(R, G, a.dense()) == a);
  }
}

TEST_CASE("filtration matches brute-force powers on small groups") {
  CoeffRing R9 = CoeffRing::zp(3, 2);
  // order 2 (p does not divide |G|), order 6 = G_5, order 4
  struct Case {
    Tower tw;
    Group g;
  };
  std::vector<Case> cases;
  {
    Tower tw = tower23({5}, 2, {2});
    cases.push_back({tw, Group(tw, 1, GroupKind::Gamma)});  // Z/2
    cases.push_back({tw, Group(tw, 5, GroupKind::G)});      // Z/6
  }
  {
    Tower tw = tower23({5}, 4, {4});
    cases.push_back({tw, Group(tw, 1, GroupKind::Gamma)});  // Z/4
  }
  {
    Tower tw = tower23({5}, 9, {3, 3});
    cases.push_back({tw, Group(tw, 1, GroupKind::Gamma)});  // Z/3 x Z/3
  }
  for (const auto& cs : cases) {
    FiltrationTable filt(cs.g, R9, 4);
    for (int r = 1; r <= 4; ++r) {
      RSpan oracle = brute_power(R9, cs.g, r);
      REQUIRE(filt.basis(r).same_span(oracle));
    }
  }
}

TEST_CASE("filtration for p prime to |G| stabilizes immediately: I^1 = I^2") {
  Tower tw = tower23({5}, 2, {2});
  Group G(tw, 1, GroupKind::Gamma);  // Z/2, p = 3
  FiltrationTable filt(G, CoeffRing::zp(3, 2));
  CHECK(filt.stable_from() == 1);
  CHECK(filt.basis(1).same_span(filt.basis(8)));
}

TEST_CASE("first filtration step is the augmentation kernel") {
  CoeffRing R = CoeffRing::galois(3, 2, 2);
  Tower tw = tower23({5});
  Group G = cyclic_g5(tw);
  FiltrationTable filt(G, R, 3);
  // log_p order of ker(aug) = (|G| - 1) * m * d
  CHECK(filt.basis(1).log_order() == (6 - 1) * 2 * 2);
  // elements with zero augmentation, built directly, are members
  Rng rng(3);
  for (int t = 0; t < 30; ++t) {
    GroupRingElem a = sparse_random(R, G, rng, 4);
    a.add_term(G.identity(), -a.aug());
    REQUIRE(a.aug().is_zero());
    REQUIRE(filt.basis(1).contains(a.dense()));
  }
  // and a unit-augmentation element is not
  CHECK_FALSE(filt.basis(1).contains(GroupRingElem::one(R, G).dense()));
}

TEST_CASE("filtration levels are nested and G_5 over Z/9 decreases strictly early") {
  CoeffRing R = CoeffRing::zp(3, 2);
  Tower tw = tower23({5});
  Group G = cyclic_g5(tw);
  FiltrationTable filt(G, R, 6);
  for (int r = 0; r < 6; ++r) {
    for (const auto& row : filt.basis(r + 1).scalar_form().rows)
      REQUIRE(filt.basis(r).contains(row));
    REQUIRE(filt.basis(r + 1).log_order() <= filt.basis(r).log_order());
  }
  CHECK(filt.basis(1).log_order() < filt.basis(0).log_order());
  CHECK(filt.basis(2).log_order() < filt.basis(1).log_order());
}

TEST_CASE("size cap is enforced") {
  Tower tw = tower23({5, 11, 17}, 2, {2});
  Group big(tw, 5 * 11 * 17, GroupKind::Gamma);  // order 2592
  CHECK_THROWS_AS(FiltrationTable(big, CoeffRing::zp(3, 2)), size_cap_error);
}

TEST_CASE("vanishing order worked examples") {
  Tower tw = tower23({5});
  Group G = cyclic_g5(tw);
  CoeffRing R = CoeffRing::zp(3, 2);
  auto filt = build_filtration(G, R, 6);

  // sigma - 1 has order exactly 1
  TensorElem t1 = TensorElem::free_zero(R, G, 1);
  t1.add_term(0, G.sigma(5), RingElem::one(R));
  t1.add_term(0, G.identity(), -RingElem::one(R));
  CHECK(vanishing_order(t1, *filt, 6) == 1);

  // the norm over Z/3 with m = 1: N = (sigma-1)^2 has order exactly 2
  Tower tw3 = tower23({5}, 3, {3});
  Group Z3(tw3, 1, GroupKind::Gamma);
  CoeffRing F3 = CoeffRing::zp(3, 1);
  auto filt3 = build_filtration(Z3, F3, 6);
  TensorElem norm = TensorElem::free_zero(F3, Z3, 1);
  for (i64 i = 0; i < 3; ++i) norm.add_term(0, Z3.elem_at(i), RingElem::one(F3));
  CHECK(vanishing_order(norm, *filt3, 6) == 2);

  // zero element saturates the requested bound
  CHECK(vanishing_order(TensorElem::free_zero(R, G, 1), *filt, 6) == 6);
}

TEST_CASE("vanishing order uses per-component quotient membership") {
  Tower tw = tower23({5});
  Group G = cyclic_g5(tw);
  CoeffRing R = CoeffRing::zp(3, 2);
  auto filt = build_filtration(G, R, 4);
  // M = R/3 + R: the constant 3 is nonzero in R but vanishes in R/3,
  // so the order is decided by the second component alone
  TensorElem t(R, G, {1, 2});
  t.add_term(0, G.identity(), RingElem::from_int(R, 3));
  t.add_term(1, G.sigma(5), RingElem::one(R));
  t.add_term(1, G.identity(), -RingElem::one(R));
  CHECK(vanishing_order(t, *filt, 4) == 1);
  // the same data viewed in the free module R^2 has order 0
  TensorElem tf(R, G, {2, 2});
  tf.data() = t.data();
  CHECK(vanishing_order(tf, *filt, 4) == 0);
}

TEST_CASE("graded classes: sigma - 1 and sigma^{-1} - 1 are negatives at level 1") {
  Tower tw = tower23({5});
  Group G = cyclic_g5(tw);
  CoeffRing R = CoeffRing::zp(3, 2);
  auto filt = build_filtration(G, R, 6);
  TensorElem a = TensorElem::free_zero(R, G, 1);
  a.add_term(0, G.sigma(5), RingElem::one(R));
  a.add_term(0, G.identity(), -RingElem::one(R));
  TensorElem b = TensorElem::free_zero(R, G, 1);
  b.add_term(0, G.sigma(5, 5), RingElem::one(R));
  b.add_term(0, G.identity(), -RingElem::one(R));
  GradedClass ca = leading_term(a, 1, filt);
  GradedClass cb = leading_term(b, 1, filt);
  CHECK_FALSE(graded_eq(ca, cb));
  CHECK(graded_eq(ca, graded_scale(cb, -RingElem::one(R))));
  CHECK_FALSE(ca.is_zero_class());
}

TEST_CASE("graded product adds levels and matches expansion") {
  Tower tw = tower23({5});
  Group G = cyclic_g5(tw);
  CoeffRing R = CoeffRing::zp(3, 2);
  auto filt = build_filtration(G, R, 6);
  TensorElem a = TensorElem::free_zero(R, G, 1);
  a.add_term(0, G.sigma(5), RingElem::one(R));
  a.add_term(0, G.identity(), -RingElem::one(R));
  GradedClass ca = leading_term(a, 1, filt);
  GradedClass sq = graded_mul(ca, ca);
  CHECK(sq.level == 2);
  // (sigma-1)^2 expanded by hand
  TensorElem e = TensorElem::free_zero(R, G, 1);
  e.add_term(0, G.sigma(5, 2), RingElem::one(R));
  e.add_term(0, G.sigma(5), RingElem::from_int(R, -2));
  e.add_term(0, G.identity(), RingElem::one(R));
  CHECK(graded_eq(sq, leading_term(e, 2, filt)));
}

TEST_CASE("leading_term rejects elements outside the level") {
  Tower tw = tower23({5});
  Group G = cyclic_g5(tw);
  CoeffRing R = CoeffRing::zp(3, 2);
  auto filt = build_filtration(G, R, 4);
  TensorElem one = TensorElem::free_zero(R, G, 1);
  one.add_term(0, G.identity(), RingElem::one(R));
  CHECK_THROWS_AS(leading_term(one, 1, filt), filtration_error);
}

TEST_CASE("tensor of rank-1 legs is the group-ring product") {
  Tower tw = tower23({5});
  Group G = cyclic_g5(tw);
  CoeffRing R = CoeffRing::zp(3, 2);
  Rng rng(21);
  for (int t = 0; t < 10; ++t) {
    GroupRingElem a = sparse_random(R, G, rng, 3);
    GroupRingElem b = sparse_random(R, G, rng, 3);
    TensorElem ta = TensorElem::free_zero(R, G, 1);
    ta.set_component(0, a.dense());
    TensorElem tb = TensorElem::free_zero(R, G, 1);
    tb.set_component(0, b.dense());
    CHECK(ta.tensor(tb).component(0) == (a * b).dense());
  }
}

TEST_CASE("tensor shapes: ranks multiply, exponents take minima") {
  Tower tw = tower23({5});
  Group G = cyclic_g5(tw);
  CoeffRing R = CoeffRing::zp(3, 2);
  TensorElem a(R, G, {1, 2});
  TensorElem b(R, G, {2});
  a.add_term(1, G.sigma(5), RingElem::one(R));
  b.add_term(0, G.sigma(5, 2), RingElem::from_int(R, 4));
  TensorElem c = a.tensor(b);
  CHECK(c.exps() == std::vector<int>{1, 2});
  CHECK(c.coeff(1, G.sigma(5, 3)) == RingElem::from_int(R, 4));
  CHECK(c.component(0) == vecops::zero(R, (int)G.order()));
}

TEST_CASE("group-leg operations: shift, action, projection, embedding") {
  Tower tw = tower23({5, 11});
  Group G55(tw, 55, GroupKind::G);
  Group G5(tw, 5, GroupKind::G);
  CoeffRing R = CoeffRing::zp(3, 2);
  Rng rng(31);
  TensorElem t = TensorElem::free_zero(R, G55, 2);
  for (int k = 0; k < 8; ++k)
    t.add_term((int)rng.uniform(0, 1), G55.elem_at(rng.uniform(0, 71)),
               RingElem::from_int(R, rng.uniform(0, 8)));

  // shifting by sigma then sigma^{-1} is the identity
  GroupElem s = G55.sigma(11, 4);
  CHECK(t.mul_group(s).mul_group(G55.inv(s)) == t);

  // mul_group_ring is multiplicative
  GroupRingElem a = sparse_random(R, G55, rng, 3);
  GroupRingElem b = sparse_random(R, G55, rng, 3);
  CHECK(t.mul_group_ring(a).mul_group_ring(b) == t.mul_group_ring(a * b));

  // star on the leg matches termwise inversion
  TensorElem st = t.star_group();
  for (i64 i = 0; i < 72; ++i)
    REQUIRE(st.coeff(0, G55.inv(G55.elem_at(i))) == t.coeff(0, G55.elem_at(i)));

  // projecting the full group sum collapses each fiber (size 12)
  TensorElem full = TensorElem::free_zero(R, G55, 1);
  for (i64 i = 0; i < 72; ++i) full.add_term(0, G55.elem_at(i), RingElem::one(R));
  TensorElem proj = full.project_group(G5);
  for (i64 i = 0; i < 6; ++i)
    REQUIRE(proj.coeff(0, G5.elem_at(i)) == RingElem::from_int(R, 12));

  // embed then project recovers the original
  TensorElem small = TensorElem::free_zero(R, G5, 1);
  for (int k = 0; k < 4; ++k)
    small.add_term(0, G5.elem_at(rng.uniform(0, 5)), RingElem::from_int(R, rng.uniform(0, 8)));
  CHECK(small.embed_group(G55).project_group(G5) == small);
}
