#include "doctest.h"

#include <algorithm>

#include "bbreg/thetal.hpp"

using namespace bbreg;

namespace {

Tower tower_5(i64 h = 1) { return Tower(TowerSpec{-23, h, h == 1 ? std::vector<i64>{} : std::vector<i64>{h}, {5}}); }
Tower tower_5_11(i64 h = 1) { return Tower(TowerSpec{-23, h, h == 1 ? std::vector<i64>{} : std::vector<i64>{h}, {5, 11}}); }

std::map<i64, RingElem> random_units(Rng& rng, const Tower& tw, const CoeffRing& R) {
  std::map<i64, RingElem> u;
  for (i64 l : tw.primes()) {
    std::vector<i64> c((size_t)R.d());
    for (auto& x : c) x = rng.uniform(0, R.q() - 1);
    u.emplace(l, RingElem(R, std::move(c)));
  }
  return u;
}

MockEulerSystem zeroed(const MockEulerSystem& sys) {
  MockEulerSystem out = sys;
  for (i64 T : sys.tower().divisors(sys.top()))
    out = out.with_y(T, vecops::zero(sys.ring(), sys.rank_of(T)));
  return out;
}

}  // namespace

TEST_CASE("theta worked examples and coefficient structure") {
  Tower tw = tower_5_11(1);
  CoeffRing R = CoeffRing::zp(3, 2);
  Rng rng(1);
  MockEulerSystem sys = gen_system(2, tw, R, -1, random_units(rng, tw, R), 1, true);

  // level 1: theta = y_1 (x) 1 over the trivial group
  TensorElem t1 = theta(sys, 1);
  CHECK(t1.group().order() == 1);
  CHECK(t1.data() == sys.y(1));

  // coefficient of sigma in component i is sigma(y)[i]
  Group G5(tw, 5, GroupKind::G);
  GModule M5 = sys.module(5, G5);
  TensorElem t5 = theta(sys, 5);
  for (i64 e : {0, 1, 4}) {
    GroupElem s = G5.sigma(5, e);
    Vec sy = M5.act(s, sys.y(5));
    for (int i = 0; i < sys.rank_of(5); ++i)
      REQUIRE(t5.coeff(i, s) == vecops::get(R, sy, i));
  }

  // theta is exactly invariant under the diagonal group action
  TensorElem t5g = t5.embed_group(sys.gamma(5));
  CHECK(diag_act(sys, 5, sys.gamma(5).sigma(5), t5g) == t5g);
}

TEST_CASE("zeta: canonical lift, trivial bottom layer, star involution") {
  CoeffRing R = CoeffRing::zp(3, 2);
  Rng rng(2);

  // h = 1: zeta is theta viewed over Gamma
  Tower tw = tower_5_11(1);
  MockEulerSystem sys = gen_system(3, tw, R, 1, random_units(rng, tw, R), 1, true);
  CHECK(zeta(sys, 5) == theta(sys, 5).embed_group(sys.gamma(5)));

  // h = 2: canonical lift has two summands
  Tower t2 = tower_5(2);
  MockEulerSystem s2 = gen_system(3, t2, R, -1, random_units(rng, t2, R), 1, true);
  TensorElem th = theta(s2, 5).embed_group(s2.gamma(5));
  std::vector<GroupElem> lift = norm_lift(s2.gamma(5));
  REQUIRE(lift.size() == 2);
  TensorElem expect = diag_act(s2, 5, lift[0], th) + diag_act(s2, 5, lift[1], th);
  CHECK(zeta(s2, 5) == expect);
  CHECK(zeta_with_lift(s2, 5, lift) == zeta(s2, 5));

  // star is an involution on the group leg
  CHECK(zeta_star(s2, 5).star_group() == zeta(s2, 5));

  // zeta is exactly invariant under the full diagonal Gamma action
  for (const GroupElem& g : s2.gamma(5).generators())
    CHECK(diag_act(s2, 5, g, zeta(s2, 5)) == zeta(s2, 5));
}

TEST_CASE("moebius coefficients: augmentation and signs") {
  Tower tw = tower_5_11(1);
  CoeffRing R = CoeffRing::zp(3, 3);
  Rng rng(3);
  MockEulerSystem sys = gen_system(4, tw, R, 1, random_units(rng, tw, R), 1, false);

  auto [a1, a1s] = coefficients_aT(sys, 55, 1);
  CHECK(a1.aug() == RingElem::from_int(R, 72));  // mu(1) * 6 * 12
  CHECK(a1.terms().size() == 72);
  auto [a5, a5s] = coefficients_aT(sys, 55, 5);
  CHECK(a5.aug() == RingElem::from_int(R, -12));  // mu(5) = -1, |G_11| = 12
  CHECK(a5s.aug() == RingElem::from_int(R, 12));  // chi(5)mu(5) = +1
  auto [a55, a55s] = coefficients_aT(sys, 55, 55);
  CHECK(a55 == GroupRingElem::one(R, sys.gamma(55)));  // mu(55) = +1, trivial subgroup
  CHECK(a55s == a55);
  // starred coefficients always have +1 entries
  for (const auto& [idx, c] : a5s.terms()) REQUIRE(c == RingElem::one(R));

  // T = 1, S = 5: a_1 is the norm element
  auto [n1, n1s] = coefficients_aT(sys, 5, 1);
  CHECK(n1.terms().size() == 6);
  CHECK(n1.aug() == RingElem::from_int(R, 6));
}

TEST_CASE("embed and mu: inverse on one side, composition along chains") {
  Tower tw = tower_5_11(1);
  CoeffRing R = CoeffRing::zp(3, 2);
  Rng rng(4);
  MockEulerSystem sys = gen_system(5, tw, R, -1, random_units(rng, tw, R), 1, true);

  TensorElem z5 = zeta(sys, 5);
  TensorElem up = embed_tensor(sys, 5, 55, z5, 1);
  // mu is a left inverse of embed
  CHECK(mu_tensor(sys, 55, 5, up, 1) == z5);
  // embed composes along divisor chains
  TensorElem z1 = zeta(sys, 1);
  CHECK(embed_tensor(sys, 5, 55, embed_tensor(sys, 1, 5, z1, 1), 1) ==
        embed_tensor(sys, 1, 55, z1, 1));
  // mu composes along divisor chains on the L-value
  TensorElem L = l_function(sys, 55).value;
  CHECK(mu_tensor(sys, 5, 1, mu_tensor(sys, 55, 5, L, 2), 2) ==
        mu_tensor(sys, 55, 1, L, 2));
  // embed preserves rank of the span (injectivity on a basis)
  Group Gam5 = sys.gamma(5);
  std::vector<Vec> rows;
  for (int i = 0; i < 4; ++i) {
    TensorElem e = TensorElem::free_zero(R, Gam5, sys.rank_of(5));
    e.add_term(i, Gam5.sigma(5, i), RingElem::one(R));
    rows.push_back(embed_tensor(sys, 5, 55, e, 1).data());
  }
  RSpan sp(R, sys.rank_of(55) * (int)sys.gamma(55).order(), rows);
  CHECK(sp.log_order() == 4 * R.m());
}

TEST_CASE("L-function worked values") {
  Tower tw = tower_5_11(1);
  CoeffRing R = CoeffRing::zp(3, 2);
  Rng rng(5);
  MockEulerSystem sys = gen_system(6, tw, R, -1, random_units(rng, tw, R), 1, true);

  // S = 1: L = (y_1 (x) y_1) (x) 1
  LFunctionElement L1 = l_function(sys, 1);
  TensorElem y1t = theta(sys, 1).embed_group(sys.gamma(1));
  CHECK(L1.value == y1t.tensor(y1t));

  // zero system: L vanishes at every level
  MockEulerSystem z = zeroed(sys);
  CHECK(l_function(z, 55).value.is_zero());
  CHECK(l_function(z, 5).value.is_zero());

  // S = 5: direct assembly of the two factors from the definition
  TensorElem left = embed_tensor(sys, 1, 5, zeta(sys, 1), 1)
                        .mul_group_ring(coefficients_aT(sys, 5, 1).first);
  left = left + zeta(sys, 5).mul_group_ring(coefficients_aT(sys, 5, 5).first);
  TensorElem right = embed_tensor(sys, 1, 5, zeta_star(sys, 1), 1)
                         .mul_group_ring(coefficients_aT(sys, 5, 1).second);
  right = right + zeta_star(sys, 5).mul_group_ring(coefficients_aT(sys, 5, 5).second);
  CHECK(l_function(sys, 5).value == left.tensor(right));

  // custom coefficients defaulting to (a_T, a_T*) reproduce l_function
  std::map<i64, GroupRingElem> bl, br;
  for (i64 T : tw.divisors(5)) {
    auto [aT, aTs] = coefficients_aT(sys, 5, T);
    bl.emplace(T, aT);
    br.emplace(T, aTs);
  }
  CHECK(l_function_with(sys, 5, bl, br).value == l_function(sys, 5).value);
  bl.erase(1);
  CHECK_THROWS_AS(l_function_with(sys, 5, bl, br), missing_coefficients_error);
}

TEST_CASE("compatibility identity holds exactly across rings, seeds and levels") {
  Tower tw = tower_5_11(1);
  for (int m : {2, 3}) {
    CoeffRing R = CoeffRing::zp(3, m);
    for (u64 seed = 0; seed < 4; ++seed) {
      Rng rng(seed * 19 + (u64)m);
      MockEulerSystem sys =
          gen_system(seed, tw, R, seed % 2 == 0 ? 1 : -1, random_units(rng, tw, R),
                     1, true);
      TensorElem L = l_function(sys, 55).value;
      for (i64 T : {1, 5, 11, 55}) REQUIRE(compatibility_check(sys, 55, T, L));
    }
  }
  // nontrivial bottom layer
  Tower t2 = tower_5(2);
  CoeffRing R9 = CoeffRing::zp(3, 2);
  Rng rng(77);
  MockEulerSystem s2 = gen_system(8, t2, R9, -1, random_units(rng, t2, R9), 2, true);
  CHECK(compatibility_check(s2, 5, 1));
  CHECK(compatibility_check(s2, 5, 5));
}

TEST_CASE("the unit from the weight-12 coefficients kills the level-5 factor mod 9") {
  // u_5 = 3 in Z/9, so (1 + 5 - u)(1 + 5 + u) = 3 * 9 = 27 = 0 mod 9
  Tower tw = tower_5(1);
  CoeffRing R9 = CoeffRing::zp(3, 2);
  std::map<i64, RingElem> units;
  units.emplace(5, RingElem::from_int(R9, 3));
  MockEulerSystem sys = gen_system(12, tw, R9, -1, units, 1, true);
  RingElem f = euler_factor(sys, 5, 1);
  CHECK(f == RingElem::from_int(R9, 27));
  CHECK(f.is_zero());
  CHECK(mu_tensor(sys, 5, 1, l_function(sys, 5).value, 2).is_zero());
  CHECK(compatibility_check(sys, 5, 1));
}

TEST_CASE("vanishing report: zero system caps out, forced vanishing propagates") {
  Tower tw = tower_5(1);
  CoeffRing R = CoeffRing::zp(3, 1);
  Rng rng(6);
  MockEulerSystem base = gen_system(7, tw, R, -1, random_units(rng, tw, R), 1, true);

  VanishingReport zrep = vanishing_report(zeroed(base), 5, 2);
  CHECK(zrep.theta_order == FiltrationTable::default_depth);
  CHECK(zrep.l_order == FiltrationTable::default_depth);
  CHECK(zrep.theta_meets_rho);
  CHECK(zrep.l_meets_two_rho);

  // y_5 = (sigma - 1)^r x with the bottom element zeroed: theta has order >= r
  // and L has order >= 2r
  Group G5(tw, 5, GroupKind::G);
  GModule M5 = base.module(5, G5);
  for (int r = 1; r <= 3; ++r) {
    Rng rx(100 + (u64)r);
    Vec x((size_t)base.rank_of(5));
    for (auto& c : x) c = rx.uniform(0, R.q() - 1);
    Vec y = x;
    for (int i = 0; i < r; ++i) {
      Vec shifted = M5.act(G5.sigma(5), y);
      vecops::sub_in_place(R, shifted, y);
      y = std::move(shifted);
    }
    MockEulerSystem sys =
        base.with_y(1, vecops::zero(R, base.rank_of(1))).with_y(5, y);
    VanishingReport rep = vanishing_report(sys, 5, r);
    CHECK(rep.theta_order >= r);
    CHECK(rep.theta_meets_rho);
    CHECK(rep.zeta_order >= r);
    CHECK(rep.left_order >= r);
    CHECK(rep.l_order >= std::min(2 * r, FiltrationTable::default_depth));
    CHECK(rep.l_meets_two_rho);
  }
}

TEST_CASE("leading terms: graded level, residue invariance, level guard") {
  Tower tw = tower_5(1);
  CoeffRing R = CoeffRing::zp(3, 2);
  Rng rng(8);
  MockEulerSystem base = gen_system(9, tw, R, -1, random_units(rng, tw, R), 1, true);

  // generic system: order-0 leading term, diagonally invariant
  LeadingTermReport rep0 = leading_terms(base, 5, 0);
  CHECK(rep0.zeta_class.level == 0);
  CHECK(rep0.invariant_mod_p);

  // forced order: r = 2 leading term exists, r = 0,1 classes are zero classes
  Group G5(tw, 5, GroupKind::G);
  GModule M5 = base.module(5, G5);
  Vec x((size_t)base.rank_of(5));
  for (auto& c : x) c = rng.uniform(0, R.q() - 1);
  Vec y = x;
  for (int i = 0; i < 2; ++i) {
    Vec shifted = M5.act(G5.sigma(5), y);
    vecops::sub_in_place(R, shifted, y);
    y = std::move(shifted);
  }
  MockEulerSystem sys = base.with_y(1, vecops::zero(R, base.rank_of(1))).with_y(5, y);
  // the element lies in I^2, so asking for a lower level yields a zero class
  LeadingTermReport rep1 = leading_terms(sys, 5, 1);
  CHECK(rep1.zeta_class.is_zero_class());
  LeadingTermReport rep2 = leading_terms(sys, 5, 2);
  CHECK(rep2.invariant_mod_p);
  // not inside I^4: requesting that level throws
  VanishingReport vr = vanishing_report(sys, 5, 2);
  if (vr.zeta_order < 4) CHECK_THROWS_AS(leading_terms(sys, 5, 4), filtration_error);
}

TEST_CASE("rank profile case split") {
  RankProfile a = rank_profile(2, 1);
  CHECK(a.rho == 1);
  CHECK(a.rho_tilde == 3);
  CHECK(a.parity);
  RankProfile b = rank_profile(2, 2);
  CHECK(b.rho == 2);
  CHECK(b.rho_tilde == 4);
  CHECK_FALSE(b.parity);
  RankProfile c = rank_profile(0, 1);
  CHECK(c.rho == 0);
  CHECK(c.rho_tilde == 1);
  CHECK(c.parity);
  CHECK_THROWS(rank_profile(-1, 0));
}
