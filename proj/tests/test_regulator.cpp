#include "bbreg/regulator.hpp"

#include "bbreg/thetal.hpp"
#include "doctest.h"

using namespace bbreg;

namespace {

Tower tower_5(i64 h = 1) {
  TowerSpec sp;
  sp.disc = -23;
  sp.h_k = h;
  if (h > 1) sp.gamma1 = {h};
  sp.primes = {5};
  return Tower(sp);
}

Tower tower_5_11(i64 h = 1) {
  TowerSpec sp;
  sp.disc = -23;
  sp.h_k = h;
  if (h > 1) sp.gamma1 = {h};
  sp.primes = {5, 11};
  return Tower(sp);
}

RingElem random_elem(Rng& rng, const CoeffRing& R) {
  std::vector<i64> c(R.d());
  for (auto& x : c) x = rng.uniform(0, R.q() - 1);
  return RingElem(R, std::move(c));
}

RVec random_rvec(Rng& rng, const CoeffRing& R, int n) {
  RVec v;
  v.reserve(n);
  for (int i = 0; i < n; ++i) v.push_back(random_elem(rng, R));
  return v;
}

MockPairing random_pairing(Rng& rng, const CoeffRing& R, const Tower& tw, i64 S,
                           int n) {
  MockPairing pair{R, {}, {}};
  for (int i = 0; i < n; ++i) pair.form.push_back(random_rvec(rng, R, n));
  for (i64 ell : tw.primes())
    if (S % ell == 0) pair.weights.emplace(ell, random_elem(rng, R));
  return pair;
}

LatticePair random_lattice(Rng& rng, const CoeffRing& R, int rho, int n) {
  LatticePair lat{{}, {}, RingElem::one(R), RingElem::one(R)};
  for (int i = 0; i < rho; ++i) {
    lat.a_rows.push_back(random_rvec(rng, R, n));
    lat.b_rows.push_back(random_rvec(rng, R, n));
  }
  return lat;
}

GradedClass entry_class(const CoeffRing& R, FiltrationPtr filt,
                        const GroupElem& sigma, const RingElem& x) {
  TensorElem rep(R, filt->group(), {R.m()});
  rep.add_term(0, sigma, x);
  rep.add_term(0, filt->group().identity(), -x);
  return GradedClass{std::move(filt), 1, std::move(rep)};
}

}  // namespace

TEST_CASE("pairing values are weighted depth-one augmentation classes") {
  Tower tw = tower_5();
  CoeffRing R = CoeffRing::zp(3, 2);
  Group gam(tw, 5, GroupKind::Gamma);
  auto filt = build_filtration(gam, R);

  MockPairing pair{R, {{RingElem::one(R)}}, {{5, RingElem::one(R)}}};
  RVec e1{RingElem::one(R)};
  GradedClass v = pairing_value(pair, tw, 5, filt, e1, e1);
  CHECK(v.level == 1);
  CHECK(v.rep.coeff(0, gam.sigma(5)) == RingElem::one(R));
  CHECK(v.rep.coeff(0, gam.identity()) == -RingElem::one(R));
  CHECK_FALSE(v.is_zero_class());

  SUBCASE("bilinearity in each slot") {
    Rng rng(11);
    MockPairing p2 = random_pairing(rng, R, tw, 5, 3);
    RVec x = random_rvec(rng, R, 3), xp = random_rvec(rng, R, 3),
         y = random_rvec(rng, R, 3);
    RVec xs = x;
    for (int i = 0; i < 3; ++i) xs[i] = xs[i] + xp[i];
    TensorElem lhs = pairing_value(p2, tw, 5, filt, xs, y).rep;
    TensorElem rhs = pairing_value(p2, tw, 5, filt, x, y).rep +
                     pairing_value(p2, tw, 5, filt, xp, y).rep;
    CHECK(lhs == rhs);
  }

  SUBCASE("zero form gives the zero matrix") {
    MockPairing zf{R,
                   {{RingElem::zero(R), RingElem::zero(R)},
                    {RingElem::zero(R), RingElem::zero(R)}},
                   {{5, RingElem::one(R)}}};
    Rng rng(3);
    LatticePair lat = random_lattice(rng, R, 2, 2);
    auto mx = pairing_matrix(zf, tw, 5, filt, lat);
    for (const auto& row : mx)
      for (const auto& e : row) CHECK(e.rep.is_zero());
  }

  SUBCASE("symmetric form with equal bases gives a symmetric matrix") {
    Rng rng(4);
    MockPairing sf = random_pairing(rng, R, tw, 5, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < i; ++j) sf.form[i][j] = sf.form[j][i];
    LatticePair lat = random_lattice(rng, R, 3, 3);
    lat.b_rows = lat.a_rows;
    auto mx = pairing_matrix(sf, tw, 5, filt, lat);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(graded_eq(mx[i][j], mx[j][i]));
  }

  SUBCASE("missing weight for a level prime throws") {
    MockPairing bad{R, {{RingElem::one(R)}}, {}};
    CHECK_THROWS_AS(t_element(bad, tw, 5), missing_coefficients_error);
  }
}

TEST_CASE("level lowering of pairing values matches the lower-level pairing") {
  Tower tw = tower_5_11();
  for (int m : {2, 3}) {
    CoeffRing R = CoeffRing::zp(3, m);
    Group gam_s(tw, 55, GroupKind::Gamma);
    auto filt_s = build_filtration(gam_s, R);
    Rng rng(100 + m);
    MockPairing pair = random_pairing(rng, R, tw, 55, 2);
    RVec x = random_rvec(rng, R, 2), y = random_rvec(rng, R, 2);
    GradedClass top = pairing_value(pair, tw, 55, filt_s, x, y);
    for (i64 T : {1LL, 5LL, 11LL, 55LL}) {
      Group gam_t(tw, T, GroupKind::Gamma);
      auto filt_t = build_filtration(gam_t, R);
      GradedClass down = mu_class(top, gam_t, filt_t);
      GradedClass direct = pairing_value(pair, tw, T, filt_t, x, y);
      CHECK(down.rep == direct.rep);
    }
  }
}

TEST_CASE("graded determinant worked values") {
  Tower tw = tower_5();
  CoeffRing R = CoeffRing::zp(3, 2);
  Group gam(tw, 5, GroupKind::Gamma);
  auto filt = build_filtration(gam, R);
  GroupElem s = gam.sigma(5);

  SUBCASE("1 x 1 determinant is the entry") {
    GradedClass e = entry_class(R, filt, s, RingElem::from_int(R, 4));
    GradedClass d = graded_det({{e}}, filt);
    CHECK(d.level == 1);
    CHECK(d.rep == e.rep);
  }

  SUBCASE("repeated rows give the zero class") {
    Rng rng(7);
    std::vector<GradedClass> row{
        entry_class(R, filt, s, random_elem(rng, R)),
        entry_class(R, filt, s, random_elem(rng, R))};
    GradedClass d = graded_det({row, row}, filt);
    CHECK(d.rep.is_zero());
  }

  SUBCASE("2 x 2 expansion against the cofactor oracle") {
    RingElem x11 = RingElem::from_int(R, 2), x12 = RingElem::from_int(R, 5),
             x21 = RingElem::from_int(R, 7), x22 = RingElem::from_int(R, 4);
    GradedClass d = graded_det({{entry_class(R, filt, s, x11),
                                 entry_class(R, filt, s, x12)},
                                {entry_class(R, filt, s, x21),
                                 entry_class(R, filt, s, x22)}},
                               filt);
    RingElem c = x11 * x22 - x12 * x21;
    TensorElem expected(R, gam, {R.m()});
    expected.add_term(0, gam.sigma(5, 2), c);
    expected.add_term(0, s, RingElem::from_int(R, -2) * c);
    expected.add_term(0, gam.identity(), c);
    CHECK(d.level == 2);
    CHECK(d.rep == expected);
  }

  SUBCASE("empty matrix gives the class of one") {
    GradedClass d = graded_det({}, filt);
    CHECK(d.level == 0);
    CHECK(d.rep.coeff(0, gam.identity()) == RingElem::one(R));
  }

  SUBCASE("oversized matrices are rejected") {
    std::vector<std::vector<GradedClass>> mx(
        7, std::vector<GradedClass>(7, entry_class(R, filt, s, RingElem::one(R))));
    CHECK_THROWS_AS(graded_det(mx, filt), size_cap_error);
  }
}

TEST_CASE("graded determinant is multilinear and alternating") {
  Tower tw = tower_5_11();
  CoeffRing R = CoeffRing::zp(3, 2);
  Group gam(tw, 55, GroupKind::Gamma);
  auto filt = build_filtration(gam, R);
  auto random_entry = [&](Rng& rng) {
    TensorElem rep(R, gam, {R.m()});
    for (i64 ell : {5LL, 11LL}) {
      RingElem c = random_elem(rng, R);
      rep.add_term(0, gam.sigma(ell), c);
      rep.add_term(0, gam.identity(), -c);
    }
    return GradedClass{filt, 1, std::move(rep)};
  };
  for (int n : {2, 3}) {
    for (u64 seed = 0; seed < 4; ++seed) {
      Rng rng(seed * 10 + n);
      std::vector<std::vector<GradedClass>> mx;
      for (int i = 0; i < n; ++i) {
        std::vector<GradedClass> row;
        for (int j = 0; j < n; ++j) row.push_back(random_entry(rng));
        mx.push_back(std::move(row));
      }
      GradedClass d = graded_det(mx, filt);

      // swapping two rows negates the determinant
      auto swapped = mx;
      std::swap(swapped[0], swapped[1]);
      CHECK(graded_eq(graded_det(swapped, filt),
                      graded_scale(d, RingElem::from_int(R, -1))));

      // scaling one row scales the determinant
      RingElem sc = random_elem(rng, R);
      auto scaled = mx;
      for (auto& e : scaled[0]) e = graded_scale(e, sc);
      CHECK(graded_eq(graded_det(scaled, filt), graded_scale(d, sc)));

      // additivity in one row
      std::vector<GradedClass> extra;
      for (int j = 0; j < n; ++j) extra.push_back(random_entry(rng));
      auto summed = mx;
      for (int j = 0; j < n; ++j)
        summed[0][j] = graded_add(mx[0][j], extra[j]);
      auto alt = mx;
      alt[0] = extra;
      GradedClass expect = graded_add(graded_det(mx, filt), graded_det(alt, filt));
      CHECK(graded_eq(graded_det(summed, filt), expect));
    }
  }
}

TEST_CASE("graded determinant ignores depth-two perturbations of entries") {
  Tower tw = tower_5_11();
  CoeffRing R = CoeffRing::zp(3, 2);
  Group gam(tw, 55, GroupKind::Gamma);
  auto filt = build_filtration(gam, R);
  Rng rng(42);
  auto aug_zero = [&]() {
    GroupRingElem g(R, gam);
    for (i64 ell : {5LL, 11LL}) {
      RingElem c = random_elem(rng, R);
      g.add_term(gam.sigma(ell), c);
      g.add_term(gam.identity(), -c);
    }
    return g;
  };
  auto random_entry = [&]() {
    TensorElem rep(R, gam, {R.m()});
    GroupRingElem g = aug_zero();
    Vec dense = g.dense();
    rep.set_component(0, dense);
    return GradedClass{filt, 1, std::move(rep)};
  };
  int checked = 0;
  for (int trial = 0; trial < 25 && checked < 100; ++trial) {
    std::vector<std::vector<GradedClass>> mx;
    for (int i = 0; i < 2; ++i) {
      std::vector<GradedClass> row;
      for (int j = 0; j < 2; ++j) row.push_back(random_entry());
      mx.push_back(std::move(row));
    }
    GradedClass d = graded_det(mx, filt);
    for (int k = 0; k < 4; ++k, ++checked) {
      // perturb one entry by a product of two augmentation-zero elements
      GroupRingElem pert = aug_zero() * aug_zero();
      auto bumped = mx;
      int i = k / 2, j = k % 2;
      TensorElem rep = bumped[i][j].rep;
      rep.set_component(0, (GroupRingElem::from_dense(R, gam, rep.component(0)) + pert).dense());
      bumped[i][j] = GradedClass{filt, 1, std::move(rep)};
      CHECK(graded_eq(graded_det(bumped, filt), d));
    }
  }
  CHECK(checked == 100);
}

TEST_CASE("regulator worked values and basis invariance") {
  Tower tw = tower_5();
  CoeffRing R = CoeffRing::zp(3, 2);
  Group gam(tw, 5, GroupKind::Gamma);
  auto filt = build_filtration(gam, R);

  SUBCASE("rank one: the empty minor contributes the class of one") {
    Rng rng(1);
    MockPairing pair = random_pairing(rng, R, tw, 5, 2);
    LatticePair lat = random_lattice(rng, R, 1, 2);
    GradedClass reg = regulator(pair, tw, 5, filt, lat);
    CHECK(reg.level == 0);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        CHECK(reg.rep.coeff(a * 2 + b, gam.identity()) ==
              lat.a_rows[0][a] * lat.b_rows[0][b]);
  }

  SUBCASE("zero pairing with rank two gives zero") {
    Rng rng(2);
    MockPairing pair = random_pairing(rng, R, tw, 5, 2);
    for (auto& row : pair.form)
      for (auto& x : row) x = RingElem::zero(R);
    LatticePair lat = random_lattice(rng, R, 2, 2);
    CHECK(regulator(pair, tw, 5, filt, lat).rep.is_zero());
  }

  SUBCASE("rank two diagonal pairing against the cofactor expansion") {
    RingElem d1 = RingElem::from_int(R, 2), d2 = RingElem::from_int(R, 7);
    MockPairing pair{R,
                     {{d1, RingElem::zero(R)}, {RingElem::zero(R), d2}},
                     {{5, RingElem::one(R)}}};
    LatticePair lat{{{RingElem::one(R), RingElem::zero(R)},
                     {RingElem::zero(R), RingElem::one(R)}},
                    {{RingElem::one(R), RingElem::zero(R)},
                     {RingElem::zero(R), RingElem::one(R)}},
                    RingElem::one(R),
                    RingElem::one(R)};
    GradedClass reg = regulator(pair, tw, 5, filt, lat);
    CHECK(reg.level == 1);
    // component (0,0) carries <P2,Q2> = d2 * t, component (1,1) carries d1 * t
    CHECK(reg.rep.coeff(0, gam.sigma(5)) == d2);
    CHECK(reg.rep.coeff(3, gam.sigma(5)) == d1);
    CHECK(reg.rep.coeff(3, gam.identity()) == -d1);
    CHECK(reg.rep.coeff(1, gam.sigma(5)) == RingElem::zero(R));
    CHECK(reg.rep.coeff(2, gam.sigma(5)) == RingElem::zero(R));
  }

  SUBCASE("unimodular change of the B-basis leaves the regulator class fixed") {
    Rng rng(5);
    MockPairing pair = random_pairing(rng, R, tw, 5, 2);
    LatticePair lat = random_lattice(rng, R, 2, 2);
    GradedClass reg = regulator(pair, tw, 5, filt, lat);
    for (int trial = 0; trial < 5; ++trial) {
      // random 2x2 transform with unit determinant
      RMat u;
      RingElem det = RingElem::zero(R);
      do {
        u = {random_rvec(rng, R, 2), random_rvec(rng, R, 2)};
        det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
      } while (!det.is_unit());
      LatticePair moved = lat;
      for (int j = 0; j < 2; ++j) {
        moved.b_rows[0][j] = u[0][0] * lat.b_rows[0][j] + u[0][1] * lat.b_rows[1][j];
        moved.b_rows[1][j] = u[1][0] * lat.b_rows[0][j] + u[1][1] * lat.b_rows[1][j];
      }
      moved.index_b = lat.index_b * det;
      CHECK(graded_eq(regulator(pair, tw, 5, filt, moved), reg));
    }
  }

  SUBCASE("unit row scaling moves through the raw value and cancels in Reg") {
    Rng rng(6);
    MockPairing pair = random_pairing(rng, R, tw, 5, 2);
    LatticePair lat = random_lattice(rng, R, 2, 2);
    RingElem v = RingElem::from_int(R, 4);
    LatticePair scaled = lat;
    for (auto& x : scaled.b_rows[0]) x = x * v;
    GradedClass raw = regulator_raw(pair, tw, 5, filt, lat);
    GradedClass raw_scaled = regulator_raw(pair, tw, 5, filt, scaled);
    CHECK(graded_eq(raw_scaled, graded_scale(raw, v)));
    scaled.index_b = lat.index_b * v;
    CHECK(graded_eq(regulator(pair, tw, 5, filt, scaled),
                    regulator(pair, tw, 5, filt, lat)));
  }

  SUBCASE("non-unit index is rejected") {
    Rng rng(8);
    MockPairing pair = random_pairing(rng, R, tw, 5, 2);
    LatticePair lat = random_lattice(rng, R, 1, 2);
    lat.index_a = RingElem::from_int(R, 3);
    CHECK_THROWS_AS(regulator(pair, tw, 5, filt, lat),
                    index_not_invertible_error);
  }
}

TEST_CASE("regulator compatibility across levels") {
  Tower tw = tower_5_11();
  SUBCASE("random configurations, several rings and ranks") {
    for (int m : {2, 3}) {
      CoeffRing R = CoeffRing::zp(3, m);
      for (i64 T : {1LL, 5LL, 11LL, 55LL}) {
        for (int rho : {1, 2, 3}) {
          u64 seed = 977u * static_cast<u64>(T) + 31u * rho + m;
          Rng urng(seed + 1);
          std::map<i64, RingElem> units{{5, random_elem(urng, R)},
                                        {11, random_elem(urng, R)}};
          RegulatorConfig cfg =
              gen_regulator_config(seed, tw, R, 55, T, units, rho, 2);
          CHECK(regulator_compatibility_check(cfg, tw, R, 55, T, units));
        }
      }
    }
  }

  SUBCASE("galois coefficients") {
    CoeffRing R = CoeffRing::galois(3, 2, 2);
    Rng urng(9);
    std::map<i64, RingElem> units{{5, random_elem(urng, R)},
                                  {11, random_elem(urng, R)}};
    RegulatorConfig cfg = gen_regulator_config(12, tw, R, 55, 5, units, 2, 2);
    CHECK(regulator_compatibility_check(cfg, tw, R, 55, 5, units));
  }

  SUBCASE("vanishing local factor: u_5 = 3 over Z/9") {
    CoeffRing R = CoeffRing::zp(3, 2);
    std::map<i64, RingElem> units{{5, RingElem::from_int(R, 3)},
                                  {11, RingElem::from_int(R, 1)}};
    CHECK(regulator_euler_factor(R, units, tw, 55, 11).is_zero());
    RegulatorConfig cfg = gen_regulator_config(77, tw, R, 55, 11, units, 2, 2);
    CHECK(cfg.b_order_s % 9 == 0);
    CHECK(regulator_compatibility_check(cfg, tw, R, 55, 11, units));
  }

  SUBCASE("zero pairing: both sides vanish") {
    CoeffRing R = CoeffRing::zp(3, 2);
    Rng urng(13);
    std::map<i64, RingElem> units{{5, random_elem(urng, R)},
                                  {11, random_elem(urng, R)}};
    RegulatorConfig cfg = gen_regulator_config(21, tw, R, 55, 5, units, 2, 2);
    for (auto& row : cfg.pair.form)
      for (auto& x : row) x = RingElem::zero(R);
    CHECK(regulator_compatibility_check(cfg, tw, R, 55, 5, units));
  }
}

TEST_CASE("leading-term comparison report") {
  SUBCASE("zero system is consistent with an undetermined scalar") {
    Tower tw = tower_5();
    CoeffRing R = CoeffRing::zp(3, 2);
    Rng rng(1);
    std::map<i64, RingElem> units{{5, random_elem(rng, R)}};
    MockEulerSystem sys = gen_system(2, tw, R, +1, units, 1, true);
    for (i64 T : {1LL, 5LL}) sys = sys.with_y(T, vecops::zero(R, (int)sys.rank_of(T)));
    MockPairing pair = random_pairing(rng, R, tw, 5, (int)sys.rank_of(1));
    LatticePair lat{{RVec{RingElem::zero(R)}},
                    {RVec{RingElem::zero(R)}},
                    RingElem::one(R),
                    RingElem::one(R)};
    Question52Report rep = question_52_report(sys, pair, lat, 1, 1);
    CHECK(rep.consistent);
    CHECK_FALSE(rep.c_determined);
    CHECK(rep.status == "consistent, c undetermined");
  }

  SUBCASE("rank-one toy where the scalar is solvable by enumeration") {
    // top level 1: a tower with no primes, so everything lives in the bottom layer
    TowerSpec sp1;
    sp1.disc = -23;
    sp1.h_k = 1;
    sp1.primes = {};
    Tower tw1(sp1);
    CoeffRing R = CoeffRing::zp(3, 2);
    MockEulerSystem base =
        gen_system(7, tw1, R, +1, {}, 2, false).with_y(1, Vec{1, 2});
    MockPairing pair{R, {{RingElem::one(R), RingElem::zero(R)},
                         {RingElem::zero(R), RingElem::one(R)}},
                     {}};
    RVec y{RingElem::one(R), RingElem::from_int(R, 2)};
    LatticePair lat{{y}, {y}, RingElem::one(R), RingElem::one(R)};
    Question52Report rep = question_52_report(base, pair, lat, 1, 1);
    CHECK(rep.rho_tilde == 1);
    CHECK(rep.leading_defined);
    CHECK(rep.c_determined);
    REQUIRE(rep.c.has_value());
    CHECK(*rep.c == RingElem::one(R));

    // doubling the right-hand side halves the solved scalar
    Question52Report rep2 = question_52_report(base, pair, lat, 2, 1);
    REQUIRE(rep2.c_determined);
    CHECK(*rep2.c == RingElem::from_int(R, 2).inverse());
  }

  SUBCASE("large coefficient rings report the scalar as undetermined") {
    TowerSpec sp;
    sp.disc = -23;
    sp.h_k = 1;
    sp.primes = {};
    Tower tw(sp);
    CoeffRing R = CoeffRing::galois(3, 3, 3);  // |R| = 27^3 > 10^4
    MockEulerSystem base =
        gen_system(3, tw, R, +1, {}, 1, false).with_y(1, Vec{1, 0, 0});
    MockPairing pair{R, {{RingElem::one(R)}}, {}};
    RVec y{RingElem::one(R)};
    LatticePair lat{{y}, {y}, RingElem::one(R), RingElem::one(R)};
    Question52Report rep = question_52_report(base, pair, lat, 1, 1);
    CHECK(rep.status == "undetermined (ring too large)");
    CHECK_FALSE(rep.c_determined);
  }

  SUBCASE("seeded family emits a report with coherent fields") {
    Tower tw = tower_5();
    CoeffRing R = CoeffRing::zp(3, 2);
    for (u64 seed = 0; seed < 3; ++seed) {
      Rng rng(seed);
      std::map<i64, RingElem> units{{5, random_elem(rng, R)}};
      MockEulerSystem sys = gen_system(seed, tw, R, +1, units, 1, true);
      MockPairing pair = random_pairing(rng, R, tw, 5, (int)sys.rank_of(1));
      LatticePair lat = random_lattice(rng, R, 2, (int)sys.rank_of(1));
      Question52Report rep = question_52_report(sys, pair, lat, 1, 1);
      CHECK(rep.rho_tilde == 2);
      CHECK(rep.l_order >= 0);
      CHECK_FALSE(rep.status.empty());
      CHECK(rep.order_meets == (rep.l_order >= 1));
    }
  }
}
