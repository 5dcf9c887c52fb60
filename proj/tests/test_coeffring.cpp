#include "doctest.h"

#include "bbreg/coeffring.hpp"

using namespace bbreg;

TEST_CASE("Z/9 basic arithmetic") {
  CoeffRing R = CoeffRing::zp(3, 2);
  auto e = [&](i64 n) { return RingElem::from_int(R, n); };
  CHECK(e(7) + e(5) == e(3));
  CHECK(e(0) * e(5) == e(0));
  CHECK(e(7) - e(5) == e(2));
  CHECK((-e(4)) == e(5));
}

TEST_CASE("GR(3,2) defining relation x^2 = -1 for poly x^2+1") {
  CoeffRing R(3, 1, 2, {1, 0, 1});
  RingElem x = RingElem::gen(R);
  CHECK(x * x == -RingElem::one(R));
}

TEST_CASE("galois() finds an irreducible poly and arithmetic closes") {
  CoeffRing R = CoeffRing::galois(3, 2, 2);
  RingElem x = RingElem::gen(R);
  // x satisfies its defining polynomial
  const auto& poly = R.defining_poly();
  RingElem acc = RingElem::zero(R);
  RingElem pw = RingElem::one(R);
  for (i64 c : poly) {
    acc = acc + RingElem::from_int(R, c) * pw;
    pw = pw * x;
  }
  CHECK(acc.is_zero());
}

TEST_CASE("valuation") {
  CoeffRing R = CoeffRing::zp(3, 2);
  CHECK(RingElem::from_int(R, 3).valuation() == 1);
  CHECK(RingElem::from_int(R, 0).valuation() == RingElem::val_infinity);
  CoeffRing R3 = CoeffRing::zp(3, 3);
  CHECK(RingElem::from_int(R3, 18).valuation() == 2);
  CHECK(RingElem::from_int(R3, 2).valuation() == 0);
}

TEST_CASE("invert worked values") {
  CoeffRing R = CoeffRing::zp(3, 2);
  CHECK(RingElem::from_int(R, 2).inverse() == RingElem::from_int(R, 5));
  CHECK(RingElem::from_int(R, 7).inverse() == RingElem::from_int(R, 4));
  CHECK_THROWS_AS(RingElem::from_int(R, 3).inverse(), non_unit_error);
}

TEST_CASE("invert: all units of Z/p^m for p^m <= 343, exhaustive") {
  for (auto [p, m] : std::vector<std::pair<i64, int>>{{3, 1}, {3, 2}, {3, 3}, {3, 4},
                                                      {3, 5}, {5, 1}, {5, 2}, {5, 3},
                                                      {7, 1}, {7, 2}, {7, 3}}) {
    CoeffRing R = CoeffRing::zp(p, m);
    for (i64 a = 1; a < R.q(); ++a) {
      if (a % p == 0) continue;
      RingElem x = RingElem::from_int(R, a);
      CHECK(x.inverse() * x == RingElem::one(R));
    }
  }
}

TEST_CASE("invert units of GR(9,2) exhaustively") {
  CoeffRing R = CoeffRing::galois(3, 2, 2);
  for (i64 a = 0; a < 9; ++a)
    for (i64 b = 0; b < 9; ++b) {
      RingElem x(R, {a, b});
      if (x.valuation() != 0) continue;
      CHECK(x.inverse() * x == RingElem::one(R));
    }
}

TEST_CASE("exact division by p^t") {
  CoeffRing R = CoeffRing::zp(3, 2);
  RingElem b = RingElem::from_int(R, 6).divide_p_power(1);
  CHECK(b.ring().m() == 1);
  CHECK(b == RingElem::from_int(b.ring(), 2));

  CoeffRing R3 = CoeffRing::zp(3, 3);
  RingElem c = RingElem::from_int(R3, 18).divide_p_power(2);
  CHECK(c.ring().m() == 1);
  CHECK(c == RingElem::from_int(c.ring(), 2));

  // a = 0, t = m lands in the zero ring
  RingElem z = RingElem::from_int(R, 0).divide_p_power(2);
  CHECK(z.ring().m() == 0);
  CHECK(z.is_zero());

  CHECK_THROWS_AS(RingElem::from_int(R, 1).divide_p_power(1), insufficient_valuation_error);
}

TEST_CASE("divide then multiply reconstructs the dividend") {
  CoeffRing R = CoeffRing::zp(3, 3);
  for (i64 a = 0; a < 27; ++a)
    for (int t = 0; t <= 3; ++t) {
      RingElem x = RingElem::from_int(R, a);
      if (x.valuation() < t && !x.is_zero()) continue;
      RingElem b = x.divide_p_power(t);
      // p^t times any lift of b equals a mod p^m (lift ambiguity is killed by p^t)
      i64 lift = b.ring().m() == 0 ? 0 : b.coeffs()[0];
      CHECK(RingElem::from_int(R, static_cast<i128>(ipow(3, t)) * lift) == x);
    }
}

TEST_CASE("ring mismatch raises") {
  CoeffRing A = CoeffRing::zp(3, 2), B = CoeffRing::zp(3, 1);
  CHECK_THROWS_AS(RingElem::one(A) + RingElem::one(B), ring_mismatch_error);
}
