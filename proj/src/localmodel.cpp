#include "bbreg/localmodel.hpp"

#include "bbreg/groups.hpp"

namespace bbreg {

Mat2 Mat2::zero(const CoeffRing& r) {
  RingElem z = RingElem::zero(r);
  return Mat2{{z, z, z, z}};
}

Mat2 Mat2::identity(const CoeffRing& r) {
  RingElem z = RingElem::zero(r), o = RingElem::one(r);
  return Mat2{{o, z, z, o}};
}

Mat2 Mat2::diag(const RingElem& a, const RingElem& b) {
  RingElem z = RingElem::zero(a.ring());
  return Mat2{{a, z, z, b}};
}

Mat2 Mat2::operator+(const Mat2& o) const {
  return Mat2{{e[0] + o.e[0], e[1] + o.e[1], e[2] + o.e[2], e[3] + o.e[3]}};
}

Mat2 Mat2::operator-(const Mat2& o) const {
  return Mat2{{e[0] - o.e[0], e[1] - o.e[1], e[2] - o.e[2], e[3] - o.e[3]}};
}

Mat2 Mat2::operator*(const Mat2& o) const {
  return Mat2{{e[0] * o.e[0] + e[1] * o.e[2], e[0] * o.e[1] + e[1] * o.e[3],
               e[2] * o.e[0] + e[3] * o.e[2], e[2] * o.e[1] + e[3] * o.e[3]}};
}

Mat2 Mat2::scaled(const RingElem& s) const {
  return Mat2{{e[0] * s, e[1] * s, e[2] * s, e[3] * s}};
}

std::vector<Vec> Mat2::columns() const {
  const CoeffRing& r = ring();
  Vec c0 = vecops::zero(r, 2), c1 = vecops::zero(r, 2);
  vecops::set(r, c0, 0, e[0]);
  vecops::set(r, c0, 1, e[2]);
  vecops::set(r, c1, 0, e[1]);
  vecops::set(r, c1, 1, e[3]);
  return {c0, c1};
}

Vec Mat2::apply(const Vec& v) const {
  const CoeffRing& r = ring();
  RingElem x = vecops::get(r, v, 0), y = vecops::get(r, v, 1);
  Vec out = vecops::zero(r, 2);
  vecops::set(r, out, 0, e[0] * x + e[1] * y);
  vecops::set(r, out, 1, e[2] * x + e[3] * y);
  return out;
}

FrobeniusModel build_model(i64 ell, i64 a, int weight, const CoeffRing& ring) {
  if (!is_prime(ell)) throw error("local model needs a prime l");
  if (ell == ring.p()) throw error("local model needs l != p");
  if (weight < 2 || weight % 2 != 0) throw error("weight must be a positive even integer");
  RingElem denom = RingElem::one(ring);
  RingElem lr = RingElem::from_int(ring, ell);
  for (int i = 0; i < weight / 2 - 1; ++i) denom = denom * lr;
  if (!denom.is_unit())
    throw non_invertible_denominator_error("l^{k/2-1} is not a unit in the coefficient ring");
  RingElem u = RingElem::from_int(ring, a) * denom.inverse();
  RingElem w = lr;
  RingElem z = RingElem::zero(ring), o = RingElem::one(ring);
  Mat2 F{{z, -w, o, u}};  // companion matrix of X^2 - uX + w
  return FrobeniusModel{ring, ell, a, weight, u, w, F};
}

RModule h1f_model(const FrobeniusModel& fm) {
  Mat2 sq = fm.F * fm.F - Mat2::identity(fm.ring);
  return cokernel_invariants(fm.ring, 2, sq.columns());
}

std::pair<int, int> eigenspace_ranks(const FrobeniusModel& fm) {
  if (fm.F * fm.F != Mat2::identity(fm.ring))
    throw error("eigenspace ranks need F^2 = 1 (Kolyvagin-prime local model)");
  RingElem half = RingElem::from_int(fm.ring, 2).inverse();
  Mat2 plus = (Mat2::identity(fm.ring) + fm.F).scaled(half);
  Mat2 minus = (Mat2::identity(fm.ring) - fm.F).scaled(half);
  int rp = image_invariants(fm.ring, 2, plus.columns()).r_p();
  int rm = image_invariants(fm.ring, 2, minus.columns()).r_p();
  return {rp, rm};
}

FrobDivision frob_division(i64 a, i64 ell, const CoeffRing& ring) {
  const i64 q = ring.q();
  if (mod_reduce(a, q) != 0 || mod_reduce(ell + 1, q) != 0)
    throw divisibility_error("frob_division requires p^m | a and p^m | l+1");
  i64 sp = (a + (ell + 1)) / q;
  i64 sm = (a - (ell + 1)) / q;
  FrobDivision out{RingElem::from_int(ring, sp), RingElem::from_int(ring, sm),
                   mod_reduce(sp, ring.p()) != 0, mod_reduce(sm, ring.p()) != 0};
  return out;
}

bool kolyvagin_prime_test(i64 ell, i64 a, i64 D, i64 N, i64 p, int m) {
  if (!is_prime(ell)) throw error("kolyvagin_prime_test needs a prime l");
  i64 q = ipow(p, m);
  return kronecker(D, ell) == -1 && ell % p != 0 && N % ell != 0 &&
         mod_reduce(ell + 1, q) == 0 && mod_reduce(a, q) == 0;
}

}  // namespace bbreg
