#pragma once

#include <memory>
#include <vector>

#include "bbreg/common.hpp"

namespace bbreg {

// The coefficient ring R = GR(p^m, d): the unramified degree-d extension of
// Z/p^m, realized as (Z/p^m)[x] / (defining_poly).  d = 1 gives plain Z/p^m.
// m = 0 is allowed internally and denotes the zero ring (it shows up as the
// codomain of exact division by p^m).
class CoeffRing {
 public:
  CoeffRing(i64 p, int m, int d, std::vector<i64> defining_poly);

  // Z/p^m
  static CoeffRing zp(i64 p, int m);
  // GR(p^m, d) with the lexicographically least defining polynomial
  static CoeffRing galois(i64 p, int m, int d);

  i64 p() const { return rep_->p; }
  int m() const { return rep_->m; }
  int d() const { return rep_->d; }
  i64 q() const { return rep_->q; }  // p^m
  const std::vector<i64>& defining_poly() const { return rep_->poly; }

  bool operator==(const CoeffRing& o) const;
  bool operator!=(const CoeffRing& o) const { return !(*this == o); }

  // same p, d, defining poly, exponent mm <= m
  CoeffRing quotient(int mm) const;

 private:
  struct Rep {
    i64 p;
    int m;
    int d;
    i64 q;
    std::vector<i64> poly;  // low-to-high, length d+1, monic, reduced mod q
  };
  std::shared_ptr<const Rep> rep_;
  explicit CoeffRing(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}
};

class RingElem {
 public:
  RingElem(CoeffRing ring, std::vector<i64> coeffs);  // reduced mod q

  static RingElem zero(const CoeffRing& r);
  static RingElem one(const CoeffRing& r);
  static RingElem gen(const CoeffRing& r);  // the class of x
  static RingElem from_int(const CoeffRing& r, i128 n);

  const CoeffRing& ring() const { return ring_; }
  const std::vector<i64>& coeffs() const { return c_; }
  bool is_zero() const;
  bool is_unit() const { return valuation() == 0; }

  RingElem operator+(const RingElem& o) const;
  RingElem operator-(const RingElem& o) const;
  RingElem operator*(const RingElem& o) const;
  RingElem operator-() const;
  bool operator==(const RingElem& o) const;
  bool operator!=(const RingElem& o) const { return !(*this == o); }

  static constexpr int val_infinity = std::numeric_limits<int>::max();
  // largest t <= m with a in p^t R; val_infinity iff a = 0
  int valuation() const;

  // multiplicative inverse; throws non_unit_error
  RingElem inverse() const;

  // exact division by p^t, landing in GR(p^{m-t}, d); throws
  // insufficient_valuation_error unless valuation >= t
  RingElem divide_p_power(int t) const;

  // reduce into the quotient ring GR(p^{mm}, d), mm <= m
  RingElem reduce_to(const CoeffRing& target) const;

  // d == 1 convenience: the single residue
  i64 scalar() const;

  std::string str() const;

 private:
  CoeffRing ring_;
  std::vector<i64> c_;  // length d, entries in [0, q)
};

inline RingElem operator*(i64 n, const RingElem& a) {
  return RingElem::from_int(a.ring(), n) * a;
}

}  // namespace bbreg
