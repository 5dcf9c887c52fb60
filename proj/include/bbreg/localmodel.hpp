#pragma once

#include <array>

#include "bbreg/linalg.hpp"

namespace bbreg {

// 2x2 matrix over the coefficient ring, row-major
struct Mat2 {
  std::array<RingElem, 4> e;

  static Mat2 zero(const CoeffRing& r);
  static Mat2 identity(const CoeffRing& r);
  static Mat2 diag(const RingElem& a, const RingElem& b);

  const CoeffRing& ring() const { return e[0].ring(); }
  Mat2 operator+(const Mat2& o) const;
  Mat2 operator-(const Mat2& o) const;
  Mat2 operator*(const Mat2& o) const;
  Mat2 scaled(const RingElem& s) const;
  bool operator==(const Mat2& o) const { return e == o.e; }
  bool operator!=(const Mat2& o) const { return !(*this == o); }

  RingElem trace() const { return e[0] + e[3]; }
  RingElem det() const { return e[0] * e[3] - e[1] * e[2]; }
  // the two columns as flat R^2 vectors (generators of the image)
  std::vector<Vec> columns() const;
  Vec apply(const Vec& v) const;
};

// Rank-2 model of the local Galois action at an inert prime l: F is the
// companion matrix of X^2 - uX + w with u = a / l^{k/2-1} and w = image of l.
// The square F^2 models the Frobenius of the quadratic local extension.
struct FrobeniusModel {
  CoeffRing ring;
  i64 ell = 0;
  i64 a = 0;
  int weight = 0;
  RingElem u;  // normalized trace
  RingElem w;  // determinant
  Mat2 F;
};

// throws non_invertible_denominator_error when l^{k/2-1} is not a unit
FrobeniusModel build_model(i64 ell, i64 a, int weight, const CoeffRing& ring);

// cokernel of F^2 - 1 on R^2 (the unramified-cohomology model)
RModule h1f_model(const FrobeniusModel& fm);

// ranks of the +/- eigenspace projectors (1 +/- F)/2 on R^2; requires F^2 = 1
std::pair<int, int> eigenspace_ranks(const FrobeniusModel& fm);

// (a + (l+1))/p^m and (a - (l+1))/p^m reduced into the ring, with unit flags
struct FrobDivision {
  RingElem plus;
  RingElem minus;
  bool plus_unit = false;
  bool minus_unit = false;
};
// throws divisibility_error unless p^m | a and p^m | l+1
FrobDivision frob_division(i64 a, i64 ell, const CoeffRing& ring);

// kronecker(D,l) = -1, l does not divide Np, p^m | l+1, p^m | a
bool kolyvagin_prime_test(i64 ell, i64 a, i64 D, i64 N, i64 p, int m);

}  // namespace bbreg
