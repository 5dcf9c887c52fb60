#pragma once

#include <vector>

#include "bbreg/coeffring.hpp"

namespace bbreg {

// Flat coordinate vector over R = GR(p^m, d): a logical vector of length n is
// stored as n*d scalars, slice [i*d, (i+1)*d) holding the coefficients of the
// i-th R-coordinate.  For d = 1 this is just a vector mod p^m.
using Vec = std::vector<i64>;

// ---- scalar Howell / Smith machinery over Z/p^e --------------------------

struct ScalarMat {
  i64 p = 0;
  int e = 0;   // modulus exponent, q = p^e
  i64 q = 0;
  int ncols = 0;
  std::vector<std::vector<i64>> rows;
};

// Canonical Howell normal form: span preserved, pivot columns strictly
// increasing, leading entries p^v, entries above a pivot reduced mod p^v,
// span closed under leading-position reduction.  Unique for a given span.
ScalarMat howell_form(const ScalarMat& in);

bool howell_member(const ScalarMat& hf, std::vector<i64> v);

// log_p of the number of elements in the span
int howell_log_order(const ScalarMat& hf);

// Diagonal valuations of the Smith-style reduction of `in` over Z/p^e:
// returns ncols values in [0, e]; columns not met by any pivot contribute e.
// The cokernel (Z/p^e)^ncols / rowspan is the direct sum of Z/p^{v} over
// these values (v = 0 terms vanish).
std::vector<int> smith_diagonal(const ScalarMat& in);

// ---- R-module layer ------------------------------------------------------

// Finitely generated R-module given by invariant exponents: ⨁ R/p^{e_i}.
struct RModule {
  CoeffRing ring;
  std::vector<int> exps;  // each in [1, m], sorted descending

  int r_pm() const;      // number of exponents equal to m
  int r_p() const;       // number of invariant factors
  int log_p_order() const;  // log_p |M| = d * sum(exps)
};

// Canonical span of R-vectors inside R^n.  Internally the R-span is flattened
// to a Z/p^m-span in n*d coordinates (closing each generator under
// multiplication by the ring generator), where Howell membership is exact.
class RSpan {
 public:
  RSpan(CoeffRing ring, int n, const std::vector<Vec>& rows);

  const CoeffRing& ring() const { return ring_; }
  int n() const { return n_; }
  const ScalarMat& scalar_form() const { return hf_; }

  bool contains(const Vec& v) const;
  int log_order() const { return howell_log_order(hf_); }

  // the same span with coefficients reduced into GR(p^e, d)
  RSpan reduced(int e) const;

  bool same_span(const RSpan& other) const;

 private:
  CoeffRing ring_;
  int n_;
  ScalarMat hf_;
};

// invariants of R^n / (R-span of rows)
RModule cokernel_invariants(const CoeffRing& ring, int n, const std::vector<Vec>& rows);

// invariants of the R-span of rows itself (as an abstract R-module)
RModule image_invariants(const CoeffRing& ring, int n, const std::vector<Vec>& rows);

// ---- flat-vector helpers over R ------------------------------------------

namespace vecops {

Vec zero(const CoeffRing& r, int n);
void add_in_place(const CoeffRing& r, Vec& a, const Vec& b);
void sub_in_place(const CoeffRing& r, Vec& a, const Vec& b);
void scale_in_place(const CoeffRing& r, Vec& a, const RingElem& s);
void scale_int_in_place(const CoeffRing& r, Vec& a, i64 s);
bool is_zero(const Vec& a);
// min valuation over all R-coordinates (val_infinity for the zero vector)
int valuation(const CoeffRing& r, const Vec& a);
RingElem get(const CoeffRing& r, const Vec& a, int i);
void set(const CoeffRing& r, Vec& a, int i, const RingElem& x);
// the d scalar rows spanning the same R-line as `a`: a, x·a, ..., x^{d-1}·a
std::vector<Vec> scalar_closure(const CoeffRing& r, const Vec& a);
Vec reduce_to(const CoeffRing& from, const CoeffRing& to, const Vec& a);

}  // namespace vecops

}  // namespace bbreg
