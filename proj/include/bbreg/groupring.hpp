#pragma once

#include <map>
#include <memory>

#include "bbreg/groups.hpp"
#include "bbreg/linalg.hpp"

namespace bbreg {

// permutation of dense group indices induced by left multiplication by sigma:
// perm[index(g)] = index(sigma * g)
std::vector<i64> left_mul_perm(const Group& G, const GroupElem& sigma);
// perm[index(g)] = index(g^{-1})
std::vector<i64> inversion_perm(const Group& G);

// ---- group-ring elements ---------------------------------------------------

// Sparse element of R[G]; the dense coordinate vector (|G| logical slots,
// flattened over d) is the carrier for all linear algebra.
class GroupRingElem {
 public:
  GroupRingElem(CoeffRing ring, Group group);  // zero
  static GroupRingElem one(const CoeffRing& r, const Group& g);
  static GroupRingElem of(const CoeffRing& r, const Group& g, const GroupElem& t);

  const CoeffRing& ring() const { return ring_; }
  const Group& group() const { return group_; }
  const std::map<i64, RingElem>& terms() const { return c_; }

  void add_term(const GroupElem& g, const RingElem& x);
  RingElem coeff(const GroupElem& g) const;

  GroupRingElem operator+(const GroupRingElem& o) const;
  GroupRingElem operator-(const GroupRingElem& o) const;
  GroupRingElem operator*(const GroupRingElem& o) const;
  GroupRingElem operator*(const RingElem& s) const;
  GroupRingElem operator-() const;
  bool operator==(const GroupRingElem& o) const;
  bool operator!=(const GroupRingElem& o) const { return !(*this == o); }
  bool is_zero() const { return c_.empty(); }

  GroupRingElem star() const;  // involution g -> g^{-1}
  RingElem aug() const;        // coefficient sum

  Vec dense() const;  // length |G| * d
  static GroupRingElem from_dense(const CoeffRing& r, const Group& g, const Vec& v);

 private:
  CoeffRing ring_;
  Group group_;
  std::map<i64, RingElem> c_;  // group index -> nonzero coefficient
};

// Integer-coefficient variant (exact expansion of derivative operators happens
// here, reduction to R afterwards).
class ZGroupRingElem {
 public:
  explicit ZGroupRingElem(Group group);
  static ZGroupRingElem one(const Group& g);
  static ZGroupRingElem of(const Group& g, const GroupElem& t, i64 c = 1);

  const Group& group() const { return group_; }
  const std::map<i64, i64>& terms() const { return c_; }
  void add_term(const GroupElem& g, i64 c);
  i64 coeff(const GroupElem& g) const;

  ZGroupRingElem operator+(const ZGroupRingElem& o) const;
  ZGroupRingElem operator-(const ZGroupRingElem& o) const;
  ZGroupRingElem operator*(const ZGroupRingElem& o) const;
  ZGroupRingElem operator*(i64 s) const;
  bool operator==(const ZGroupRingElem& o) const;
  bool is_zero() const { return c_.empty(); }

  ZGroupRingElem star() const;
  i64 aug() const;

  GroupRingElem to_ring(const CoeffRing& r) const;

 private:
  Group group_;
  std::map<i64, i64> c_;
};

// ---- augmentation filtration ----------------------------------------------

// Howell bases of the powers I^r of the augmentation ideal of R[G], with
// reductions mod p^e precomputed so membership in quotient components is a
// table lookup.  Immutable after construction.
class FiltrationTable {
 public:
  static constexpr int default_depth = 8;
  static constexpr i64 size_cap = 2000;  // |G| * d coordinate cap

  FiltrationTable(Group group, CoeffRing ring, int depth = default_depth);

  const Group& group() const { return group_; }
  const CoeffRing& ring() const { return ring_; }
  int depth() const { return depth_; }
  // first r (<= depth) with I^r = I^{r+1}, or depth + 1 if not observed
  int stable_from() const { return stable_from_; }

  // basis of I^r as a submodule of R[G], 0 <= r <= depth (I^0 = R[G])
  const RSpan& basis(int r) const;
  // the same span with coefficients reduced into GR(p^e, d), 1 <= e <= m
  const RSpan& basis_mod(int r, int e) const;

 private:
  Group group_;
  CoeffRing ring_;
  int depth_;
  int stable_from_;
  std::vector<RSpan> bases_;                 // index r
  std::vector<std::vector<RSpan>> reduced_;  // [r][e-1]
};

using FiltrationPtr = std::shared_ptr<const FiltrationTable>;
FiltrationPtr build_filtration(const Group& group, const CoeffRing& ring,
                               int depth = FiltrationTable::default_depth);

// ---- tensors M (x) R[G] -----------------------------------------------------

// Element of M ⊗ R[G] where M = ⨁_i R/p^{e_i} with explicit coordinates.
// Stored module-major: component i occupies the dense group-ring slice
// [i*|G|*d, (i+1)*|G|*d).  Free modules have all e_i = m.
class TensorElem {
 public:
  TensorElem(CoeffRing ring, Group group, std::vector<int> exps);
  static TensorElem free_zero(const CoeffRing& r, const Group& g, int rank);

  const CoeffRing& ring() const { return ring_; }
  const Group& group() const { return group_; }
  int rank() const { return static_cast<int>(exps_.size()); }
  const std::vector<int>& exps() const { return exps_; }
  const Vec& data() const { return c_; }
  Vec& data() { return c_; }

  i64 gr_len() const { return group_.order() * ring_.d(); }
  Vec component(int i) const;
  void set_component(int i, const Vec& grvec);
  void add_term(int i, const GroupElem& g, const RingElem& x);
  RingElem coeff(int i, const GroupElem& g) const;

  TensorElem operator+(const TensorElem& o) const;
  TensorElem operator-(const TensorElem& o) const;
  bool operator==(const TensorElem& o) const;
  bool operator!=(const TensorElem& o) const { return !(*this == o); }
  bool is_zero() const { return vecops::is_zero(c_); }

  TensorElem scaled(const RingElem& s) const;
  TensorElem scaled_int(i64 s) const;

  // group-leg operations
  TensorElem star_group() const;
  TensorElem mul_group(const GroupElem& sigma) const;       // leg * sigma
  TensorElem mul_group_ring(const GroupRingElem& a) const;  // leg * a
  TensorElem project_group(const Group& target) const;      // sums over fibers
  TensorElem embed_group(const Group& bigger) const;        // injective index map

  // tensor over R[G]: ranks multiply, component (i,j) = convolution
  TensorElem tensor(const TensorElem& o) const;

 private:
  CoeffRing ring_;
  Group group_;
  std::vector<int> exps_;
  Vec c_;
};

// largest r <= r_max with theta inside the image of M ⊗ I^r in M ⊗ R[G]
// (membership computed per invariant component against the reduced bases)
int vanishing_order(const TensorElem& theta, const FiltrationTable& filt, int r_max);
bool in_filtration_image(const TensorElem& theta, const FiltrationTable& filt, int r);

// ---- graded classes ---------------------------------------------------------

struct GradedClass {
  FiltrationPtr filt;
  int level = 0;
  TensorElem rep;

  bool is_zero_class() const;  // rep in I^{level+1}-image
};

GradedClass leading_term(const TensorElem& theta, int r, FiltrationPtr filt);
bool graded_eq(const GradedClass& a, const GradedClass& b);
// rank-1 (group-ring valued) classes only
GradedClass graded_mul(const GradedClass& a, const GradedClass& b);
GradedClass graded_add(const GradedClass& a, const GradedClass& b);
GradedClass graded_scale(const GradedClass& a, const RingElem& s);

}  // namespace bbreg
