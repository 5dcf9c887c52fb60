#pragma once

#include <memory>
#include <vector>

#include "bbreg/coeffring.hpp"

namespace bbreg {

// ---- elementary characters ----------------------------------------------

// full Kronecker symbol (a/n)
int kronecker(i64 a, i64 n);
bool is_fundamental_discriminant(i64 D);
bool is_squarefree(i64 n);

// ---- the abstract class-field tower --------------------------------------

// Axiomatic model of the ring-class tower over an imaginary quadratic field
// of discriminant D: one cyclic factor Z/(l+1) per tower prime l (all inert),
// times a fixed finite abelian group of order h_K for the bottom layer.
struct TowerSpec {
  i64 disc = 0;
  i64 h_k = 1;
  std::vector<i64> gamma1;  // cyclic factor orders, product = h_k
  std::vector<i64> primes;  // distinct inert primes l_i
};

class Tower {
 public:
  explicit Tower(TowerSpec spec);  // validates

  i64 disc() const { return sp_->disc; }
  i64 h_k() const { return sp_->h_k; }
  const std::vector<i64>& gamma1() const { return sp_->gamma1; }
  const std::vector<i64>& primes() const { return sp_->primes; }
  i64 top_level() const;  // product of all tower primes

  int prime_index(i64 ell) const;  // throws if not a tower prime
  bool divides_tower(i64 T) const;
  // squarefree divisors of T (itself a divisor of the top level), ascending
  std::vector<i64> divisors(i64 T) const;

  // p must not divide h_K when coefficient rings enter the picture
  void check_ring(const CoeffRing& r) const;

  int mobius(i64 T) const;  // (-1)^{number of prime factors of T}
  int chi_k(i64 T) const;   // product of kronecker(D, l) over l | T

  bool operator==(const Tower& o) const { return sp_ == o.sp_; }
  bool operator!=(const Tower& o) const { return sp_ != o.sp_; }

 private:
  std::shared_ptr<const TowerSpec> sp_;
};

// Element of Gamma_S (or of G_S when the gamma1 part is zero): one exponent
// slot per tower prime plus the gamma1 slots, always full length.
struct GroupElem {
  std::vector<i64> gs;
  std::vector<i64> g1;
  bool operator==(const GroupElem& o) const { return gs == o.gs && g1 == o.g1; }
  bool operator!=(const GroupElem& o) const { return !(*this == o); }
};

enum class GroupKind { G, Gamma };

// Handle for G_T or Gamma_T = G_T x Gamma_1 inside a fixed tower.  Supplies
// the dense element enumeration (lexicographic on exponent vectors, first
// factor most significant) used for all group-ring linear algebra.
class Group {
 public:
  Group(Tower tower, i64 T, GroupKind kind);

  const Tower& tower() const { return tower_; }
  i64 level() const { return T_; }
  GroupKind kind() const { return kind_; }
  i64 order() const { return order_; }

  bool is_active_prime(int slot) const;

  GroupElem identity() const;
  GroupElem mul(const GroupElem& a, const GroupElem& b) const;
  GroupElem inv(const GroupElem& a) const;
  GroupElem pow(const GroupElem& a, i64 e) const;

  // sigma_l, the canonical generator of the Z/(l+1) factor
  GroupElem sigma(i64 ell, i64 e = 1) const;

  // one generator per active cyclic factor (prime slots, then gamma1)
  std::vector<GroupElem> generators() const;

  bool contains(const GroupElem& a) const;  // zero at inactive slots
  i64 index_of(const GroupElem& a) const;
  GroupElem elem_at(i64 idx) const;

  bool operator==(const Group& o) const {
    return tower_ == o.tower_ && T_ == o.T_ && kind_ == o.kind_;
  }
  bool operator!=(const Group& o) const { return !(*this == o); }

 private:
  Tower tower_;
  i64 T_;
  GroupKind kind_;
  std::vector<int> active_;       // tower prime slots live in this group
  std::vector<i64> slot_orders_;  // cyclic orders, active primes then gamma1
  i64 order_;
};

// kill the exponents at primes dividing S/T (the canonical projection)
GroupElem project(const GroupElem& g, const Group& target);

// invert_action: the conjugation c sends every group element to its inverse
GroupElem invert_action(const Group& grp, const GroupElem& g);

// The canonical lift of Gamma_1 into Gamma_T: the transversal {(0, gamma)}.
// Returned as the list of summands of the corresponding element of Z[Gamma_T].
std::vector<GroupElem> norm_lift(const Group& gamma_t);
// an arbitrary set-theoretic lift (random G_T parts), for lift-independence tests
std::vector<GroupElem> norm_lift_random(const Group& gamma_t, Rng& rng);

}  // namespace bbreg
