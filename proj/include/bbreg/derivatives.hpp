#pragma once

#include <map>

#include "bbreg/modules.hpp"

namespace bbreg {

// ---- derivative operators --------------------------------------------------

// D = D_{l_1}^{k_1} ... D_{l_t}^{k_t} with D_l^k = sum_{i=k}^{l} C(i,k) sigma_l^i
struct DerivativeOp {
  std::vector<std::pair<i64, i64>> factors;  // (l_i, k_i), 0 <= k_i <= l_i

  DerivativeOp() = default;
  explicit DerivativeOp(std::vector<std::pair<i64, i64>> f);  // validates

  i64 order() const;    // sum of k_i
  i64 support() const;  // product of l_i
  i64 conductor() const;  // product of l_i with k_i > 0
  // min over {k_i > 0} of v_p(l_i + 1); val_infinity when order = 0
  int eta(i64 p) const;
  static constexpr int eta_infinity = RingElem::val_infinity;

  // exact integer expansion in Z[G] (G must contain every factor prime)
  ZGroupRingElem expand(const Group& G) const;
  GroupRingElem expand_ring(const CoeffRing& R, const Group& G) const;
};

// every operator in the box 0 <= k_i <= l_i over the active primes of G
std::vector<DerivativeOp> derivative_box(const Group& G);

// ---- Taylor expansion of the resolvent -------------------------------------

// theta_m = sum_{sigma in G} sigma(m) (x) sigma
TensorElem resolvent(const GModule& M, const Vec& m);

// All derivatives D_kappa(m) for kappa in the box, stored on the same mixed-
// radix enumeration the group uses for its prime slots.  Construction verifies
// the exact reconstruction identity
//   theta_m = sum_kappa D_kappa(m) (x) prod (sigma_i - 1)^{k_i}
// and throws on mismatch (which would be an internal error).
class TaylorTable {
 public:
  TaylorTable(const GModule& M, const Vec& m);  // group = M.group(), must be G-kind

  const Group& group() const { return group_; }
  const CoeffRing& ring() const { return ring_; }
  const std::vector<i64>& box() const { return box_; }  // n_j = l_j + 1 per slot

  const Vec& at(const std::vector<i64>& kappa) const;  // exponents per slot
  const Vec& at(const DerivativeOp& D) const;

 private:
  Group group_;
  CoeffRing ring_;
  std::vector<i64> box_;
  std::vector<Vec> dk_;
  i64 kappa_index(const std::vector<i64>& kappa) const;
};

// ---- divisibility criterion ------------------------------------------------

// hypothesis: D_kappa(m) vanishes mod p^{eta(kappa)} (componentwise, clamped
// at the component exponent) for every kappa with order < r.
// conclusion: theta_m lies in the image of M (x) I^r, checked independently.
struct DivisibilityReport {
  bool hypothesis_holds = false;
  bool conclusion_holds = false;
};
DivisibilityReport divisibility_criterion(const GModule& M, const Vec& m, int r,
                                          const FiltrationTable& filt);

// ---- conjugation and basis conversion --------------------------------------

// coefficients alpha with xi = sum_k alpha_k D_l^k; xi given by its integer
// coefficient vector a_0..a_l on sigma^0..sigma^l; triangular unit system
std::vector<i64> basis_convert(const std::vector<i64>& xi_coeffs);

// integer coefficients of D_l^k on sigma^0..sigma^l
std::vector<i64> derivative_coeffs(i64 ell, i64 k);

// Exact unique integer expansion of c D c^{-1} in the derivative basis;
// keys are exponent vectors kappa' aligned with D.factors.  Over Z the
// expansion is NOT triangular: the coefficients at kappa' > kappa are
// divisible by binomials of l+1 and only vanish after reduction mod p^m.
std::map<std::vector<i64>, i64> conj_formula_coeffs(const DerivativeOp& D);

// The same expansion with coefficients reduced mod p^m into the symmetric
// range and zeros dropped.  When p^m | l_i + 1 and k_i < p for every factor
// this is triangular (kappa' <= kappa componentwise) with leading entry
// (-1)^{order}; neither property survives exponents k >= p.
std::map<std::vector<i64>, i64> conj_formula_reduced(const DerivativeOp& D,
                                                     const CoeffRing& ring);

// exact identity (sigma-1) D_l^k = C(l+1,k) - sigma D_l^{k-1} in Z[G_l] for
// k >= 1 (for k = 0 the exact norm annihilation (sigma-1) N = 0), plus the
// congruence (sigma-1) D_l^k = -sigma D_l^{k-1} mod p^m when p^m | l+1 and
// 0 < k < p
bool identity_334(i64 ell, i64 k, const CoeffRing& ring);

}  // namespace bbreg
