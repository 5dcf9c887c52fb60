#pragma once

#include "bbreg/derivatives.hpp"
#include "bbreg/mockeuler.hpp"

namespace bbreg {

// ---- theta elements and their traced variants ------------------------------

// theta_T = sum over sigma in G_T of sigma(y_T) (x) sigma, in M_T (x) R[G_T]
TensorElem theta(const MockEulerSystem& sys, i64 T);

// diagonal action of s in Gamma_T on M_T (x) R[Gamma_T] (both legs at once)
TensorElem diag_act(const MockEulerSystem& sys, i64 T, const GroupElem& s,
                    const TensorElem& x);

// zeta_T = sum over the given lift of the bottom layer of the diagonal action
// on theta_T viewed inside M_T (x) R[Gamma_T]; default is the canonical lift
TensorElem zeta_with_lift(const MockEulerSystem& sys, i64 T,
                          const std::vector<GroupElem>& lift);
TensorElem zeta(const MockEulerSystem& sys, i64 T);
// zeta with the involution applied to the group-ring leg
TensorElem zeta_star(const MockEulerSystem& sys, i64 T);

// ---- level change ----------------------------------------------------------

// raise a tensor with `legs` module legs from level `from` to level `to`:
// module legs by the degree-(l+1) restriction map, group leg by the inclusion
// Gamma_from < Gamma_to
TensorElem embed_tensor(const MockEulerSystem& sys, i64 from, i64 to,
                        const TensorElem& x, int legs = 1);

// lower a tensor: module legs by the splitting of the restriction map (whose
// orbit sum over the dropped factors is corestriction), group leg by the
// projection; left inverse of embed_tensor
TensorElem mu_tensor(const MockEulerSystem& sys, i64 from, i64 to,
                     const TensorElem& x, int legs = 1);

// ---- the arithmetic L-function ---------------------------------------------

// a_T = mobius(T) * sum over the subgroup prod_{l | S/T} G_l of Gamma_S, and
// its starred companion a_T* = chi_K(T) * a_T (equal to the plain sum, since
// mobius and chi_K cancel over inert primes)
std::pair<GroupRingElem, GroupRingElem> coefficients_aT(const MockEulerSystem& sys,
                                                        i64 S, i64 T);

struct LFunctionElement {
  i64 level = 1;
  TensorElem value;  // in M_S (x) M_S (x) R[Gamma_S], module rank rank_of(S)^2
};

// the two tensor factors sum_{T|S} b_T * embed(zeta_T) with default b = a
TensorElem l_left(const MockEulerSystem& sys, i64 S);
TensorElem l_right(const MockEulerSystem& sys, i64 S);
LFunctionElement l_function(const MockEulerSystem& sys, i64 S);
// custom coefficient families (keyed by the divisor T), replacing a_T / a_T*
LFunctionElement l_function_with(const MockEulerSystem& sys, i64 S,
                                 const std::map<i64, GroupRingElem>& left_coeffs,
                                 const std::map<i64, GroupRingElem>& right_coeffs);

// prod over l | S/T of (1 + l - u_l)(1 + l + u_l)
RingElem euler_factor(const MockEulerSystem& sys, i64 S, i64 T);

// mu_{S,T}(L_S) = L_T * euler_factor, checked exactly; the second form reuses
// a precomputed level-S L-value
bool compatibility_check(const MockEulerSystem& sys, i64 S, i64 T);
bool compatibility_check(const MockEulerSystem& sys, i64 S, i64 T,
                         const TensorElem& l_s_value);

// ---- vanishing orders and leading terms ------------------------------------

struct VanishingReport {
  int theta_order = 0;      // against the augmentation filtration of R[G_S]
  int zeta_order = 0;       // the remaining orders use R[Gamma_S]
  int zeta_star_order = 0;
  int left_order = 0;
  int right_order = 0;
  int l_order = 0;
  bool theta_meets_rho = false;  // theta_order >= rho
  bool l_meets_two_rho = false;  // l_order >= 2 * rho
};
VanishingReport vanishing_report(const MockEulerSystem& sys, i64 S, int rho);

struct LeadingTermReport {
  GradedClass zeta_class;       // leading term of zeta_S at the given level
  bool invariant_mod_p = false; // diagonal Gamma_S-invariance of the class mod p
};
LeadingTermReport leading_terms(const MockEulerSystem& sys, i64 S, int r);

struct RankProfile {
  int rho = 0;
  int rho_tilde = 0;
  bool parity = false;  // the two input ranks differ by exactly one
};
RankProfile rank_profile(int rho_plus, int rho_minus);

}  // namespace bbreg
