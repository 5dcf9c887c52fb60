#pragma once

#include <map>
#include <optional>

#include "bbreg/derivatives.hpp"

namespace bbreg {

// Synthetic Euler system over the tower: for every divisor T of the top level
// a free module M_T = (R[Gamma_T])^g with an element y_T, linked by the two
// Heegner relations
//   cores_{Tl -> T}(y_Tl) = u_l * y_T      and      c(y_T) = -sign * y_T
// (conjugation witness normalized to 1 at generation time).
class MockEulerSystem {
 public:
  MockEulerSystem(Tower tower, CoeffRing ring, i64 top, int copies, int sign,
                  std::map<i64, RingElem> units, std::map<i64, Vec> ys);

  const Tower& tower() const { return tower_; }
  const CoeffRing& ring() const { return ring_; }
  i64 top() const { return top_; }
  int copies() const { return copies_; }
  int sign() const { return sign_; }
  const RingElem& unit(i64 ell) const;

  const Group& gamma(i64 T) const;  // Gamma_T handle
  int rank_of(i64 T) const;         // copies * |Gamma_T|
  const Vec& y(i64 T) const;
  // M_T with an arbitrary acting group (acts through projection to Gamma_T)
  GModule module(i64 T, const Group& actors) const;

  // the conjugation involution: basis vector at gamma goes to gamma^{-1}
  Vec c_act(i64 T, const Vec& v) const;
  // section splitting cores: basis at gamma included with trivial new slots
  Vec sec(i64 from, i64 to, const Vec& v) const;
  // restriction: basis at gamma goes to the sum over its fiber
  Vec res(i64 from, i64 to, const Vec& v) const;
  // corestriction: fiber sum down to the smaller level
  Vec cores(i64 from, i64 to, const Vec& v) const;

  // copy with one level's element replaced (imports, corruption tests)
  MockEulerSystem with_y(i64 T, Vec v) const;

 private:
  Tower tower_;
  CoeffRing ring_;
  i64 top_;
  int copies_;
  int sign_;
  std::map<i64, RingElem> units_;
  std::map<i64, Group> gammas_;
  std::map<i64, Vec> ys_;
  void level_check(i64 T) const;
};

// Deterministic generation: y_1 = z - sign*c(z) for seeded random z;
// y_Tl = u_l * sec(y_T) [+ optional c-symmetrized noise from ker(cores)].
MockEulerSystem gen_system(u64 seed, const Tower& tower, const CoeffRing& ring, int sign,
                           const std::map<i64, RingElem>& units, int copies, bool noise);

struct NormReport {
  bool ok = true;
  std::vector<std::pair<i64, i64>> failures;  // (lower level T, prime l)
};
NormReport check_norm_relations(const MockEulerSystem& sys);

struct ConjReport {
  bool ok = true;
  std::map<i64, std::optional<GroupElem>> witness;  // per level
};
ConjReport check_conjugation(const MockEulerSystem& sys);

// P = D_kappa D_l^1 (y_{supp(kappa)*l}); throws when l lies in supp(kappa)
Vec derived_class_P(const MockEulerSystem& sys, const DerivativeOp& kappa, i64 ell);
// operators strictly below kappa*D_l^1 whose derivative of y does not vanish
std::vector<DerivativeOp> assumption_check(const MockEulerSystem& sys,
                                           const DerivativeOp& kappa, i64 ell);

struct DescentResult {
  Vec d;
  bool lift_independent = false;  // equal under random set-theoretic lifts
  bool gamma_fixed = false;       // d invariant under all of Gamma_T
};
// d = N_T(P) summed over the canonical Gamma_1-lift; requires P fixed by G_T
DescentResult descend(const MockEulerSystem& sys, i64 T, const Vec& P, Rng& rng,
                      int lift_trials = 10);

int epsilon_kappa(const DerivativeOp& kappa, int sign);
// c(d) = epsilon_kappa * d in M_T
bool eigen_check(const MockEulerSystem& sys, i64 T, const Vec& d,
                 const DerivativeOp& kappa);

// F-dimension of the residue span of {sigma_l^i y_l mod p}
int galois_span_dim(const MockEulerSystem& sys, i64 ell);

// D_kappa(y_S) = res_{S' -> S}(D_{kappa'}(y_{S'})) * prod u_l over l | S/S',
// where S' = cond(kappa) and kappa' drops the order-0 slots
bool factorization_check(const MockEulerSystem& sys, const DerivativeOp& kappa);

}  // namespace bbreg
