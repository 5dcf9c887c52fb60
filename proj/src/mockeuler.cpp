#include "bbreg/mockeuler.hpp"

#include <algorithm>

namespace bbreg {

namespace {

Vec random_vec(Rng& rng, const CoeffRing& R, int rank) {
  Vec v((size_t)rank * R.d());
  for (auto& x : v) x = rng.uniform(0, R.q() - 1);
  return v;
}

}  // namespace

MockEulerSystem::MockEulerSystem(Tower tower, CoeffRing ring, i64 top, int copies, int sign,
                                 std::map<i64, RingElem> units, std::map<i64, Vec> ys)
    : tower_(std::move(tower)), ring_(std::move(ring)), top_(top), copies_(copies),
      sign_(sign), units_(std::move(units)), ys_(std::move(ys)) {
  if (!tower_.divides_tower(top_)) throw error("system level must divide the tower top");
  if (copies_ < 1) throw error("system needs at least one module copy");
  if (sign_ != 1 && sign_ != -1) throw error("system sign must be +1 or -1");
  tower_.check_ring(ring_);
  for (i64 ell : tower_.primes()) {
    if (top_ % ell != 0) continue;
    auto it = units_.find(ell);
    if (it == units_.end()) throw error("missing unit u_l for tower prime " + std::to_string(ell));
    if (it->second.ring() != ring_) throw ring_mismatch_error("unit u_l in the wrong ring");
  }
  for (i64 T : tower_.divisors(top_)) {
    gammas_.emplace(T, Group(tower_, T, GroupKind::Gamma));
    auto it = ys_.find(T);
    if (it == ys_.end()) throw error("missing y_T at level " + std::to_string(T));
    if ((i64)it->second.size() != (i64)rank_of(T) * ring_.d())
      throw dimension_mismatch_error("y_T has the wrong length at level " + std::to_string(T));
  }
}

void MockEulerSystem::level_check(i64 T) const {
  if (gammas_.find(T) == gammas_.end())
    throw error("level " + std::to_string(T) + " does not divide the system top");
}

const RingElem& MockEulerSystem::unit(i64 ell) const {
  auto it = units_.find(ell);
  if (it == units_.end()) throw error("no unit for prime " + std::to_string(ell));
  return it->second;
}

const Group& MockEulerSystem::gamma(i64 T) const {
  level_check(T);
  return gammas_.at(T);
}

int MockEulerSystem::rank_of(i64 T) const { return copies_ * (int)gamma(T).order(); }

const Vec& MockEulerSystem::y(i64 T) const {
  level_check(T);
  return ys_.at(T);
}

GModule MockEulerSystem::module(i64 T, const Group& actors) const {
  return regular_module(ring_, actors, gamma(T), copies_);
}

Vec MockEulerSystem::c_act(i64 T, const Vec& v) const {
  const Group& G = gamma(T);
  const i64 h = G.order();
  const int d = ring_.d();
  std::vector<i64> perm = inversion_perm(G);
  Vec out(v.size(), 0);
  for (int b = 0; b < copies_; ++b)
    for (i64 i = 0; i < h; ++i)
      for (int k = 0; k < d; ++k)
        out[(size_t)((b * h + perm[i]) * d + k)] = v[(size_t)((b * h + i) * d + k)];
  return out;
}

Vec MockEulerSystem::sec(i64 from, i64 to, const Vec& v) const {
  const Group& Gf = gamma(from);
  const Group& Gt = gamma(to);
  if (to % from != 0) throw error("section: source level must divide target level");
  const i64 hf = Gf.order(), ht = Gt.order();
  const int d = ring_.d();
  if ((i64)v.size() != (i64)copies_ * hf * d)
    throw dimension_mismatch_error("section input has the wrong length");
  Vec out((size_t)(copies_ * ht * d), 0);
  for (i64 i = 0; i < hf; ++i) {
    // the inactive new slots of a lower-level element are already zero
    i64 j = Gt.index_of(Gf.elem_at(i));
    for (int b = 0; b < copies_; ++b)
      for (int k = 0; k < d; ++k)
        out[(size_t)((b * ht + j) * d + k)] = v[(size_t)((b * hf + i) * d + k)];
  }
  return out;
}

Vec MockEulerSystem::res(i64 from, i64 to, const Vec& v) const {
  const Group& Gf = gamma(from);
  const Group& Gt = gamma(to);
  if (to % from != 0) throw error("restriction: source level must divide target level");
  const i64 hf = Gf.order(), ht = Gt.order();
  const int d = ring_.d();
  if ((i64)v.size() != (i64)copies_ * hf * d)
    throw dimension_mismatch_error("restriction input has the wrong length");
  Vec out((size_t)(copies_ * ht * d), 0);
  for (i64 j = 0; j < ht; ++j) {
    i64 i = Gf.index_of(project(Gt.elem_at(j), Gf));
    for (int b = 0; b < copies_; ++b)
      for (int k = 0; k < d; ++k)
        out[(size_t)((b * ht + j) * d + k)] = v[(size_t)((b * hf + i) * d + k)];
  }
  return out;
}

Vec MockEulerSystem::cores(i64 from, i64 to, const Vec& v) const {
  const Group& Gf = gamma(from);
  const Group& Gt = gamma(to);
  if (from % to != 0) throw error("corestriction: target level must divide source level");
  const i64 hf = Gf.order(), ht = Gt.order();
  const int d = ring_.d();
  if ((i64)v.size() != (i64)copies_ * hf * d)
    throw dimension_mismatch_error("corestriction input has the wrong length");
  Vec out((size_t)(copies_ * ht * d), 0);
  const i64 q = ring_.q();
  for (i64 i = 0; i < hf; ++i) {
    i64 j = Gt.index_of(project(Gf.elem_at(i), Gt));
    for (int b = 0; b < copies_; ++b)
      for (int k = 0; k < d; ++k) {
        i64& slot = out[(size_t)((b * ht + j) * d + k)];
        slot = mod_reduce(slot + v[(size_t)((b * hf + i) * d + k)], q);
      }
  }
  return out;
}

MockEulerSystem MockEulerSystem::with_y(i64 T, Vec v) const {
  level_check(T);
  if ((i64)v.size() != (i64)rank_of(T) * ring_.d())
    throw dimension_mismatch_error("replacement y_T has the wrong length");
  std::map<i64, Vec> ys = ys_;
  ys[T] = std::move(v);
  return MockEulerSystem(tower_, ring_, top_, copies_, sign_, units_, std::move(ys));
}

MockEulerSystem gen_system(u64 seed, const Tower& tower, const CoeffRing& ring, int sign,
                           const std::map<i64, RingElem>& units, int copies, bool noise) {
  i64 top = 1;
  for (i64 ell : tower.primes()) top *= ell;
  std::vector<i64> levels = tower.divisors(top);
  std::map<i64, Vec> zeros;
  {
    for (i64 T : levels) {
      Group g(tower, T, GroupKind::Gamma);
      zeros[T] = vecops::zero(ring, copies * (int)g.order());
    }
  }
  MockEulerSystem shell(tower, ring, top, copies, sign, units, zeros);

  Rng rng(seed);
  // per-level building block w_T: a c-antisymmetrized (for sign +1; symmetrized
  // for sign -1) element of the common kernel of all one-prime corestrictions
  std::map<i64, Vec> ws;
  for (i64 T : levels) {
    if (T != 1 && !noise) {
      ws[T] = zeros[T];
      continue;
    }
    Vec v = random_vec(rng, ring, shell.rank_of(T));
    for (i64 ell : tower.primes()) {
      if (T % ell != 0) continue;
      Vec down = shell.sec(T / ell, T, shell.cores(T, T / ell, v));
      vecops::sub_in_place(ring, v, down);
    }
    Vec cv = shell.c_act(T, v);
    vecops::scale_int_in_place(ring, cv, -sign);
    vecops::add_in_place(ring, v, cv);
    ws[T] = std::move(v);
  }

  // y_T = sum over divisors T'' of T of (prod_{l | T/T''} u_l) sec(w_{T''})
  std::map<i64, Vec> ys;
  for (i64 T : levels) {
    Vec y = zeros[T];
    for (i64 Tpp : tower.divisors(T)) {
      RingElem coef = RingElem::one(ring);
      for (i64 ell : tower.primes())
        if ((T / Tpp) % ell == 0) coef = coef * units.at(ell);
      Vec s = shell.sec(Tpp, T, ws[Tpp]);
      vecops::scale_in_place(ring, s, coef);
      vecops::add_in_place(ring, y, s);
    }
    ys[T] = std::move(y);
  }
  return MockEulerSystem(tower, ring, top, copies, sign, units, std::move(ys));
}

NormReport check_norm_relations(const MockEulerSystem& sys) {
  NormReport rep;
  const CoeffRing& R = sys.ring();
  for (i64 T : sys.tower().divisors(sys.top())) {
    if (T == 1) continue;
    for (i64 ell : sys.tower().primes()) {
      if (T % ell != 0) continue;
      Vec lhs = sys.cores(T, T / ell, sys.y(T));
      Vec rhs = sys.y(T / ell);
      vecops::scale_in_place(R, rhs, sys.unit(ell));
      if (lhs != rhs) {
        rep.ok = false;
        rep.failures.emplace_back(T / ell, ell);
      }
    }
  }
  return rep;
}

ConjReport check_conjugation(const MockEulerSystem& sys) {
  ConjReport rep;
  const CoeffRing& R = sys.ring();
  for (i64 T : sys.tower().divisors(sys.top())) {
    const Group& G = sys.gamma(T);
    GModule M = sys.module(T, G);
    Vec cy = sys.c_act(T, sys.y(T));
    std::optional<GroupElem> found;
    for (i64 idx = 0; idx < G.order(); ++idx) {
      GroupElem s = G.elem_at(idx);
      Vec cand = M.act(s, sys.y(T));
      vecops::scale_int_in_place(R, cand, -sys.sign());
      if (cand == cy) {
        found = s;
        break;
      }
    }
    if (!found) rep.ok = false;
    rep.witness[T] = found;
  }
  return rep;
}

Vec derived_class_P(const MockEulerSystem& sys, const DerivativeOp& kappa, i64 ell) {
  sys.tower().prime_index(ell);  // throws unless a tower prime
  for (const auto& [l, k] : kappa.factors)
    if (l == ell) throw error("derived class: prime l already occurs in kappa");
  i64 T = kappa.support() * ell;
  std::vector<std::pair<i64, i64>> factors = kappa.factors;
  factors.emplace_back(ell, 1);
  DerivativeOp D(std::move(factors));
  Group G(sys.tower(), T, GroupKind::G);
  GModule M = sys.module(T, G);
  return M.act_zgr(D.expand(G), sys.y(T));
}

std::vector<DerivativeOp> assumption_check(const MockEulerSystem& sys,
                                           const DerivativeOp& kappa, i64 ell) {
  sys.tower().prime_index(ell);
  for (const auto& [l, k] : kappa.factors)
    if (l == ell) throw error("derived class: prime l already occurs in kappa");
  std::vector<std::pair<i64, i64>> full = kappa.factors;
  full.emplace_back(ell, 1);
  i64 T = 1;
  for (const auto& [l, k] : full) T *= l;
  Group G(sys.tower(), T, GroupKind::G);
  GModule M = sys.module(T, G);

  std::vector<DerivativeOp> failing;
  std::vector<i64> exps(full.size(), 0);
  for (;;) {
    bool is_full = true;
    for (size_t i = 0; i < full.size(); ++i)
      if (exps[i] != full[i].second) is_full = false;
    if (!is_full) {
      std::vector<std::pair<i64, i64>> f;
      for (size_t i = 0; i < full.size(); ++i) f.emplace_back(full[i].first, exps[i]);
      DerivativeOp Dp(std::move(f));
      if (!vecops::is_zero(M.act_zgr(Dp.expand(G), sys.y(T)))) failing.push_back(Dp);
    }
    size_t j = 0;
    while (j < full.size() && exps[j] == full[j].second) exps[j++] = 0;
    if (j == full.size()) break;
    ++exps[j];
  }
  return failing;
}

DescentResult descend(const MockEulerSystem& sys, i64 T, const Vec& P, Rng& rng,
                      int lift_trials) {
  const CoeffRing& R = sys.ring();
  const Group& Gam = sys.gamma(T);
  GModule M = sys.module(T, Gam);
  Group G(sys.tower(), T, GroupKind::G);
  for (const GroupElem& s : G.generators()) {
    Vec moved = M.act(s, P);
    if (moved != P)
      throw not_fixed_error("descent input is not fixed by the prime-level factors");
  }

  auto norm_sum = [&](const std::vector<GroupElem>& lift) {
    Vec acc = M.zero();
    for (const GroupElem& g : lift) vecops::add_in_place(R, acc, M.act(g, P));
    return acc;
  };
  DescentResult out;
  out.d = norm_sum(norm_lift(Gam));
  out.gamma_fixed = true;
  for (const GroupElem& s : Gam.generators())
    if (M.act(s, out.d) != out.d) out.gamma_fixed = false;
  out.lift_independent = true;
  for (int t = 0; t < lift_trials; ++t)
    if (norm_sum(norm_lift_random(Gam, rng)) != out.d) out.lift_independent = false;
  return out;
}

int epsilon_kappa(const DerivativeOp& kappa, int sign) {
  return (kappa.order() % 2 == 0 ? 1 : -1) * sign;
}

bool eigen_check(const MockEulerSystem& sys, i64 T, const Vec& d, const DerivativeOp& kappa) {
  Vec lhs = sys.c_act(T, d);
  Vec rhs = d;
  vecops::scale_int_in_place(sys.ring(), rhs, epsilon_kappa(kappa, sys.sign()));
  return lhs == rhs;
}

int galois_span_dim(const MockEulerSystem& sys, i64 ell) {
  sys.tower().prime_index(ell);
  const CoeffRing& R = sys.ring();
  CoeffRing Rp = R.quotient(1);
  const Group& Gam = sys.gamma(ell);
  GModule M = sys.module(ell, Gam);
  std::vector<Vec> rows;
  Vec v = sys.y(ell);
  for (i64 i = 0; i <= ell; ++i) {
    rows.push_back(vecops::reduce_to(R, Rp, v));
    v = M.act(Gam.sigma(ell), v);
  }
  RSpan span(Rp, sys.rank_of(ell), rows);
  int lo = span.log_order();
  if (lo % R.d() != 0) throw error("residue span size is not a power of the residue field");
  return lo / R.d();
}

bool factorization_check(const MockEulerSystem& sys, const DerivativeOp& kappa) {
  i64 S = kappa.support();
  i64 Sp = kappa.conductor();
  if (Sp == S) return true;  // no order-0 slots: nothing to factor
  const CoeffRing& R = sys.ring();

  Group GS(sys.tower(), S, GroupKind::G);
  Vec lhs = sys.module(S, GS).act_zgr(kappa.expand(GS), sys.y(S));

  std::vector<std::pair<i64, i64>> f;
  for (const auto& [l, k] : kappa.factors)
    if (k > 0) f.emplace_back(l, k);
  DerivativeOp kp(std::move(f));
  Group GSp(sys.tower(), Sp, GroupKind::G);
  Vec t = sys.module(Sp, GSp).act_zgr(kp.expand(GSp), sys.y(Sp));
  Vec rhs = sys.res(Sp, S, t);
  RingElem coef = RingElem::one(R);
  for (const auto& [l, k] : kappa.factors)
    if (k == 0) coef = coef * sys.unit(l);
  vecops::scale_in_place(R, rhs, coef);
  return lhs == rhs;
}

}  // namespace bbreg
