#include "bbreg/thetal.hpp"

#include <algorithm>

namespace bbreg {

namespace {

// module-leg permutation action (regular representation of the carrier group)
TensorElem carrier_perm_act(const TensorElem& x, const std::vector<i64>& perm, int copies) {
  const i64 h = (i64)perm.size();
  TensorElem out(x.ring(), x.group(), x.exps());
  for (int b = 0; b < copies; ++b)
    for (i64 i = 0; i < h; ++i)
      out.set_component((int)(b * h + perm[i]), x.component((int)(b * h + i)));
  return out;
}

// carrier projection map between two levels of the same tower
std::vector<i64> carrier_proj(const Group& big, const Group& small) {
  std::vector<i64> proj((size_t)big.order());
  for (i64 j = 0; j < big.order(); ++j)
    proj[(size_t)j] = small.index_of(project(big.elem_at(j), small));
  return proj;
}

std::vector<i64> carrier_embed(const Group& small, const Group& big) {
  std::vector<i64> emb((size_t)small.order());
  for (i64 i = 0; i < small.order(); ++i) emb[(size_t)i] = big.index_of(small.elem_at(i));
  return emb;
}

TensorElem reduce_tensor(const TensorElem& x, int e) {
  CoeffRing to = x.ring().quotient(e);
  std::vector<int> exps = x.exps();
  for (int& v : exps) v = std::min(v, e);
  TensorElem out(to, x.group(), exps);
  out.data() = vecops::reduce_to(x.ring(), to, x.data());
  return out;
}

}  // namespace

TensorElem theta(const MockEulerSystem& sys, i64 T) {
  Group G(sys.tower(), T, GroupKind::G);
  return resolvent(sys.module(T, G), sys.y(T));
}

TensorElem diag_act(const MockEulerSystem& sys, i64 T, const GroupElem& s,
                    const TensorElem& x) {
  const Group& Gam = sys.gamma(T);
  if (x.group() != Gam) throw ring_mismatch_error("diagonal action: wrong group leg");
  TensorElem moved = x.mul_group(s);
  return carrier_perm_act(moved, left_mul_perm(Gam, project(s, Gam)), sys.copies());
}

TensorElem zeta_with_lift(const MockEulerSystem& sys, i64 T,
                          const std::vector<GroupElem>& lift) {
  const Group& Gam = sys.gamma(T);
  TensorElem th = theta(sys, T).embed_group(Gam);
  TensorElem acc = TensorElem::free_zero(sys.ring(), Gam, sys.rank_of(T));
  for (const GroupElem& g : lift) acc = acc + diag_act(sys, T, g, th);
  return acc;
}

TensorElem zeta(const MockEulerSystem& sys, i64 T) {
  return zeta_with_lift(sys, T, norm_lift(sys.gamma(T)));
}

TensorElem zeta_star(const MockEulerSystem& sys, i64 T) {
  return zeta(sys, T).star_group();
}

TensorElem embed_tensor(const MockEulerSystem& sys, i64 from, i64 to,
                        const TensorElem& x, int legs) {
  if (to % from != 0) throw error("embed: source level must divide target level");
  const Group& Gf = sys.gamma(from);
  const Group& Gt = sys.gamma(to);
  if (x.group() != Gf) throw ring_mismatch_error("embed: tensor lives at another level");
  if (legs < 1 || legs > 2) throw error("embed supports one or two module legs");
  const i64 hf = Gf.order(), ht = Gt.order();
  const int g = sys.copies();
  const int rank_f = g * (int)hf, rank_t = g * (int)ht;
  if (x.rank() != (legs == 1 ? rank_f : rank_f * rank_f))
    throw dimension_mismatch_error("embed: wrong module rank");
  std::vector<i64> proj = carrier_proj(Gt, Gf);
  std::vector<i64> gmap = carrier_embed(Gf, Gt);
  const int d = sys.ring().d();

  auto embed_slice = [&](const Vec& src) {
    Vec out((size_t)(ht * d), 0);
    for (i64 k = 0; k < hf; ++k)
      for (int t = 0; t < d; ++t) out[(size_t)(gmap[(size_t)k] * d + t)] = src[(size_t)(k * d + t)];
    return out;
  };
  auto leg_map = [&](int comp_t) {  // target module index -> source module index
    int b = comp_t / (int)ht;
    i64 j = comp_t % (int)ht;
    return (int)(b * hf + proj[(size_t)j]);
  };

  int out_rank = legs == 1 ? rank_t : rank_t * rank_t;
  TensorElem out = TensorElem::free_zero(sys.ring(), Gt, out_rank);
  if (legs == 1) {
    for (int c = 0; c < rank_t; ++c)
      out.set_component(c, embed_slice(x.component(leg_map(c))));
  } else {
    for (int c1 = 0; c1 < rank_t; ++c1) {
      int s1 = leg_map(c1);
      for (int c2 = 0; c2 < rank_t; ++c2)
        out.set_component(c1 * rank_t + c2,
                          embed_slice(x.component(s1 * rank_f + leg_map(c2))));
    }
  }
  return out;
}

TensorElem mu_tensor(const MockEulerSystem& sys, i64 from, i64 to,
                     const TensorElem& x, int legs) {
  if (from % to != 0) throw error("mu: target level must divide source level");
  const Group& Gf = sys.gamma(from);
  const Group& Gt = sys.gamma(to);
  if (x.group() != Gf) throw ring_mismatch_error("mu: tensor lives at another level");
  if (legs < 1 || legs > 2) throw error("mu supports one or two module legs");
  const i64 hf = Gf.order(), ht = Gt.order();
  const int g = sys.copies();
  const int rank_f = g * (int)hf, rank_t = g * (int)ht;
  if (x.rank() != (legs == 1 ? rank_f : rank_f * rank_f))
    throw dimension_mismatch_error("mu: wrong module rank");
  // Module legs are lowered by the splitting of the restriction map: the
  // basis vector at gamma survives (to its projection) only when gamma already
  // lies in the lower-level carrier.  Its orbit sum over the dropped factors
  // realizes corestriction; using raw corestriction on the legs instead would
  // scale the two sides of the compatibility identity differently mod p^m.
  std::vector<i64> proj = carrier_proj(Gf, Gt);
  std::vector<i64> gproj = proj;  // the group-ring leg uses the full projection
  std::vector<i64> split((size_t)hf, -1);
  for (i64 i = 0; i < hf; ++i)
    if (Gt.contains(Gf.elem_at(i))) split[(size_t)i] = Gt.index_of(Gf.elem_at(i));
  const int d = sys.ring().d();
  const i64 q = sys.ring().q();

  auto leg_map = [&](int comp_f) {  // -1 when the component is annihilated
    int b = comp_f / (int)hf;
    i64 i = comp_f % (int)hf;
    i64 s = split[(size_t)i];
    return s < 0 ? (i64)-1 : (i64)(b * ht + s);
  };

  int out_rank = legs == 1 ? rank_t : rank_t * rank_t;
  TensorElem out = TensorElem::free_zero(sys.ring(), Gt, out_rank);
  Vec& od = out.data();
  const Vec& xd = x.data();
  const i64 slice_f = hf * d, slice_t = ht * d;
  int in_rank = x.rank();
  for (int c = 0; c < in_rank; ++c) {
    i64 dest;
    if (legs == 1) {
      dest = leg_map(c);
    } else {
      i64 d1 = leg_map(c / rank_f), d2 = leg_map(c % rank_f);
      dest = (d1 < 0 || d2 < 0) ? -1 : d1 * rank_t + d2;
    }
    if (dest < 0) continue;
    for (i64 k = 0; k < hf; ++k) {
      i64 dk = gproj[(size_t)k];
      for (int t = 0; t < d; ++t) {
        i64& slot = od[(size_t)(dest * slice_t + dk * d + t)];
        slot = mod_reduce(slot + xd[(size_t)(c * slice_f + k * d + t)], q);
      }
    }
  }
  return out;
}

std::pair<GroupRingElem, GroupRingElem> coefficients_aT(const MockEulerSystem& sys,
                                                        i64 S, i64 T) {
  if (S % T != 0) throw error("coefficients: T must divide S");
  const Group& Gam = sys.gamma(S);
  const CoeffRing& R = sys.ring();
  std::vector<i64> primes;
  for (i64 l : sys.tower().primes())
    if ((S / T) % l == 0) primes.push_back(l);
  GroupRingElem base(R, Gam);
  std::vector<i64> exps(primes.size(), 0);
  for (;;) {
    GroupElem g = Gam.identity();
    for (size_t i = 0; i < primes.size(); ++i)
      g = Gam.mul(g, Gam.sigma(primes[i], exps[i]));
    base.add_term(g, RingElem::one(R));
    size_t j = 0;
    while (j < primes.size() && exps[j] == primes[j]) exps[j++] = 0;
    if (j == primes.size()) break;
    ++exps[j];
  }
  int mu = sys.tower().mobius(T);
  int chi = sys.tower().chi_k(T);
  GroupRingElem aT = base * RingElem::from_int(R, mu);
  GroupRingElem aTs = base * RingElem::from_int(R, (i64)mu * chi);
  return {aT, aTs};
}

TensorElem l_left(const MockEulerSystem& sys, i64 S) {
  TensorElem acc = TensorElem::free_zero(sys.ring(), sys.gamma(S), sys.rank_of(S));
  for (i64 T : sys.tower().divisors(S)) {
    auto [aT, aTs] = coefficients_aT(sys, S, T);
    acc = acc + embed_tensor(sys, T, S, zeta(sys, T), 1).mul_group_ring(aT);
  }
  return acc;
}

TensorElem l_right(const MockEulerSystem& sys, i64 S) {
  TensorElem acc = TensorElem::free_zero(sys.ring(), sys.gamma(S), sys.rank_of(S));
  for (i64 T : sys.tower().divisors(S)) {
    auto [aT, aTs] = coefficients_aT(sys, S, T);
    acc = acc + embed_tensor(sys, T, S, zeta_star(sys, T), 1).mul_group_ring(aTs);
  }
  return acc;
}

LFunctionElement l_function(const MockEulerSystem& sys, i64 S) {
  return LFunctionElement{S, l_left(sys, S).tensor(l_right(sys, S))};
}

LFunctionElement l_function_with(const MockEulerSystem& sys, i64 S,
                                 const std::map<i64, GroupRingElem>& left_coeffs,
                                 const std::map<i64, GroupRingElem>& right_coeffs) {
  TensorElem left = TensorElem::free_zero(sys.ring(), sys.gamma(S), sys.rank_of(S));
  TensorElem right = left;
  for (i64 T : sys.tower().divisors(S)) {
    auto bl = left_coeffs.find(T);
    auto br = right_coeffs.find(T);
    if (bl == left_coeffs.end() || br == right_coeffs.end())
      throw missing_coefficients_error("no coefficient supplied for divisor " +
                                       std::to_string(T));
    left = left + embed_tensor(sys, T, S, zeta(sys, T), 1).mul_group_ring(bl->second);
    right = right + embed_tensor(sys, T, S, zeta_star(sys, T), 1).mul_group_ring(br->second);
  }
  return LFunctionElement{S, left.tensor(right)};
}

RingElem euler_factor(const MockEulerSystem& sys, i64 S, i64 T) {
  if (S % T != 0) throw error("euler factor: T must divide S");
  const CoeffRing& R = sys.ring();
  RingElem f = RingElem::one(R);
  for (i64 l : sys.tower().primes()) {
    if ((S / T) % l != 0) continue;
    RingElem lp1 = RingElem::from_int(R, l + 1);
    const RingElem& u = sys.unit(l);
    f = f * (lp1 - u) * (lp1 + u);
  }
  return f;
}

bool compatibility_check(const MockEulerSystem& sys, i64 S, i64 T,
                         const TensorElem& l_s_value) {
  TensorElem lhs = mu_tensor(sys, S, T, l_s_value, 2);
  TensorElem rhs = l_function(sys, T).value.scaled(euler_factor(sys, S, T));
  return lhs == rhs;
}

bool compatibility_check(const MockEulerSystem& sys, i64 S, i64 T) {
  return compatibility_check(sys, S, T, l_function(sys, S).value);
}

VanishingReport vanishing_report(const MockEulerSystem& sys, i64 S, int rho) {
  const CoeffRing& R = sys.ring();
  VanishingReport rep;
  Group G(sys.tower(), S, GroupKind::G);
  FiltrationTable filt_g(G, R);
  rep.theta_order = vanishing_order(theta(sys, S), filt_g, filt_g.depth());
  FiltrationTable filt_gam(sys.gamma(S), R);
  int cap = filt_gam.depth();
  rep.zeta_order = vanishing_order(zeta(sys, S), filt_gam, cap);
  rep.zeta_star_order = vanishing_order(zeta_star(sys, S), filt_gam, cap);
  rep.left_order = vanishing_order(l_left(sys, S), filt_gam, cap);
  rep.right_order = vanishing_order(l_right(sys, S), filt_gam, cap);
  rep.l_order = vanishing_order(l_function(sys, S).value, filt_gam, cap);
  rep.theta_meets_rho = rep.theta_order >= rho;
  rep.l_meets_two_rho = rep.l_order >= std::min(2 * rho, cap);
  return rep;
}

LeadingTermReport leading_terms(const MockEulerSystem& sys, i64 S, int r) {
  const CoeffRing& R = sys.ring();
  FiltrationPtr filt = build_filtration(sys.gamma(S), R);
  TensorElem z = zeta(sys, S);
  LeadingTermReport rep{leading_term(z, r, filt), false};

  // diagonal Gamma_S-invariance of the class modulo p
  CoeffRing Rp = R.quotient(1);
  TensorElem zp = reduce_tensor(z, 1);
  FiltrationTable filt_p(sys.gamma(S), Rp);
  if (r + 1 > filt_p.depth()) return rep;
  bool invariant = true;
  for (const GroupElem& s : sys.gamma(S).generators()) {
    TensorElem moved = carrier_perm_act(zp.mul_group(s),
                                        left_mul_perm(sys.gamma(S), s), sys.copies());
    if (!in_filtration_image(moved - zp, filt_p, r + 1)) invariant = false;
  }
  rep.invariant_mod_p = invariant;
  return rep;
}

RankProfile rank_profile(int rho_plus, int rho_minus) {
  if (rho_plus < 0 || rho_minus < 0) throw error("rank profile needs nonnegative ranks");
  RankProfile rp;
  rp.rho = rho_plus == rho_minus ? rho_plus : std::max(rho_plus, rho_minus) - 1;
  rp.rho_tilde = rho_plus + rho_minus;
  rp.parity = std::abs(rho_plus - rho_minus) == 1;
  return rp;
}

}  // namespace bbreg
