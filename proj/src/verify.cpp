#include "bbreg/verify.hpp"

#include <algorithm>

#include "bbreg/localmodel.hpp"
#include "bbreg/newform.hpp"
#include "bbreg/thetal.hpp"

namespace bbreg {

namespace {

struct Checker {
  SuiteResult res;

  void check(bool ok, const std::string& prop) {
    ++res.checks;
    if (ok) return;
    ++res.failures;
    if (std::find(res.failed_properties.begin(), res.failed_properties.end(), prop) ==
        res.failed_properties.end())
      res.failed_properties.push_back(prop);
  }
};

Tower make_tower(const std::vector<i64>& primes, i64 h = 1) {
  TowerSpec sp;
  sp.disc = -23;
  sp.h_k = h;
  if (h > 1) sp.gamma1 = {h};
  sp.primes = primes;
  return Tower(sp);
}

RingElem random_elem(Rng& rng, const CoeffRing& ring) {
  std::vector<i64> c(ring.d());
  for (auto& x : c) x = rng.uniform(0, ring.q() - 1);
  return RingElem(ring, std::move(c));
}

Vec random_vec(Rng& rng, const CoeffRing& ring, i64 coords) {
  Vec v(coords * ring.d());
  for (auto& x : v) x = rng.uniform(0, ring.q() - 1);
  return v;
}

u64 mix(u64 seed, u64 salt) { return seed * 1000003u + salt * 0x9e3779b97f4a7c15u + 1u; }

// ---- taylor ----------------------------------------------------------------

SuiteResult suite_taylor(u64 seed, i64 trials) {
  Checker ck;
  ck.res.name = "taylor";
  const std::vector<std::vector<i64>> towers = {{5},      {11},     {17},
                                                {5, 11},  {5, 17},  {11, 17}};
  for (i64 t = 0; t < trials; ++t) {
    Rng rng(mix(seed, (u64)t));
    std::vector<i64> primes = (t % 67 == 66)
                                  ? std::vector<i64>{5, 11, 17}
                                  : towers[(size_t)rng.uniform(0, (i64)towers.size() - 1)];
    CoeffRing ring = (t % 3 == 0)   ? CoeffRing::zp(3, 1)
                     : (t % 3 == 1) ? CoeffRing::zp(3, 2)
                                    : CoeffRing::galois(3, 2, 2);
    Tower tw = make_tower(primes);
    Group G(tw, tw.top_level(), GroupKind::G);
    GModule M = regular_module(ring, G, G, 1);
    Vec m = random_vec(rng, ring, G.order());
    bool ok = true;
    try {
      TaylorTable table(M, m);  // construction verifies the reconstruction
      // spot-check one random derivative against the direct expansion
      std::vector<std::pair<i64, i64>> factors;
      for (i64 l : primes) factors.emplace_back(l, rng.uniform(0, l));
      DerivativeOp D(factors);
      ok = table.at(D) == M.act_zgr(D.expand(G), m);
    } catch (const error&) {
      ok = false;
    }
    ck.check(ok, "taylor_reconstruction");
  }
  return ck.res;
}

// ---- identities -------------------------------------------------------------

SuiteResult suite_identities(u64 seed, i64 trials) {
  Checker ck;
  ck.res.name = "identities";
  // sigma-shift identity, exact plus mod-p^m congruence where p^m | l+1
  const std::map<i64, CoeffRing> rings = {{5, CoeffRing::zp(3, 1)},
                                          {11, CoeffRing::zp(3, 1)},
                                          {17, CoeffRing::zp(3, 2)}};
  for (const auto& [ell, ring] : rings)
    for (i64 k = 1; k <= ell; ++k)
      ck.check(identity_334(ell, k, ring), "sigma_shift_identity");

  // derivative-basis round trips
  i64 per_ell = std::max<i64>(1, trials / 6);
  for (i64 ell : {5LL, 11LL, 17LL}) {
    for (i64 t = 0; t < per_ell; ++t) {
      Rng rng(mix(seed, (u64)(ell * 1000 + t)));
      std::vector<i64> xi(ell + 1);
      for (auto& c : xi) c = rng.uniform(-20, 20);
      std::vector<i64> alpha = basis_convert(xi);
      std::vector<i64> back(ell + 1, 0);
      for (i64 k = 0; k <= ell; ++k) {
        std::vector<i64> dk = derivative_coeffs(ell, k);
        for (i64 i = 0; i <= ell; ++i) back[i] += alpha[k] * dk[i];
      }
      ck.check(back == xi, "basis_round_trip");
    }
  }
  // worked value: sigma = D^1 - 2 D^2 + 3 D^3 - 4 D^4 + 5 D^5 on the 6-cycle
  {
    std::vector<i64> sigma(6, 0);
    sigma[1] = 1;
    ck.check(basis_convert(sigma) == std::vector<i64>{0, 1, -2, 3, -4, 5},
             "basis_worked_value");
  }
  // augmentation of the derivative operators
  for (i64 ell : {5LL, 11LL, 17LL})
    for (i64 k = 0; k <= ell; ++k) {
      std::vector<i64> dk = derivative_coeffs(ell, k);
      i64 aug = 0;
      for (i64 c : dk) aug += c;
      ck.check(aug == binom(ell + 1, k + 1), "derivative_augmentation");
    }
  // starred level-change coefficients have unit entries
  {
    CoeffRing R = CoeffRing::zp(3, 2);
    Tower tw = make_tower({5, 11, 17});
    std::map<i64, RingElem> units;
    for (i64 l : tw.primes()) units.emplace(l, RingElem::one(R));
    MockEulerSystem sys = gen_system(seed, tw, R, +1, units, 1, false);
    const i64 S = 5 * 11 * 17;
    for (i64 T : tw.divisors(S)) {
      auto [aT, aTs] = coefficients_aT(sys, S, T);
      bool units_ok = true;
      i64 expected_terms = 1;
      for (i64 l : tw.primes())
        if (T % l != 0) expected_terms *= l + 1;
      if ((i64)aTs.terms().size() != expected_terms) units_ok = false;
      for (const auto& [idx, c] : aTs.terms())
        if (c != RingElem::one(R)) units_ok = false;
      ck.check(units_ok, "starred_coefficient_units");
      i64 expected_aug = tw.mobius(T) * expected_terms;
      ck.check(aT.aug() == RingElem::from_int(R, expected_aug),
               "coefficient_augmentation");
    }
  }
  return ck.res;
}

// ---- compat ----------------------------------------------------------------

void compat_on_system(Checker& ck, const MockEulerSystem& sys, const char* tag) {
  ck.check(check_norm_relations(sys).ok, std::string(tag) + "_norm_relations");
  ck.check(check_conjugation(sys).ok, std::string(tag) + "_conjugation");
  const i64 S = sys.top();
  TensorElem L = l_function(sys, S).value;
  for (i64 T : sys.tower().divisors(S))
    ck.check(compatibility_check(sys, S, T, L),
             std::string(tag) + "_l_compatibility");
}

SuiteResult suite_compat(u64 seed, i64 trials,
                         const std::optional<MockEulerSystem>& fixture) {
  Checker ck;
  ck.res.name = "compat";
  Tower tw = make_tower({5, 11});
  i64 nsys = std::max<i64>(1, trials / 40);
  for (i64 i = 0; i < nsys; ++i) {
    Rng rng(mix(seed, (u64)i + 500));
    CoeffRing ring = (i % 2 == 0) ? CoeffRing::zp(3, 2) : CoeffRing::zp(3, 3);
    std::map<i64, RingElem> units{{5, random_elem(rng, ring)},
                                  {11, random_elem(rng, ring)}};
    int sign = (i % 4 < 2) ? +1 : -1;
    MockEulerSystem sys =
        gen_system(mix(seed, (u64)i), tw, ring, sign, units, 1, true);
    compat_on_system(ck, sys, "generated");
  }
  // the unit-trace instance where one local factor vanishes mod p^m
  {
    CoeffRing R9 = CoeffRing::zp(3, 2);
    NewformData delta = delta_coefficients(12);
    std::map<i64, RingElem> units{{5, unit_u(delta, 5, R9)},
                                  {11, unit_u(delta, 11, R9)}};
    ck.check(units.at(5) == RingElem::from_int(R9, 3), "delta_unit_value");
    RingElem six = RingElem::from_int(R9, 6);
    ck.check(((six - units.at(5)) * (six + units.at(5))).is_zero(),
             "delta_vanishing_factor");
    MockEulerSystem sys = gen_system(mix(seed, 99), tw, R9, +1, units, 1, true);
    compat_on_system(ck, sys, "delta");
  }
  if (fixture) compat_on_system(ck, *fixture, "fixture");
  return ck.res;
}

// ---- regulator --------------------------------------------------------------

SuiteResult suite_regulator(u64 seed, i64 trials) {
  Checker ck;
  ck.res.name = "regulator";
  Tower tw = make_tower({5, 11});
  CoeffRing R = CoeffRing::zp(3, 2);
  Group gam(tw, 55, GroupKind::Gamma);
  FiltrationPtr filt = build_filtration(gam, R);
  auto aug_zero = [&](Rng& rng) {
    GroupRingElem g(R, gam);
    for (i64 ell : {5LL, 11LL}) {
      RingElem c = random_elem(rng, R);
      g.add_term(gam.sigma(ell), c);
      g.add_term(gam.identity(), -c);
    }
    return g;
  };
  auto entry = [&](Rng& rng) {
    TensorElem rep(R, gam, {R.m()});
    rep.set_component(0, aug_zero(rng).dense());
    return GradedClass{filt, 1, std::move(rep)};
  };
  i64 ndet = std::max<i64>(1, trials / 50);
  for (i64 s = 0; s < ndet; ++s) {
    for (int n : {2, 3}) {
      Rng rng(mix(seed, (u64)(s * 10 + n)));
      std::vector<std::vector<GradedClass>> mx;
      for (int i = 0; i < n; ++i) {
        std::vector<GradedClass> row;
        for (int j = 0; j < n; ++j) row.push_back(entry(rng));
        mx.push_back(std::move(row));
      }
      GradedClass d = graded_det(mx, filt);
      auto swapped = mx;
      std::swap(swapped[0], swapped[1]);
      ck.check(graded_eq(graded_det(swapped, filt),
                         graded_scale(d, RingElem::from_int(R, -1))),
               "det_alternating");
      RingElem sc = random_elem(rng, R);
      auto scaled = mx;
      for (auto& e : scaled[0]) e = graded_scale(e, sc);
      ck.check(graded_eq(graded_det(scaled, filt), graded_scale(d, sc)),
               "det_multilinear");
      // a depth-two perturbation of one entry leaves the class unchanged
      auto bumped = mx;
      GroupRingElem pert = aug_zero(rng) * aug_zero(rng);
      TensorElem rep = bumped[0][0].rep;
      rep.set_component(
          0, (GroupRingElem::from_dense(R, gam, rep.component(0)) + pert).dense());
      bumped[0][0] = GradedClass{filt, 1, std::move(rep)};
      ck.check(graded_eq(graded_det(bumped, filt), d), "det_representative_free");
    }
  }
  i64 ncfg = std::max<i64>(1, trials / 40);
  for (i64 i = 0; i < ncfg; ++i) {
    CoeffRing ring = (i % 2 == 0) ? CoeffRing::zp(3, 2) : CoeffRing::zp(3, 3);
    Rng rng(mix(seed, (u64)i + 900));
    std::map<i64, RingElem> units{{5, random_elem(rng, ring)},
                                  {11, random_elem(rng, ring)}};
    for (i64 T : {5LL, 11LL}) {
      RegulatorConfig cfg = gen_regulator_config(mix(seed, (u64)(i * 2 + T)), tw,
                                                 ring, 55, T, units,
                                                 1 + (int)(i % 3), 2);
      ck.check(regulator_compatibility_check(cfg, tw, ring, 55, T, units),
               "regulator_compatibility");
    }
  }
  return ck.res;
}

// ---- local ------------------------------------------------------------------

SuiteResult suite_local(u64 seed, i64 trials) {
  Checker ck;
  ck.res.name = "local";
  for (i64 ell : {5LL, 17LL, 53LL}) {
    // odd p only: the +/- eigenspace projectors need 2 invertible
    for (i64 p : {3LL, 5LL, 7LL}) {
      for (int m = 1; ipow(p, m) <= ell + 1; ++m) {
        if ((ell + 1) % ipow(p, m) != 0) continue;
        CoeffRing R = CoeffRing::zp(p, m);
        for (i64 a : {i64{0}, ipow(p, m), 3 * ipow(p, m)}) {
          FrobeniusModel fm = build_model(ell, a, 12, R);
          ck.check(fm.F * fm.F == Mat2::identity(R), "frobenius_involution");
          ck.check(h1f_model(fm).log_p_order() == 2 * m, "h1f_order");
          ck.check(eigenspace_ranks(fm) == std::pair<int, int>(1, 1),
                   "eigenspace_ranks");
        }
      }
    }
  }
  i64 nfuzz = std::min<i64>(std::max<i64>(trials, 1) * 5, 1000);
  for (i64 t = 0; t < nfuzz; ++t) {
    Rng rng(mix(seed, (u64)t + 7000));
    i64 p = (t % 2 == 0) ? 3 : 5;
    int m = 1 + (int)rng.uniform(0, 1);
    i64 q = ipow(p, m);
    CoeffRing R = CoeffRing::zp(p, m);
    i64 a = q * rng.uniform(-50, 50);
    i64 lp1 = q * rng.uniform(1, 50);
    FrobDivision f = frob_division(a, lp1 - 1, R);
    i64 sp = (a + lp1) / q, sm = (a - lp1) / q;
    bool ok = f.plus_unit == (mod_reduce(sp, p) != 0) &&
              f.minus_unit == (mod_reduce(sm, p) != 0) &&
              f.plus == RingElem::from_int(R, sp) &&
              f.minus == RingElem::from_int(R, sm);
    ck.check(ok, "frob_division_flags");
  }
  return ck.res;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"taylor", "identities", "compat",
                                                 "regulator", "local"};
  return names;
}

SuiteResult run_suite(const std::string& name, u64 seed, i64 trials,
                      const std::optional<MockEulerSystem>& fixture) {
  if (name == "taylor") return suite_taylor(seed, trials);
  if (name == "identities") return suite_identities(seed, trials);
  if (name == "compat") return suite_compat(seed, trials, fixture);
  if (name == "regulator") return suite_regulator(seed, trials);
  if (name == "local") return suite_local(seed, trials);
  throw schema_error("unknown suite: " + name);
}

nlohmann::ordered_json verify_report(const std::string& suite, u64 seed, i64 trials,
                                     const std::optional<MockEulerSystem>& fixture) {
  std::vector<std::string> todo;
  if (suite == "all")
    todo = suite_names();
  else
    todo.push_back(suite);
  nlohmann::ordered_json j;
  j["schema"] = kSchemaTag;
  j["kind"] = "verify_report";
  j["suite"] = suite;
  j["seed"] = dec((i64)seed);
  j["trials"] = dec(trials);
  j["suites"] = nlohmann::ordered_json::array();
  i64 failures = 0;
  for (const auto& name : todo) {
    SuiteResult r = run_suite(name, seed, trials, fixture);
    nlohmann::ordered_json sj;
    sj["name"] = r.name;
    sj["checks"] = dec(r.checks);
    sj["failures"] = dec(r.failures);
    sj["failed_properties"] = r.failed_properties;
    j["suites"].push_back(std::move(sj));
    failures += r.failures;
  }
  j["ok"] = failures == 0;
  return j;
}

}  // namespace bbreg
