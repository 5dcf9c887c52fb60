#include "bbreg/regulator.hpp"

#include <algorithm>

#include "bbreg/thetal.hpp"

namespace bbreg {

namespace {

void check_square_form(const MockPairing& pair) {
  const size_t n = pair.form.size();
  for (const auto& row : pair.form)
    if (row.size() != n)
      throw dimension_mismatch_error("pairing form matrix is not square");
}

void check_vec_dim(const RVec& v, size_t n, const char* what) {
  if (v.size() != n) throw dimension_mismatch_error(what);
}

// sign of a permutation via inversion count (n <= 6)
int perm_sign(const std::vector<int>& perm) {
  int inv = 0;
  for (size_t i = 0; i < perm.size(); ++i)
    for (size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inv;
  return (inv & 1) ? -1 : 1;
}

RingElem random_elem(Rng& rng, const CoeffRing& ring) {
  std::vector<i64> c(ring.d());
  for (auto& x : c) x = rng.uniform(0, ring.q() - 1);
  return RingElem(ring, std::move(c));
}

// f = p^v * (unit lift) exactly in R, for v = val(f) < m
RingElem unit_part_lift(const RingElem& f, int v) {
  return RingElem(f.ring(), f.divide_p_power(v).coeffs());
}

}  // namespace

RingElem base_form(const MockPairing& pair, const RVec& x, const RVec& y) {
  check_square_form(pair);
  const size_t n = pair.form.size();
  check_vec_dim(x, n, "left pairing argument has wrong dimension");
  check_vec_dim(y, n, "right pairing argument has wrong dimension");
  RingElem acc = RingElem::zero(pair.ring);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) acc = acc + x[a] * pair.form[a][b] * y[b];
  return acc;
}

TensorElem t_element(const MockPairing& pair, const Tower& tower, i64 S) {
  if (!tower.divides_tower(S))
    throw dimension_mismatch_error("level is not a divisor of the tower top");
  Group gam(tower, S, GroupKind::Gamma);
  TensorElem t(pair.ring, gam, {pair.ring.m()});
  for (i64 ell : tower.primes()) {
    if (S % ell != 0) continue;
    auto it = pair.weights.find(ell);
    if (it == pair.weights.end())
      throw missing_coefficients_error("pairing weight missing for a level prime");
    t.add_term(0, gam.sigma(ell), it->second);
    t.add_term(0, gam.identity(), -it->second);
  }
  return t;
}

GradedClass pairing_value(const MockPairing& pair, const Tower& tower, i64 S,
                          FiltrationPtr filt, const RVec& x, const RVec& y) {
  if (filt->group().level() != S || filt->group().kind() != GroupKind::Gamma)
    throw dimension_mismatch_error("filtration does not match the pairing level");
  RingElem b = base_form(pair, x, y);
  TensorElem rep = t_element(pair, tower, S).scaled(b);
  return GradedClass{std::move(filt), 1, std::move(rep)};
}

GradedClass mu_class(const GradedClass& a, const Group& target, FiltrationPtr filt_t) {
  if (filt_t->group() != target)
    throw dimension_mismatch_error("target filtration does not match the target group");
  return GradedClass{std::move(filt_t), a.level, a.rep.project_group(target)};
}

std::vector<std::vector<GradedClass>> pairing_matrix(const MockPairing& pair,
                                                     const Tower& tower, i64 S,
                                                     FiltrationPtr filt,
                                                     const LatticePair& lat) {
  if (lat.a_rows.size() != lat.b_rows.size())
    throw dimension_mismatch_error("lattice bases have different ranks");
  std::vector<std::vector<GradedClass>> mx;
  mx.reserve(lat.a_rows.size());
  for (const auto& p : lat.a_rows) {
    std::vector<GradedClass> row;
    row.reserve(lat.b_rows.size());
    for (const auto& q : lat.b_rows)
      row.push_back(pairing_value(pair, tower, S, filt, p, q));
    mx.push_back(std::move(row));
  }
  return mx;
}

GradedClass graded_det(const std::vector<std::vector<GradedClass>>& mx,
                       FiltrationPtr filt) {
  const int n = static_cast<int>(mx.size());
  if (n > 6) throw size_cap_error("graded determinant expansion capped at 6 x 6");
  if (n > filt->depth())
    throw filtration_error("graded determinant level exceeds the filtration depth");
  const CoeffRing& R = filt->ring();
  const Group& G = filt->group();
  for (const auto& row : mx) {
    if (static_cast<int>(row.size()) != n)
      throw dimension_mismatch_error("graded determinant requires a square matrix");
    for (const auto& e : row)
      if (e.level != 1 || e.rep.rank() != 1)
        throw filtration_error("graded determinant entries must be level-1 group-ring classes");
  }
  if (n == 0) {
    TensorElem rep(R, G, {R.m()});
    rep.add_term(0, G.identity(), RingElem::one(R));
    return GradedClass{std::move(filt), 0, std::move(rep)};
  }
  const i64 grlen = G.order() * R.d();
  Vec acc = vecops::zero(R, static_cast<int>(G.order()));
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  do {
    GradedClass prod = mx[0][perm[0]];
    for (int i = 1; i < n; ++i) prod = graded_mul(prod, mx[i][perm[i]]);
    Vec term = prod.rep.component(0);
    vecops::scale_int_in_place(R, term, perm_sign(perm));
    vecops::add_in_place(R, acc, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  (void)grlen;
  TensorElem rep(R, G, {R.m()});
  rep.set_component(0, acc);
  return GradedClass{std::move(filt), n, std::move(rep)};
}

GradedClass regulator_raw(const MockPairing& pair, const Tower& tower, i64 S,
                          FiltrationPtr filt, const LatticePair& lat) {
  check_square_form(pair);
  const int n = static_cast<int>(pair.form.size());
  const int rho = static_cast<int>(lat.a_rows.size());
  if (rho < 1) throw dimension_mismatch_error("lattice bases must have rank >= 1");
  if (lat.b_rows.size() != static_cast<size_t>(rho))
    throw dimension_mismatch_error("lattice bases have different ranks");
  for (const auto& r : lat.a_rows) check_vec_dim(r, n, "A-basis row dimension mismatch");
  for (const auto& r : lat.b_rows) check_vec_dim(r, n, "B-basis row dimension mismatch");
  const CoeffRing& R = pair.ring;
  auto mx = pairing_matrix(pair, tower, S, filt, lat);

  const Group& G = filt->group();
  const i64 grlen = G.order() * R.d();
  std::vector<Vec> comps(static_cast<size_t>(n) * n,
                         vecops::zero(R, static_cast<int>(G.order())));
  for (int i = 0; i < rho; ++i) {
    for (int j = 0; j < rho; ++j) {
      std::vector<std::vector<GradedClass>> minor;
      minor.reserve(rho - 1);
      for (int a = 0; a < rho; ++a) {
        if (a == i) continue;
        std::vector<GradedClass> row;
        row.reserve(rho - 1);
        for (int b = 0; b < rho; ++b) {
          if (b == j) continue;
          row.push_back(mx[a][b]);
        }
        minor.push_back(std::move(row));
      }
      Vec det = graded_det(minor, filt).rep.component(0);
      if ((i + j) & 1) vecops::scale_int_in_place(R, det, -1);
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          RingElem s = lat.a_rows[i][a] * lat.b_rows[j][b];
          if (s.is_zero()) continue;
          Vec term = det;
          vecops::scale_in_place(R, term, s);
          vecops::add_in_place(R, comps[static_cast<size_t>(a) * n + b], term);
        }
      }
    }
  }
  (void)grlen;
  TensorElem rep(R, G, std::vector<int>(static_cast<size_t>(n) * n, R.m()));
  for (int c = 0; c < n * n; ++c) rep.set_component(c, comps[c]);
  int lvl = std::min(rho - 1, filt->depth());
  return GradedClass{std::move(filt), lvl, std::move(rep)};
}

GradedClass regulator(const MockPairing& pair, const Tower& tower, i64 S,
                      FiltrationPtr filt, const LatticePair& lat) {
  RingElem idx = lat.index_a * lat.index_b;
  if (!idx.is_unit())
    throw index_not_invertible_error("lattice index product is not a unit");
  return graded_scale(regulator_raw(pair, tower, S, std::move(filt), lat),
                      idx.inverse());
}

RingElem regulator_euler_factor(const CoeffRing& ring,
                                const std::map<i64, RingElem>& units,
                                const Tower& tower, i64 S, i64 T) {
  if (S % T != 0) throw dimension_mismatch_error("T does not divide S");
  RingElem acc = RingElem::one(ring);
  for (i64 ell : tower.primes()) {
    if (S % ell != 0 || T % ell == 0) continue;
    auto it = units.find(ell);
    if (it == units.end())
      throw missing_coefficients_error("unit u_l missing for a level prime");
    RingElem lp1 = RingElem::from_int(ring, ell + 1);
    acc = acc * (lp1 - it->second) * (lp1 + it->second);
  }
  return acc;
}

RegulatorConfig gen_regulator_config(u64 seed, const Tower& tower,
                                     const CoeffRing& ring, i64 S, i64 T,
                                     const std::map<i64, RingElem>& units,
                                     int rho_tilde, int dim) {
  if (S % T != 0 || !tower.divides_tower(S))
    throw dimension_mismatch_error("invalid level pair for config generation");
  if (rho_tilde < 1 || dim < 1)
    throw dimension_mismatch_error("config rank and dimension must be positive");
  Rng rng(seed);
  RegulatorConfig cfg{MockPairing{ring, {}, {}},
                      LatticePair{{}, {}, RingElem::one(ring), RingElem::one(ring)},
                      LatticePair{{}, {}, RingElem::one(ring), RingElem::one(ring)},
                      1, 1};
  cfg.pair.form.assign(dim, RVec());
  for (auto& row : cfg.pair.form) {
    row.reserve(dim);
    for (int j = 0; j < dim; ++j) row.push_back(random_elem(rng, ring));
  }
  for (i64 ell : tower.primes())
    if (S % ell == 0) cfg.pair.weights.emplace(ell, random_elem(rng, ring));
  auto random_rows = [&](int count) {
    RMat rows;
    rows.reserve(count);
    for (int i = 0; i < count; ++i) {
      RVec r;
      r.reserve(dim);
      for (int j = 0; j < dim; ++j) r.push_back(random_elem(rng, ring));
      rows.push_back(std::move(r));
    }
    return rows;
  };
  cfg.lat_t.a_rows = random_rows(rho_tilde);
  cfg.lat_t.b_rows = random_rows(rho_tilde);
  cfg.lat_s.a_rows = cfg.lat_t.a_rows;  // the A-side does not depend on the level
  cfg.lat_s.b_rows = cfg.lat_t.b_rows;

  // per extra prime: split the local factor f_l = p^v * (unit) and push the
  // unit into one B-row at level S while |B(.)| absorbs the p-part
  auto local_order = [&](i64 ell) {
    auto it = units.find(ell);
    if (it == units.end())
      throw missing_coefficients_error("unit u_l missing for a level prime");
    RingElem lp1 = RingElem::from_int(ring, ell + 1);
    RingElem f = (lp1 - it->second) * (lp1 + it->second);
    int v = f.valuation();
    i64 b = 1;
    RingElem w = RingElem::one(ring);
    if (v >= ring.m() || v == RingElem::val_infinity) {
      for (int t = 0; t < ring.m(); ++t) b *= ring.p();
    } else {
      for (int t = 0; t < v; ++t) b *= ring.p();
      w = unit_part_lift(f, v);
    }
    return std::pair<i64, RingElem>{b, w};
  };
  int ridx = 0;
  for (i64 ell : tower.primes()) {
    if (S % ell != 0) continue;
    auto [b, w] = local_order(ell);
    if (T % ell == 0) {
      cfg.b_order_t *= b;
      cfg.b_order_s *= b;
    } else {
      cfg.b_order_s *= b;
      for (auto& x : cfg.lat_s.b_rows[ridx]) x = x * w;
      ridx = (ridx + 1) % rho_tilde;
    }
  }
  return cfg;
}

bool regulator_compatibility_check(const RegulatorConfig& cfg, const Tower& tower,
                                   const CoeffRing& ring, i64 S, i64 T,
                                   const std::map<i64, RingElem>& units) {
  Group gam_t(tower, T, GroupKind::Gamma);
  FiltrationPtr filt_s = build_filtration(Group(tower, S, GroupKind::Gamma), ring);
  FiltrationPtr filt_t = build_filtration(gam_t, ring);
  GradedClass reg_s = regulator(cfg.pair, tower, S, filt_s, cfg.lat_s);
  GradedClass reg_t = regulator(cfg.pair, tower, T, filt_t, cfg.lat_t);
  GradedClass lhs = mu_class(reg_s, gam_t, filt_t);
  lhs.rep = lhs.rep.scaled_int(cfg.b_order_s);
  RingElem f = regulator_euler_factor(ring, units, tower, S, T);
  GradedClass rhs = graded_scale(reg_t, f);
  rhs.rep = rhs.rep.scaled_int(cfg.b_order_t);
  return graded_eq(lhs, rhs);
}

Question52Report question_52_report(const MockEulerSystem& sys,
                                    const MockPairing& pair,
                                    const LatticePair& lat, i64 sha_order,
                                    i64 b_order) {
  const CoeffRing& R = sys.ring();
  if (pair.ring != R)
    throw ring_mismatch_error("pairing and system use different coefficient rings");
  const i64 S = sys.top();
  const int n = static_cast<int>(pair.form.size());
  if (n != static_cast<int>(sys.rank_of(1)))
    throw dimension_mismatch_error(
        "pairing dimension must match the bottom-level module rank");
  Question52Report rep;
  rep.rho_tilde = static_cast<int>(lat.a_rows.size());
  const int r = rep.rho_tilde - 1;

  const Group& gam_s = sys.gamma(S);
  const Group& gam_1 = sys.gamma(1);
  FiltrationPtr filt = build_filtration(gam_s, R);
  TensorElem L = l_function(sys, S).value;
  rep.l_order = vanishing_order(L, *filt, filt->depth());
  rep.order_meets = rep.l_order >= r;
  rep.leading_defined = r <= filt->depth() && in_filtration_image(L, *filt, r);
  if (!rep.leading_defined) {
    rep.status = "leading term below expected level";
    return rep;
  }
  GradedClass lead = leading_term(L, r, filt);

  GradedClass reg = regulator(pair, sys.tower(), S, filt, lat);
  // push the two module legs up through the level-raising restriction map
  const i64 big = sys.rank_of(S);
  const i64 gs = gam_s.order();
  const i64 g1 = gam_1.order();
  std::vector<i64> pull(big);
  for (i64 A = 0; A < big; ++A) {
    const i64 c = A / gs;
    GroupElem low = project(gam_s.elem_at(A % gs), gam_1);
    pull[A] = c * g1 + gam_1.index_of(low);
  }
  TensorElem rhs(R, gam_s, std::vector<int>(static_cast<size_t>(big) * big, R.m()));
  for (i64 A = 0; A < big; ++A)
    for (i64 B = 0; B < big; ++B)
      rhs.set_component(static_cast<int>(A * big + B),
                        reg.rep.component(static_cast<int>(pull[A] * n + pull[B])));
  rhs = rhs.scaled_int(sha_order * b_order);
  GradedClass rhs_cls{filt, r, std::move(rhs)};
  rep.rhs_zero = rhs_cls.is_zero_class();

  if (rep.rhs_zero) {
    rep.consistent = lead.is_zero_class();
    rep.status = rep.consistent ? "consistent, c undetermined" : "inconsistent";
    return rep;
  }
  // solve for a scalar c by enumeration when the ring is small enough
  i64 ring_size = 1;
  bool too_big = false;
  for (int t = 0; t < R.d(); ++t) {
    ring_size *= R.q();
    if (ring_size > 10000) {
      too_big = true;
      break;
    }
  }
  if (too_big) {
    rep.status = "undetermined (ring too large)";
    return rep;
  }
  std::vector<i64> digits(R.d(), 0);
  for (i64 idx = 0; idx < ring_size; ++idx) {
    i64 t = idx;
    for (int k = 0; k < R.d(); ++k) {
      digits[k] = t % R.q();
      t /= R.q();
    }
    RingElem cand(R, digits);
    if (graded_eq(lead, GradedClass{filt, r, rhs_cls.rep.scaled(cand)})) {
      rep.consistent = true;
      rep.c_determined = true;
      rep.c = cand;
      rep.status = "c solved";
      return rep;
    }
  }
  rep.status = "no scalar matches";
  return rep;
}

}  // namespace bbreg
