#include "bbreg/derivatives.hpp"

#include <algorithm>

namespace bbreg {

namespace {

// active tower primes of G, in slot order
std::vector<i64> slot_primes(const Group& G) {
  std::vector<i64> out;
  const auto& primes = G.tower().primes();
  for (size_t i = 0; i < primes.size(); ++i)
    if (G.is_active_prime((int)i)) out.push_back(primes[i]);
  return out;
}

}  // namespace

// ---- DerivativeOp ----------------------------------------------------------

DerivativeOp::DerivativeOp(std::vector<std::pair<i64, i64>> f) : factors(std::move(f)) {
  for (size_t i = 0; i < factors.size(); ++i) {
    auto [l, k] = factors[i];
    if (!is_prime(l)) throw error("derivative factor prime expected");
    if (k < 0 || k > l) throw error("derivative exponent out of range [0, l]");
    for (size_t j = 0; j < i; ++j)
      if (factors[j].first == l) throw error("duplicate derivative prime");
  }
}

i64 DerivativeOp::order() const {
  i64 s = 0;
  for (auto [l, k] : factors) s += k;
  return s;
}

i64 DerivativeOp::support() const {
  i64 s = 1;
  for (auto [l, k] : factors) s *= l;
  return s;
}

i64 DerivativeOp::conductor() const {
  i64 s = 1;
  for (auto [l, k] : factors)
    if (k > 0) s *= l;
  return s;
}

int DerivativeOp::eta(i64 p) const {
  int e = eta_infinity;
  for (auto [l, k] : factors)
    if (k > 0) e = std::min(e, val_p_int(l + 1, p, 62));
  return e;
}

ZGroupRingElem DerivativeOp::expand(const Group& G) const {
  ZGroupRingElem prod = ZGroupRingElem::one(G);
  for (auto [l, k] : factors) {
    ZGroupRingElem f(G);
    for (i64 i = k; i <= l; ++i) f.add_term(G.sigma(l, i), binom(i, k));
    prod = prod * f;
  }
  return prod;
}

GroupRingElem DerivativeOp::expand_ring(const CoeffRing& R, const Group& G) const {
  return expand(G).to_ring(R);
}

std::vector<DerivativeOp> derivative_box(const Group& G) {
  std::vector<i64> primes = slot_primes(G);
  std::vector<DerivativeOp> out;
  std::vector<i64> k(primes.size(), 0);
  while (true) {
    std::vector<std::pair<i64, i64>> f;
    for (size_t j = 0; j < primes.size(); ++j) f.emplace_back(primes[j], k[j]);
    out.emplace_back(std::move(f));
    size_t j = primes.size();
    while (j-- > 0) {
      if (k[j] < primes[j]) {
        ++k[j];
        break;
      }
      k[j] = 0;
      if (j == 0) return out;
    }
    if (primes.empty()) return out;
  }
}

// ---- resolvent and Taylor table --------------------------------------------

TensorElem resolvent(const GModule& M, const Vec& m) {
  const Group& G = M.group();
  const CoeffRing& R = M.ring();
  const int d = R.d();
  const i64 n = G.order();
  TensorElem theta(R, G, M.exps());
  for (i64 t = 0; t < n; ++t) {
    Vec v = M.act(G.elem_at(t), m);
    for (int i = 0; i < M.rank(); ++i)
      for (int k = 0; k < d; ++k) theta.data()[((i64)i * n + t) * d + k] = v[i * d + k];
  }
  return theta;
}

TaylorTable::TaylorTable(const GModule& M, const Vec& m)
    : group_(M.group()), ring_(M.ring()) {
  if (group_.kind() != GroupKind::G)
    throw error("Taylor expansion is defined over the prime-slot group");
  for (i64 l : slot_primes(group_)) box_.push_back(l + 1);
  const i64 n = group_.order();
  const int width = M.rank() * ring_.d();
  const i64 q = ring_.q();

  dk_.resize((size_t)n);
  for (i64 t = 0; t < n; ++t) dk_[(size_t)t] = M.act(group_.elem_at(t), m);
  std::vector<Vec> original = dk_;

  // forward transform per axis: new[k] = sum_{i >= k} C(i,k) old[i]
  i64 w = n;
  for (i64 nj : box_) {
    w /= nj;
    for (i64 a = 0; a < n / (nj * w); ++a) {
      for (i64 b = 0; b < w; ++b) {
        i64 base = a * nj * w + b;
        std::vector<Vec> tmp((size_t)nj);
        for (i64 k = 0; k < nj; ++k) {
          Vec acc((size_t)width, 0);
          for (i64 i = k; i < nj; ++i) {
            i64 c = binom(i, k);
            const Vec& row = dk_[(size_t)(base + i * w)];
            for (int s = 0; s < width; ++s) acc[(size_t)s] += c * row[(size_t)s];
          }
          for (int s = 0; s < width; ++s) acc[(size_t)s] = mod_reduce(acc[(size_t)s], q);
          tmp[(size_t)k] = std::move(acc);
        }
        for (i64 k = 0; k < nj; ++k) dk_[(size_t)(base + k * w)] = std::move(tmp[(size_t)k]);
      }
    }
  }

  // reconstruction: inverting every axis ((sigma-1)^k expanded with no
  // wraparound since k <= l) must reproduce the resolvent table exactly
  std::vector<Vec> rec = dk_;
  w = n;
  for (i64 nj : box_) {
    w /= nj;
    for (i64 a = 0; a < n / (nj * w); ++a) {
      for (i64 b = 0; b < w; ++b) {
        i64 base = a * nj * w + b;
        std::vector<Vec> tmp((size_t)nj);
        for (i64 i = 0; i < nj; ++i) {
          Vec acc((size_t)width, 0);
          for (i64 k = i; k < nj; ++k) {
            i64 c = binom(k, i) * (((k - i) % 2 == 0) ? 1 : -1);
            const Vec& row = rec[(size_t)(base + k * w)];
            for (int s = 0; s < width; ++s) acc[(size_t)s] += c * row[(size_t)s];
          }
          for (int s = 0; s < width; ++s) acc[(size_t)s] = mod_reduce(acc[(size_t)s], q);
          tmp[(size_t)i] = std::move(acc);
        }
        for (i64 i = 0; i < nj; ++i) rec[(size_t)(base + i * w)] = std::move(tmp[(size_t)i]);
      }
    }
  }
  if (rec != original) throw error("internal error: Taylor reconstruction mismatch");
}

i64 TaylorTable::kappa_index(const std::vector<i64>& kappa) const {
  if (kappa.size() != box_.size())
    throw dimension_mismatch_error("derivative exponent vector has wrong length");
  i64 idx = 0;
  for (size_t j = 0; j < box_.size(); ++j) {
    if (kappa[j] < 0 || kappa[j] >= box_[j])
      throw error("derivative exponent outside the box");
    idx = idx * box_[j] + kappa[j];
  }
  return idx;
}

const Vec& TaylorTable::at(const std::vector<i64>& kappa) const {
  return dk_[(size_t)kappa_index(kappa)];
}

const Vec& TaylorTable::at(const DerivativeOp& D) const {
  std::vector<i64> primes = slot_primes(group_);
  std::vector<i64> kappa(primes.size(), 0);
  for (auto [l, k] : D.factors) {
    auto it = std::find(primes.begin(), primes.end(), l);
    if (it == primes.end()) throw error("derivative prime not active in this group");
    kappa[(size_t)(it - primes.begin())] = k;
  }
  return at(kappa);
}

// ---- divisibility criterion ------------------------------------------------

DivisibilityReport divisibility_criterion(const GModule& M, const Vec& m, int r,
                                          const FiltrationTable& filt) {
  if (r < 0) throw error("negative filtration level");
  if (r == 0) return {true, true};
  if (r > M.ring().p()) throw error("divisibility criterion requires r <= p");
  if (filt.group() != M.group() || filt.ring() != M.ring())
    throw ring_mismatch_error("filtration does not match the module");
  if (r > filt.depth()) throw filtration_error("filtration too shallow for this level");

  const CoeffRing& R = M.ring();
  const i64 p = R.p();
  TaylorTable tt(M, m);
  const auto& box = tt.box();
  std::vector<i64> pvals;  // v_p(l_j + 1) per slot
  for (i64 nj : box) pvals.push_back(val_p_int(nj, p, 62));

  bool hyp = true;
  std::vector<i64> kappa(box.size(), 0);
  while (hyp) {
    i64 ord = 0;
    for (i64 k : kappa) ord += k;
    if (ord < r) {
      int eta = DerivativeOp::eta_infinity;
      for (size_t j = 0; j < kappa.size(); ++j)
        if (kappa[j] > 0) eta = std::min<int>(eta, (int)pvals[j]);
      const Vec& v = tt.at(kappa);
      for (int i = 0; i < M.rank() && hyp; ++i) {
        int t = std::min({eta, M.exps()[i], R.m()});
        i64 pt = ipow(p, t);
        for (int s = 0; s < R.d(); ++s)
          if (v[(size_t)(i * R.d() + s)] % pt != 0) {
            hyp = false;
            break;
          }
      }
    }
    size_t j = box.size();
    bool done = true;
    while (j-- > 0) {
      if (kappa[j] < box[j] - 1) {
        ++kappa[j];
        done = false;
        break;
      }
      kappa[j] = 0;
    }
    if (done || box.empty()) break;
  }

  bool concl = in_filtration_image(resolvent(M, m), filt, r);
  return {hyp, concl};
}

// ---- basis conversion and conjugation --------------------------------------

std::vector<i64> derivative_coeffs(i64 ell, i64 k) {
  std::vector<i64> c((size_t)(ell + 1), 0);
  for (i64 i = k; i <= ell; ++i) c[(size_t)i] = binom(i, k);
  return c;
}

std::vector<i64> basis_convert(const std::vector<i64>& a) {
  if (a.empty()) throw dimension_mismatch_error("empty coefficient vector");
  const i64 n = (i64)a.size() - 1;  // = ell
  std::vector<i64> alpha(a.size(), 0);
  alpha[0] = a[0];
  for (i64 i = 1; i <= n; ++i) {
    i64 s = a[(size_t)i];
    for (i64 k = 0; k < i; ++k) s -= binom(i, k) * alpha[(size_t)k];
    alpha[(size_t)i] = s;
  }
  return alpha;
}

std::map<std::vector<i64>, i64> conj_formula_coeffs(const DerivativeOp& D) {
  // per factor: conjugate D_l^k (sigma -> sigma^{-1}), convert to the
  // derivative basis; multi-factor coefficients are products across slots
  std::vector<std::vector<i64>> per_slot;
  for (auto [l, k] : D.factors) {
    std::vector<i64> c = derivative_coeffs(l, k);
    std::vector<i64> conj(c.size(), 0);
    const i64 n = l + 1;
    for (i64 i = 0; i < n; ++i) conj[(size_t)((n - i) % n)] = c[(size_t)i];
    per_slot.push_back(basis_convert(conj));
  }
  std::map<std::vector<i64>, i64> out;
  std::vector<i64> kp(D.factors.size(), 0);
  if (D.factors.empty()) {
    out[{}] = 1;
    return out;
  }
  while (true) {
    i64 coeff = 1;
    for (size_t j = 0; j < kp.size(); ++j) coeff *= per_slot[j][(size_t)kp[j]];
    if (coeff != 0) out[kp] = coeff;
    size_t j = kp.size();
    bool done = true;
    while (j-- > 0) {
      if (kp[j] < D.factors[j].first) {
        ++kp[j];
        done = false;
        break;
      }
      kp[j] = 0;
    }
    if (done) break;
  }
  return out;
}

std::map<std::vector<i64>, i64> conj_formula_reduced(const DerivativeOp& D,
                                                     const CoeffRing& ring) {
  const i64 q = ring.q();
  std::map<std::vector<i64>, i64> out;
  for (const auto& [kp, v] : conj_formula_coeffs(D)) {
    i64 r = mod_reduce(v, q);
    if (r > q / 2) r -= q;
    if (r != 0) out[kp] = r;
  }
  return out;
}

bool identity_334(i64 ell, i64 k, const CoeffRing& ring) {
  if (k < 0 || k > ell) throw error("identity check needs 0 <= k <= l");
  const i64 n = ell + 1;
  auto shift = [n](const std::vector<i64>& v) {  // multiply by sigma
    std::vector<i64> out((size_t)n, 0);
    for (i64 i = 0; i < n; ++i) out[(size_t)((i + 1) % n)] = v[(size_t)i];
    return out;
  };
  std::vector<i64> dk = derivative_coeffs(ell, k);
  std::vector<i64> lhs = shift(dk);
  for (i64 i = 0; i < n; ++i) lhs[(size_t)i] -= dk[(size_t)i];  // (sigma-1) D^k

  if (k == 0) {
    // norm annihilation: (sigma - 1) N = 0 exactly
    for (i64 x : lhs)
      if (x != 0) return false;
    return true;
  }

  std::vector<i64> sd = shift(derivative_coeffs(ell, k - 1));
  std::vector<i64> rhs((size_t)n, 0);
  rhs[0] = binom(n, k);
  for (i64 i = 0; i < n; ++i) rhs[(size_t)i] -= sd[(size_t)i];
  if (lhs != rhs) return false;

  // congruence form mod p^m when p^m | l+1 and 0 < k < p
  if (ring.m() >= 1 && n % ring.q() == 0 && k < ring.p()) {
    for (i64 i = 0; i < n; ++i)
      if (mod_reduce(lhs[(size_t)i] + sd[(size_t)i], ring.q()) != 0) return false;
  }
  return true;
}

}  // namespace bbreg
