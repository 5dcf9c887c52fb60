#include "bbreg/coeffring.hpp"

#include <algorithm>

namespace bbreg {

namespace {

// polynomial arithmetic over Z/q, dense low-to-high vectors

std::vector<i64> poly_mod_p(const std::vector<i64>& f, i64 p) {
  std::vector<i64> g(f.size());
  for (size_t i = 0; i < f.size(); ++i) g[i] = mod_reduce(f[i], p);
  while (g.size() > 1 && g.back() == 0) g.pop_back();
  return g;
}

// remainder of monic-divisor division over F_p
std::vector<i64> poly_rem_fp(std::vector<i64> f, const std::vector<i64>& g, i64 p) {
  int dg = static_cast<int>(g.size()) - 1;
  while (static_cast<int>(f.size()) - 1 >= dg && !(f.size() == 1 && f[0] == 0)) {
    int df = static_cast<int>(f.size()) - 1;
    i64 c = f[df];
    if (c != 0) {
      for (int j = 0; j <= dg; ++j)
        f[df - dg + j] = mod_reduce(f[df - dg + j] - static_cast<i128>(c) * g[j], p);
    }
    f.pop_back();
    while (f.size() > 1 && f.back() == 0) f.pop_back();
  }
  return f;
}

bool poly_is_zero(const std::vector<i64>& f) {
  for (i64 c : f)
    if (c != 0) return false;
  return true;
}

// brute factor search: does the monic f (over F_p) have a monic factor of
// degree between 1 and deg(f)/2?
bool irreducible_mod_p(const std::vector<i64>& f_in, i64 p) {
  std::vector<i64> f = poly_mod_p(f_in, p);
  int d = static_cast<int>(f.size()) - 1;
  if (d < 1) return false;
  if (d == 1) return true;
  for (int df = 1; df <= d / 2; ++df) {
    // enumerate monic candidates of degree df by counting in base p
    i64 count = ipow(p, df);
    for (i64 code = 0; code < count; ++code) {
      std::vector<i64> g(df + 1);
      i64 c = code;
      for (int j = 0; j < df; ++j) {
        g[j] = c % p;
        c /= p;
      }
      g[df] = 1;
      if (poly_is_zero(poly_rem_fp(f, g, p))) return false;
    }
  }
  return true;
}

}  // namespace

CoeffRing::CoeffRing(i64 p, int m, int d, std::vector<i64> poly) {
  if (p < 3 || !is_prime(p)) throw error("p must be an odd prime >= 3");
  if (m < 0) throw error("m must be >= 0");
  if (d < 1 || d > 8) throw error("residue degree d must be in [1, 8]");
  if (static_cast<int>(poly.size()) != d + 1) throw error("defining_poly must have degree d");
  i64 q = ipow(p, m);
  auto rep = std::make_shared<Rep>();
  rep->p = p;
  rep->m = m;
  rep->d = d;
  rep->q = q;
  rep->poly.resize(d + 1);
  for (int i = 0; i <= d; ++i) rep->poly[i] = m == 0 ? 0 : mod_reduce(poly[i], q);
  if (m > 0) {
    if (rep->poly[d] != 1 % q) throw error("defining_poly must be monic");
    if (d >= 2 && ipow(p, (d + 1) / 2) > 2'000'000)
      throw size_cap_error("irreducibility search too large for this (p, d)");
    if (!irreducible_mod_p(rep->poly, p))
      throw error("defining_poly is not irreducible mod p");
  }
  rep_ = std::move(rep);
}

CoeffRing CoeffRing::zp(i64 p, int m) { return CoeffRing(p, m, 1, {0, 1}); }

CoeffRing CoeffRing::galois(i64 p, int m, int d) {
  if (d == 1) return zp(p, m);
  i64 count = ipow(p, d);
  for (i64 code = 0; code < count; ++code) {
    std::vector<i64> poly(d + 1);
    i64 c = code;
    for (int j = 0; j < d; ++j) {
      poly[j] = c % p;
      c /= p;
    }
    poly[d] = 1;
    if (irreducible_mod_p(poly, p)) return CoeffRing(p, m, d, poly);
  }
  throw error("no irreducible polynomial found (impossible)");
}

bool CoeffRing::operator==(const CoeffRing& o) const {
  if (rep_ == o.rep_) return true;
  return rep_->p == o.rep_->p && rep_->m == o.rep_->m && rep_->d == o.rep_->d &&
         rep_->poly == o.rep_->poly;
}

CoeffRing CoeffRing::quotient(int mm) const {
  if (mm > m() || mm < 0) throw error("quotient exponent out of range");
  if (mm == m()) return *this;
  std::vector<i64> poly = rep_->poly;
  if (mm == 0) return CoeffRing(p(), 0, d(), poly);
  i64 qq = ipow(p(), mm);
  for (auto& c : poly) c = mod_reduce(c, qq);
  return CoeffRing(p(), mm, d(), poly);
}

// ---- RingElem ------------------------------------------------------------

RingElem::RingElem(CoeffRing ring, std::vector<i64> coeffs) : ring_(std::move(ring)) {
  if (static_cast<int>(coeffs.size()) != ring_.d())
    throw dimension_mismatch_error("coefficient vector length != d");
  c_.resize(coeffs.size());
  i64 q = ring_.q();
  for (size_t i = 0; i < coeffs.size(); ++i) c_[i] = ring_.m() == 0 ? 0 : mod_reduce(coeffs[i], q);
}

RingElem RingElem::zero(const CoeffRing& r) {
  return RingElem(r, std::vector<i64>(r.d(), 0));
}

RingElem RingElem::one(const CoeffRing& r) {
  std::vector<i64> c(r.d(), 0);
  if (r.m() > 0) c[0] = 1 % r.q();
  return RingElem(r, c);
}

RingElem RingElem::gen(const CoeffRing& r) {
  std::vector<i64> c(r.d(), 0);
  if (r.d() == 1) {
    // x == class of the defining root; for d = 1, x = -poly[0]
    if (r.m() > 0) c[0] = mod_reduce(-r.defining_poly()[0], r.q());
  } else {
    c[1] = 1;
  }
  return RingElem(r, c);
}

RingElem RingElem::from_int(const CoeffRing& r, i128 n) {
  std::vector<i64> c(r.d(), 0);
  if (r.m() > 0) c[0] = mod_reduce(n, r.q());
  return RingElem(r, c);
}

bool RingElem::is_zero() const {
  for (i64 v : c_)
    if (v != 0) return false;
  return true;
}

RingElem RingElem::operator+(const RingElem& o) const {
  if (ring_ != o.ring_) throw ring_mismatch_error("RingElem + across rings");
  std::vector<i64> c(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) c[i] = mod_reduce(c_[i] + o.c_[i], ring_.q());
  return RingElem(ring_, std::move(c));
}

RingElem RingElem::operator-(const RingElem& o) const {
  if (ring_ != o.ring_) throw ring_mismatch_error("RingElem - across rings");
  std::vector<i64> c(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) c[i] = mod_reduce(c_[i] - o.c_[i], ring_.q());
  return RingElem(ring_, std::move(c));
}

RingElem RingElem::operator-() const {
  std::vector<i64> c(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) c[i] = mod_reduce(-c_[i], ring_.q());
  return RingElem(ring_, std::move(c));
}

RingElem RingElem::operator*(const RingElem& o) const {
  if (ring_ != o.ring_) throw ring_mismatch_error("RingElem * across rings");
  int d = ring_.d();
  i64 q = ring_.q();
  if (ring_.m() == 0) return zero(ring_);
  if (d == 1) return RingElem(ring_, {mulmod(c_[0], o.c_[0], q)});
  std::vector<i64> conv(2 * d - 1, 0);
  for (int i = 0; i < d; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < d; ++j)
      conv[i + j] = mod_reduce(conv[i + j] + static_cast<i128>(c_[i]) * o.c_[j], q);
  }
  const std::vector<i64>& poly = ring_.defining_poly();
  for (int i = 2 * d - 2; i >= d; --i) {
    i64 c = conv[i];
    if (c == 0) continue;
    conv[i] = 0;
    for (int j = 0; j < d; ++j)
      conv[i - d + j] = mod_reduce(conv[i - d + j] - static_cast<i128>(c) * poly[j], q);
  }
  conv.resize(d);
  return RingElem(ring_, std::move(conv));
}

bool RingElem::operator==(const RingElem& o) const {
  return ring_ == o.ring_ && c_ == o.c_;
}

int RingElem::valuation() const {
  if (is_zero()) return val_infinity;
  int best = ring_.m();
  for (i64 v : c_) {
    if (v == 0) continue;
    best = std::min(best, val_p_int(v, ring_.p(), ring_.m()));
  }
  return best;
}

RingElem RingElem::inverse() const {
  if (valuation() != 0) throw non_unit_error("inverse of a non-unit");
  // invert mod p via Fermat in GF(p^d), then Newton-lift to p^m
  CoeffRing fp = ring_.quotient(1);
  RingElem a1 = reduce_to(fp);
  i64 card = ipow(ring_.p(), ring_.d());
  RingElem inv1 = RingElem::one(fp);
  RingElem base = a1;
  i64 e = card - 2;  // a^(p^d - 2) = a^{-1} in GF(p^d)
  while (e > 0) {
    if (e & 1) inv1 = inv1 * base;
    base = base * base;
    e >>= 1;
  }
  // lift coefficients and run x <- x(2 - a x) until exact
  RingElem x(ring_, inv1.coeffs());
  RingElem two = RingElem::from_int(ring_, 2);
  for (int it = 0; it < ring_.m() + 2; ++it) {
    RingElem prod = *this * x;
    if (prod == RingElem::one(ring_)) return x;
    x = x * (two - prod);
  }
  throw non_unit_error("inverse iteration failed to converge");
}

RingElem RingElem::divide_p_power(int t) const {
  if (t < 0 || t > ring_.m()) throw insufficient_valuation_error("bad division exponent");
  if (valuation() < t) throw insufficient_valuation_error("valuation too small for division");
  CoeffRing small = ring_.quotient(ring_.m() - t);
  i64 pt = ipow(ring_.p(), t);
  std::vector<i64> c(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] / pt;
  return RingElem(small, std::move(c));
}

RingElem RingElem::reduce_to(const CoeffRing& target) const {
  if (target.p() != ring_.p() || target.d() != ring_.d() || target.m() > ring_.m())
    throw ring_mismatch_error("reduce_to: incompatible target ring");
  return RingElem(target, c_);
}

i64 RingElem::scalar() const {
  if (ring_.d() != 1) throw dimension_mismatch_error("scalar() requires d = 1");
  return c_[0];
}

std::string RingElem::str() const {
  if (ring_.d() == 1) return std::to_string(c_[0]);
  std::string out = "[";
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(c_[i]);
  }
  return out + "]";
}

}  // namespace bbreg
