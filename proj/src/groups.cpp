#include "bbreg/groups.hpp"

#include <algorithm>

namespace bbreg {

int kronecker(i64 a, i64 n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  if (a % 2 == 0 && n % 2 == 0) return 0;
  int v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  int k = 1;
  if (v % 2 == 1) {
    i64 am8 = mod_reduce(a, 8);
    if (am8 == 3 || am8 == 5) k = -1;
  }
  if (n < 0) {
    n = -n;
    if (a < 0) k = -k;
  }
  a = mod_reduce(a, n);
  while (a != 0) {
    v = 0;
    while (a % 2 == 0) {
      a /= 2;
      ++v;
    }
    if (v % 2 == 1) {
      i64 nm8 = n % 8;
      if (nm8 == 3 || nm8 == 5) k = -k;
    }
    if (a % 4 == 3 && n % 4 == 3) k = -k;
    i64 t = n % a;
    n = a;
    a = t;
  }
  return n == 1 ? k : 0;
}

bool is_squarefree(i64 n) {
  if (n < 0) n = -n;
  if (n == 0) return false;
  for (i64 d = 2; d * d <= n; ++d) {
    if (n % (d * d) == 0) return false;
  }
  return true;
}

bool is_fundamental_discriminant(i64 D) {
  if (D >= 0) return false;  // only the imaginary case is used here
  i64 r = mod_reduce(D, 4);
  if (r == 1) return is_squarefree(D);
  if (r == 0) {
    i64 m = D / 4;
    i64 mr = mod_reduce(m, 4);
    return (mr == 2 || mr == 3) && is_squarefree(m);
  }
  return false;
}

// ---- Tower ---------------------------------------------------------------

Tower::Tower(TowerSpec spec) {
  if (!is_fundamental_discriminant(spec.disc))
    throw error("tower discriminant must be a negative fundamental discriminant");
  if (spec.h_k < 1) throw error("class number must be >= 1");
  i64 prod = 1;
  for (i64 g : spec.gamma1) {
    if (g < 1) throw error("gamma1 invariant < 1");
    prod *= g;
  }
  if (spec.gamma1.empty() && spec.h_k != 1) throw error("gamma1 invariants missing");
  if (!spec.gamma1.empty() && prod != spec.h_k)
    throw error("gamma1 invariants do not multiply to h_K");
  for (size_t i = 0; i < spec.primes.size(); ++i) {
    i64 l = spec.primes[i];
    if (!is_prime(l)) throw error("tower entry is not prime");
    if (kronecker(spec.disc, l) != -1)
      throw error("tower prime " + std::to_string(l) + " is not inert");
    for (size_t j = 0; j < i; ++j)
      if (spec.primes[j] == l) throw error("duplicate tower prime");
  }
  sp_ = std::make_shared<const TowerSpec>(std::move(spec));
}

i64 Tower::top_level() const {
  i64 t = 1;
  for (i64 l : sp_->primes) t *= l;
  return t;
}

int Tower::prime_index(i64 ell) const {
  for (size_t i = 0; i < sp_->primes.size(); ++i)
    if (sp_->primes[i] == ell) return static_cast<int>(i);
  throw error(std::to_string(ell) + " is not a tower prime");
}

bool Tower::divides_tower(i64 T) const {
  if (T < 1) return false;
  for (i64 l : sp_->primes)
    while (T % l == 0) T /= l;
  return T == 1;
}

std::vector<i64> Tower::divisors(i64 T) const {
  if (!divides_tower(T) || !is_squarefree(T)) throw error("not a squarefree tower divisor");
  std::vector<i64> out = {1};
  for (i64 l : sp_->primes) {
    if (T % l != 0) continue;
    size_t sz = out.size();
    for (size_t i = 0; i < sz; ++i) out.push_back(out[i] * l);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void Tower::check_ring(const CoeffRing& r) const {
  if (sp_->h_k % r.p() == 0)
    throw error("p divides h_K: coefficient ring incompatible with tower");
}

int Tower::mobius(i64 T) const {
  if (!divides_tower(T) || !is_squarefree(T)) throw error("mobius: not a tower divisor");
  int cnt = 0;
  for (i64 l : sp_->primes)
    if (T % l == 0) ++cnt;
  return cnt % 2 == 0 ? 1 : -1;
}

int Tower::chi_k(i64 T) const {
  if (!divides_tower(T) || !is_squarefree(T)) throw error("chi_k: not a tower divisor");
  int s = 1;
  for (i64 l : sp_->primes)
    if (T % l == 0) s *= kronecker(sp_->disc, l);
  return s;
}

// ---- Group ---------------------------------------------------------------

Group::Group(Tower tower, i64 T, GroupKind kind)
    : tower_(std::move(tower)), T_(T), kind_(kind) {
  if (!tower_.divides_tower(T) || !is_squarefree(T))
    throw error("group level must be a squarefree tower divisor");
  const auto& primes = tower_.primes();
  for (size_t i = 0; i < primes.size(); ++i)
    if (T % primes[i] == 0) active_.push_back(static_cast<int>(i));
  order_ = 1;
  for (int s : active_) {
    slot_orders_.push_back(primes[s] + 1);
    order_ *= primes[s] + 1;
  }
  if (kind_ == GroupKind::Gamma) {
    for (i64 g : tower_.gamma1()) {
      slot_orders_.push_back(g);
      order_ *= g;
    }
  }
}

bool Group::is_active_prime(int slot) const {
  return std::find(active_.begin(), active_.end(), slot) != active_.end();
}

GroupElem Group::identity() const {
  return GroupElem{std::vector<i64>(tower_.primes().size(), 0),
                   std::vector<i64>(tower_.gamma1().size(), 0)};
}

bool Group::contains(const GroupElem& a) const {
  const auto& primes = tower_.primes();
  if (a.gs.size() != primes.size() || a.g1.size() != tower_.gamma1().size()) return false;
  for (size_t i = 0; i < primes.size(); ++i) {
    if (a.gs[i] < 0 || a.gs[i] >= primes[i] + 1) return false;
    if (a.gs[i] != 0 && !is_active_prime(static_cast<int>(i))) return false;
  }
  for (size_t j = 0; j < a.g1.size(); ++j) {
    if (a.g1[j] < 0 || a.g1[j] >= tower_.gamma1()[j]) return false;
    if (a.g1[j] != 0 && kind_ != GroupKind::Gamma) return false;
  }
  return true;
}

GroupElem Group::mul(const GroupElem& a, const GroupElem& b) const {
  if (!contains(a) || !contains(b)) throw error("group element not in this group");
  GroupElem r = a;
  const auto& primes = tower_.primes();
  for (size_t i = 0; i < r.gs.size(); ++i) r.gs[i] = mod_reduce(r.gs[i] + b.gs[i], primes[i] + 1);
  for (size_t j = 0; j < r.g1.size(); ++j)
    r.g1[j] = mod_reduce(r.g1[j] + b.g1[j], tower_.gamma1()[j]);
  return r;
}

GroupElem Group::inv(const GroupElem& a) const {
  if (!contains(a)) throw error("group element not in this group");
  GroupElem r = a;
  const auto& primes = tower_.primes();
  for (size_t i = 0; i < r.gs.size(); ++i) r.gs[i] = mod_reduce(-r.gs[i], primes[i] + 1);
  for (size_t j = 0; j < r.g1.size(); ++j) r.g1[j] = mod_reduce(-r.g1[j], tower_.gamma1()[j]);
  return r;
}

GroupElem Group::pow(const GroupElem& a, i64 e) const {
  if (!contains(a)) throw error("group element not in this group");
  GroupElem r = a;
  const auto& primes = tower_.primes();
  for (size_t i = 0; i < r.gs.size(); ++i) r.gs[i] = mod_reduce(r.gs[i] * e, primes[i] + 1);
  for (size_t j = 0; j < r.g1.size(); ++j) r.g1[j] = mod_reduce(r.g1[j] * e, tower_.gamma1()[j]);
  return r;
}

GroupElem Group::sigma(i64 ell, i64 e) const {
  int slot = tower_.prime_index(ell);
  if (!is_active_prime(slot)) throw error("sigma: prime not active at this level");
  GroupElem r = identity();
  r.gs[slot] = mod_reduce(e, ell + 1);
  return r;
}

std::vector<GroupElem> Group::generators() const {
  std::vector<GroupElem> out;
  const auto& primes = tower_.primes();
  for (int s : active_) {
    GroupElem g = identity();
    g.gs[s] = 1 % (primes[s] + 1);
    if (g.gs[s] != 0) out.push_back(g);
  }
  if (kind_ == GroupKind::Gamma) {
    for (size_t j = 0; j < tower_.gamma1().size(); ++j) {
      if (tower_.gamma1()[j] == 1) continue;
      GroupElem g = identity();
      g.g1[j] = 1;
      out.push_back(g);
    }
  }
  return out;
}

i64 Group::index_of(const GroupElem& a) const {
  if (!contains(a)) throw error("index_of: element not in group");
  i64 idx = 0;
  for (size_t k = 0; k < active_.size(); ++k) idx = idx * slot_orders_[k] + a.gs[active_[k]];
  if (kind_ == GroupKind::Gamma) {
    size_t base = active_.size();
    for (size_t j = 0; j < a.g1.size(); ++j) idx = idx * slot_orders_[base + j] + a.g1[j];
  }
  return idx;
}

GroupElem Group::elem_at(i64 idx) const {
  if (idx < 0 || idx >= order_) throw error("elem_at: index out of range");
  GroupElem r = identity();
  for (size_t k = slot_orders_.size(); k-- > 0;) {
    i64 ord = slot_orders_[k];
    i64 e = idx % ord;
    idx /= ord;
    if (k < active_.size())
      r.gs[active_[k]] = e;
    else
      r.g1[k - active_.size()] = e;
  }
  return r;
}

GroupElem project(const GroupElem& g, const Group& target) {
  GroupElem r = g;
  for (size_t i = 0; i < r.gs.size(); ++i)
    if (!target.is_active_prime(static_cast<int>(i))) r.gs[i] = 0;
  if (target.kind() != GroupKind::Gamma) std::fill(r.g1.begin(), r.g1.end(), 0);
  return r;
}

GroupElem invert_action(const Group& grp, const GroupElem& g) { return grp.inv(g); }

std::vector<GroupElem> norm_lift(const Group& gamma_t) {
  if (gamma_t.kind() != GroupKind::Gamma) throw error("norm_lift needs a Gamma-type group");
  std::vector<GroupElem> out;
  // Gamma_1 enumerated through the quotient Gamma_T -> Gamma_1 with zero G-part
  Group g1(gamma_t.tower(), 1, GroupKind::Gamma);
  for (i64 i = 0; i < g1.order(); ++i) out.push_back(g1.elem_at(i));
  return out;
}

std::vector<GroupElem> norm_lift_random(const Group& gamma_t, Rng& rng) {
  std::vector<GroupElem> out = norm_lift(gamma_t);
  Group gpart(gamma_t.tower(), gamma_t.level(), GroupKind::G);
  for (auto& g : out) {
    GroupElem noise = gpart.elem_at(rng.uniform(0, gpart.order() - 1));
    for (size_t i = 0; i < g.gs.size(); ++i) g.gs[i] = noise.gs[i];
  }
  return out;
}

}  // namespace bbreg
