#include "bbreg/groupring.hpp"

#include <algorithm>

namespace bbreg {

std::vector<i64> left_mul_perm(const Group& G, const GroupElem& sigma) {
  std::vector<i64> perm(G.order());
  for (i64 i = 0; i < G.order(); ++i) perm[i] = G.index_of(G.mul(sigma, G.elem_at(i)));
  return perm;
}

std::vector<i64> inversion_perm(const Group& G) {
  std::vector<i64> perm(G.order());
  for (i64 i = 0; i < G.order(); ++i) perm[i] = G.index_of(G.inv(G.elem_at(i)));
  return perm;
}

namespace {

// apply a logical-index permutation to a flat vector with d scalars per slot
Vec apply_perm(const Vec& v, const std::vector<i64>& perm, int d) {
  Vec out(v.size(), 0);
  for (size_t i = 0; i < perm.size(); ++i)
    for (int k = 0; k < d; ++k) out[perm[i] * d + k] = v[i * d + k];
  return out;
}

// dense group-ring convolution: out += a * b over R[G]
void conv_acc(const CoeffRing& R, const Group& G, const Vec& a, const Vec& b, Vec& out) {
  const int d = R.d();
  const i64 n = G.order();
  if (d == 1) {
    const i64 q = R.q();
    for (i64 i = 0; i < n; ++i) {
      if (a[i] == 0) continue;
      std::vector<i64> perm = left_mul_perm(G, G.elem_at(i));
      for (i64 j = 0; j < n; ++j)
        if (b[j] != 0) out[perm[j]] = mod_reduce(out[perm[j]] + (i128)a[i] * b[j], q);
    }
    return;
  }
  for (i64 i = 0; i < n; ++i) {
    RingElem ai = vecops::get(R, a, (int)i);
    if (ai.is_zero()) continue;
    std::vector<i64> perm = left_mul_perm(G, G.elem_at(i));
    for (i64 j = 0; j < n; ++j) {
      RingElem bj = vecops::get(R, b, (int)j);
      if (bj.is_zero()) continue;
      vecops::set(R, out, (int)perm[j], vecops::get(R, out, (int)perm[j]) + ai * bj);
    }
  }
}

}  // namespace

// ---- GroupRingElem ---------------------------------------------------------

GroupRingElem::GroupRingElem(CoeffRing ring, Group group)
    : ring_(std::move(ring)), group_(std::move(group)) {}

GroupRingElem GroupRingElem::one(const CoeffRing& r, const Group& g) {
  return of(r, g, g.identity());
}

GroupRingElem GroupRingElem::of(const CoeffRing& r, const Group& g, const GroupElem& t) {
  GroupRingElem e(r, g);
  e.add_term(t, RingElem::one(r));
  return e;
}

void GroupRingElem::add_term(const GroupElem& g, const RingElem& x) {
  if (x.ring() != ring_) throw ring_mismatch_error("group-ring coefficient in wrong ring");
  i64 idx = group_.index_of(g);
  auto it = c_.find(idx);
  if (it == c_.end()) {
    if (!x.is_zero()) c_.emplace(idx, x);
    return;
  }
  RingElem s = it->second + x;
  if (s.is_zero())
    c_.erase(it);
  else
    it->second = s;
}

RingElem GroupRingElem::coeff(const GroupElem& g) const {
  auto it = c_.find(group_.index_of(g));
  return it == c_.end() ? RingElem::zero(ring_) : it->second;
}

GroupRingElem GroupRingElem::operator+(const GroupRingElem& o) const {
  if (ring_ != o.ring_ || group_ != o.group_)
    throw ring_mismatch_error("group-ring addition across different rings/groups");
  GroupRingElem r = *this;
  for (const auto& [idx, x] : o.c_) r.add_term(group_.elem_at(idx), x);
  return r;
}

GroupRingElem GroupRingElem::operator-() const {
  GroupRingElem r(ring_, group_);
  for (const auto& [idx, x] : c_) r.c_.emplace(idx, -x);
  return r;
}

GroupRingElem GroupRingElem::operator-(const GroupRingElem& o) const { return *this + (-o); }

GroupRingElem GroupRingElem::operator*(const GroupRingElem& o) const {
  if (ring_ != o.ring_ || group_ != o.group_)
    throw ring_mismatch_error("group-ring product across different rings/groups");
  GroupRingElem r(ring_, group_);
  for (const auto& [i, x] : c_) {
    GroupElem gi = group_.elem_at(i);
    for (const auto& [j, y] : o.c_) r.add_term(group_.mul(gi, group_.elem_at(j)), x * y);
  }
  return r;
}

GroupRingElem GroupRingElem::operator*(const RingElem& s) const {
  GroupRingElem r(ring_, group_);
  for (const auto& [idx, x] : c_) {
    RingElem y = x * s;
    if (!y.is_zero()) r.c_.emplace(idx, y);
  }
  return r;
}

bool GroupRingElem::operator==(const GroupRingElem& o) const {
  return ring_ == o.ring_ && group_ == o.group_ && c_ == o.c_;
}

GroupRingElem GroupRingElem::star() const {
  GroupRingElem r(ring_, group_);
  for (const auto& [idx, x] : c_) r.add_term(group_.inv(group_.elem_at(idx)), x);
  return r;
}

RingElem GroupRingElem::aug() const {
  RingElem s = RingElem::zero(ring_);
  for (const auto& [idx, x] : c_) s = s + x;
  return s;
}

Vec GroupRingElem::dense() const {
  Vec v = vecops::zero(ring_, (int)group_.order());
  for (const auto& [idx, x] : c_) vecops::set(ring_, v, (int)idx, x);
  return v;
}

GroupRingElem GroupRingElem::from_dense(const CoeffRing& r, const Group& g, const Vec& v) {
  if ((i64)v.size() != g.order() * r.d())
    throw dimension_mismatch_error("dense group-ring vector has wrong length");
  GroupRingElem e(r, g);
  for (i64 i = 0; i < g.order(); ++i) {
    RingElem x = vecops::get(r, v, (int)i);
    if (!x.is_zero()) e.c_.emplace(i, x);
  }
  return e;
}

// ---- ZGroupRingElem --------------------------------------------------------

ZGroupRingElem::ZGroupRingElem(Group group) : group_(std::move(group)) {}

ZGroupRingElem ZGroupRingElem::one(const Group& g) { return of(g, g.identity()); }

ZGroupRingElem ZGroupRingElem::of(const Group& g, const GroupElem& t, i64 c) {
  ZGroupRingElem e(g);
  e.add_term(t, c);
  return e;
}

void ZGroupRingElem::add_term(const GroupElem& g, i64 c) {
  if (c == 0) return;
  i64 idx = group_.index_of(g);
  i64 s = (c_[idx] += c);
  if (s == 0) c_.erase(idx);
}

i64 ZGroupRingElem::coeff(const GroupElem& g) const {
  auto it = c_.find(group_.index_of(g));
  return it == c_.end() ? 0 : it->second;
}

ZGroupRingElem ZGroupRingElem::operator+(const ZGroupRingElem& o) const {
  if (group_ != o.group_) throw ring_mismatch_error("integer group-ring addition across groups");
  ZGroupRingElem r = *this;
  for (const auto& [idx, c] : o.c_) r.add_term(group_.elem_at(idx), c);
  return r;
}

ZGroupRingElem ZGroupRingElem::operator-(const ZGroupRingElem& o) const {
  return *this + o * -1;
}

ZGroupRingElem ZGroupRingElem::operator*(const ZGroupRingElem& o) const {
  if (group_ != o.group_) throw ring_mismatch_error("integer group-ring product across groups");
  ZGroupRingElem r(group_);
  for (const auto& [i, x] : c_) {
    GroupElem gi = group_.elem_at(i);
    for (const auto& [j, y] : o.c_) r.add_term(group_.mul(gi, group_.elem_at(j)), x * y);
  }
  return r;
}

ZGroupRingElem ZGroupRingElem::operator*(i64 s) const {
  ZGroupRingElem r(group_);
  if (s == 0) return r;
  for (const auto& [idx, c] : c_) r.c_.emplace(idx, c * s);
  return r;
}

bool ZGroupRingElem::operator==(const ZGroupRingElem& o) const {
  return group_ == o.group_ && c_ == o.c_;
}

ZGroupRingElem ZGroupRingElem::star() const {
  ZGroupRingElem r(group_);
  for (const auto& [idx, c] : c_) r.add_term(group_.inv(group_.elem_at(idx)), c);
  return r;
}

i64 ZGroupRingElem::aug() const {
  i64 s = 0;
  for (const auto& [idx, c] : c_) s += c;
  return s;
}

GroupRingElem ZGroupRingElem::to_ring(const CoeffRing& r) const {
  GroupRingElem e(r, group_);
  for (const auto& [idx, c] : c_) e.add_term(group_.elem_at(idx), RingElem::from_int(r, c));
  return e;
}

// ---- FiltrationTable -------------------------------------------------------

FiltrationTable::FiltrationTable(Group group, CoeffRing ring, int depth)
    : group_(std::move(group)), ring_(std::move(ring)), depth_(depth) {
  if (depth_ < 1) throw error("filtration depth must be >= 1");
  const i64 n = group_.order();
  if (n * ring_.d() > size_cap)
    throw size_cap_error("group-ring dimension " + std::to_string(n * ring_.d()) +
                         " exceeds the filtration size cap");
  const int d = ring_.d();

  // I^0 = R[G]
  std::vector<Vec> unit_rows;
  for (i64 i = 0; i < n; ++i) {
    Vec v = vecops::zero(ring_, (int)n);
    v[i * d] = 1;
    unit_rows.push_back(std::move(v));
  }
  bases_.emplace_back(ring_, (int)n, unit_rows);

  // I^1 = span{ g - 1 : g in G }
  std::vector<Vec> aug_rows;
  for (i64 i = 1; i < n; ++i) {
    Vec v = vecops::zero(ring_, (int)n);
    v[i * d] = 1;
    v[0] = mod_reduce(-1, ring_.q());
    aug_rows.push_back(std::move(v));
  }
  bases_.emplace_back(ring_, (int)n, aug_rows);

  // I^{r+1} = span{ (sigma_j - 1) * b : generators sigma_j, Howell rows b of I^r }
  std::vector<std::vector<i64>> gen_perms;
  for (const GroupElem& s : group_.generators()) gen_perms.push_back(left_mul_perm(group_, s));
  stable_from_ = depth_ + 1;
  for (int r = 1; r < depth_; ++r) {
    std::vector<Vec> next_rows;
    for (const auto& row : bases_[r].scalar_form().rows) {
      for (const auto& perm : gen_perms) {
        Vec v = apply_perm(row, perm, d);
        vecops::sub_in_place(ring_, v, row);
        if (!vecops::is_zero(v)) next_rows.push_back(std::move(v));
      }
    }
    bases_.emplace_back(ring_, (int)n, next_rows);
    if (stable_from_ > depth_ && bases_[r + 1].same_span(bases_[r])) stable_from_ = r;
  }
  if (stable_from_ <= depth_) {
    // once I^{r+1} = I^r the filtration is constant from r on
    for (int r = stable_from_ + 1; r <= depth_; ++r) bases_[r] = bases_[stable_from_];
  }

  reduced_.resize(depth_ + 1);
  for (int r = 0; r <= depth_; ++r)
    for (int e = 1; e <= ring_.m(); ++e) reduced_[r].push_back(bases_[r].reduced(e));
}

const RSpan& FiltrationTable::basis(int r) const {
  if (r < 0 || r > depth_) throw filtration_error("filtration level out of tabulated range");
  return bases_[r];
}

const RSpan& FiltrationTable::basis_mod(int r, int e) const {
  if (r < 0 || r > depth_) throw filtration_error("filtration level out of tabulated range");
  if (e < 1 || e > ring_.m()) throw filtration_error("reduction exponent out of range");
  return reduced_[r][e - 1];
}

FiltrationPtr build_filtration(const Group& group, const CoeffRing& ring, int depth) {
  return std::make_shared<const FiltrationTable>(group, ring, depth);
}

// ---- TensorElem ------------------------------------------------------------

TensorElem::TensorElem(CoeffRing ring, Group group, std::vector<int> exps)
    : ring_(std::move(ring)), group_(std::move(group)), exps_(std::move(exps)) {
  for (int e : exps_)
    if (e < 1 || e > ring_.m()) throw error("tensor component exponent out of range");
  c_.assign((size_t)(group_.order() * ring_.d() * (i64)exps_.size()), 0);
}

TensorElem TensorElem::free_zero(const CoeffRing& r, const Group& g, int rank) {
  return TensorElem(r, g, std::vector<int>((size_t)rank, r.m()));
}

Vec TensorElem::component(int i) const {
  if (i < 0 || i >= rank()) throw dimension_mismatch_error("tensor component out of range");
  i64 len = gr_len();
  return Vec(c_.begin() + i * len, c_.begin() + (i + 1) * len);
}

void TensorElem::set_component(int i, const Vec& grvec) {
  if (i < 0 || i >= rank()) throw dimension_mismatch_error("tensor component out of range");
  i64 len = gr_len();
  if ((i64)grvec.size() != len)
    throw dimension_mismatch_error("tensor component vector has wrong length");
  std::copy(grvec.begin(), grvec.end(), c_.begin() + i * len);
}

void TensorElem::add_term(int i, const GroupElem& g, const RingElem& x) {
  if (i < 0 || i >= rank()) throw dimension_mismatch_error("tensor component out of range");
  if (x.ring() != ring_) throw ring_mismatch_error("tensor coefficient in wrong ring");
  i64 pos = i * group_.order() + group_.index_of(g);
  vecops::set(ring_, c_, (int)pos, vecops::get(ring_, c_, (int)pos) + x);
}

RingElem TensorElem::coeff(int i, const GroupElem& g) const {
  if (i < 0 || i >= rank()) throw dimension_mismatch_error("tensor component out of range");
  return vecops::get(ring_, c_, (int)(i * group_.order() + group_.index_of(g)));
}

TensorElem TensorElem::operator+(const TensorElem& o) const {
  if (ring_ != o.ring_ || group_ != o.group_ || exps_ != o.exps_)
    throw ring_mismatch_error("tensor addition across different shapes");
  TensorElem r = *this;
  vecops::add_in_place(ring_, r.c_, o.c_);
  return r;
}

TensorElem TensorElem::operator-(const TensorElem& o) const {
  if (ring_ != o.ring_ || group_ != o.group_ || exps_ != o.exps_)
    throw ring_mismatch_error("tensor subtraction across different shapes");
  TensorElem r = *this;
  vecops::sub_in_place(ring_, r.c_, o.c_);
  return r;
}

bool TensorElem::operator==(const TensorElem& o) const {
  return ring_ == o.ring_ && group_ == o.group_ && exps_ == o.exps_ && c_ == o.c_;
}

TensorElem TensorElem::scaled(const RingElem& s) const {
  TensorElem r = *this;
  vecops::scale_in_place(ring_, r.c_, s);
  return r;
}

TensorElem TensorElem::scaled_int(i64 s) const {
  TensorElem r = *this;
  vecops::scale_int_in_place(ring_, r.c_, s);
  return r;
}

TensorElem TensorElem::star_group() const {
  std::vector<i64> perm = inversion_perm(group_);
  TensorElem r(ring_, group_, exps_);
  for (int i = 0; i < rank(); ++i) r.set_component(i, apply_perm(component(i), perm, ring_.d()));
  return r;
}

TensorElem TensorElem::mul_group(const GroupElem& sigma) const {
  std::vector<i64> perm = left_mul_perm(group_, sigma);
  TensorElem r(ring_, group_, exps_);
  for (int i = 0; i < rank(); ++i) r.set_component(i, apply_perm(component(i), perm, ring_.d()));
  return r;
}

TensorElem TensorElem::mul_group_ring(const GroupRingElem& a) const {
  if (a.ring() != ring_ || a.group() != group_)
    throw ring_mismatch_error("group-ring action across different shapes");
  Vec ad = a.dense();
  TensorElem r(ring_, group_, exps_);
  for (int i = 0; i < rank(); ++i) {
    Vec out = vecops::zero(ring_, (int)group_.order());
    conv_acc(ring_, group_, component(i), ad, out);
    r.set_component(i, out);
  }
  return r;
}

TensorElem TensorElem::project_group(const Group& target) const {
  std::vector<i64> perm(group_.order());
  for (i64 g = 0; g < group_.order(); ++g)
    perm[g] = target.index_of(project(group_.elem_at(g), target));
  TensorElem r(ring_, target, exps_);
  const int d = ring_.d();
  const i64 tlen = target.order() * d;
  for (int i = 0; i < rank(); ++i) {
    Vec src = component(i);
    Vec out((size_t)tlen, 0);
    for (i64 g = 0; g < group_.order(); ++g)
      for (int k = 0; k < d; ++k)
        out[perm[g] * d + k] = mod_reduce(out[perm[g] * d + k] + src[g * d + k], ring_.q());
    r.set_component(i, out);
  }
  return r;
}

TensorElem TensorElem::embed_group(const Group& bigger) const {
  TensorElem r(ring_, bigger, exps_);
  const int d = ring_.d();
  for (int i = 0; i < rank(); ++i) {
    Vec src = component(i);
    for (i64 g = 0; g < group_.order(); ++g) {
      i64 tgt = bigger.index_of(group_.elem_at(g));  // throws if not contained
      for (int k = 0; k < d; ++k)
        r.c_[(i * bigger.order() + tgt) * d + k] = src[g * d + k];
    }
  }
  return r;
}

TensorElem TensorElem::tensor(const TensorElem& o) const {
  if (ring_ != o.ring_ || group_ != o.group_)
    throw ring_mismatch_error("tensor product across different rings/groups");
  std::vector<int> exps;
  for (int e : exps_)
    for (int f : o.exps_) exps.push_back(std::min(e, f));
  TensorElem r(ring_, group_, exps);
  const i64 n = group_.order();
  const int d = ring_.d();
  // precompute the multiplication table of group indices once
  std::vector<std::vector<i64>> mul_perm;
  mul_perm.reserve((size_t)n);
  for (i64 g = 0; g < n; ++g) mul_perm.push_back(left_mul_perm(group_, group_.elem_at(g)));
  const i64 q = ring_.q();
  for (int i = 0; i < rank(); ++i) {
    Vec a = component(i);
    for (int j = 0; j < o.rank(); ++j) {
      Vec b = o.component(j);
      Vec out((size_t)(n * d), 0);
      if (d == 1) {
        for (i64 g = 0; g < n; ++g) {
          if (a[g] == 0) continue;
          const auto& perm = mul_perm[g];
          for (i64 h = 0; h < n; ++h)
            if (b[h] != 0) out[perm[h]] = mod_reduce(out[perm[h]] + (i128)a[g] * b[h], q);
        }
      } else {
        for (i64 g = 0; g < n; ++g) {
          RingElem ag = vecops::get(ring_, a, (int)g);
          if (ag.is_zero()) continue;
          const auto& perm = mul_perm[g];
          for (i64 h = 0; h < n; ++h) {
            RingElem bh = vecops::get(ring_, b, (int)h);
            if (bh.is_zero()) continue;
            vecops::set(ring_, out, (int)perm[h],
                        vecops::get(ring_, out, (int)perm[h]) + ag * bh);
          }
        }
      }
      r.set_component(i * o.rank() + j, out);
    }
  }
  return r;
}

// ---- filtration membership and graded classes ------------------------------

bool in_filtration_image(const TensorElem& theta, const FiltrationTable& filt, int r) {
  if (theta.ring() != filt.ring() || theta.group() != filt.group())
    throw ring_mismatch_error("tensor does not live over this filtration");
  if (r < 0 || r > filt.depth()) throw filtration_error("filtration level out of range");
  if (r == 0) return true;
  const CoeffRing& R = filt.ring();
  for (int i = 0; i < theta.rank(); ++i) {
    int e = theta.exps()[i];
    const RSpan& sp = filt.basis_mod(r, e);
    Vec comp = vecops::reduce_to(R, sp.ring(), theta.component(i));
    if (!sp.contains(comp)) return false;
  }
  return true;
}

int vanishing_order(const TensorElem& theta, const FiltrationTable& filt, int r_max) {
  if (r_max < 0 || r_max > filt.depth())
    throw filtration_error("vanishing_order bound exceeds filtration depth");
  int ord = 0;
  for (int r = 1; r <= r_max; ++r) {
    if (!in_filtration_image(theta, filt, r)) break;
    ord = r;
  }
  return ord;
}

bool GradedClass::is_zero_class() const {
  return in_filtration_image(rep, *filt, level + 1);
}

GradedClass leading_term(const TensorElem& theta, int r, FiltrationPtr filt) {
  if (!in_filtration_image(theta, *filt, r))
    throw filtration_error("element does not lie in the requested filtration level");
  return GradedClass{std::move(filt), r, theta};
}

bool graded_eq(const GradedClass& a, const GradedClass& b) {
  if (a.filt->group() != b.filt->group() || a.filt->ring() != b.filt->ring())
    throw ring_mismatch_error("graded comparison across different filtrations");
  if (a.level != b.level) return false;
  if (a.rep.exps() != b.rep.exps())
    throw dimension_mismatch_error("graded comparison across different module shapes");
  return in_filtration_image(a.rep - b.rep, *a.filt, a.level + 1);
}

GradedClass graded_mul(const GradedClass& a, const GradedClass& b) {
  if (a.rep.rank() != 1 || b.rep.rank() != 1)
    throw dimension_mismatch_error("graded products are defined for group-ring classes only");
  if (a.filt->group() != b.filt->group() || a.filt->ring() != b.filt->ring())
    throw ring_mismatch_error("graded product across different filtrations");
  const CoeffRing& R = a.filt->ring();
  const Group& G = a.filt->group();
  Vec out = vecops::zero(R, (int)G.order());
  conv_acc(R, G, a.rep.component(0), b.rep.component(0), out);
  TensorElem rep(R, G, {std::min(a.rep.exps()[0], b.rep.exps()[0])});
  rep.set_component(0, out);
  int lvl = std::min(a.level + b.level, a.filt->depth());
  return GradedClass{a.filt, lvl, std::move(rep)};
}

GradedClass graded_add(const GradedClass& a, const GradedClass& b) {
  if (a.level != b.level) throw filtration_error("graded sum requires equal levels");
  return GradedClass{a.filt, a.level, a.rep + b.rep};
}

GradedClass graded_scale(const GradedClass& a, const RingElem& s) {
  return GradedClass{a.filt, a.level, a.rep.scaled(s)};
}

}  // namespace bbreg
