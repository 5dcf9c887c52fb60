#include "bbreg/linalg.hpp"

#include <algorithm>
#include <map>

namespace bbreg {

namespace {

int entry_val(i64 x, i64 p, int e) {
  if (x == 0) return e;
  int v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

// x = p^v * u with u a unit; returns u^{-1} mod q
i64 unit_part_inv(i64 x, i64 p, int v, i64 q) {
  i64 u = x / ipow(p, v);
  return invmod(u, q);
}

void row_submul(std::vector<i64>& r, const std::vector<i64>& src, i64 w, i64 q) {
  for (size_t j = 0; j < r.size(); ++j)
    r[j] = mod_reduce(r[j] - static_cast<i128>(w) * src[j], q);
}

void row_scale(std::vector<i64>& r, i64 s, i64 q) {
  for (auto& x : r) x = mulmod(x, s, q);
}

bool row_zero(const std::vector<i64>& r) {
  for (i64 x : r)
    if (x != 0) return false;
  return true;
}

// in-place echelonization; returns list of (col, rowidx) pivots with leading
// entries normalized to p^v
std::vector<std::pair<int, int>> echelonize(ScalarMat& M) {
  const i64 p = M.p, q = M.q;
  const int e = M.e, n = M.ncols;
  auto& rows = M.rows;
  std::vector<std::pair<int, int>> pivots;
  int r0 = 0;
  for (int col = 0; col < n && r0 < static_cast<int>(rows.size()); ++col) {
    int best = -1, bestv = e;
    for (int i = r0; i < static_cast<int>(rows.size()); ++i) {
      int v = entry_val(rows[i][col], p, e);
      if (v < bestv) {
        bestv = v;
        best = i;
      }
    }
    if (best < 0) continue;
    std::swap(rows[r0], rows[best]);
    row_scale(rows[r0], unit_part_inv(rows[r0][col], p, bestv, q), q);
    i64 lead = ipow(p, bestv);
    for (int i = r0 + 1; i < static_cast<int>(rows.size()); ++i) {
      if (rows[i][col] == 0) continue;
      row_submul(rows[i], rows[r0], rows[i][col] / lead, q);
    }
    pivots.emplace_back(col, r0);
    ++r0;
  }
  rows.resize(r0);
  return pivots;
}

// reduce v against an echelonized matrix; returns the remainder
std::vector<i64> reduce_vector(const ScalarMat& M,
                               const std::vector<std::pair<int, int>>& pivots,
                               std::vector<i64> v) {
  const i64 p = M.p, q = M.q;
  const int e = M.e;
  for (auto [col, ri] : pivots) {
    if (v[col] == 0) continue;
    int pv = entry_val(M.rows[ri][col], p, e);
    if (entry_val(v[col], p, e) < pv) continue;  // not reducible here
    row_submul(v, M.rows[ri], v[col] / ipow(p, pv), q);
  }
  return v;
}

}  // namespace

ScalarMat howell_form(const ScalarMat& in) {
  ScalarMat M = in;
  M.q = ipow(M.p, M.e);
  if (M.e == 0) {
    M.rows.clear();
    return M;
  }
  for (auto& r : M.rows) {
    if (static_cast<int>(r.size()) != M.ncols)
      throw dimension_mismatch_error("howell_form: ragged rows");
    for (auto& x : r) x = mod_reduce(x, M.q);
  }
  M.rows.erase(std::remove_if(M.rows.begin(), M.rows.end(), row_zero), M.rows.end());

  auto pivots = echelonize(M);
  // Howell closure: p^{e-v} times a pivot row with v > 0 must stay reducible
  for (;;) {
    std::vector<std::vector<i64>> extra;
    for (auto [col, ri] : pivots) {
      int v = entry_val(M.rows[ri][col], M.p, M.e);
      if (v == 0) continue;
      std::vector<i64> cand = M.rows[ri];
      row_scale(cand, ipow(M.p, M.e - v), M.q);
      cand = reduce_vector(M, pivots, cand);
      if (!row_zero(cand)) extra.push_back(std::move(cand));
    }
    if (extra.empty()) break;
    for (auto& r : extra) M.rows.push_back(std::move(r));
    pivots = echelonize(M);
  }
  // canonical reduction of entries above each pivot
  for (auto [col, ri] : pivots) {
    int pv = entry_val(M.rows[ri][col], M.p, M.e);
    i64 lead = ipow(M.p, pv);
    for (int i = 0; i < static_cast<int>(M.rows.size()); ++i) {
      if (i == ri || M.rows[i][col] == 0) continue;
      if (i > ri) continue;  // below-pivot entries are already zero
      row_submul(M.rows[i], M.rows[ri], M.rows[i][col] / lead, M.q);
    }
  }
  return M;
}

bool howell_member(const ScalarMat& hf, std::vector<i64> v) {
  if (static_cast<int>(v.size()) != hf.ncols)
    throw dimension_mismatch_error("howell_member: wrong length");
  if (hf.e == 0) return true;
  for (auto& x : v) x = mod_reduce(x, hf.q);
  // pivots in a Howell form are simply (leading col, row index)
  for (int i = 0; i < static_cast<int>(hf.rows.size()); ++i) {
    int col = 0;
    while (col < hf.ncols && hf.rows[i][col] == 0) ++col;
    if (col == hf.ncols) continue;
    // columns before this pivot must already be cleared
    for (int j = 0; j < col; ++j)
      if (v[j] != 0) return false;
    if (v[col] == 0) continue;
    int pv = entry_val(hf.rows[i][col], hf.p, hf.e);
    if (entry_val(v[col], hf.p, hf.e) < pv) return false;
    std::vector<i64> tmp = v;
    row_submul(tmp, hf.rows[i], v[col] / ipow(hf.p, pv), hf.q);
    v = std::move(tmp);
  }
  return row_zero(v);
}

int howell_log_order(const ScalarMat& hf) {
  int total = 0;
  for (const auto& r : hf.rows) {
    int col = 0;
    while (col < hf.ncols && r[col] == 0) ++col;
    if (col == hf.ncols) continue;
    total += hf.e - entry_val(r[col], hf.p, hf.e);
  }
  return total;
}

std::vector<int> smith_diagonal(const ScalarMat& in) {
  ScalarMat M = in;
  M.q = ipow(M.p, M.e);
  const i64 p = M.p, q = M.q;
  const int e = M.e, n = M.ncols;
  if (e == 0) return std::vector<int>(n, 0);
  for (auto& r : M.rows)
    for (auto& x : r) x = mod_reduce(x, q);
  auto& rows = M.rows;
  int kmax = std::min<int>(static_cast<int>(rows.size()), n);
  std::vector<int> diag;
  for (int k = 0; k < kmax; ++k) {
    int bi = -1, bj = -1, bv = e;
    for (int i = k; i < static_cast<int>(rows.size()); ++i)
      for (int j = k; j < n; ++j) {
        int v = entry_val(rows[i][j], p, e);
        if (v < bv) {
          bv = v;
          bi = i;
          bj = j;
        }
      }
    if (bi < 0) break;
    std::swap(rows[k], rows[bi]);
    for (auto& r : rows) std::swap(r[k], r[bj]);
    row_scale(rows[k], unit_part_inv(rows[k][k], p, bv, q), q);
    i64 lead = ipow(p, bv);
    for (int i = k + 1; i < static_cast<int>(rows.size()); ++i)
      if (rows[i][k] != 0) row_submul(rows[i], rows[k], rows[i][k] / lead, q);
    for (int j = k + 1; j < n; ++j) {
      if (rows[k][j] == 0) continue;
      i64 w = rows[k][j] / lead;
      // column op: col_j -= w * col_k; only row k is affected (col k is clear)
      rows[k][j] = mod_reduce(rows[k][j] - static_cast<i128>(w) * rows[k][k], q);
    }
    diag.push_back(bv);
  }
  std::vector<int> out(n, e);
  for (size_t i = 0; i < diag.size(); ++i) out[i] = diag[i];
  return out;
}

// ---- RModule -------------------------------------------------------------

int RModule::r_pm() const {
  int c = 0;
  for (int x : exps)
    if (x == ring.m()) ++c;
  return c;
}

int RModule::r_p() const { return static_cast<int>(exps.size()); }

int RModule::log_p_order() const {
  int s = 0;
  for (int x : exps) s += x;
  return s * ring.d();
}

// ---- vecops --------------------------------------------------------------

namespace vecops {

Vec zero(const CoeffRing& r, int n) { return Vec(static_cast<size_t>(n) * r.d(), 0); }

void add_in_place(const CoeffRing& r, Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw dimension_mismatch_error("vec add: size mismatch");
  i64 q = r.q();
  for (size_t i = 0; i < a.size(); ++i) a[i] = mod_reduce(a[i] + b[i], q);
}

void sub_in_place(const CoeffRing& r, Vec& a, const Vec& b) {
  if (a.size() != b.size()) throw dimension_mismatch_error("vec sub: size mismatch");
  i64 q = r.q();
  for (size_t i = 0; i < a.size(); ++i) a[i] = mod_reduce(a[i] - b[i], q);
}

void scale_int_in_place(const CoeffRing& r, Vec& a, i64 s) {
  i64 q = r.q();
  s = mod_reduce(s, q);
  for (auto& x : a) x = mulmod(x, s, q);
}

void scale_in_place(const CoeffRing& r, Vec& a, const RingElem& s) {
  if (r.d() == 1) {
    scale_int_in_place(r, a, s.coeffs()[0]);
    return;
  }
  int d = r.d();
  int n = static_cast<int>(a.size()) / d;
  for (int i = 0; i < n; ++i) {
    RingElem x = get(r, a, i) * s;
    set(r, a, i, x);
  }
}

bool is_zero(const Vec& a) {
  for (i64 x : a)
    if (x != 0) return false;
  return true;
}

int valuation(const CoeffRing& r, const Vec& a) {
  int best = RingElem::val_infinity;
  for (i64 x : a) {
    if (x == 0) continue;
    best = std::min(best, val_p_int(x, r.p(), r.m()));
  }
  return best;
}

RingElem get(const CoeffRing& r, const Vec& a, int i) {
  int d = r.d();
  std::vector<i64> c(a.begin() + static_cast<size_t>(i) * d,
                     a.begin() + static_cast<size_t>(i + 1) * d);
  return RingElem(r, std::move(c));
}

void set(const CoeffRing& r, Vec& a, int i, const RingElem& x) {
  int d = r.d();
  std::copy(x.coeffs().begin(), x.coeffs().end(), a.begin() + static_cast<size_t>(i) * d);
}

std::vector<Vec> scalar_closure(const CoeffRing& r, const Vec& a) {
  int d = r.d();
  std::vector<Vec> out;
  out.push_back(a);
  if (d == 1) return out;
  int n = static_cast<int>(a.size()) / d;
  RingElem x = RingElem::gen(r);
  Vec cur = a;
  for (int j = 1; j < d; ++j) {
    Vec next(cur.size());
    for (int i = 0; i < n; ++i) set(r, next, i, get(r, cur, i) * x);
    out.push_back(next);
    cur = std::move(next);
  }
  return out;
}

Vec reduce_to(const CoeffRing& from, const CoeffRing& to, const Vec& a) {
  if (to.p() != from.p() || to.d() != from.d())
    throw ring_mismatch_error("vec reduce_to: incompatible rings");
  Vec out = a;
  i64 q = to.q();
  for (auto& x : out) x = to.m() == 0 ? 0 : mod_reduce(x, q);
  return out;
}

}  // namespace vecops

// ---- RSpan ---------------------------------------------------------------

RSpan::RSpan(CoeffRing ring, int n, const std::vector<Vec>& rows)
    : ring_(std::move(ring)), n_(n) {
  ScalarMat M;
  M.p = ring_.p();
  M.e = ring_.m();
  M.q = ring_.q();
  M.ncols = n * ring_.d();
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != M.ncols)
      throw dimension_mismatch_error("RSpan: row length != n*d");
    for (auto& cr : vecops::scalar_closure(ring_, r)) M.rows.push_back(std::move(cr));
  }
  hf_ = howell_form(M);
}

bool RSpan::contains(const Vec& v) const { return howell_member(hf_, v); }

RSpan RSpan::reduced(int e) const {
  CoeffRing small = ring_.quotient(e);
  std::vector<Vec> rows;
  for (const auto& r : hf_.rows) rows.push_back(vecops::reduce_to(ring_, small, r));
  return RSpan(small, n_, rows);
}

bool RSpan::same_span(const RSpan& other) const {
  if (ring_ != other.ring_ || n_ != other.n_) return false;
  return hf_.rows == other.hf_.rows;
}

RModule cokernel_invariants(const CoeffRing& ring, int n, const std::vector<Vec>& rows) {
  ScalarMat M;
  M.p = ring.p();
  M.e = ring.m();
  M.q = ring.q();
  M.ncols = n * ring.d();
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != M.ncols)
      throw dimension_mismatch_error("cokernel_invariants: row length != n*d");
    for (auto& cr : vecops::scalar_closure(ring, r)) M.rows.push_back(std::move(cr));
  }
  std::vector<int> diag = smith_diagonal(M);
  std::vector<int> pos;
  for (int v : diag)
    if (v > 0) pos.push_back(v);
  std::sort(pos.begin(), pos.end(), std::greater<int>());
  // as an R-module the scalar invariants come in groups of d equal exponents
  if (pos.size() % ring.d() != 0)
    throw error("cokernel invariants not a multiple of d (internal bug)");
  std::vector<int> exps;
  for (size_t i = 0; i < pos.size(); i += ring.d()) {
    for (int j = 1; j < ring.d(); ++j)
      if (pos[i + j] != pos[i]) throw error("cokernel invariants not d-uniform (internal bug)");
    exps.push_back(pos[i]);
  }
  return RModule{ring, std::move(exps)};
}

RModule image_invariants(const CoeffRing& ring, int n, const std::vector<Vec>& rows) {
  ScalarMat M;
  M.p = ring.p();
  M.e = ring.m();
  M.q = ring.q();
  M.ncols = n * ring.d();
  for (const auto& r : rows) {
    if (static_cast<int>(r.size()) != M.ncols)
      throw dimension_mismatch_error("image_invariants: row length != n*d");
    for (auto& cr : vecops::scalar_closure(ring, r)) M.rows.push_back(std::move(cr));
  }
  // elementary divisor p^v contributes a cyclic summand R/p^{m-v}
  std::vector<int> inv;
  for (int v : smith_diagonal(M))
    if (v < ring.m()) inv.push_back(ring.m() - v);
  std::sort(inv.begin(), inv.end(), std::greater<int>());
  if (inv.size() % ring.d() != 0)
    throw error("image invariants not a multiple of d (internal bug)");
  std::vector<int> exps;
  for (size_t i = 0; i < inv.size(); i += ring.d()) {
    for (int j = 1; j < ring.d(); ++j)
      if (inv[i + j] != inv[i]) throw error("image invariants not d-uniform (internal bug)");
    exps.push_back(inv[i]);
  }
  return RModule{ring, std::move(exps)};
}

}  // namespace bbreg
