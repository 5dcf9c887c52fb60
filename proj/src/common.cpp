#include "bbreg/common.hpp"

namespace bbreg {

std::string i128_str(i128 x) {
  if (x == 0) return "0";
  bool neg = x < 0;
  // careful: -INT128_MIN overflows, but our values never reach it
  u64 lo;
  std::string out;
  i128 v = neg ? -x : x;
  while (v > 0) {
    lo = static_cast<u64>(v % 10);
    out.push_back(static_cast<char>('0' + lo));
    v /= 10;
  }
  if (neg) out.push_back('-');
  return std::string(out.rbegin(), out.rend());
}

i128 i128_parse(const std::string& s) {
  if (s.empty()) throw schema_error("empty integer string");
  size_t i = 0;
  bool neg = false;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  if (i == s.size()) throw schema_error("sign without digits: " + s);
  i128 v = 0;
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw schema_error("bad integer string: " + s);
    v = v * 10 + (s[i] - '0');
  }
  return neg ? -v : v;
}

i64 gcd_ll(i64 a, i64 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    i64 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

i64 invmod(i64 a, i64 q) {
  a = mod_reduce(a, q);
  i64 t = 0, newt = 1, r = q, newr = a;
  while (newr != 0) {
    i64 quo = r / newr;
    i64 tmp = t - quo * newt;
    t = newt;
    newt = tmp;
    tmp = r - quo * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) throw non_unit_error("not invertible mod " + std::to_string(q));
  return mod_reduce(t, q);
}

i64 powmod(i64 a, i64 e, i64 q) {
  a = mod_reduce(a, q);
  i64 r = 1 % q;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, q);
    a = mulmod(a, a, q);
    e >>= 1;
  }
  return r;
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int val_p_int(i128 x, i64 p, int cap) {
  if (x < 0) x = -x;
  int v = 0;
  while (v < cap && x != 0 && x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

i64 binom(i64 n, i64 k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  i64 r = 1;
  for (i64 i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;  // exact at every step
  }
  return r;
}

}  // namespace bbreg
