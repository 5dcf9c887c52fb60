#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace bbreg {

using i64 = long long;
using u64 = unsigned long long;
using i128 = __int128;

// ---- error taxonomy ------------------------------------------------------

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ring_mismatch_error : error { using error::error; };
struct non_unit_error : error { using error::error; };
struct insufficient_valuation_error : error { using error::error; };
struct dimension_mismatch_error : error { using error::error; };
struct size_cap_error : error { using error::error; };
struct filtration_error : error { using error::error; };       // level/depth problems
struct not_fixed_error : error { using error::error; };
struct index_not_invertible_error : error { using error::error; };
struct non_invertible_denominator_error : error { using error::error; };
struct divisibility_error : error { using error::error; };
struct schema_error : error { using error::error; };
struct missing_coefficients_error : error { using error::error; };
struct network_error : error { using error::error; };

// ---- 128-bit helpers -----------------------------------------------------

std::string i128_str(i128 x);
i128 i128_parse(const std::string& s);  // throws schema_error on junk

// reduce x into [0, q)
inline i64 mod_reduce(i128 x, i64 q) {
  i128 r = x % q;
  if (r < 0) r += q;
  return static_cast<i64>(r);
}

inline i64 mulmod(i64 a, i64 b, i64 q) { return mod_reduce(static_cast<i128>(a) * b, q); }

// p^e as i64; caller guarantees no overflow (moduli here stay tiny)
inline i64 ipow(i64 b, int e) {
  i64 r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

i64 gcd_ll(i64 a, i64 b);
// inverse of a mod q for gcd(a,q)=1; throws non_unit_error otherwise
i64 invmod(i64 a, i64 q);
// a^e mod q
i64 powmod(i64 a, i64 e, i64 q);

bool is_prime(i64 n);

// p-adic valuation of a nonzero integer, capped at `cap`
int val_p_int(i128 x, i64 p, int cap);

// binomial coefficient, exact in i64 (arguments stay small here)
i64 binom(i64 n, i64 k);

// ---- deterministic rng ---------------------------------------------------

class Rng {
 public:
  explicit Rng(u64 seed) : eng_(seed) {}
  // uniform in [lo, hi] inclusive
  i64 uniform(i64 lo, i64 hi) {
    return lo + static_cast<i64>(eng_() % static_cast<u64>(hi - lo + 1));
  }
  u64 raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

}  // namespace bbreg
