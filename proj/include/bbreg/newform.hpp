#pragma once

#include <string>

#include "bbreg/coeffring.hpp"

namespace bbreg {

// Normalized newform coefficient data with rational (degree-1) coefficient
// field; a_n covered contiguously for n = 1..bound.
struct NewformData {
  std::string label;
  i64 level = 1;
  int weight = 0;
  int sign = 1;
  int field_degree = 1;
  std::vector<i64> field_poly = {0, 1};
  std::vector<i128> an;  // an[n-1] = a_n

  i64 bound() const { return (i64)an.size(); }
  i128 a(i64 n) const;  // throws missing_coefficients_error out of range
};

// tau(n) for n <= bound via the exact eta-product series
// (prod (1-q^n))^3 = sum (-1)^j (2j+1) q^{j(j+1)/2}, raised to the 8th power
NewformData delta_coefficients(i64 bound);

// JSON schema (integers as decimal strings):
// { "label": str, "level": int, "weight": int, "sign": 1|-1,
//   "field": {"degree": 1, "poly": [0,1]}, "an": {"1": "1", ...} }
NewformData load_newform(const std::string& path);
void save_newform(const std::string& path, const NewformData& f);
NewformData parse_newform_json(const std::string& text);
std::string newform_to_json(const NewformData& f);

// Offline-first: returns the cached copy when present, otherwise performs one
// HTTP GET of base_url-relative resource "<label>.json" and caches the body
// (atomic write).  The test suite only ever exercises the cache path.
NewformData fetch_newform(const std::string& base_url, const std::string& label,
                          const std::string& cache_dir);

// a_l / l^{k/2-1} in the coefficient ring
RingElem unit_u(const NewformData& f, i64 ell, const CoeffRing& ring);

// primes l <= bound with kronecker(D,l) = -1, l not dividing N, p^m | l+1
std::vector<i64> sieve_S(i64 D, i64 N, i64 p, int m, i64 bound);
// additionally p^m | a_l (and l not dividing D, implied by inertness)
std::vector<i64> sieve_kolyvagin(const NewformData& f, i64 D, i64 p, int m, i64 bound);

// Numeric exclusion conditions on p.  Both published variants are evaluated;
// the big-image hypothesis is out of scope and reported as unchecked.
struct ExceptionalReport {
  bool p_odd = false;
  bool divides_6NDfactphi = false;  // p | 6 N D (k-2)! phi(N)
  bool ramified_in_extension = false;  // coefficient field is Q: never
  bool conjunction_excluded = false;   // !p_odd or (divides and ramified)
  bool union_excluded = false;         // !p_odd or divides or ramified
  bool intro_excluded = false;         // p | 2 N (k-2)! phi(N)
  bool big_image_checked = false;      // always false (out of scope)
};
ExceptionalReport exceptional_check(i64 p, i64 N, i64 D, int k);

i64 euler_phi(i64 n);

}  // namespace bbreg
