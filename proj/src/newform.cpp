#include "bbreg/newform.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "bbreg/groups.hpp"
#include "json.hpp"

#include "httplib.h"

namespace bbreg {

i128 NewformData::a(i64 n) const {
  if (n < 1 || n > bound())
    throw missing_coefficients_error("coefficient a_" + std::to_string(n) +
                                     " outside covered range 1.." + std::to_string(bound()));
  return an[(size_t)(n - 1)];
}

NewformData delta_coefficients(i64 bound) {
  if (bound < 1 || bound > 1000000) throw size_cap_error("series bound outside [1, 10^6]");
  // sparse Jacobi coefficients of E = prod (1-q^n)^3, truncated at q^{bound-1}
  std::vector<std::pair<i64, i64>> sparse;  // (exponent, coefficient)
  for (i64 j = 0;; ++j) {
    i64 e = j * (j + 1) / 2;
    if (e >= bound) break;
    sparse.emplace_back(e, (j % 2 == 0 ? 1 : -1) * (2 * j + 1));
  }
  // E^8 by repeated truncated multiplication with the sparse factor
  std::vector<i128> acc((size_t)bound, 0);
  acc[0] = 1;
  for (int pass = 0; pass < 8; ++pass) {
    std::vector<i128> next((size_t)bound, 0);
    for (auto [e, c] : sparse)
      for (i64 i = 0; i + e < bound; ++i)
        if (acc[(size_t)i] != 0) next[(size_t)(i + e)] += c * acc[(size_t)i];
    acc = std::move(next);
  }
  NewformData f;
  f.label = "delta";
  f.level = 1;
  f.weight = 12;
  f.sign = 1;
  f.an = std::move(acc);  // coefficient of q^{n-1} in E^8 is tau(n)
  return f;
}

// ---- JSON serialization ----------------------------------------------------

std::string newform_to_json(const NewformData& f) {
  nlohmann::ordered_json j;
  j["label"] = f.label;
  j["level"] = f.level;
  j["weight"] = f.weight;
  j["sign"] = f.sign;
  j["field"] = {{"degree", f.field_degree}, {"poly", f.field_poly}};
  nlohmann::ordered_json an = nlohmann::ordered_json::object();
  for (i64 n = 1; n <= f.bound(); ++n) an[std::to_string(n)] = i128_str(f.a(n));
  j["an"] = std::move(an);
  return j.dump(2) + "\n";
}

NewformData parse_newform_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw schema_error("invalid JSON in newform data");
  NewformData f;
  try {
    f.label = j.at("label").get<std::string>();
    f.level = j.at("level").get<i64>();
    f.weight = j.at("weight").get<int>();
    f.sign = j.at("sign").get<int>();
    f.field_degree = j.at("field").at("degree").get<int>();
    f.field_poly = j.at("field").at("poly").get<std::vector<i64>>();
    const auto& an = j.at("an");
    if (!an.is_object()) throw schema_error("\"an\" must be an object");
    std::vector<i128> coeffs;
    for (i64 n = 1;; ++n) {
      auto it = an.find(std::to_string(n));
      if (it == an.end()) {
        // any further key means a gap in the contiguous coverage
        if ((i64)an.size() > n - 1)
          throw missing_coefficients_error("gap at a_" + std::to_string(n));
        break;
      }
      coeffs.push_back(i128_parse(it->get<std::string>()));
    }
    f.an = std::move(coeffs);
  } catch (const nlohmann::json::exception& e) {
    throw schema_error(std::string("newform schema violation: ") + e.what());
  }
  if (f.level < 1) throw schema_error("level must be >= 1");
  if (f.weight < 2 || f.weight % 2 != 0) throw schema_error("weight must be even and >= 2");
  if (f.sign != 1 && f.sign != -1) throw schema_error("sign must be +1 or -1");
  if (f.field_degree != 1) throw schema_error("only degree-1 coefficient fields supported");
  if (f.bound() < 1 || f.a(1) != 1) throw schema_error("newform must be normalized: a_1 = 1");
  // multiplicativity spot-check a_{mn} = a_m a_n for coprime m, n
  for (i64 mm = 2; mm * mm <= f.bound(); ++mm)
    for (i64 nn = mm + 1; mm * nn <= f.bound() && nn * nn <= f.bound(); ++nn)
      if (gcd_ll(mm, nn) == 1 && f.a(mm * nn) != f.a(mm) * f.a(nn))
        throw schema_error("multiplicativity violated at a_" + std::to_string(mm * nn));
  return f;
}

NewformData load_newform(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw schema_error("cannot open newform file: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_newform_json(text);
}

void save_newform(const std::string& path, const NewformData& f) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw error("cannot write newform file: " + tmp);
    out << newform_to_json(f);
  }
  std::filesystem::rename(tmp, path);
}

NewformData fetch_newform(const std::string& base_url, const std::string& label,
                          const std::string& cache_dir) {
  std::filesystem::create_directories(cache_dir);
  std::string cache_path = cache_dir + "/" + label + ".json";
  if (std::filesystem::exists(cache_path)) return load_newform(cache_path);

  // split "http://host[:port]" from the resource prefix
  std::string url = base_url;
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw network_error("unsupported base URL: " + base_url);
  auto path_start = url.find('/', scheme_end + 3);
  std::string host = url.substr(0, path_start == std::string::npos ? url.size() : path_start);
  std::string prefix = path_start == std::string::npos ? "" : url.substr(path_start);
  httplib::Client client(host);
  client.set_connection_timeout(5, 0);
  auto res = client.Get(prefix + "/" + label + ".json");
  if (!res || res->status != 200)
    throw network_error("fetch failed for newform " + label);
  NewformData f = parse_newform_json(res->body);  // validate before caching
  std::string tmp = cache_path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << res->body;
  }
  std::filesystem::rename(tmp, cache_path);
  return f;
}

// ---- arithmetic on the coefficients ----------------------------------------

RingElem unit_u(const NewformData& f, i64 ell, const CoeffRing& ring) {
  if (ell == ring.p())
    throw non_invertible_denominator_error("l = p: l^{k/2-1} is not invertible");
  RingElem denom = RingElem::one(ring);
  RingElem lr = RingElem::from_int(ring, ell);
  for (int i = 0; i < f.weight / 2 - 1; ++i) denom = denom * lr;
  return RingElem::from_int(ring, f.a(ell)) * denom.inverse();
}

std::vector<i64> sieve_S(i64 D, i64 N, i64 p, int m, i64 bound) {
  if (p < 3 || !is_prime(p)) throw error("sieve needs an odd prime p");
  if (N % p == 0) throw error("sieve needs p not dividing N");
  if (!is_fundamental_discriminant(D)) throw error("sieve needs a fundamental discriminant");
  i64 q = ipow(p, m);
  std::vector<i64> out;
  for (i64 l = 2; l <= bound; ++l)
    if (is_prime(l) && kronecker(D, l) == -1 && N % l != 0 && (l + 1) % q == 0)
      out.push_back(l);
  return out;
}

std::vector<i64> sieve_kolyvagin(const NewformData& f, i64 D, i64 p, int m, i64 bound) {
  if (bound > f.bound()) throw missing_coefficients_error("sieve bound exceeds coefficient data");
  i64 q = ipow(p, m);
  std::vector<i64> out;
  for (i64 l : sieve_S(D, f.level, p, m, bound)) {
    i128 al = f.a(l);
    i128 r = al % q;
    if (r == 0) out.push_back(l);
  }
  return out;
}

i64 euler_phi(i64 n) {
  if (n < 1) throw error("euler_phi needs n >= 1");
  i64 result = n;
  for (i64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      result -= result / d;
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

ExceptionalReport exceptional_check(i64 p, i64 N, i64 D, int k) {
  ExceptionalReport r;
  r.p_odd = (p >= 3) && is_prime(p);
  i64 absD = D < 0 ? -D : D;
  bool p_div_fact = r.p_odd && p <= k - 2;  // p | (k-2)!
  r.divides_6NDfactphi = !r.p_odd || 6 % p == 0 || N % p == 0 || absD % p == 0 ||
                         p_div_fact || euler_phi(N) % p == 0;
  r.ramified_in_extension = false;  // rational coefficient field
  r.conjunction_excluded = !r.p_odd || (r.divides_6NDfactphi && r.ramified_in_extension);
  r.union_excluded = !r.p_odd || r.divides_6NDfactphi || r.ramified_in_extension;
  r.intro_excluded = !r.p_odd || N % p == 0 || p_div_fact || euler_phi(N) % p == 0;
  r.big_image_checked = false;
  return r;
}

}  // namespace bbreg
