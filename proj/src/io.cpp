#include "bbreg/io.hpp"

#include <cstdlib>
#include <fstream>

namespace bbreg {

using nlohmann::json;
using nlohmann::ordered_json;

std::string dec(i64 x) { return std::to_string(x); }

i64 dec_parse(const json& j) {
  if (j.is_number_integer()) return j.get<i64>();
  if (!j.is_string()) throw schema_error("expected a decimal integer string");
  const std::string s = j.get<std::string>();
  try {
    size_t pos = 0;
    i64 v = std::stoll(s, &pos);
    if (pos != s.size()) throw schema_error("trailing junk in integer: " + s);
    return v;
  } catch (const schema_error&) {
    throw;
  } catch (const std::exception&) {
    throw schema_error("bad integer literal: " + s);
  }
}

namespace {

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw schema_error(std::string("missing field: ") + key);
  return *it;
}

void check_schema(const json& j, const char* kind) {
  if (field(j, "schema").get<std::string>() != kSchemaTag)
    throw schema_error("unsupported schema tag");
  if (field(j, "kind").get<std::string>() != kind)
    throw schema_error(std::string("expected kind ") + kind);
}

}  // namespace

ordered_json tower_to_json(const Tower& t) {
  ordered_json j;
  j["disc"] = dec(t.disc());
  j["h_k"] = dec(t.h_k());
  j["gamma1"] = ordered_json::array();
  for (i64 g : t.gamma1()) j["gamma1"].push_back(dec(g));
  j["primes"] = ordered_json::array();
  for (i64 l : t.primes()) j["primes"].push_back(dec(l));
  return j;
}

Tower tower_from_json(const json& j) {
  TowerSpec sp;
  sp.disc = dec_parse(field(j, "disc"));
  sp.h_k = dec_parse(field(j, "h_k"));
  for (const auto& g : field(j, "gamma1")) sp.gamma1.push_back(dec_parse(g));
  for (const auto& l : field(j, "primes")) sp.primes.push_back(dec_parse(l));
  try {
    return Tower(sp);
  } catch (const error& e) {
    throw schema_error(std::string("invalid tower: ") + e.what());
  }
}

ordered_json ring_to_json(const CoeffRing& r) {
  ordered_json j;
  j["p"] = dec(r.p());
  j["m"] = dec(r.m());
  j["d"] = dec(r.d());
  j["poly"] = ordered_json::array();
  for (i64 c : r.defining_poly()) j["poly"].push_back(dec(c));
  return j;
}

CoeffRing ring_from_json(const json& j) {
  i64 p = dec_parse(field(j, "p"));
  int m = (int)dec_parse(field(j, "m"));
  int d = (int)dec_parse(field(j, "d"));
  try {
    if (j.contains("poly") && !j["poly"].empty()) {
      std::vector<i64> poly;
      for (const auto& c : j["poly"]) poly.push_back(dec_parse(c));
      return CoeffRing(p, m, d, std::move(poly));
    }
    return d == 1 ? CoeffRing::zp(p, m) : CoeffRing::galois(p, m, d);
  } catch (const error& e) {
    throw schema_error(std::string("invalid ring: ") + e.what());
  }
}

ordered_json elem_to_json(const RingElem& x) {
  ordered_json j = ordered_json::array();
  for (i64 c : x.coeffs()) j.push_back(dec(c));
  return j;
}

RingElem elem_from_json(const CoeffRing& r, const json& j) {
  if (!j.is_array()) throw schema_error("ring element must be a coefficient array");
  std::vector<i64> c;
  for (const auto& e : j) c.push_back(dec_parse(e));
  if ((int)c.size() != r.d())
    throw schema_error("ring element has wrong coefficient count");
  return RingElem(r, std::move(c));
}

ordered_json vec_to_json(const Vec& v) {
  ordered_json j = ordered_json::array();
  for (i64 c : v) j.push_back(dec(c));
  return j;
}

Vec vec_from_json(const json& j) {
  if (!j.is_array()) throw schema_error("vector must be an array");
  Vec v;
  for (const auto& e : j) v.push_back(dec_parse(e));
  return v;
}

ordered_json system_to_json(const MockEulerSystem& sys) {
  ordered_json j;
  j["schema"] = kSchemaTag;
  j["kind"] = "mock_system";
  j["tower"] = tower_to_json(sys.tower());
  j["ring"] = ring_to_json(sys.ring());
  j["top"] = dec(sys.top());
  j["copies"] = dec(sys.copies());
  j["sign"] = dec(sys.sign());
  ordered_json units = ordered_json::object();
  for (i64 l : sys.tower().primes())
    if (sys.top() % l == 0) units[dec(l)] = elem_to_json(sys.unit(l));
  j["units"] = std::move(units);
  ordered_json ys = ordered_json::object();
  for (i64 T : sys.tower().divisors(sys.top())) ys[dec(T)] = vec_to_json(sys.y(T));
  j["y"] = std::move(ys);
  return j;
}

MockEulerSystem system_from_json(const json& j) {
  check_schema(j, "mock_system");
  Tower tower = tower_from_json(field(j, "tower"));
  CoeffRing ring = ring_from_json(field(j, "ring"));
  i64 top = dec_parse(field(j, "top"));
  int copies = (int)dec_parse(field(j, "copies"));
  int sign = (int)dec_parse(field(j, "sign"));
  std::map<i64, RingElem> units;
  for (const auto& [k, v] : field(j, "units").items())
    units.emplace(dec_parse(json(k)), elem_from_json(ring, v));
  std::map<i64, Vec> ys;
  for (const auto& [k, v] : field(j, "y").items())
    ys.emplace(dec_parse(json(k)), vec_from_json(v));
  try {
    return MockEulerSystem(tower, ring, top, copies, sign, std::move(units),
                           std::move(ys));
  } catch (const error& e) {
    throw schema_error(std::string("invalid system: ") + e.what());
  }
}

ordered_json pairing_to_json(const PairingFixture& fx) {
  ordered_json j;
  j["schema"] = kSchemaTag;
  j["kind"] = "pairing";
  j["tower"] = tower_to_json(fx.tower);
  j["ring"] = ring_to_json(fx.ring);
  j["level"] = dec(fx.level);
  ordered_json form = ordered_json::array();
  for (const auto& row : fx.pair.form) {
    ordered_json r = ordered_json::array();
    for (const auto& x : row) r.push_back(elem_to_json(x));
    form.push_back(std::move(r));
  }
  j["form"] = std::move(form);
  ordered_json w = ordered_json::object();
  for (const auto& [l, c] : fx.pair.weights) w[dec(l)] = elem_to_json(c);
  j["weights"] = std::move(w);
  auto rows_json = [](const RMat& rows) {
    ordered_json out = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json rr = ordered_json::array();
      for (const auto& x : r) rr.push_back(elem_to_json(x));
      out.push_back(std::move(rr));
    }
    return out;
  };
  ordered_json lat;
  lat["a_rows"] = rows_json(fx.lat.a_rows);
  lat["b_rows"] = rows_json(fx.lat.b_rows);
  lat["index_a"] = elem_to_json(fx.lat.index_a);
  lat["index_b"] = elem_to_json(fx.lat.index_b);
  j["lattice"] = std::move(lat);
  return j;
}

PairingFixture pairing_from_json(const json& j) {
  check_schema(j, "pairing");
  Tower tower = tower_from_json(field(j, "tower"));
  CoeffRing ring = ring_from_json(field(j, "ring"));
  i64 level = dec_parse(field(j, "level"));
  if (!tower.divides_tower(level))
    throw schema_error("pairing level does not divide the tower top");
  MockPairing pair{ring, {}, {}};
  for (const auto& row : field(j, "form")) {
    RVec r;
    for (const auto& x : row) r.push_back(elem_from_json(ring, x));
    pair.form.push_back(std::move(r));
  }
  for (const auto& [k, v] : field(j, "weights").items())
    pair.weights.emplace(dec_parse(json(k)), elem_from_json(ring, v));
  const json& lj = field(j, "lattice");
  auto rows_parse = [&](const json& rows) {
    RMat out;
    for (const auto& r : rows) {
      RVec rr;
      for (const auto& x : r) rr.push_back(elem_from_json(ring, x));
      out.push_back(std::move(rr));
    }
    return out;
  };
  LatticePair lat{rows_parse(field(lj, "a_rows")), rows_parse(field(lj, "b_rows")),
                  elem_from_json(ring, field(lj, "index_a")),
                  elem_from_json(ring, field(lj, "index_b"))};
  return PairingFixture{std::move(tower), std::move(ring), level, std::move(pair),
                        std::move(lat)};
}

ordered_json tensor_to_json(const TensorElem& x) {
  ordered_json j;
  j["rank"] = dec(x.rank());
  j["group_order"] = dec(x.group().order());
  j["data"] = vec_to_json(x.data());
  return j;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw schema_error("cannot open file: " + path);
  try {
    return json::parse(in);
  } catch (const std::exception& e) {
    throw schema_error("invalid JSON in " + path + ": " + e.what());
  }
}

void save_json_file(const std::string& path, const ordered_json& j) {
  std::ofstream out(path);
  if (!out) throw schema_error("cannot write file: " + path);
  out << j.dump(2) << "\n";
}

Config config_from_json(const json& j) {
  Config c;
  if (j.contains("cache_dir")) c.cache_dir = j["cache_dir"].get<std::string>();
  if (j.contains("lmfdb_base_url"))
    c.lmfdb_base_url = j["lmfdb_base_url"].get<std::string>();
  if (j.contains("filtration_depth"))
    c.filtration_depth = (int)dec_parse(j["filtration_depth"]);
  if (j.contains("group_order_cap"))
    c.group_order_cap = dec_parse(j["group_order_cap"]);
  if (j.contains("series_bound_cap"))
    c.series_bound_cap = dec_parse(j["series_bound_cap"]);
  if (j.contains("seed")) c.seed = (u64)dec_parse(j["seed"]);
  if (c.filtration_depth < 1) throw schema_error("filtration depth must be >= 1");
  if (c.group_order_cap <= 0 || c.series_bound_cap <= 0)
    throw schema_error("size caps must be positive");
  return c;
}

ordered_json config_to_json(const Config& c) {
  ordered_json j;
  j["schema"] = kSchemaTag;
  j["kind"] = "config";
  j["cache_dir"] = c.cache_dir;
  j["lmfdb_base_url"] = c.lmfdb_base_url;
  j["filtration_depth"] = dec(c.filtration_depth);
  j["group_order_cap"] = dec(c.group_order_cap);
  j["series_bound_cap"] = dec(c.series_bound_cap);
  j["seed"] = dec((i64)c.seed);
  return j;
}

Config load_config(const std::string& path) {
  std::string p = path;
  if (p.empty()) {
    const char* env = std::getenv("BBREG_CONFIG");
    if (env != nullptr) p = env;
  }
  if (p.empty()) return Config{};
  return config_from_json(load_json_file(p));
}

}  // namespace bbreg
