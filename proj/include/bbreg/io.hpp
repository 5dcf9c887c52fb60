#pragma once

#include <string>

#include "bbreg/mockeuler.hpp"
#include "bbreg/regulator.hpp"
#include "json.hpp"

namespace bbreg {

// All artifacts are JSON with a "schema": "bbreg/1" field and every integer
// rendered as a decimal string (exactness over convenience).

inline constexpr const char* kSchemaTag = "bbreg/1";

std::string dec(i64 x);
i64 dec_parse(const nlohmann::json& j);  // throws schema_error

nlohmann::ordered_json tower_to_json(const Tower& t);
Tower tower_from_json(const nlohmann::json& j);

nlohmann::ordered_json ring_to_json(const CoeffRing& r);
CoeffRing ring_from_json(const nlohmann::json& j);

nlohmann::ordered_json elem_to_json(const RingElem& x);
RingElem elem_from_json(const CoeffRing& r, const nlohmann::json& j);

nlohmann::ordered_json vec_to_json(const Vec& v);
Vec vec_from_json(const nlohmann::json& j);

// mock Euler system fixture ("kind": "mock_system")
nlohmann::ordered_json system_to_json(const MockEulerSystem& sys);
MockEulerSystem system_from_json(const nlohmann::json& j);

// pairing + lattice fixture ("kind": "pairing"); self-contained: carries the
// tower, the ring, the level S, the form, the weights, and the lattice pair
struct PairingFixture {
  Tower tower;
  CoeffRing ring;
  i64 level;
  MockPairing pair;
  LatticePair lat;
};
nlohmann::ordered_json pairing_to_json(const PairingFixture& fx);
PairingFixture pairing_from_json(const nlohmann::json& j);

// exact dump of a tensor (module rank, group order, flat coordinates)
nlohmann::ordered_json tensor_to_json(const TensorElem& x);

// file helpers; throw schema_error on unreadable/invalid content
nlohmann::json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const nlohmann::ordered_json& j);

// runtime configuration
struct Config {
  std::string cache_dir = ".bbreg-cache";
  std::string lmfdb_base_url = "https://www.lmfdb.org/api";
  int filtration_depth = 8;
  i64 group_order_cap = 2000;
  i64 series_bound_cap = 1000000;
  u64 seed = 0;
};
Config config_from_json(const nlohmann::json& j);
nlohmann::ordered_json config_to_json(const Config& c);
// path from explicit flag or the BBREG_CONFIG environment variable; empty
// path yields the defaults
Config load_config(const std::string& path);

}  // namespace bbreg
