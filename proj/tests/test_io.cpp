#include "bbreg/io.hpp"

#include <cstdlib>

#include "bbreg/verify.hpp"
#include "doctest.h"

using namespace bbreg;

#ifndef BBREG_FIXTURE_DIR
#define BBREG_FIXTURE_DIR "fixtures"
#endif

namespace {

Tower demo_tower() {
  TowerSpec sp;
  sp.disc = -23;
  sp.h_k = 2;
  sp.gamma1 = {2};
  sp.primes = {5, 11};
  return Tower(sp);
}

}  // namespace

TEST_CASE("tower and ring serialization round trips") {
  Tower tw = demo_tower();
  Tower back = tower_from_json(tower_to_json(tw));
  CHECK(back.disc() == tw.disc());
  CHECK(back.h_k() == tw.h_k());
  CHECK(back.gamma1() == tw.gamma1());
  CHECK(back.primes() == tw.primes());

  for (const CoeffRing& R : {CoeffRing::zp(3, 2), CoeffRing::galois(3, 2, 2)}) {
    CoeffRing rb = ring_from_json(ring_to_json(R));
    CHECK(rb == R);
    Rng rng(5);
    std::vector<i64> c(R.d());
    for (auto& x : c) x = rng.uniform(0, R.q() - 1);
    RingElem e(R, c);
    CHECK(elem_from_json(R, elem_to_json(e)) == e);
  }

  SUBCASE("schema violations are rejected") {
    nlohmann::json j = tower_to_json(tw);
    j["disc"] = "-24";  // not a fundamental discriminant
    CHECK_THROWS_AS(tower_from_json(j), schema_error);
    nlohmann::json r = ring_to_json(CoeffRing::zp(3, 2));
    r["p"] = "junk";
    CHECK_THROWS_AS(ring_from_json(r), schema_error);
  }
}

TEST_CASE("mock system serialization round trips and validates") {
  Tower tw = demo_tower();
  CoeffRing R = CoeffRing::zp(3, 2);
  Rng rng(3);
  std::map<i64, RingElem> units{{5, RingElem::from_int(R, 4)},
                                {11, RingElem::from_int(R, 7)}};
  MockEulerSystem sys = gen_system(13, tw, R, -1, units, 2, true);
  nlohmann::ordered_json j = system_to_json(sys);
  MockEulerSystem back = system_from_json(j);
  CHECK(back.top() == sys.top());
  CHECK(back.copies() == sys.copies());
  CHECK(back.sign() == sys.sign());
  for (i64 T : tw.divisors(55)) CHECK(back.y(T) == sys.y(T));
  CHECK(back.unit(5) == sys.unit(5));
  CHECK(system_to_json(back) == j);

  SUBCASE("wrong element length is a schema error") {
    nlohmann::json bad = j;
    bad["y"]["5"] = nlohmann::json::array({"1"});
    CHECK_THROWS_AS(system_from_json(bad), schema_error);
  }
  SUBCASE("wrong kind tag is a schema error") {
    nlohmann::json bad = j;
    bad["kind"] = "pairing";
    CHECK_THROWS_AS(system_from_json(bad), schema_error);
  }
}

TEST_CASE("pairing fixture serialization round trips") {
  Tower tw = demo_tower();
  CoeffRing R = CoeffRing::zp(3, 2);
  PairingFixture fx{tw, R, 55,
                    MockPairing{R,
                                {{RingElem::from_int(R, 2), RingElem::from_int(R, 5)},
                                 {RingElem::from_int(R, 1), RingElem::from_int(R, 8)}},
                                {{5, RingElem::one(R)}, {11, RingElem::from_int(R, 4)}}},
                    LatticePair{{{RingElem::one(R), RingElem::zero(R)}},
                                {{RingElem::zero(R), RingElem::one(R)}},
                                RingElem::one(R),
                                RingElem::from_int(R, 2)}};
  nlohmann::ordered_json j = pairing_to_json(fx);
  PairingFixture back = pairing_from_json(j);
  CHECK(back.level == 55);
  CHECK(back.pair.form == fx.pair.form);
  CHECK(back.pair.weights == fx.pair.weights);
  CHECK(back.lat.a_rows == fx.lat.a_rows);
  CHECK(back.lat.b_rows == fx.lat.b_rows);
  CHECK(back.lat.index_b == fx.lat.index_b);
  CHECK(pairing_to_json(back) == j);
}

TEST_CASE("config parsing: defaults, file values, and validation") {
  Config def = load_config("");
  CHECK(def.filtration_depth == 8);
  nlohmann::json j{{"filtration_depth", "5"}, {"seed", "99"}, {"cache_dir", "/tmp/x"}};
  Config c = config_from_json(j);
  CHECK(c.filtration_depth == 5);
  CHECK(c.seed == 99);
  CHECK(c.cache_dir == "/tmp/x");
  nlohmann::json bad{{"filtration_depth", "0"}};
  CHECK_THROWS_AS(config_from_json(bad), schema_error);
}

TEST_CASE("shipped fixtures load and behave as recorded") {
  const std::string dir = BBREG_FIXTURE_DIR;
  MockEulerSystem demo = system_from_json(load_json_file(dir + "/demo_system.json"));
  CHECK(demo.top() == 55);
  CHECK(check_norm_relations(demo).ok);
  CHECK(check_conjugation(demo).ok);
  CHECK(demo.unit(5) == RingElem::from_int(demo.ring(), 3));

  MockEulerSystem corrupted =
      system_from_json(load_json_file(dir + "/corrupted_system.json"));
  CHECK_FALSE(check_norm_relations(corrupted).ok);

  PairingFixture fx = pairing_from_json(load_json_file(dir + "/demo_pairing_rank1.json"));
  CHECK(fx.level == 5);
  CHECK(fx.lat.a_rows.size() == 1);
}

TEST_CASE("verify reports are deterministic and structurally sound") {
  nlohmann::ordered_json a = verify_report("identities", 42, 24);
  nlohmann::ordered_json b = verify_report("identities", 42, 24);
  CHECK(a.dump() == b.dump());
  CHECK(a["ok"].get<bool>());
  CHECK(a["suites"].size() == 1);
  CHECK(a["suites"][0]["failures"] == "0");

  SUBCASE("corrupted fixture shows up as a named failing property") {
    const std::string dir = BBREG_FIXTURE_DIR;
    MockEulerSystem corrupted =
        system_from_json(load_json_file(dir + "/corrupted_system.json"));
    nlohmann::ordered_json r = verify_report("compat", 1, 40, corrupted);
    CHECK_FALSE(r["ok"].get<bool>());
    auto failed = r["suites"][0]["failed_properties"];
    CHECK(std::find(failed.begin(), failed.end(), "fixture_norm_relations") !=
          failed.end());
  }

  SUBCASE("unknown suite name is rejected") {
    CHECK_THROWS_AS(verify_report("bogus", 0, 1), schema_error);
  }
}
