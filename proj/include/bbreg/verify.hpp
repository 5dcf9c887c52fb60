#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bbreg/io.hpp"

namespace bbreg {

// Top-level property suites shared between the command-line tool and the
// tests.  Every suite is a deterministic function of (seed, trials); reports
// carry no timestamps and render all integers as decimal strings.

struct SuiteResult {
  std::string name;
  i64 checks = 0;
  i64 failures = 0;
  std::vector<std::string> failed_properties;  // deduplicated, in first-hit order
};

const std::vector<std::string>& suite_names();  // taylor identities compat regulator local

// extra input for the compat suite: an externally supplied system to validate
// alongside the generated ones
SuiteResult run_suite(const std::string& name, u64 seed, i64 trials,
                      const std::optional<MockEulerSystem>& fixture = std::nullopt);

// suite == "all" runs every suite; report["ok"] is true iff zero failures
nlohmann::ordered_json verify_report(const std::string& suite, u64 seed, i64 trials,
                                     const std::optional<MockEulerSystem>& fixture =
                                         std::nullopt);

}  // namespace bbreg
