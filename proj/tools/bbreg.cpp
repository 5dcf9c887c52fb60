// bbreg: exact group-ring toolkit command line
//
// exit codes: 0 success, 1 property failure, 2 usage error, 3 data error
#include <filesystem>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "bbreg/io.hpp"
#include "bbreg/newform.hpp"
#include "bbreg/regulator.hpp"
#include "bbreg/thetal.hpp"
#include "bbreg/verify.hpp"

namespace {

using namespace bbreg;
using nlohmann::ordered_json;

struct SieveArgs {
  i64 disc = 0, level = 0, p = 0, max = 0;
  int m = 1;
  std::string newform_path, label, config_path;
  bool kolyvagin = false;
};

int cmd_sieve(const SieveArgs& a) {
  Config cfg = load_config(a.config_path);
  std::string tag = "sieve-" + std::to_string(a.disc) + "-" + std::to_string(a.level) +
                    "-" + std::to_string(a.p) + "-" + std::to_string(a.m) + "-" +
                    std::to_string(a.max);
  std::optional<NewformData> form;
  if (!a.newform_path.empty()) {
    form = load_newform(a.newform_path);
  } else if (!a.label.empty()) {
    form = fetch_newform(cfg.lmfdb_base_url, a.label, cfg.cache_dir);
  }
  if (a.kolyvagin) {
    if (!form) {
      std::cerr << "bbreg sieve: --kolyvagin needs a coefficient source "
                   "(--newform or --label)\n";
      return 2;
    }
    tag += "-kolyvagin-" + (form->label.empty() ? std::string("local") : form->label);
  }
  std::filesystem::create_directories(cfg.cache_dir);
  const std::string sidecar = cfg.cache_dir + "/" + tag + ".json";

  std::vector<i64> primes;
  if (std::filesystem::exists(sidecar)) {
    nlohmann::json j = load_json_file(sidecar);
    for (const auto& e : j.at("primes")) primes.push_back(dec_parse(e));
  } else {
    primes = a.kolyvagin ? sieve_kolyvagin(*form, a.disc, a.p, a.m, a.max)
                         : sieve_S(a.disc, a.level, a.p, a.m, a.max);
    ordered_json j;
    j["schema"] = kSchemaTag;
    j["kind"] = "sieve";
    j["disc"] = dec(a.disc);
    j["level"] = dec(a.level);
    j["p"] = dec(a.p);
    j["m"] = dec(a.m);
    j["max"] = dec(a.max);
    j["kolyvagin"] = a.kolyvagin;
    j["count"] = dec((i64)primes.size());
    j["primes"] = ordered_json::array();
    for (i64 l : primes) j["primes"].push_back(dec(l));
    save_json_file(sidecar, j);
  }
  for (i64 l : primes) std::cout << l << "\n";
  return 0;
}

int cmd_verify(const std::string& suite, u64 seed, i64 trials,
               const std::string& system_path) {
  std::optional<MockEulerSystem> fixture;
  if (!system_path.empty())
    fixture = system_from_json(load_json_file(system_path));
  ordered_json report = verify_report(suite, seed, trials, fixture);
  std::cout << report.dump(2) << "\n";
  return report["ok"].get<bool>() ? 0 : 1;
}

int cmd_theta(const std::string& system_path, int rho, int leading_level) {
  MockEulerSystem sys = system_from_json(load_json_file(system_path));
  const i64 S = sys.top();
  VanishingReport vr = vanishing_report(sys, S, rho);
  ordered_json j;
  j["schema"] = kSchemaTag;
  j["kind"] = "theta_report";
  j["top"] = dec(S);
  j["rho"] = dec(rho);
  ordered_json orders;
  orders["theta"] = dec(vr.theta_order);
  orders["zeta"] = dec(vr.zeta_order);
  orders["zeta_star"] = dec(vr.zeta_star_order);
  orders["left"] = dec(vr.left_order);
  orders["right"] = dec(vr.right_order);
  orders["l"] = dec(vr.l_order);
  j["orders"] = std::move(orders);
  j["theta_meets_rho"] = vr.theta_meets_rho;
  j["l_meets_two_rho"] = vr.l_meets_two_rho;
  j["theta_element"] = tensor_to_json(theta(sys, S));
  if (leading_level <= vr.zeta_order) {
    LeadingTermReport lt = leading_terms(sys, S, leading_level);
    ordered_json lj;
    lj["level"] = dec(leading_level);
    lj["zeta_class"] = tensor_to_json(lt.zeta_class.rep);
    lj["invariant_mod_p"] = lt.invariant_mod_p;
    j["leading"] = std::move(lj);
  } else {
    j["leading"] = nullptr;
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_lfunction(const std::string& system_path) {
  MockEulerSystem sys = system_from_json(load_json_file(system_path));
  const i64 S = sys.top();
  LFunctionElement L = l_function(sys, S);
  ordered_json j;
  j["schema"] = kSchemaTag;
  j["kind"] = "lfunction_report";
  j["top"] = dec(S);
  j["value"] = tensor_to_json(L.value);
  ordered_json levels = ordered_json::array();
  bool all_ok = true;
  for (i64 T : sys.tower().divisors(S)) {
    ordered_json e;
    e["level"] = dec(T);
    e["euler_factor"] = elem_to_json(euler_factor(sys, S, T));
    bool ok = compatibility_check(sys, S, T, L.value);
    e["compatible"] = ok;
    all_ok = all_ok && ok;
    levels.push_back(std::move(e));
  }
  j["levels"] = std::move(levels);
  j["ok"] = all_ok;
  std::cout << j.dump(2) << "\n";
  return all_ok ? 0 : 1;
}

int cmd_regulator(const std::string& pairing_path, const std::string& system_path,
                  i64 sha, i64 border) {
  PairingFixture fx = pairing_from_json(load_json_file(pairing_path));
  Group gam(fx.tower, fx.level, GroupKind::Gamma);
  FiltrationPtr filt = build_filtration(gam, fx.ring);
  GradedClass reg = regulator(fx.pair, fx.tower, fx.level, filt, fx.lat);
  ordered_json j;
  j["schema"] = kSchemaTag;
  j["kind"] = "regulator_report";
  j["level"] = dec(fx.level);
  j["rho_tilde"] = dec((i64)fx.lat.a_rows.size());
  j["reg_level"] = dec(reg.level);
  j["reg"] = tensor_to_json(reg.rep);
  j["reg_is_zero_class"] = reg.is_zero_class();
  if (!system_path.empty()) {
    MockEulerSystem sys = system_from_json(load_json_file(system_path));
    Question52Report q = question_52_report(sys, fx.pair, fx.lat, sha, border);
    ordered_json qj;
    qj["rho_tilde"] = dec(q.rho_tilde);
    qj["l_order"] = dec(q.l_order);
    qj["order_meets"] = q.order_meets;
    qj["leading_defined"] = q.leading_defined;
    qj["rhs_zero"] = q.rhs_zero;
    qj["consistent"] = q.consistent;
    qj["c_determined"] = q.c_determined;
    qj["c"] = q.c ? ordered_json(elem_to_json(*q.c)) : ordered_json(nullptr);
    qj["status"] = q.status;
    j["leading_comparison"] = std::move(qj);
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact arithmetic toolkit for derivative operators, theta "
               "elements, group-ring L-elements, and graded regulators"};
  app.require_subcommand(1);

  SieveArgs sa;
  CLI::App* sieve = app.add_subcommand("sieve", "list admissible inert primes");
  sieve->add_option("--disc", sa.disc, "imaginary quadratic discriminant")->required();
  sieve->add_option("--level", sa.level, "form level N")->required();
  sieve->add_option("--p", sa.p, "residue prime p")->required();
  sieve->add_option("--m", sa.m, "exponent m (condition p^m | l+1)")->required();
  sieve->add_option("--max", sa.max, "upper bound for the sieve")->required();
  sieve->add_option("--newform", sa.newform_path, "newform JSON file");
  sieve->add_option("--label", sa.label, "newform label to fetch (cached)");
  sieve->add_option("--config", sa.config_path, "config JSON path");
  sieve->add_flag("--kolyvagin", sa.kolyvagin, "also require p^m | a_l");

  std::string vsuite = "all", vsystem;
  u64 vseed = 0;
  i64 vtrials = 200;
  CLI::App* verify = app.add_subcommand("verify", "run property suites");
  verify->add_option("--suite", vsuite, "taylor|identities|compat|regulator|local|all")
      ->check(CLI::IsMember({"taylor", "identities", "compat", "regulator", "local",
                             "all"}));
  verify->add_option("--seed", vseed, "deterministic seed");
  verify->add_option("--trials", vtrials, "trial budget per suite");
  verify->add_option("--system", vsystem, "extra system fixture to validate");

  std::string tsystem;
  int trho = 1, tleading = 0;
  CLI::App* theta_cmd = app.add_subcommand("theta", "orders and leading terms");
  theta_cmd->add_option("--system", tsystem, "system JSON file")->required();
  theta_cmd->add_option("--rho", trho, "target vanishing order");
  theta_cmd->add_option("--leading-level", tleading, "leading-term level");

  std::string lsystem;
  CLI::App* lf = app.add_subcommand("lfunction", "two-variable L-element report");
  lf->add_option("--system", lsystem, "system JSON file")->required();

  std::string rpairing, rsystem;
  i64 rsha = 1, rborder = 1;
  CLI::App* reg = app.add_subcommand("regulator", "graded regulator report");
  reg->add_option("--pairing", rpairing, "pairing JSON file")->required();
  reg->add_option("--system", rsystem, "optional system for the leading comparison");
  reg->add_option("--sha", rsha, "supplied order of the mock Sha group");
  reg->add_option("--border", rborder, "supplied cokernel order |B(S)|");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(sieve)) return cmd_sieve(sa);
    if (app.got_subcommand(verify)) return cmd_verify(vsuite, vseed, vtrials, vsystem);
    if (app.got_subcommand(theta_cmd)) return cmd_theta(tsystem, trho, tleading);
    if (app.got_subcommand(lf)) return cmd_lfunction(lsystem);
    if (app.got_subcommand(reg))
      return cmd_regulator(rpairing, rsystem, rsha, rborder);
  } catch (const bbreg::error& e) {
    std::cerr << "bbreg: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
