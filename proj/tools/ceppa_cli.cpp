#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "ceppa.h"

namespace {

int exit_code_for(ceppa_status st) {
  switch (st) {
    case CEPPA_OK:
      return 0;
    case CEPPA_ERR_BAD_ARGUMENT:
    case CEPPA_ERR_UNSUPPORTED_TYPE:
    case CEPPA_ERR_PARSE:
    case CEPPA_ERR_IRREGULAR_WEIGHT:
    case CEPPA_ERR_DEGREE_OVERFLOW:
      return 2;
    default:
      return 1;
  }
}

// Writes the payload to json_path, or to stdout when no path was given.
bool emit(const std::string& payload, const std::string& json_path) {
  if (json_path.empty()) {
    std::fputs(payload.c_str(), stdout);
    return true;
  }
  std::ofstream f(json_path);
  if (!f) {
    std::fprintf(stderr, "error: cannot write %s\n", json_path.c_str());
    return false;
  }
  f << payload;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ceppa: a workbench for centrally extended preprojective algebras of ADE quivers"};
  app.require_subcommand(1);

  std::string type = "A";
  int rank = 2;
  std::string mu = "rho";
  std::string suite = "all";
  std::uint64_t seed = 1;
  std::int64_t budget = -1;
  if (const char* e = std::getenv("CEPPA_BUDGET")) budget = std::strtoll(e, nullptr, 10);
  std::string json_path;
  bool no_timings = false;
  std::string phi;
  int s_power = 0;
  std::string variant = "mu";
  int max_degree = -1;
  std::string pres_file;

  auto add_common = [&](CLI::App* cmd, bool with_mu) {
    cmd->add_option("--type", type, "Family: A, D or E")->capture_default_str();
    cmd->add_option("--rank", rank, "Diagram rank")->capture_default_str();
    if (with_mu)
      cmd->add_option("--mu", mu,
                      "Weight: rho, random, or comma-separated rationals")
          ->capture_default_str();
    cmd->add_option("--budget", budget,
                    "Monomial budget (also via CEPPA_BUDGET; -1 = default)");
    cmd->add_option("--json", json_path, "Write the JSON report to this file");
  };

  CLI::App* roots = app.add_subcommand("roots", "Root-system data for an ADE diagram");
  add_common(roots, false);

  CLI::App* trace = app.add_subcommand("trace", "Trace functional on the top graded piece");
  add_common(trace, true);
  trace->add_option("--seed", seed, "Seed for random weights")->capture_default_str();

  CLI::App* memb = app.add_subcommand(
      "membership", "Cross-check z^s e-combination membership in the commutator subspace");
  add_common(memb, true);
  memb->add_option("--phi", phi, "Comma-separated rationals, one per vertex")->required();
  memb->add_option("--s", s_power, "Central power s")->required();
  memb->add_option("--seed", seed, "Seed for random weights")->capture_default_str();

  CLI::App* verify = app.add_subcommand("verify", "Run a suite of structural checks");
  add_common(verify, true);
  verify->add_option("--suite", suite, "algebra, b-algebra, lie or all")
      ->capture_default_str();
  verify->add_option("--seed", seed, "Seed for random weights and samples")
      ->capture_default_str();
  verify->add_flag("--no-timings", no_timings,
                   "Zero runtimes and the timestamp for byte-stable reports");

  CLI::App* build = app.add_subcommand("build", "Build a graded quotient and report dimensions");
  add_common(build, true);
  build->add_option("--variant", variant, "mu, a0, b or b-elim")->capture_default_str();
  build->add_option("--max-degree", max_degree, "Top degree to build (-1 = variant default)");
  build->add_option("--presentation-file", pres_file,
                    "Build from a presentation file instead of a diagram");
  build->add_option("--seed", seed, "Seed for random weights")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  ceppa_session* ses = ceppa_session_new();
  if (!ses) {
    std::fprintf(stderr, "error: out of memory\n");
    return 1;
  }

  ceppa_status st = CEPPA_OK;
  char* out = nullptr;
  if (roots->parsed()) {
    st = ceppa_roots_json(ses, type.c_str(), rank, &out);
  } else if (trace->parsed()) {
    st = ceppa_trace_json(ses, type.c_str(), rank, mu.c_str(), seed, budget, &out);
  } else if (memb->parsed()) {
    st = ceppa_membership_json(ses, type.c_str(), rank, mu.c_str(), phi.c_str(), s_power,
                               seed, budget, &out);
  } else if (verify->parsed()) {
    st = ceppa_verify_json(ses, type.c_str(), rank, mu.c_str(), suite.c_str(), seed, budget,
                           no_timings ? 0 : 1, &out);
  } else if (build->parsed()) {
    if (!pres_file.empty()) {
      std::ifstream f(pres_file);
      if (!f) {
        std::fprintf(stderr, "error: cannot read %s\n", pres_file.c_str());
        ceppa_session_free(ses);
        return 2;
      }
      std::ostringstream text;
      text << f.rdbuf();
      st = ceppa_build_text_json(ses, text.str().c_str(), max_degree, budget, &out);
    } else {
      st = ceppa_build_json(ses, variant.c_str(), type.c_str(), rank, mu.c_str(), max_degree,
                            seed, budget, &out);
    }
  }

  if (st != CEPPA_OK) {
    std::fprintf(stderr, "error: %s\n", ceppa_last_error(ses));
    ceppa_session_free(ses);
    return exit_code_for(st);
  }

  std::string payload(out);
  ceppa_string_free(out);
  ceppa_session_free(ses);

  int rc = 0;
  if (verify->parsed() || memb->parsed()) {
    nlohmann::json j = nlohmann::json::parse(payload);
    if (verify->parsed()) {
      if (j["verdict"] != "pass") rc = 1;
      if (!json_path.empty())
        std::printf("verdict: %s (%d passed, %d failed, %d skipped)\n",
                    j["verdict"].get<std::string>().c_str(), j["passed"].get<int>(),
                    j["failed"].get<int>(), j["skipped"].get<int>());
    } else if (j["agree"] == false) {
      std::fprintf(stderr, "error: membership oracles disagree\n");
      rc = 1;
    }
  }
  if (!emit(payload, json_path)) return 1;
  return rc;
}
