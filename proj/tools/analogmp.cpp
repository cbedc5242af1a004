// Command-line front end: runs audit/law suites from a config file or ad hoc
// flags and emits machine-readable reports.
//
//   analogmp run <config>       execute the suites listed in a config file
//   analogmp audit <planner>    run one planner's audits
//   analogmp list               list planners and law suites
//
// Exit codes: 0 all suites pass, 1 audit failure, 2 usage/config error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "analogmp/audit.hpp"

namespace {

using namespace analogmp;

void write_samples_csv(const AuditConfig& cfg, std::ostream& out) {
  // Path traces for a few sampled plans per audit suite: one row per grid
  // point per atom.
  std::size_t max_dim = 0;
  for (const auto& s : cfg.suites)
    if (s.kind == "audit")
      max_dim = std::max(max_dim, make_planner(s.target, s.d).space.point_dim());
  out << "suite,sample,atom,weight,t";
  for (std::size_t i = 0; i < max_dim; ++i) out << ",c" << i;
  out << "\n";
  for (const auto& s : cfg.suites) {
    if (s.kind != "audit") continue;
    AnalogPlanner pl = make_planner(s.target, s.d);
    for (int sample = 0; sample < 2; ++sample) {
      std::mt19937_64 rng(cfg.seed + std::uint64_t(sample));
      std::vector<Vec> in;
      for (int i = 0; i < pl.arity; ++i) in.push_back(pl.space.random_point(rng));
      auto mu = pl.plan(in);
      for (std::size_t a = 0; a < mu.atoms.size(); ++a) {
        for (int k = 0; k < 17; ++k) {
          double t = double(k) / 16.0;
          Vec p = pl.space.eval_path(mu.atoms[a].first, t);
          out << s.target << ":d=" << s.d << "," << sample << "," << a << ","
              << mu.atoms[a].second << "," << t;
          for (std::size_t i = 0; i < max_dim; ++i)
            out << "," << (i < p.size() ? std::to_string(p[i]) : std::string());
          out << "\n";
        }
      }
    }
  }
}

int execute(const AuditConfig& cfg) {
  std::vector<AuditReport> reports;
  try {
    reports = run_suites(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const UnknownPlanner& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  std::filesystem::create_directories(cfg.out_dir);
  {
    std::ofstream rf(std::filesystem::path(cfg.out_dir) / "report.json");
    rf << reports_to_json(cfg, reports).dump(2) << "\n";
  }
  {
    std::ofstream cf(std::filesystem::path(cfg.out_dir) / "samples.csv");
    write_samples_csv(cfg, cf);
  }
  bool all = true;
  for (const auto& r : reports) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.suite << "\n";
    all = all && r.pass;
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"analog motion planner audit suite"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "execute suites from a config file");
  std::string config_path;
  run->add_option("config", config_path, "flat key-value config file")
      ->required();

  auto* audit = app.add_subcommand("audit", "audit a single planner");
  std::string planner_name, which = "all", out_dir = ".";
  int d = 2;
  long long samples = 1000, pairs = 200;
  std::uint64_t seed = 42;
  audit->add_option("planner", planner_name, "registered planner name")
      ->required();
  audit->add_option("--suite", which, "support | section | continuity | all");
  audit->add_option("--samples,-n", samples, "samples per audit");
  audit->add_option("--seed,-s", seed, "base RNG seed");
  audit->add_option("--d", d, "space dimension parameter");
  audit->add_option("--out", out_dir, "report output directory");

  auto* list = app.add_subcommand("list", "list planners and law suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list->parsed()) {
      std::cout << "planners:\n";
      for (const auto& n : analogmp::planner_names())
        std::cout << "  " << n << "\n";
      std::cout << "law suites:\n";
      for (const char* n :
           {"monad", "transfer", "boxtimes", "transport_oracle", "group_action"})
        std::cout << "  " << n << "\n";
      return 0;
    }
    if (run->parsed()) {
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "config error: cannot open " << config_path << "\n";
        return 2;
      }
      analogmp::AuditConfig cfg;
      try {
        cfg = analogmp::parse_config(in);
      } catch (const analogmp::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
      }
      return execute(cfg);
    }
    // audit subcommand: build a one-suite config.
    if (which != "support" && which != "section" && which != "continuity" &&
        which != "all") {
      std::cerr << "config error: bad --suite value: " << which << "\n";
      return 2;
    }
    analogmp::AuditConfig cfg;
    cfg.seed = seed;
    cfg.samples = samples;
    cfg.pairs_per_rung = pairs;
    cfg.out_dir = out_dir;
    analogmp::SuiteSpec s;
    s.kind = "audit";
    s.target = planner_name;
    s.d = d;
    s.which = which;
    cfg.suites.push_back(s);
    return execute(cfg);
  } catch (const analogmp::UnknownPlanner& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
