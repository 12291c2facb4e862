// hrelab: scenario-driven front end for the complete-convergence lab.
#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "hre/counterexample.hpp"
#include "hre/runner.hpp"
#include "hre/scenario.hpp"

using namespace hre;

namespace {

std::string default_out() {
  const char* env = std::getenv("HRE_OUT_DIR");
  return env && *env ? env : "hrelab-out";
}

void print_summary(const RunResult& r, const std::string& out_dir) {
  for (const auto& s : r.sections) {
    std::cout << "  " << s.check << ": " << s.verdict;
    if (s.expected) std::cout << " (expected " << *s.expected << ")";
    std::cout << "\n";
  }
  if (!out_dir.empty()) std::cout << "report: " << (std::filesystem::path(out_dir) / "report.json").string() << "\n";
}

struct Common {
  std::string scenario;
  std::string out = default_out();
  std::optional<std::uint64_t> seed;
  std::optional<long> horizon;
  std::optional<int> levels;
  int workers = 1;
};

void add_common(CLI::App* sub, Common& c, bool sim) {
  sub->add_option("--scenario", c.scenario, "scenario file, or a catalog name")->required();
  sub->add_option("--out", c.out, "output directory (default $HRE_OUT_DIR or ./hrelab-out)");
  sub->add_option("--horizon", c.horizon, "override evaluation.horizon");
  sub->add_option("--levels", c.levels, "override distribution.levels for the counterexample");
  if (sim) {
    sub->add_option("--seed", c.seed, "override simulation.seed");
    sub->add_option("--workers", c.workers, "worker threads for Monte Carlo")->check(CLI::PositiveNumber);
  }
}

int run_stages(const Common& c, std::set<Stage> stages) {
  Scenario s = resolve_scenario(c.scenario);
  RunOptions o;
  o.out_dir = c.out;
  o.seed = c.seed;
  o.horizon = c.horizon;
  o.levels = c.levels;
  o.workers = c.workers;
  o.stages = std::move(stages);
  RunResult r = run_scenario(s, o);
  std::cout << s.name << "\n";
  print_summary(r, c.out);
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hrelab: complete-convergence conditions, counterexample and Monte Carlo checks"};
  app.require_subcommand(1);

  Common run_c, seq_c, eval_c, sim_c;
  auto* run = app.add_subcommand("run", "run every requested check of a scenario");
  add_common(run, run_c, true);
  auto* seq = app.add_subcommand("check-sequences", "sequence-side checks only");
  add_common(seq, seq_c, false);
  auto* ev = app.add_subcommand("evaluate-conditions", "analytic series conditions only");
  add_common(ev, eval_c, false);
  auto* sim = app.add_subcommand("simulate", "Monte Carlo checks only");
  add_common(sim, sim_c, true);

  int levels = 4;
  std::string ce_out = default_out();
  auto* ce = app.add_subcommand("counterexample", "build the counterexample law and its divergence certificate");
  ce->add_option("--levels", levels, "number of levels M (1..8)")->check(CLI::Range(1, 8));
  ce->add_option("--out", ce_out, "output directory");

  auto* list = app.add_subcommand("list-scenarios", "print the bundled scenario catalog");
  std::string show;
  list->add_option("--show", show, "print the full text of one entry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*run) return run_stages(run_c, {});
    if (*seq) return run_stages(seq_c, {Stage::Sequences});
    if (*ev) return run_stages(eval_c, {Stage::Analytic});
    if (*sim) return run_stages(sim_c, {Stage::Simulation});
    if (*ce) {
      auto dist = build_counterexample(levels);
      auto cert = divergence_certificate(dist);
      auto j = counterexample_json(dist);
      nlohmann::ordered_json blocks = nlohmann::ordered_json::array();
      for (const auto& b : cert.blocks)
        blocks.push_back({{"m", b.m}, {"logK", b.log_k}, {"lowerBound", b.lower_bound}});
      j["certificate"] = {{"blocks", blocks}, {"cumulative", cert.cumulative}, {"replayOk", cert.replay_ok}};
      j["phiMomentTruncated"] = phi_moment_truncated(dist);
      std::filesystem::create_directories(ce_out);
      std::ofstream(std::filesystem::path(ce_out) / "counterexample.json") << j.dump(2) << "\n";
      std::cout << j.dump(2) << "\n";
      return cert.replay_ok ? 0 : 1;
    }
    if (*list) {
      if (!show.empty()) {
        for (const auto& e : catalog())
          if (e.name == show) {
            std::cout << e.text;
            return 0;
          }
        std::cerr << "no catalog entry named " << show << "\n";
        return 2;
      }
      for (const auto& e : catalog()) std::cout << e.name << "\t" << e.anchor << "\n";
      return 0;
    }
  } catch (const ScenarioError& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
