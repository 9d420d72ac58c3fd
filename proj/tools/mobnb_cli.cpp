#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mobnb/harness.hpp"
#include "mobnb/metrics.hpp"
#include "mobnb/oracle.hpp"
#include "mobnb/problems.hpp"

namespace {

using namespace mobnb;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string problem_key(const ExperimentConfig& cfg) {
  std::string key = cfg.problem;
  if (cfg.problem == "gear" && cfg.problem_options.gear == GearObjective::literal) key += "-literal";
  if (cfg.problem == "tong" && cfg.problem_options.tong_g2 == TongG2Sign::plus) key += "-plus";
  return key;
}

struct RunArgs {
  std::string problem;
  std::string solver;
  std::filesystem::path config;
  std::optional<std::size_t> reps;
  std::optional<std::uint64_t> seed;
  std::filesystem::path out;
  bool wall_time = false;
};

int cmd_run(const RunArgs& a) {
  const unsigned workers = workers_from_env();
  const SolverKind solver = parse_solver(a.solver);
  std::vector<ExperimentConfig> combos;
  for (auto cfg : load_experiment_file(a.config).combinations) {
    if (cfg.solver != solver) continue;
    if (!a.problem.empty()) cfg.problem = a.problem;
    if (a.reps) cfg.repetitions = *a.reps;
    if (a.seed) cfg.base_seed = *a.seed;
    cfg.workers = workers;
    cfg.record_wall_time = cfg.record_wall_time || a.wall_time;
    cfg.validate();
    combos.push_back(std::move(cfg));
  }
  if (combos.empty()) throw UsageError("config has no " + a.solver + " combinations");
  if (combos.front().problem.empty()) throw UsageError("no problem given on the command line or in the config");

  const auto& first = combos.front();
  const ProblemSpec problem = make_problem(first.problem, first.problem_options);
  OracleConfig oc = first.oracle;
  oc.workers = workers;
  const Front reference = first.oracle_cache.empty()
                              ? reference_front(problem, oc).front
                              : cached_reference_front(problem, problem_key(first), oc, first.oracle_cache);

  std::vector<RunRecord> records;
  std::vector<Summary> summaries;
  for (const auto& cfg : combos) {
    auto runs = run_experiment(cfg, reference);
    for (const auto& r : runs) {
      if (r.failed) std::cerr << "warning: " << cfg.id << " rep " << r.rep << " failed: " << r.error << "\n";
    }
    try {
      summaries.push_back(summarize(runs));
    } catch (const UsageError& e) {
      std::cerr << "warning: combination " << cfg.id << ": " << e.what() << "\n";
    }
    records.insert(records.end(), std::make_move_iterator(runs.begin()), std::make_move_iterator(runs.end()));
  }
  export_results(a.out, records, summaries, {}, &reference);
  std::cout << "wrote " << records.size() << " runs to " << a.out.string() << "\n";
  return 0;
}

int cmd_oracle(const std::string& name, std::optional<std::size_t> grid, double epsilon, bool no_resample,
               const std::filesystem::path& out) {
  OracleConfig cfg;
  if (grid) cfg.continuous_grid_points = *grid;
  cfg.epsilon = epsilon;
  cfg.resample = !no_resample;
  cfg.workers = workers_from_env();
  const ProblemSpec problem = make_problem(name);
  const OracleFront result = reference_front(problem, cfg);
  std::filesystem::create_directories(out);
  write_front_csv(out / (name + ".csv"), result.front);
  nlohmann::json stats{{"problem", name},
                       {"points", result.front.size()},
                       {"evaluations", result.evaluations},
                       {"contributing_combinations", result.contributing_combinations},
                       {"config", cfg.canonical()}};
  std::ofstream(out / (name + ".json")) << stats.dump(2) << "\n";
  std::cout << name << ": " << result.front.size() << " front points from " << result.evaluations
            << " evaluations\n";
  return 0;
}

int cmd_metrics(const std::filesystem::path& approx, const std::filesystem::path& truth, std::uint64_t evals,
                double snap) {
  const Front s = read_front_csv(approx);
  const Front p = read_front_csv(truth, FrontSource::reference);
  std::cout << to_json(compute_metrics(s, p, evals, snap)) << "\n";
  return 0;
}

int cmd_compare(const std::filesystem::path& baseline, const std::filesystem::path& candidate,
                const std::filesystem::path& out) {
  const auto base = parse_summary_json(read_file(baseline / "summary.json"));
  const auto cand = parse_summary_json(read_file(candidate / "summary.json"));
  std::vector<Comparison> comparisons;
  for (const auto& b : base) {
    for (const auto& c : cand) {
      if (b.problem == c.problem) comparisons.push_back(compare(b, c));
    }
  }
  if (comparisons.empty()) throw UsageError("no summaries for a common problem");
  const std::string text = comparison_json(comparisons);
  if (!out.empty()) {
    std::filesystem::create_directories(out);
    std::ofstream(out / "comparison.json") << text;
  }
  std::cout << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-objective branch-and-bound with NSGA-II bounding"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Repeated seeded solves with metrics against the reference front");
  run_cmd->add_option("--problem", run.problem, "Problem name (overrides the config)");
  run_cmd->add_option("--solver", run.solver, "nsga2 or bnb")->required();
  run_cmd->add_option("--config", run.config, "Experiment JSON file")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--reps", run.reps, "Repetitions (overrides the config)");
  run_cmd->add_option("--seed", run.seed, "Base seed (overrides the config)");
  run_cmd->add_option("--out", run.out, "Output directory")->required();
  run_cmd->add_flag("--wall-time", run.wall_time, "Record wall time per run");

  std::string oracle_problem;
  std::optional<std::size_t> grid;
  double epsilon = 1e-4;
  bool no_resample = false;
  std::filesystem::path oracle_out;
  auto* oracle_cmd = app.add_subcommand("oracle", "Reference front by enumeration");
  oracle_cmd->add_option("--problem", oracle_problem, "Problem name")->required();
  oracle_cmd->add_option("--grid", grid, "Grid points per continuous variable");
  oracle_cmd->add_option("--epsilon", epsilon, "Resampling step");
  oracle_cmd->add_flag("--no-resample", no_resample, "Keep the refined grid front");
  oracle_cmd->add_option("--out", oracle_out, "Output directory")->required();

  std::filesystem::path approx, truth;
  std::uint64_t evals = 0;
  double snap = kDefaultSnap;
  auto* metrics_cmd = app.add_subcommand("metrics", "Quality indicators of an approximate front");
  metrics_cmd->add_option("--approx", approx, "Approximate front CSV")->required()->check(CLI::ExistingFile);
  metrics_cmd->add_option("--true", truth, "Reference front CSV")->required()->check(CLI::ExistingFile);
  metrics_cmd->add_option("--evals", evals, "Evaluation count to report");
  metrics_cmd->add_option("--snap", snap, "Distances at or below this count as zero");

  std::filesystem::path baseline, candidate, compare_out;
  auto* compare_cmd = app.add_subcommand("compare", "Investment ratio between two result directories");
  compare_cmd->add_option("--baseline", baseline, "Baseline result directory")->required()->check(CLI::ExistingDirectory);
  compare_cmd->add_option("--candidate", candidate, "Candidate result directory")->required()->check(CLI::ExistingDirectory);
  compare_cmd->add_option("--out", compare_out, "Directory for comparison.json");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) return cmd_run(run);
    if (*oracle_cmd) return cmd_oracle(oracle_problem, grid, epsilon, no_resample, oracle_out);
    if (*metrics_cmd) return cmd_metrics(approx, truth, evals, snap);
    if (*compare_cmd) return cmd_compare(baseline, candidate, compare_out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
