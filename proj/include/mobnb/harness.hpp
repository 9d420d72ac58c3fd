#pragma once

// Repeated seeded trials, distribution statistics with 1.5xIQR outlier
// flagging, investment-ratio comparison and result export.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mobnb/bnb.hpp"
#include "mobnb/metrics.hpp"
#include "mobnb/nsga2.hpp"
#include "mobnb/oracle.hpp"
#include "mobnb/problems.hpp"

namespace mobnb {

enum class SolverKind { nsga2, bnb };

[[nodiscard]] std::string to_string(SolverKind kind);
[[nodiscard]] SolverKind parse_solver(const std::string& name);

struct ExperimentConfig {
  std::string problem;
  ProblemOptions problem_options;
  SolverKind solver = SolverKind::nsga2;
  std::string id = "1";  // parameter combination
  std::size_t repetitions = 20;
  std::uint64_t base_seed = 0;
  Nsga2Config nsga2;
  BnbConfig bnb;
  OracleConfig oracle;
  std::filesystem::path oracle_cache;  // empty: no caching
  bool record_wall_time = false;
  unsigned workers = 1;
  double snap = kDefaultSnap;

  void validate() const;
};

/// Experiment file: shared settings plus a list of parameter combinations.
/// Unique combination IDs are enforced.
struct ExperimentFile {
  std::vector<ExperimentConfig> combinations;
};

[[nodiscard]] ExperimentFile parse_experiment_file(const std::string& json_text, const std::string& origin = "<config>");
[[nodiscard]] ExperimentFile load_experiment_file(const std::filesystem::path& path);

/// Worker count from MOBNB_WORKERS; 1 when unset.
[[nodiscard]] unsigned workers_from_env();

struct RunRecord {
  std::string problem;
  std::string solver;
  std::string id;
  std::size_t rep = 0;
  std::uint64_t seed = 0;
  MetricsReport metrics;
  std::optional<double> wall_ms;
  bool failed = false;
  std::string error;  // not exported
  Front front;        // not part of runs.csv

  friend bool operator==(const RunRecord& a, const RunRecord& b);
};

/// Runs cfg.repetitions seeded solves (seed = base_seed + rep) against
/// `reference`. Records are returned in repetition order regardless of
/// cfg.workers.
[[nodiscard]] std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg, const Front& reference);

/// Computes (or reads from cfg.oracle_cache) the reference front first.
[[nodiscard]] std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg);

/// Single solve with a given seed. The evaluation count is in the archive.
[[nodiscard]] ParetoArchive solve_once(const ProblemSpec& problem, const ExperimentConfig& cfg, std::uint64_t seed);

struct BoxStats {
  std::size_t n = 0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  double mean = 0.0;  // outliers excluded
  std::vector<double> outliers;  // ascending
};

/// Quartile by linear interpolation between closest ranks, p in [0, 1].
[[nodiscard]] double quantile_inclusive(std::vector<double> values, double p);

[[nodiscard]] BoxStats box_stats(const std::vector<double>& values);

inline const std::vector<std::string> kMetricNames{"onvg", "purity", "gd", "igd", "spread", "d_spread", "evals"};

struct Summary {
  std::string problem;
  std::string solver;
  std::string id;
  std::size_t runs = 0;
  std::size_t failures = 0;
  std::map<std::string, BoxStats> metrics;
};

/// Failed records count toward `failures` only. Throws UsageError when no
/// record succeeded.
[[nodiscard]] Summary summarize(const std::vector<RunRecord>& records);

struct Comparison {
  std::string baseline;
  std::string candidate;
  double q = 1.0;
  double c = 1.0;
  double ir = 1.0;
  std::string verdict;
};

[[nodiscard]] std::string classify_investment(double ir);

/// q from the gd and d_spread means, c = candidate evals / baseline evals.
[[nodiscard]] Comparison compare_means(double gd_baseline, double d_spread_baseline, double evals_baseline,
                                       double gd_candidate, double d_spread_candidate, double evals_candidate);
[[nodiscard]] Comparison compare(const Summary& baseline, const Summary& candidate);

inline constexpr const char* kRunsHeader = "problem,solver,id,rep,seed,onvg,purity,gd,igd,spread,d_spread,evals,wall_ms,failed";

[[nodiscard]] std::string runs_csv(const std::vector<RunRecord>& records);
[[nodiscard]] std::vector<RunRecord> parse_runs_csv(const std::string& text);
[[nodiscard]] std::vector<RunRecord> import_runs_csv(const std::filesystem::path& path);

[[nodiscard]] std::string summary_json(const std::vector<Summary>& summaries);
[[nodiscard]] std::vector<Summary> parse_summary_json(const std::string& text);
[[nodiscard]] std::string comparison_json(const std::vector<Comparison>& comparisons);

/// Writes runs.csv, summary.json, comparison.json, the reference front and
/// one front CSV per non-failed run (fronts/<solver>-<id>-<rep>.csv) below `dir`.
void export_results(const std::filesystem::path& dir, const std::vector<RunRecord>& records,
                    const std::vector<Summary>& summaries, const std::vector<Comparison>& comparisons,
                    const Front* reference = nullptr);

}  // namespace mobnb
