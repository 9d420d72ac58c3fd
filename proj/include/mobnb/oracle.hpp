#pragma once

// Reference ("true") Pareto fronts by enumeration: every integer combination
// times a grid over the continuous variables, then local grid refinement
// around the coarse front and uniform re-discretization of its continuous
// sections.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mobnb/core.hpp"
#include "mobnb/metrics.hpp"
#include "mobnb/problems.hpp"

namespace mobnb {

struct OracleConfig {
  std::size_t continuous_grid_points = 101;  // per continuous variable
  std::size_t refine_points = 11;            // per variable in each local box; < 2 disables refinement
  std::size_t refine_rounds = 2;
  double epsilon = 1e-4;  // resampling step
  bool resample = true;   // only applies to problems with continuous variables
  std::uint64_t max_enumeration = 200'000'000;
  unsigned workers = 1;

  void validate() const;
  /// Canonical text of every field that affects the result.
  [[nodiscard]] std::string canonical() const;
};

struct OracleFront {
  Front front;
  /// Variable assignments behind `front.points`, same order. Empty after
  /// resampling, whose points are interpolated.
  std::vector<Solution> solutions;
  /// Integer codes of the combinations that contribute to the front.
  std::vector<std::vector<int>> contributing_combinations;
  /// Grid pitch per continuous variable at the last stage that evaluated
  /// the problem; bounds the discretization error of the front.
  std::vector<double> continuous_pitch;
  std::uint64_t evaluations = 0;
};

/// Throws CapacityError when the lattice exceeds cfg.max_enumeration.
[[nodiscard]] std::uint64_t lattice_size(const ProblemSpec& problem, const OracleConfig& cfg);

[[nodiscard]] OracleFront enumerate_true_front(const ProblemSpec& problem, const OracleConfig& cfg);

/// Fine local grid search around each front point within its own integer
/// combination, merged and re-filtered. Identity for pure-integer problems.
[[nodiscard]] OracleFront refine_continuous_sections(const OracleFront& coarse, const ProblemSpec& problem,
                                                     const OracleConfig& cfg);

/// Splits the f1-sorted front where a gap exceeds 10x the median gap, and
/// re-discretizes each section of more than three points along a monotone
/// cubic interpolant (chord-length parameter) with ceil(L / epsilon) equal
/// arc steps. Dominated interpolants are dropped. Sections with repeated f1 are
/// passed through and reported in `warnings`.
[[nodiscard]] Front uniform_resample(const Front& front, double epsilon, std::vector<std::string>* warnings = nullptr);

/// Enumeration, refinement and (for problems with continuous variables)
/// resampling.
[[nodiscard]] OracleFront reference_front(const ProblemSpec& problem, const OracleConfig& cfg);

/// Cache file for (problem key, config) below `cache_dir`.
[[nodiscard]] std::filesystem::path oracle_cache_path(const std::filesystem::path& cache_dir,
                                                      const std::string& problem_key, const OracleConfig& cfg);

/// Reads the cached front if present, otherwise computes and writes it.
[[nodiscard]] Front cached_reference_front(const ProblemSpec& problem, const std::string& problem_key,
                                           const OracleConfig& cfg, const std::filesystem::path& cache_dir);

}  // namespace mobnb
