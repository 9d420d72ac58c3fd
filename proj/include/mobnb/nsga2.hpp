#pragma once

// NSGA-II for box-bounded mixed-integer problems: constrained non-dominated
// sorting, crowding distance, SBX and polynomial mutation.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "mobnb/core.hpp"
#include "mobnb/problems.hpp"

namespace mobnb {

struct Nsga2Config {
  std::size_t population_size = 100;
  std::size_t max_generations = 100;
  std::size_t stall_generations = 100;
  double crossover_probability = 0.9;
  double mutation_probability = 0.95;  // per individual; each gene mutates with this / n
  double eta_c = 100.0;
  double eta_m = 10.0;
  std::uint64_t seed = 0;

  /// Throws UsageError on an invalid combination.
  void validate() const;
};

using Rng = std::mt19937_64;

/// Fronts of indices into `pop`, best first, under constrained dominance.
[[nodiscard]] std::vector<std::vector<std::size_t>> non_dominated_sort(std::span<const Solution> pop);

/// Crowding distance of each member of `front` (a mutually non-dominated
/// set); boundary members per objective get +infinity.
[[nodiscard]] std::vector<double> crowding_distance(std::span<const Solution> front);

/// Search space seen by the variation operators: the problem's domains with
/// integer codes optionally narrowed to a box.
class SearchBox {
 public:
  explicit SearchBox(const ProblemSpec& problem, const std::optional<IntegerBox>& override_box = std::nullopt);

  [[nodiscard]] std::size_t continuous_size() const noexcept { return cont_lo_.size(); }
  [[nodiscard]] std::size_t integer_size() const noexcept { return int_lo_.size(); }
  [[nodiscard]] std::size_t size() const noexcept { return cont_lo_.size() + int_lo_.size(); }
  [[nodiscard]] double continuous_lo(std::size_t i) const { return cont_lo_[i]; }
  [[nodiscard]] double continuous_hi(std::size_t i) const { return cont_hi_[i]; }
  [[nodiscard]] int integer_lo(std::size_t i) const { return int_lo_[i]; }
  [[nodiscard]] int integer_hi(std::size_t i) const { return int_hi_[i]; }
  [[nodiscard]] const std::vector<int>& integer_lo_all() const noexcept { return int_lo_; }
  [[nodiscard]] const std::vector<int>& integer_hi_all() const noexcept { return int_hi_; }
  [[nodiscard]] bool contains(const VariableVector& v) const;
  [[nodiscard]] VariableVector sample(Rng& rng) const;

 private:
  std::vector<double> cont_lo_, cont_hi_;
  std::vector<int> int_lo_, int_hi_;
};

[[nodiscard]] std::pair<VariableVector, VariableVector> sbx_crossover(const VariableVector& a, const VariableVector& b,
                                                                      const SearchBox& box, const Nsga2Config& cfg,
                                                                      Rng& rng);

[[nodiscard]] VariableVector mutate(const VariableVector& v, const SearchBox& box, const Nsga2Config& cfg, Rng& rng);

struct Nsga2Result {
  ParetoArchive archive;
  std::size_t generations = 0;  // generations executed after initialization
  bool stalled = false;         // stopped by the stall window, not max_generations
};

/// Called after initialization (generation 0) and after every generation
/// with the population's first front.
using GenerationObserver = std::function<void(std::size_t generation, std::span<const Solution> first_front)>;

/// Runs NSGA-II on `problem`. `override_box` narrows integer codes; every
/// emitted solution respects it. archive.evaluation_count equals
/// population_size * (1 + generations).
[[nodiscard]] Nsga2Result run_nsga2(const ProblemSpec& problem, const std::optional<IntegerBox>& override_box,
                                    const Nsga2Config& cfg, const GenerationObserver& observer = {});

}  // namespace mobnb
