#pragma once

// Dominance relations, feasibility and the incumbent archive shared by the
// solvers, the oracle and the metrics. Everything is minimization.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mobnb {

/// Raised when a caller violates an operation's precondition.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a problem produces a non-finite objective.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a requested enumeration exceeds its configured budget.
class CapacityError : public std::runtime_error {
 public:
  CapacityError(const std::string& what, std::uint64_t required)
      : std::runtime_error(what), required_(required) {}
  [[nodiscard]] std::uint64_t required() const noexcept { return required_; }

 private:
  std::uint64_t required_;
};

using ObjectiveVector = std::vector<double>;

/// Mixed assignment. Integer entries of discrete-set variables are indices
/// into the set, not the set values themselves.
struct VariableVector {
  std::vector<double> continuous;
  std::vector<int> integer;

  friend bool operator==(const VariableVector&, const VariableVector&) = default;
};

struct Solution {
  VariableVector vars;
  ObjectiveVector objectives;
  double constraint_violation = 0.0;

  [[nodiscard]] bool feasible() const noexcept { return constraint_violation == 0.0; }
};

/// Incumbent non-dominated set. `infeasible` marks an archive made of
/// least-violation points because nothing feasible was found.
struct ParetoArchive {
  std::vector<Solution> members;
  std::uint64_t evaluation_count = 0;
  bool infeasible = false;

  [[nodiscard]] bool empty() const noexcept { return members.empty(); }
  [[nodiscard]] std::size_t size() const noexcept { return members.size(); }
};

/// a dominates b: no worse everywhere, strictly better somewhere.
[[nodiscard]] bool dominates(std::span<const double> a, std::span<const double> b);

/// Feasibility-first dominance: feasible beats infeasible, lower violation
/// beats higher, and feasible pairs fall back to `dominates`.
[[nodiscard]] bool constrained_dominates(const Solution& a, const Solution& b);

/// Sum of max(0, -c) over inequality values (c >= 0 is satisfied) plus |c|
/// over equality values.
[[nodiscard]] double aggregate_violation(std::span<const double> inequality,
                                         std::span<const double> equality = {});

/// Indices of the points not dominated by any other point, ascending. The
/// first of several identical objective vectors is kept. `violations` may be
/// empty, meaning every point is feasible.
[[nodiscard]] std::vector<std::size_t> nondominated_indices(std::span<const ObjectiveVector> objectives,
                                                            std::span<const double> violations = {});

[[nodiscard]] std::vector<Solution> pareto_filter(std::span<const Solution> points);
[[nodiscard]] std::vector<ObjectiveVector> pareto_filter(std::span<const ObjectiveVector> points);

[[nodiscard]] ObjectiveVector ideal_point(std::span<const ObjectiveVector> points);
[[nodiscard]] ObjectiveVector ideal_point(std::span<const Solution> points);

/// Filter of archive members followed by `incoming`; `incoming_evaluations`
/// is added to the archive's evaluation count.
[[nodiscard]] ParetoArchive archive_merge(ParetoArchive archive, std::span<const Solution> incoming,
                                          std::uint64_t incoming_evaluations = 0);

}  // namespace mobnb
