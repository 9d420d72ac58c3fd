#pragma once

// Benchmark MO-MINLP problems and the registry that exposes them by name.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mobnb/core.hpp"

namespace mobnb {

enum class DomainKind { continuous, integer, discrete_set, binary };

/// One variable's domain. Integer-coded kinds (integer, discrete_set,
/// binary) are searched over codes [code_lo(), code_hi()]; `value()` maps a
/// code to the number the objective functions see.
struct VariableDomain {
  DomainKind kind = DomainKind::continuous;
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> values;  // discrete_set only, sorted and unique

  static VariableDomain continuous(double lo, double hi);
  static VariableDomain integer(int lo, int hi);
  static VariableDomain discrete_set(std::vector<double> values);
  static VariableDomain binary();

  [[nodiscard]] bool is_continuous() const noexcept { return kind == DomainKind::continuous; }
  [[nodiscard]] int code_lo() const;
  [[nodiscard]] int code_hi() const;
  [[nodiscard]] double value(int code) const;
};

/// Closed integer-code box, one entry per integer-coded variable.
struct IntegerBox {
  std::vector<int> lower;
  std::vector<int> upper;

  [[nodiscard]] std::size_t size() const noexcept { return lower.size(); }
  [[nodiscard]] bool is_point() const;
  /// Number of integer combinations, saturating at UINT64_MAX.
  [[nodiscard]] std::uint64_t combinations() const;
  friend bool operator==(const IntegerBox&, const IntegerBox&) = default;
};

/// Raw function values. Inequalities are satisfied when >= 0.
struct RawEvaluation {
  ObjectiveVector objectives;
  std::vector<double> inequality;
  std::vector<double> equality;
};

struct EvaluatedPoint {
  ObjectiveVector objectives;
  double violation = 0.0;
};

enum class ParetoType { discrete, discontinuous, continuous };

/// Receives continuous values and the *values* (not codes) of integer-coded
/// variables. Must be deterministic and reentrant.
using Evaluator =
    std::function<void(std::span<const double> continuous, std::span<const double> integer_values, RawEvaluation& out)>;

class ProblemSpec {
 public:
  ProblemSpec(std::string name, std::vector<VariableDomain> continuous, std::vector<VariableDomain> integer,
              std::size_t objective_count, std::size_t inequality_count, std::size_t equality_count,
              ParetoType pareto_type, Evaluator evaluator);

  [[nodiscard]] const std::string& name() const noexcept { return name_; }
  [[nodiscard]] const std::vector<VariableDomain>& continuous_domains() const noexcept { return continuous_; }
  [[nodiscard]] const std::vector<VariableDomain>& integer_domains() const noexcept { return integer_; }
  /// Continuous domains followed by integer-coded ones.
  [[nodiscard]] std::vector<VariableDomain> domains() const;
  [[nodiscard]] std::size_t variable_count() const noexcept { return continuous_.size() + integer_.size(); }
  [[nodiscard]] std::size_t objective_count() const noexcept { return objective_count_; }
  [[nodiscard]] std::size_t inequality_count() const noexcept { return inequality_count_; }
  [[nodiscard]] std::size_t equality_count() const noexcept { return equality_count_; }
  [[nodiscard]] std::size_t constraint_count() const noexcept { return inequality_count_ + equality_count_; }
  [[nodiscard]] ParetoType pareto_type() const noexcept { return pareto_type_; }
  [[nodiscard]] IntegerBox integer_box() const;

  [[nodiscard]] bool contains(const VariableVector& v) const;

  /// Objectives plus aggregated violation. Throws UsageError outside the
  /// domain box and EvaluationError on a non-finite objective.
  [[nodiscard]] EvaluatedPoint evaluate(const VariableVector& v) const;
  [[nodiscard]] Solution make_solution(VariableVector v) const;

  /// Unchecked evaluation into caller-owned buffers, for enumeration loops.
  /// `integer_values` must already be mapped through VariableDomain::value.
  void evaluate_values(std::span<const double> continuous, std::span<const double> integer_values,
                       RawEvaluation& scratch) const;

 private:
  std::string name_;
  std::vector<VariableDomain> continuous_;
  std::vector<VariableDomain> integer_;
  std::size_t objective_count_;
  std::size_t inequality_count_;
  std::size_t equality_count_;
  ParetoType pareto_type_;
  Evaluator evaluator_;
};

enum class GearObjective {
  squared_error,  // (1/6.931 - z1 z2 / (z3 z4))^2, gives the 28-point front
  literal,        // 1/6.931 - (z1 z2 / (z3 z4))^2, as typeset
};

enum class TongG2Sign {
  minus,  // 4x1^2 + 2x1 + x2 - 9x3 + y1 + 7y2 <= 40
  plus,   // 4x1^2 + 2x1 + x2 + 9x3 + y1 + 7y2 <= 40
};

struct ProblemOptions {
  GearObjective gear = GearObjective::squared_error;
  TongG2Sign tong_g2 = TongG2Sign::minus;
};

[[nodiscard]] ProblemSpec make_gear(GearObjective objective = GearObjective::squared_error);
[[nodiscard]] ProblemSpec make_brake();
[[nodiscard]] ProblemSpec make_truss();
[[nodiscard]] ProblemSpec make_mela();
[[nodiscard]] ProblemSpec make_tong(TongG2Sign g2 = TongG2Sign::minus);

/// gear, brake, truss, mela, tong. The bearing and coupling problems are not
/// shipped: they need bearing/bolt catalogue tables that are not available.
[[nodiscard]] std::vector<ProblemSpec> registry(const ProblemOptions& options = {});
[[nodiscard]] std::vector<std::string> problem_names();
[[nodiscard]] ProblemSpec make_problem(std::string_view name, const ProblemOptions& options = {});

/// Copy of `problem` whose integer-coded domains are narrowed to `box`.
/// Discrete sets are cut to the selected values, so codes are re-based.
[[nodiscard]] ProblemSpec restrict_integers(const ProblemSpec& problem, const IntegerBox& box);

}  // namespace mobnb
