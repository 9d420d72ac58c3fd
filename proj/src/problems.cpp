#include "mobnb/problems.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace mobnb {

VariableDomain VariableDomain::continuous(double lo, double hi) {
  if (!(lo <= hi)) throw UsageError("continuous domain with lo > hi");
  return {DomainKind::continuous, lo, hi, {}};
}

VariableDomain VariableDomain::integer(int lo, int hi) {
  if (lo > hi) throw UsageError("integer domain with lo > hi");
  return {DomainKind::integer, static_cast<double>(lo), static_cast<double>(hi), {}};
}

VariableDomain VariableDomain::discrete_set(std::vector<double> values) {
  if (values.empty()) throw UsageError("empty discrete set");
  if (!std::is_sorted(values.begin(), values.end()) ||
      std::adjacent_find(values.begin(), values.end()) != values.end()) {
    throw UsageError("discrete set must be sorted and duplicate-free");
  }
  const double lo = values.front();
  const double hi = values.back();
  return {DomainKind::discrete_set, lo, hi, std::move(values)};
}

VariableDomain VariableDomain::binary() { return {DomainKind::binary, 0.0, 1.0, {}}; }

int VariableDomain::code_lo() const {
  switch (kind) {
    case DomainKind::integer: return static_cast<int>(lo);
    case DomainKind::discrete_set:
    case DomainKind::binary: return 0;
    case DomainKind::continuous: break;
  }
  throw UsageError("code_lo on a continuous domain");
}

int VariableDomain::code_hi() const {
  switch (kind) {
    case DomainKind::integer: return static_cast<int>(hi);
    case DomainKind::discrete_set: return static_cast<int>(values.size()) - 1;
    case DomainKind::binary: return 1;
    case DomainKind::continuous: break;
  }
  throw UsageError("code_hi on a continuous domain");
}

double VariableDomain::value(int code) const {
  if (kind == DomainKind::discrete_set) return values[static_cast<std::size_t>(code)];
  return static_cast<double>(code);
}

bool IntegerBox::is_point() const {
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (lower[i] != upper[i]) return false;
  }
  return true;
}

std::uint64_t IntegerBox::combinations() const {
  constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < lower.size(); ++i) {
    const auto width = static_cast<std::uint64_t>(upper[i] - lower[i] + 1);
    if (total > cap / width) return cap;
    total *= width;
  }
  return total;
}

ProblemSpec::ProblemSpec(std::string name, std::vector<VariableDomain> continuous, std::vector<VariableDomain> integer,
                         std::size_t objective_count, std::size_t inequality_count, std::size_t equality_count,
                         ParetoType pareto_type, Evaluator evaluator)
    : name_(std::move(name)),
      continuous_(std::move(continuous)),
      integer_(std::move(integer)),
      objective_count_(objective_count),
      inequality_count_(inequality_count),
      equality_count_(equality_count),
      pareto_type_(pareto_type),
      evaluator_(std::move(evaluator)) {
  if (objective_count_ < 2) throw UsageError("problem needs at least two objectives");
  for (const auto& d : continuous_) {
    if (!d.is_continuous()) throw UsageError("integer-coded domain in continuous list");
  }
  for (const auto& d : integer_) {
    if (d.is_continuous()) throw UsageError("continuous domain in integer list");
  }
}

std::vector<VariableDomain> ProblemSpec::domains() const {
  std::vector<VariableDomain> all = continuous_;
  all.insert(all.end(), integer_.begin(), integer_.end());
  return all;
}

IntegerBox ProblemSpec::integer_box() const {
  IntegerBox box;
  for (const auto& d : integer_) {
    box.lower.push_back(d.code_lo());
    box.upper.push_back(d.code_hi());
  }
  return box;
}

bool ProblemSpec::contains(const VariableVector& v) const {
  if (v.continuous.size() != continuous_.size() || v.integer.size() != integer_.size()) return false;
  for (std::size_t i = 0; i < continuous_.size(); ++i) {
    const double x = v.continuous[i];
    if (!(x >= continuous_[i].lo && x <= continuous_[i].hi)) return false;
  }
  for (std::size_t i = 0; i < integer_.size(); ++i) {
    if (v.integer[i] < integer_[i].code_lo() || v.integer[i] > integer_[i].code_hi()) return false;
  }
  return true;
}

void ProblemSpec::evaluate_values(std::span<const double> continuous, std::span<const double> integer_values,
                                  RawEvaluation& scratch) const {
  scratch.objectives.resize(objective_count_);
  scratch.inequality.resize(inequality_count_);
  scratch.equality.resize(equality_count_);
  evaluator_(continuous, integer_values, scratch);
}

EvaluatedPoint ProblemSpec::evaluate(const VariableVector& v) const {
  if (!contains(v)) throw UsageError("evaluate: variable vector outside the domain of " + name_);
  std::vector<double> integer_values(integer_.size());
  for (std::size_t i = 0; i < integer_.size(); ++i) integer_values[i] = integer_[i].value(v.integer[i]);
  RawEvaluation raw;
  evaluate_values(v.continuous, integer_values, raw);
  for (double f : raw.objectives) {
    if (!std::isfinite(f)) {
      std::ostringstream msg;
      msg << name_ << ": non-finite objective at x=(";
      for (std::size_t i = 0; i < v.continuous.size(); ++i) msg << (i ? "," : "") << v.continuous[i];
      msg << ") y=(";
      for (std::size_t i = 0; i < v.integer.size(); ++i) msg << (i ? "," : "") << v.integer[i];
      msg << ")";
      throw EvaluationError(msg.str());
    }
  }
  return {std::move(raw.objectives), aggregate_violation(raw.inequality, raw.equality)};
}

Solution ProblemSpec::make_solution(VariableVector v) const {
  auto [objectives, violation] = evaluate(v);
  return {std::move(v), std::move(objectives), violation};
}

// ---------------------------------------------------------------------------
// Problem definitions. Constraints stated as g <= b are stored as b - g >= 0.

ProblemSpec make_gear(GearObjective objective) {
  std::vector<VariableDomain> teeth(4, VariableDomain::integer(12, 60));
  auto eval = [objective](std::span<const double>, std::span<const double> z, RawEvaluation& out) {
    const double ratio = (z[0] * z[1]) / (z[2] * z[3]);
    constexpr double target = 1.0 / 6.931;
    if (objective == GearObjective::squared_error) {
      out.objectives[0] = (target - ratio) * (target - ratio);
    } else {
      out.objectives[0] = target - ratio * ratio;
    }
    out.objectives[1] = std::max(std::max(z[0], z[1]), std::max(z[2], z[3]));
  };
  return {"gear", {}, std::move(teeth), 2, 0, 0, ParetoType::discrete, eval};
}

ProblemSpec make_brake() {
  // x1 outer radius, x2 engaging force, x3 number of friction surfaces,
  // y1 inner radius. The mass objective's "x4" is the surface count x3.
  std::vector<VariableDomain> cont{VariableDomain::continuous(75.0, 110.0), VariableDomain::continuous(1000.0, 3000.0),
                                   VariableDomain::continuous(2.0, 20.0)};
  std::vector<VariableDomain> ints{VariableDomain::integer(55, 80)};
  auto eval = [](std::span<const double> x, std::span<const double> y, RawEvaluation& out) {
    const double ro = x[0];
    const double ri = y[0];
    const double force = x[1];
    const double surfaces = x[2];
    const double area = ro * ro - ri * ri;
    const double cube = ro * ro * ro - ri * ri * ri;
    // area / cube simplified so that ro == ri stays finite.
    const double area_over_cube = (ro + ri) / (ro * ro + ro * ri + ri * ri);
    out.objectives[0] = 4.9e-5 * area * (surfaces - 1.0);
    out.objectives[1] = 9.82e6 * area_over_cube / (force * surfaces);

    out.inequality[0] = (ro - ri) - 20.0;
    out.inequality[1] = 30.0 - 2.5 * (surfaces + 1.0);
    if (area != 0.0) {
      out.inequality[2] = 0.4 - force / (std::numbers::pi * area);
      out.inequality[3] = 1.0 - 2.22e-3 * force * cube / (area * area);
    } else {
      // Zero friction area: pressure and torque are undefined; count both as violated.
      out.inequality[2] = -1.0;
      out.inequality[3] = -1.0;
    }
    out.inequality[4] = 2.66e-2 * force * surfaces / area_over_cube - 900.0;
  };
  return {"brake", std::move(cont), std::move(ints), 2, 5, 0, ParetoType::discontinuous, eval};
}

ProblemSpec make_truss() {
  // Member areas A1..A3 continuous with lower bounds c1..c3, A4..A9 from a
  // catalogue of four sections. Diagonal members carry the sqrt(2) length.
  std::vector<VariableDomain> cont{VariableDomain::continuous(2.0 / 3.0, 10.0), VariableDomain::continuous(1.0 / 3.0, 10.0),
                                   VariableDomain::continuous(1.0 / 3.0, 10.0)};
  std::vector<VariableDomain> ints(6, VariableDomain::discrete_set({1.0, 5.0, 10.0, 15.0}));
  auto eval = [](std::span<const double> x, std::span<const double> y, RawEvaluation& out) {
    const double a1 = x[0], a2 = x[1], a3 = x[2];
    const double a4 = y[0], a5 = y[1], a6 = y[2], a7 = y[3], a8 = y[4], a9 = y[5];
    constexpr double r2 = std::numbers::sqrt2;
    out.objectives[0] = a1 + a2 + a3 + r2 * a4 + a5 + r2 * a6 + a7 + r2 * a8 + a9;
    out.objectives[1] = 4.0 / a1 + 1.0 / a2 + 1.0 / a3 + 8.0 * r2 / a4 + 4.0 / a5 + 2.0 * r2 / a6 + 4.0 / a7 +
                        2.0 * r2 / a8;
  };
  return {"truss", std::move(cont), std::move(ints), 2, 0, 0, ParetoType::discontinuous, eval};
}

namespace {

// Row-major, rows/columns ordered (x1, x2, y1..y8).
constexpr std::array<std::array<double, 10>, 10> kMelaG{{
    {1, -1, 2, 0, 0, 0, 0, 0, 0, 0},
    {-1, 2, 0, 0, 2, 0, 0, 0, 0, 0},
    {0, 0, 3, 0, 2, 0, 0, 0, 0, 0},
    {2, 0, 0, 4, 0, 2, 0, 2, 0, 0},
    {0, 0, 0, 0, 5, 2, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 6, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 7, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 2, 0, 0, 0, 0},
    {0, 2, 0, 0, 0, 0, 0, 0, 0, 10},
}};
constexpr std::array<double, 10> kMelaC1{-1, -1, 1, -10, 0, 1, -2, 0, 3, 0};
constexpr std::array<double, 10> kMelaC2{1, 2, -1, 1, 5, -2, 0, 6, 0, -3};

}  // namespace

ProblemSpec make_mela() {
  std::vector<VariableDomain> cont(2, VariableDomain::continuous(-1.0, 1.0));
  std::vector<VariableDomain> ints(8, VariableDomain::binary());
  auto eval = [](std::span<const double> x, std::span<const double> y, RawEvaluation& out) {
    std::array<double, 10> v{};
    v[0] = x[0];
    v[1] = x[1];
    std::copy(y.begin(), y.end(), v.begin() + 2);
    double quad = 0.0;
    double lin1 = 0.0;
    double lin2 = 0.0;
    for (std::size_t i = 0; i < 10; ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < 10; ++j) row += kMelaG[i][j] * v[j];
      quad += v[i] * row;
      lin1 += kMelaC1[i] * v[i];
      lin2 += kMelaC2[i] * v[i];
    }
    out.objectives[0] = 0.5 * quad + lin1;
    out.objectives[1] = lin2;
  };
  return {"mela", std::move(cont), std::move(ints), 2, 0, 0, ParetoType::discontinuous, eval};
}

ProblemSpec make_tong(TongG2Sign g2) {
  std::vector<VariableDomain> cont(3, VariableDomain::continuous(-100.0, 100.0));
  std::vector<VariableDomain> ints(3, VariableDomain::binary());
  // g2 is typeset as "x2 9x3"; the minus reading is the default, see TongG2Sign.
  const double g2_x3 = g2 == TongG2Sign::minus ? -9.0 : 9.0;
  auto eval = [g2_x3](std::span<const double> x, std::span<const double> y, RawEvaluation& out) {
    const double x1 = x[0], x2 = x[1], x3 = x[2];
    const double y1 = y[0], y2 = y[1], y3 = y[2];
    out.objectives[0] = x1 * x1 - x2 + x3 + 3.0 * y1 + 2.0 * y2 + y3;
    out.objectives[1] = 2.0 * x1 * x1 + x2 - 3.0 * x3 - 2.0 * y1 + y2 - 2.0 * y3;

    out.inequality[0] = -(3.0 * x1 - x2 + x3 + 2.0 * y1);
    out.inequality[1] = 40.0 - (4.0 * x1 * x1 + 2.0 * x1 + x2 + g2_x3 * x3 + y1 + 7.0 * y2);
    out.inequality[2] = -(-x1 - 2.0 * x2 + 3.0 * x3 + 7.0 * y3);
    out.inequality[3] = 10.0 - (-x1 + 12.0 * y1);
    out.inequality[4] = 5.0 - (x1 - 2.0 * y1);
    out.inequality[5] = 20.0 - (-x2 + y2);
    out.inequality[6] = 40.0 - (x2 - y2);
    out.inequality[7] = 17.0 - (-x3 + y3);
    out.inequality[8] = 25.0 - (x3 - y3);
  };
  return {"tong", std::move(cont), std::move(ints), 2, 9, 0, ParetoType::continuous, eval};
}

std::vector<std::string> problem_names() { return {"gear", "brake", "truss", "mela", "tong"}; }

std::vector<ProblemSpec> registry(const ProblemOptions& options) {
  return {make_gear(options.gear), make_brake(), make_truss(), make_mela(), make_tong(options.tong_g2)};
}

ProblemSpec make_problem(std::string_view name, const ProblemOptions& options) {
  if (name == "gear") return make_gear(options.gear);
  if (name == "brake") return make_brake();
  if (name == "truss") return make_truss();
  if (name == "mela") return make_mela();
  if (name == "tong") return make_tong(options.tong_g2);
  throw UsageError("unknown problem '" + std::string(name) + "' (bearing and coupling are not available)");
}

ProblemSpec restrict_integers(const ProblemSpec& problem, const IntegerBox& box) {
  const auto& domains = problem.integer_domains();
  if (box.lower.size() != domains.size() || box.upper.size() != domains.size()) {
    throw UsageError("restrict_integers: box dimension mismatch");
  }
  std::vector<VariableDomain> narrowed;
  for (std::size_t i = 0; i < domains.size(); ++i) {
    const auto& d = domains[i];
    const int lo = box.lower[i];
    const int hi = box.upper[i];
    if (lo > hi || lo < d.code_lo() || hi > d.code_hi()) throw UsageError("restrict_integers: box outside domain");
    if (d.kind == DomainKind::discrete_set) {
      narrowed.push_back(VariableDomain::discrete_set(
          std::vector<double>(d.values.begin() + lo, d.values.begin() + hi + 1)));
    } else {
      narrowed.push_back(VariableDomain::integer(lo, hi));
    }
  }
  // The evaluator only sees values, so it carries over unchanged.
  auto forward = [problem](std::span<const double> x, std::span<const double> y, RawEvaluation& out) {
    problem.evaluate_values(x, y, out);
  };
  return {problem.name(),
          problem.continuous_domains(),
          std::move(narrowed),
          problem.objective_count(),
          problem.inequality_count(),
          problem.equality_count(),
          problem.pareto_type(),
          forward};
}

}  // namespace mobnb
