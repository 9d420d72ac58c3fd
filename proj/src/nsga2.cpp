#include "mobnb/nsga2.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace mobnb {

void Nsga2Config::validate() const {
  if (population_size == 0 || population_size % 2 != 0) {
    throw UsageError("population_size must be positive and even");
  }
  if (max_generations == 0) throw UsageError("max_generations must be positive");
  if (stall_generations == 0 || stall_generations > max_generations) {
    throw UsageError("stall_generations must be in [1, max_generations]");
  }
  if (!(crossover_probability >= 0.0 && crossover_probability <= 1.0)) {
    throw UsageError("crossover_probability must be in [0, 1]");
  }
  if (!(mutation_probability >= 0.0 && mutation_probability <= 1.0)) {
    throw UsageError("mutation_probability must be in [0, 1]");
  }
  if (!(eta_c > 0.0) || !(eta_m > 0.0)) throw UsageError("distribution indices must be positive");
}

namespace {

// Two objectives: assign each point, in (f1, f2) order, to the first front
// whose most recent member does not dominate it.
std::vector<std::vector<std::size_t>> sort_bi_objective(std::span<const Solution> pop, std::vector<std::size_t> idx) {
  std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
    const auto& a = pop[i].objectives;
    const auto& b = pop[j].objectives;
    if (a[0] != b[0]) return a[0] < b[0];
    if (a[1] != b[1]) return a[1] < b[1];
    return i < j;
  });
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<std::size_t> last;
  for (std::size_t i : idx) {
    const auto& p = pop[i].objectives;
    std::size_t k = 0;
    for (; k < fronts.size(); ++k) {
      const auto& l = pop[last[k]].objectives;
      const bool dominated = l[1] < p[1] || (l[1] == p[1] && l[0] < p[0]);
      if (!dominated) break;
    }
    if (k == fronts.size()) {
      fronts.emplace_back();
      last.push_back(i);
    }
    fronts[k].push_back(i);
    last[k] = i;
  }
  return fronts;
}

std::vector<std::vector<std::size_t>> sort_generic(std::span<const Solution> pop, const std::vector<std::size_t>& idx) {
  const std::size_t n = idx.size();
  std::vector<std::vector<std::size_t>> dominated_by(n);
  std::vector<std::size_t> domination_count(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const auto& fa = pop[idx[a]].objectives;
      const auto& fb = pop[idx[b]].objectives;
      if (dominates(fa, fb)) {
        dominated_by[a].push_back(b);
        ++domination_count[b];
      } else if (dominates(fb, fa)) {
        dominated_by[b].push_back(a);
        ++domination_count[a];
      }
    }
  }
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<std::size_t> current;
  for (std::size_t a = 0; a < n; ++a) {
    if (domination_count[a] == 0) current.push_back(a);
  }
  while (!current.empty()) {
    std::vector<std::size_t> next;
    std::vector<std::size_t> front;
    for (std::size_t a : current) {
      front.push_back(idx[a]);
      for (std::size_t b : dominated_by[a]) {
        if (--domination_count[b] == 0) next.push_back(b);
      }
    }
    fronts.push_back(std::move(front));
    current = std::move(next);
  }
  return fronts;
}

}  // namespace

std::vector<std::vector<std::size_t>> non_dominated_sort(std::span<const Solution> pop) {
  if (pop.empty()) return {};
  std::vector<std::size_t> feasible;
  std::map<double, std::vector<std::size_t>> infeasible_by_violation;
  for (std::size_t i = 0; i < pop.size(); ++i) {
    if (pop[i].feasible()) {
      feasible.push_back(i);
    } else {
      infeasible_by_violation[pop[i].constraint_violation].push_back(i);
    }
  }
  std::vector<std::vector<std::size_t>> fronts;
  if (!feasible.empty()) {
    const bool bi = pop[feasible.front()].objectives.size() == 2;
    fronts = bi ? sort_bi_objective(pop, feasible) : sort_generic(pop, feasible);
  }
  // Infeasible points are ordered by violation alone.
  for (auto& [violation, members] : infeasible_by_violation) fronts.push_back(std::move(members));
  for (auto& f : fronts) std::sort(f.begin(), f.end());
  return fronts;
}

namespace {

// Crowding distance of pop[idx[k]] within the set idx.
std::vector<double> crowding_of(std::span<const Solution> pop, std::span<const std::size_t> idx) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const std::size_t n = idx.size();
  std::vector<double> distance(n, 0.0);
  if (n <= 2) {
    std::fill(distance.begin(), distance.end(), inf);
    return distance;
  }
  const std::size_t p = pop[idx.front()].objectives.size();
  std::vector<std::size_t> order(n);
  for (std::size_t m = 0; m < p; ++m) {
    std::iota(order.begin(), order.end(), 0);
    // Ties broken on the whole vector so the result does not depend on input order.
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
      const auto& a = pop[idx[i]].objectives;
      const auto& b = pop[idx[j]].objectives;
      if (a[m] != b[m]) return a[m] < b[m];
      if (a != b) return a < b;
      return i < j;
    });
    const double lo = pop[idx[order.front()]].objectives[m];
    const double hi = pop[idx[order.back()]].objectives[m];
    distance[order.front()] = inf;
    distance[order.back()] = inf;
    if (hi == lo) continue;
    for (std::size_t k = 1; k + 1 < n; ++k) {
      distance[order[k]] += (pop[idx[order[k + 1]]].objectives[m] - pop[idx[order[k - 1]]].objectives[m]) / (hi - lo);
    }
  }
  return distance;
}

}  // namespace

std::vector<double> crowding_distance(std::span<const Solution> front) {
  std::vector<std::size_t> idx(front.size());
  std::iota(idx.begin(), idx.end(), 0);
  return crowding_of(front, idx);
}

SearchBox::SearchBox(const ProblemSpec& problem, const std::optional<IntegerBox>& override_box) {
  for (const auto& d : problem.continuous_domains()) {
    cont_lo_.push_back(d.lo);
    cont_hi_.push_back(d.hi);
  }
  const IntegerBox full = problem.integer_box();
  if (override_box) {
    if (override_box->lower.size() != full.size() || override_box->upper.size() != full.size()) {
      throw UsageError("integer override has the wrong dimension");
    }
    for (std::size_t i = 0; i < full.size(); ++i) {
      const int lo = override_box->lower[i];
      const int hi = override_box->upper[i];
      if (lo > hi || lo < full.lower[i] || hi > full.upper[i]) {
        throw UsageError("integer override must narrow the problem's integer bounds");
      }
    }
    int_lo_ = override_box->lower;
    int_hi_ = override_box->upper;
  } else {
    int_lo_ = full.lower;
    int_hi_ = full.upper;
  }
}

bool SearchBox::contains(const VariableVector& v) const {
  if (v.continuous.size() != cont_lo_.size() || v.integer.size() != int_lo_.size()) return false;
  for (std::size_t i = 0; i < cont_lo_.size(); ++i) {
    if (!(v.continuous[i] >= cont_lo_[i] && v.continuous[i] <= cont_hi_[i])) return false;
  }
  for (std::size_t i = 0; i < int_lo_.size(); ++i) {
    if (v.integer[i] < int_lo_[i] || v.integer[i] > int_hi_[i]) return false;
  }
  return true;
}

VariableVector SearchBox::sample(Rng& rng) const {
  VariableVector v;
  v.continuous.resize(cont_lo_.size());
  v.integer.resize(int_lo_.size());
  for (std::size_t i = 0; i < cont_lo_.size(); ++i) {
    v.continuous[i] = std::uniform_real_distribution<double>(cont_lo_[i], cont_hi_[i])(rng);
    v.continuous[i] = std::clamp(v.continuous[i], cont_lo_[i], cont_hi_[i]);
  }
  for (std::size_t i = 0; i < int_lo_.size(); ++i) {
    v.integer[i] = std::uniform_int_distribution<int>(int_lo_[i], int_hi_[i])(rng);
  }
  return v;
}

namespace {

double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

// Bounded SBX on one gene pair.
std::pair<double, double> sbx_gene(double p1, double p2, double lo, double hi, double eta, Rng& rng) {
  constexpr double eps = 1e-14;
  if (uniform01(rng) > 0.5 || std::abs(p1 - p2) <= eps || hi <= lo) return {p1, p2};
  const double y1 = std::min(p1, p2);
  const double y2 = std::max(p1, p2);
  const double r = uniform01(rng);
  auto spread_factor = [&](double beta) {
    const double alpha = 2.0 - std::pow(beta, -(eta + 1.0));
    if (r <= 1.0 / alpha) return std::pow(r * alpha, 1.0 / (eta + 1.0));
    return std::pow(1.0 / (2.0 - r * alpha), 1.0 / (eta + 1.0));
  };
  const double bq1 = spread_factor(1.0 + 2.0 * (y1 - lo) / (y2 - y1));
  const double bq2 = spread_factor(1.0 + 2.0 * (hi - y2) / (y2 - y1));
  double c1 = std::clamp(0.5 * ((y1 + y2) - bq1 * (y2 - y1)), lo, hi);
  double c2 = std::clamp(0.5 * ((y1 + y2) + bq2 * (y2 - y1)), lo, hi);
  if (uniform01(rng) <= 0.5) std::swap(c1, c2);
  return {c1, c2};
}

int round_to_code(double x, int lo, int hi) {
  // nearbyint rounds half to even under the default rounding mode.
  const double r = std::nearbyint(x);
  return static_cast<int>(std::clamp(r, static_cast<double>(lo), static_cast<double>(hi)));
}

double polynomial_mutation(double y, double lo, double hi, double eta, Rng& rng) {
  const double d1 = (y - lo) / (hi - lo);
  const double d2 = (hi - y) / (hi - lo);
  const double r = uniform01(rng);
  const double power = 1.0 / (eta + 1.0);
  double dq;
  if (r <= 0.5) {
    const double val = 2.0 * r + (1.0 - 2.0 * r) * std::pow(1.0 - d1, eta + 1.0);
    dq = std::pow(val, power) - 1.0;
  } else {
    const double val = 2.0 * (1.0 - r) + 2.0 * (r - 0.5) * std::pow(1.0 - d2, eta + 1.0);
    dq = 1.0 - std::pow(val, power);
  }
  return std::clamp(y + dq * (hi - lo), lo, hi);
}

}  // namespace

std::pair<VariableVector, VariableVector> sbx_crossover(const VariableVector& a, const VariableVector& b,
                                                        const SearchBox& box, const Nsga2Config& cfg, Rng& rng) {
  VariableVector c1 = a;
  VariableVector c2 = b;
  if (uniform01(rng) >= cfg.crossover_probability) return {c1, c2};
  for (std::size_t i = 0; i < box.continuous_size(); ++i) {
    std::tie(c1.continuous[i], c2.continuous[i]) =
        sbx_gene(a.continuous[i], b.continuous[i], box.continuous_lo(i), box.continuous_hi(i), cfg.eta_c, rng);
  }
  for (std::size_t i = 0; i < box.integer_size(); ++i) {
    const int lo = box.integer_lo(i);
    const int hi = box.integer_hi(i);
    const auto [x1, x2] = sbx_gene(a.integer[i], b.integer[i], lo, hi, cfg.eta_c, rng);
    c1.integer[i] = round_to_code(x1, lo, hi);
    c2.integer[i] = round_to_code(x2, lo, hi);
  }
  return {c1, c2};
}

VariableVector mutate(const VariableVector& v, const SearchBox& box, const Nsga2Config& cfg, Rng& rng) {
  VariableVector out = v;
  // Genes fixed by the box are not part of the subproblem.
  std::size_t n = box.continuous_size();
  for (std::size_t i = 0; i < box.integer_size(); ++i) n += box.integer_lo(i) < box.integer_hi(i) ? 1 : 0;
  if (n == 0) return out;
  const double per_gene = cfg.mutation_probability / static_cast<double>(n);
  for (std::size_t i = 0; i < box.continuous_size(); ++i) {
    if (uniform01(rng) >= per_gene) continue;
    const double lo = box.continuous_lo(i);
    const double hi = box.continuous_hi(i);
    if (hi > lo) out.continuous[i] = polynomial_mutation(out.continuous[i], lo, hi, cfg.eta_m, rng);
  }
  for (std::size_t i = 0; i < box.integer_size(); ++i) {
    if (box.integer_lo(i) == box.integer_hi(i) || uniform01(rng) >= per_gene) continue;
    out.integer[i] = std::uniform_int_distribution<int>(box.integer_lo(i), box.integer_hi(i))(rng);
  }
  return out;
}

namespace {

struct Ranking {
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<std::size_t> rank;
  std::vector<double> crowding;
};

Ranking rank_population(std::span<const Solution> pop) {
  Ranking r;
  r.fronts = non_dominated_sort(pop);
  r.rank.assign(pop.size(), 0);
  r.crowding.assign(pop.size(), 0.0);
  for (std::size_t k = 0; k < r.fronts.size(); ++k) {
    for (std::size_t i : r.fronts[k]) r.rank[i] = k;
    const auto d = crowding_of(pop, r.fronts[k]);
    for (std::size_t j = 0; j < r.fronts[k].size(); ++j) r.crowding[r.fronts[k][j]] = d[j];
  }
  return r;
}

std::vector<ObjectiveVector> objective_set(std::span<const Solution> pop, const std::vector<std::size_t>& idx) {
  std::vector<ObjectiveVector> set;
  set.reserve(idx.size());
  for (std::size_t i : idx) set.push_back(pop[i].objectives);
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  return set;
}

std::vector<Solution> gather(std::span<const Solution> pop, const std::vector<std::size_t>& idx) {
  std::vector<Solution> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(pop[i]);
  return out;
}

// Evaluation with reusable buffers. Variables come from the search box, so
// only finiteness needs checking.
class ScratchEvaluator {
 public:
  explicit ScratchEvaluator(const ProblemSpec& problem) : problem_(problem), values_(problem.integer_domains().size()) {}

  Solution operator()(VariableVector v) {
    const auto& ints = problem_.integer_domains();
    for (std::size_t i = 0; i < ints.size(); ++i) values_[i] = ints[i].value(v.integer[i]);
    problem_.evaluate_values(v.continuous, values_, raw_);
    for (double f : raw_.objectives) {
      if (!std::isfinite(f)) return problem_.make_solution(std::move(v));  // throws with the assignment
    }
    return {std::move(v), raw_.objectives, aggregate_violation(raw_.inequality, raw_.equality)};
  }

 private:
  const ProblemSpec& problem_;
  std::vector<double> values_;
  RawEvaluation raw_;
};

}  // namespace

Nsga2Result run_nsga2(const ProblemSpec& problem, const std::optional<IntegerBox>& override_box,
                      const Nsga2Config& cfg, const GenerationObserver& observer) {
  cfg.validate();
  const SearchBox box(problem, override_box);
  const std::size_t n = cfg.population_size;
  Rng rng(cfg.seed);
  ScratchEvaluator evaluate(problem);

  // A single-point search space: every individual is that point, the first
  // front never changes and the run stalls after stall_generations.
  if (box.continuous_size() == 0 && box.integer_lo_all() == box.integer_hi_all()) {
    const Solution only = evaluate(box.sample(rng));
    const std::vector<Solution> front(n, only);
    Nsga2Result result;
    result.generations = std::min(cfg.stall_generations, cfg.max_generations);
    result.stalled = cfg.stall_generations <= cfg.max_generations;
    if (observer) {
      for (std::size_t g = 0; g <= result.generations; ++g) observer(g, front);
    }
    result.archive.members = {only};
    result.archive.evaluation_count = n * (1 + result.generations);
    result.archive.infeasible = !only.feasible();
    return result;
  }

  std::vector<Solution> pop;
  pop.reserve(n);
  for (std::size_t i = 0; i < n; ++i) pop.push_back(evaluate(box.sample(rng)));
  std::uint64_t evaluations = n;

  Ranking ranking = rank_population(pop);
  auto previous_front = objective_set(pop, ranking.fronts.front());
  if (observer) observer(0, gather(pop, ranking.fronts.front()));

  auto tournament = [&]() -> const Solution& {
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    const std::size_t i = pick(rng);
    const std::size_t j = pick(rng);
    if (ranking.rank[i] != ranking.rank[j]) return pop[ranking.rank[i] < ranking.rank[j] ? i : j];
    return pop[ranking.crowding[j] > ranking.crowding[i] ? j : i];
  };

  Nsga2Result result;
  std::size_t stall = 0;
  std::vector<Solution> combined;
  while (result.generations < cfg.max_generations) {
    std::vector<Solution> offspring;
    offspring.reserve(n);
    for (std::size_t k = 0; k < n / 2; ++k) {
      const Solution& p1 = tournament();
      const Solution& p2 = tournament();
      auto [c1, c2] = sbx_crossover(p1.vars, p2.vars, box, cfg, rng);
      offspring.push_back(evaluate(mutate(c1, box, cfg, rng)));
      offspring.push_back(evaluate(mutate(c2, box, cfg, rng)));
    }
    combined = std::move(pop);
    std::move(offspring.begin(), offspring.end(), std::back_inserter(combined));
    evaluations += n;

    // Elitist selection: whole fronts, then the least crowded of the last one.
    const auto fronts = non_dominated_sort(combined);
    std::vector<Solution> next;
    next.reserve(n);
    for (const auto& front : fronts) {
      if (next.size() + front.size() <= n) {
        for (std::size_t i : front) next.push_back(std::move(combined[i]));
        if (next.size() == n) break;
        continue;
      }
      const auto d = crowding_of(combined, front);
      std::vector<std::size_t> order(front.size());
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] > d[b]; });
      for (std::size_t k = 0; next.size() < n; ++k) next.push_back(std::move(combined[front[order[k]]]));
      break;
    }
    pop = std::move(next);
    ++result.generations;

    ranking = rank_population(pop);
    auto front = objective_set(pop, ranking.fronts.front());
    stall = front == previous_front ? stall + 1 : 0;
    previous_front = std::move(front);
    if (observer) observer(result.generations, gather(pop, ranking.fronts.front()));
    if (stall >= cfg.stall_generations) {
      result.stalled = true;
      break;
    }
  }

  result.archive.members = pareto_filter(gather(pop, ranking.fronts.front()));
  result.archive.evaluation_count = evaluations;
  result.archive.infeasible = !result.archive.members.empty() && !result.archive.members.front().feasible();
  return result;
}

}  // namespace mobnb
