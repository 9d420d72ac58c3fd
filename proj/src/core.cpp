#include "mobnb/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace mobnb {

bool dominates(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw UsageError("dominates: objective vectors of different length");
  }
  bool strictly_better = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
    if (a[i] < b[i]) strictly_better = true;
  }
  return strictly_better;
}

bool constrained_dominates(const Solution& a, const Solution& b) {
  const bool fa = a.feasible();
  const bool fb = b.feasible();
  if (fa && !fb) return true;
  if (!fa && fb) return false;
  if (!fa) return a.constraint_violation < b.constraint_violation;
  return dominates(a.objectives, b.objectives);
}

double aggregate_violation(std::span<const double> inequality, std::span<const double> equality) {
  double total = 0.0;
  for (double c : inequality) total += std::max(0.0, -c);
  for (double c : equality) total += std::abs(c);
  return total;
}

namespace {

// Sort-and-sweep filter for two objectives.
std::vector<std::size_t> filter_bi_objective(std::span<const ObjectiveVector> objectives,
                                             std::vector<std::size_t> candidates) {
  std::sort(candidates.begin(), candidates.end(), [&](std::size_t i, std::size_t j) {
    const auto& a = objectives[i];
    const auto& b = objectives[j];
    if (a[0] != b[0]) return a[0] < b[0];
    if (a[1] != b[1]) return a[1] < b[1];
    return i < j;
  });
  std::vector<std::size_t> kept;
  double best_second = std::numeric_limits<double>::infinity();
  for (std::size_t i : candidates) {
    if (objectives[i][1] < best_second) {
      kept.push_back(i);
      best_second = objectives[i][1];
    }
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

std::vector<std::size_t> filter_pairwise(std::span<const ObjectiveVector> objectives,
                                         const std::vector<std::size_t>& candidates) {
  std::vector<std::size_t> kept;
  for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
    const auto& a = objectives[candidates[ci]];
    bool survives = true;
    for (std::size_t cj = 0; cj < candidates.size() && survives; ++cj) {
      if (ci == cj) continue;
      const auto& b = objectives[candidates[cj]];
      if (dominates(b, a) || (cj < ci && a == b)) survives = false;
    }
    if (survives) kept.push_back(candidates[ci]);
  }
  return kept;
}

// Identical vectors among equally infeasible points collapse to the first.
std::vector<std::size_t> dedup(std::span<const ObjectiveVector> objectives,
                               std::vector<std::size_t> candidates) {
  std::vector<std::size_t> order = candidates;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return objectives[i] < objectives[j]; });
  std::vector<std::size_t> kept;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k == 0 || objectives[order[k]] != objectives[order[k - 1]]) kept.push_back(order[k]);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

}  // namespace

std::vector<std::size_t> nondominated_indices(std::span<const ObjectiveVector> objectives,
                                              std::span<const double> violations) {
  const std::size_t n = objectives.size();
  if (!violations.empty() && violations.size() != n) {
    throw UsageError("nondominated_indices: violation count differs from point count");
  }
  if (n == 0) return {};
  const std::size_t p = objectives.front().size();
  for (const auto& v : objectives) {
    if (v.size() != p) throw UsageError("nondominated_indices: mixed objective counts");
  }

  std::vector<std::size_t> candidates;
  candidates.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (violations.empty() || violations[i] == 0.0) candidates.push_back(i);
  }
  if (candidates.empty()) {
    // Nothing feasible: only the least-violation points survive, and they
    // are mutually non-dominated whatever their objectives.
    const double least = *std::min_element(violations.begin(), violations.end());
    for (std::size_t i = 0; i < n; ++i) {
      if (violations[i] == least) candidates.push_back(i);
    }
    return dedup(objectives, std::move(candidates));
  }
  if (p == 2) return filter_bi_objective(objectives, std::move(candidates));
  return filter_pairwise(objectives, candidates);
}

std::vector<Solution> pareto_filter(std::span<const Solution> points) {
  std::vector<ObjectiveVector> objectives;
  std::vector<double> violations;
  objectives.reserve(points.size());
  violations.reserve(points.size());
  for (const auto& s : points) {
    objectives.push_back(s.objectives);
    violations.push_back(s.constraint_violation);
  }
  std::vector<Solution> out;
  for (std::size_t i : nondominated_indices(objectives, violations)) out.push_back(points[i]);
  return out;
}

std::vector<ObjectiveVector> pareto_filter(std::span<const ObjectiveVector> points) {
  std::vector<ObjectiveVector> out;
  for (std::size_t i : nondominated_indices(points)) out.push_back(points[i]);
  return out;
}

ObjectiveVector ideal_point(std::span<const ObjectiveVector> points) {
  if (points.empty()) throw UsageError("ideal_point: empty point set");
  ObjectiveVector ideal = points.front();
  for (const auto& v : points) {
    if (v.size() != ideal.size()) throw UsageError("ideal_point: mixed objective counts");
    for (std::size_t k = 0; k < v.size(); ++k) ideal[k] = std::min(ideal[k], v[k]);
  }
  return ideal;
}

ObjectiveVector ideal_point(std::span<const Solution> points) {
  std::vector<ObjectiveVector> objectives;
  objectives.reserve(points.size());
  for (const auto& s : points) objectives.push_back(s.objectives);
  return ideal_point(objectives);
}

ParetoArchive archive_merge(ParetoArchive archive, std::span<const Solution> incoming,
                            std::uint64_t incoming_evaluations) {
  std::vector<Solution> all = std::move(archive.members);
  all.insert(all.end(), incoming.begin(), incoming.end());
  ParetoArchive merged;
  merged.members = pareto_filter(all);
  merged.evaluation_count = archive.evaluation_count + incoming_evaluations;
  merged.infeasible = !merged.members.empty() && !merged.members.front().feasible();
  return merged;
}

}  // namespace mobnb
