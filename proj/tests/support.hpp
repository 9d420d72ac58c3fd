#pragma once

// Brute-force oracles and random data shared by the tests.

#include <cmath>
#include <random>
#include <vector>

#include "mobnb/core.hpp"

namespace testing {

using mobnb::ObjectiveVector;

inline bool brute_dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  bool strict = false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] > b[k]) return false;
    if (a[k] < b[k]) strict = true;
  }
  return strict;
}

// O(n^2): keep the first copy of every vector no other point dominates.
inline std::vector<std::size_t> brute_nondominated(const std::vector<ObjectiveVector>& pts) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    bool keep = true;
    for (std::size_t j = 0; j < pts.size() && keep; ++j) {
      if (j == i) continue;
      if (brute_dominates(pts[j], pts[i]) || (j < i && pts[j] == pts[i])) keep = false;
    }
    if (keep) kept.push_back(i);
  }
  return kept;
}

// Points on a coarse integer lattice so ties and duplicates are common.
inline std::vector<ObjectiveVector> random_points(std::mt19937_64& rng, std::size_t n, int levels = 20) {
  std::uniform_int_distribution<int> coord(0, levels);
  std::vector<ObjectiveVector> pts(n);
  for (auto& p : pts) p = {static_cast<double>(coord(rng)), static_cast<double>(coord(rng))};
  return pts;
}

inline bool close_rel(double a, double b, double tol = 1e-12) {
  if (a == b) return true;
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace testing
