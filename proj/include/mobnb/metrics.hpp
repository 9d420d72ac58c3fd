#pragma once

// Front quality indicators: cardinality, purity, generational distances,
// spread, and the investment ratio relating quality gains to cost.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mobnb/core.hpp"

namespace mobnb {

enum class FrontSource { approximate, reference };

struct Front {
  std::vector<ObjectiveVector> points;
  FrontSource source = FrontSource::approximate;

  [[nodiscard]] std::size_t size() const noexcept { return points.size(); }
  [[nodiscard]] bool empty() const noexcept { return points.empty(); }
};

[[nodiscard]] Front front_of(const ParetoArchive& archive, FrontSource source = FrontSource::approximate);

/// Distances at or below this are treated as zero by gd/igd by default.
inline constexpr double kDefaultSnap = 1e-4;

struct MetricsReport {
  std::size_t onvg = 0;
  double purity = 0.0;
  double gd = 0.0;
  double igd = 0.0;
  double spread = 0.0;
  double relative_spread = 0.0;
  std::uint64_t evaluations = 0;
};

[[nodiscard]] std::size_t onvg(const Front& s);

/// |S ∩ F| / |S| where F is the non-dominated filter of S ∪ P.
[[nodiscard]] double purity(const Front& s, const Front& p);

/// sqrt(sum of squared nearest distances from S to P) / |S|. Distances
/// <= snap count as zero.
[[nodiscard]] double gd(const Front& s, const Front& p, double snap = kDefaultSnap);

/// As gd, measured from each point of P to S and divided by |P|.
[[nodiscard]] double igd(const Front& s, const Front& p, double snap = kDefaultSnap);

/// Spread of S against the extreme points of P (both ordered by f1).
[[nodiscard]] double spread(const Front& s, const Front& p);

/// |spread(P, P) - spread(S, P)|.
[[nodiscard]] double relative_spread(const Front& s, const Front& p);

/// q / c when q >= 1, -c / q otherwise; q = +inf gives +inf.
[[nodiscard]] double investment_ratio(double q, double c);

/// Geometric mean of the baseline/candidate ratios of GD and spread means.
/// a = baseline, b = candidate. x/0 is +inf for x > 0; 0/0 is 1.
[[nodiscard]] double quality_ratio(double gd_a, double spread_a, double gd_b, double spread_b);

[[nodiscard]] MetricsReport compute_metrics(const Front& s, const Front& p, std::uint64_t evaluations,
                                            double snap = kDefaultSnap);

/// 2-column CSV with an "f1,f2" header. Values are written in shortest
/// round-trip form.
void write_front_csv(const std::filesystem::path& path, const Front& front);
[[nodiscard]] Front read_front_csv(const std::filesystem::path& path, FrontSource source = FrontSource::approximate);

[[nodiscard]] std::string to_json(const MetricsReport& report);

/// Shortest decimal text that parses back to the same double.
[[nodiscard]] std::string format_double(double x);

}  // namespace mobnb
