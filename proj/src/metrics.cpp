#include "mobnb/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace mobnb {

Front front_of(const ParetoArchive& archive, FrontSource source) {
  Front f;
  f.source = source;
  f.points.reserve(archive.size());
  for (const auto& m : archive.members) f.points.push_back(m.objectives);
  return f;
}

namespace {

double distance(const ObjectiveVector& a, const ObjectiveVector& b) {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(sum);
}

// Nearest-point queries against a fixed set. Two-objective sets are sorted
// on f1 so each query scans outward only while the f1 gap can still win.
class NearestIndex {
 public:
  explicit NearestIndex(const std::vector<ObjectiveVector>& points) : points_(points) {
    bi_ = !points_.empty() && points_.front().size() == 2;
    if (bi_) std::sort(points_.begin(), points_.end());
  }

  [[nodiscard]] double distance_to(const ObjectiveVector& q) const {
    double best = std::numeric_limits<double>::infinity();
    if (!bi_) {
      for (const auto& p : points_) best = std::min(best, distance(p, q));
      return best;
    }
    const auto mid = std::lower_bound(points_.begin(), points_.end(), q[0],
                                      [](const ObjectiveVector& p, double v) { return p[0] < v; });
    for (auto it = mid; it != points_.end(); ++it) {
      if ((*it)[0] - q[0] > best) break;
      best = std::min(best, distance(*it, q));
    }
    for (auto it = mid; it != points_.begin();) {
      --it;
      if (q[0] - (*it)[0] > best) break;
      best = std::min(best, distance(*it, q));
    }
    return best;
  }

 private:
  std::vector<ObjectiveVector> points_;
  bool bi_ = false;
};

double generational_distance(const std::vector<ObjectiveVector>& from, const std::vector<ObjectiveVector>& to,
                             double snap) {
  const NearestIndex index(to);
  double sum = 0.0;
  for (const auto& s : from) {
    const double d = index.distance_to(s);
    if (d > snap) sum += d * d;
  }
  return std::sqrt(sum) / static_cast<double>(from.size());
}

std::vector<ObjectiveVector> sorted_by_first(std::vector<ObjectiveVector> points) {
  std::sort(points.begin(), points.end());
  return points;
}

double ratio_or_limit(double num, double den) {
  if (den == 0.0) return num == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return num / den;
}

}  // namespace

std::size_t onvg(const Front& s) { return s.size(); }

double purity(const Front& s, const Front& p) {
  if (s.empty()) throw UsageError("purity: empty approximation front");
  std::vector<ObjectiveVector> joint = s.points;
  joint.insert(joint.end(), p.points.begin(), p.points.end());
  auto filtered = pareto_filter(joint);
  std::sort(filtered.begin(), filtered.end());
  const auto surviving = std::count_if(s.points.begin(), s.points.end(), [&](const ObjectiveVector& v) {
    return std::binary_search(filtered.begin(), filtered.end(), v);
  });
  return static_cast<double>(surviving) / static_cast<double>(s.size());
}

double gd(const Front& s, const Front& p, double snap) {
  if (s.empty() || p.empty()) throw UsageError("gd: empty front");
  return generational_distance(s.points, p.points, snap);
}

double igd(const Front& s, const Front& p, double snap) {
  if (s.empty() || p.empty()) throw UsageError("igd: empty front");
  return generational_distance(p.points, s.points, snap);
}

double spread(const Front& s, const Front& p) {
  if (s.size() < 2) throw UsageError("spread: needs at least two approximation points");
  if (p.empty()) throw UsageError("spread: empty reference front");
  const auto approx = sorted_by_first(s.points);
  const auto& p_first = *std::min_element(p.points.begin(), p.points.end());
  const auto& p_last = *std::max_element(p.points.begin(), p.points.end());
  const double d_first = distance(approx.front(), p_first);
  const double d_last = distance(approx.back(), p_last);

  std::vector<double> gaps(approx.size() - 1);
  for (std::size_t i = 0; i + 1 < approx.size(); ++i) gaps[i] = distance(approx[i], approx[i + 1]);
  double mean = 0.0;
  for (double g : gaps) mean += g;
  mean /= static_cast<double>(gaps.size());
  double deviation = 0.0;
  for (double g : gaps) deviation += std::abs(g - mean);

  const double denominator = d_first + d_last + static_cast<double>(gaps.size()) * mean;
  if (denominator == 0.0) return 0.0;  // every point coincides with both extremes
  return (d_first + d_last + deviation) / denominator;
}

double relative_spread(const Front& s, const Front& p) { return std::abs(spread(p, p) - spread(s, p)); }

double investment_ratio(double q, double c) {
  if (!(c > 0.0)) throw UsageError("investment_ratio: cost ratio must be positive");
  if (!(q >= 0.0)) throw UsageError("investment_ratio: quality ratio must be non-negative");
  if (std::isinf(q)) return std::numeric_limits<double>::infinity();
  if (q >= 1.0) return q / c;
  if (q == 0.0) return -std::numeric_limits<double>::infinity();
  return -c / q;
}

double quality_ratio(double gd_a, double spread_a, double gd_b, double spread_b) {
  for (double v : {gd_a, spread_a, gd_b, spread_b}) {
    if (!(v >= 0.0)) throw UsageError("quality_ratio: inputs must be non-negative");
  }
  const double gd_ratio = ratio_or_limit(gd_a, gd_b);
  const double spread_ratio = ratio_or_limit(spread_a, spread_b);
  // An infinite gain in one indicator against a total loss in the other
  // carries no information either way.
  if ((std::isinf(gd_ratio) && spread_ratio == 0.0) || (std::isinf(spread_ratio) && gd_ratio == 0.0)) return 1.0;
  return std::sqrt(gd_ratio * spread_ratio);
}

MetricsReport compute_metrics(const Front& s, const Front& p, std::uint64_t evaluations, double snap) {
  MetricsReport r;
  r.onvg = onvg(s);
  r.purity = purity(s, p);
  r.gd = gd(s, p, snap);
  r.igd = igd(s, p, snap);
  r.spread = spread(s, p);
  r.relative_spread = relative_spread(s, p);
  r.evaluations = evaluations;
  return r;
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

void write_front_csv(const std::filesystem::path& path, const Front& front) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write front to " + path.string());
  out << "f1,f2\n";
  for (const auto& v : front.points) {
    if (v.size() != 2) throw UsageError("write_front_csv: only two-objective fronts are supported");
    out << format_double(v[0]) << ',' << format_double(v[1]) << '\n';
  }
  if (!out) throw std::runtime_error("I/O error writing " + path.string());
}

Front read_front_csv(const std::filesystem::path& path, FrontSource source) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read front from " + path.string());
  auto trim = [](std::string s) {
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.pop_back();
    return s;
  };
  std::string line;
  if (!std::getline(in, line) || trim(line) != "f1,f2") {
    throw std::runtime_error(path.string() + ": expected header 'f1,f2'");
  }
  Front front;
  front.source = source;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    const auto comma = line.find(',');
    double a = 0.0;
    double b = 0.0;
    const char* end = line.data() + line.size();
    const bool ok = comma != std::string::npos &&
                    std::from_chars(line.data(), line.data() + comma, a).ec == std::errc{} &&
                    std::from_chars(line.data() + comma + 1, end, b).ec == std::errc{};
    if (!ok) throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": malformed row");
    front.points.push_back({a, b});
  }
  return front;
}

std::string to_json(const MetricsReport& r) {
  nlohmann::json j{{"onvg", r.onvg},
                   {"purity", r.purity},
                   {"gd", r.gd},
                   {"igd", r.igd},
                   {"spread", r.spread},
                   {"relative_spread", r.relative_spread},
                   {"evaluations", r.evaluations}};
  return j.dump(2);
}

}  // namespace mobnb
