#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <random>

#include "mobnb/metrics.hpp"
#include "support.hpp"

using namespace mobnb;
using testing::close_rel;

namespace {

Front F(std::vector<ObjectiveVector> pts) { return {std::move(pts), FrontSource::approximate}; }

const double inf = std::numeric_limits<double>::infinity();

}  // namespace

TEST_CASE("onvg") {
  std::vector<ObjectiveVector> pts;
  for (int i = 0; i < 28; ++i) pts.push_back({double(i), double(28 - i)});
  CHECK(onvg(F(pts)) == 28);
  CHECK(onvg(F({})) == 0);
  CHECK(onvg(F({{1, 2}, {2, 1}, {0, 3}})) == 3);
  CHECK(onvg(F({{5, 5}})) == 1);
  CHECK(onvg(F({{0, 1}, {1, 0}})) == 2);
}

TEST_CASE("purity") {
  CHECK(purity(F({{1, 2}, {2, 1}}), F({{1, 2}, {2, 1}})) == 1.0);
  CHECK(purity(F({{3, 3}}), F({{1, 1}})) == 0.0);
  CHECK(purity(F({{1, 2}, {5, 5}}), F({{2, 1}})) == 0.5);
  CHECK(purity(F({{0, 0}}), F({{1, 1}})) == 1.0);
  CHECK(close_rel(purity(F({{1, 3}, {2, 2}, {4, 4}}), F({{1, 3}, {3, 1}})), 2.0 / 3.0));
  CHECK_THROWS_AS((void)purity(F({}), F({{1, 1}})), UsageError);
}

TEST_CASE("generational distance") {
  CHECK(gd(F({{0, 1}, {1, 0}}), F({{0, 1}, {0.5, 0.5}, {1, 0}})) == 0.0);
  CHECK(close_rel(gd(F({{1, 1}}), F({{0, 0}})), std::sqrt(2.0)));
  CHECK(close_rel(gd(F({{0, 1}, {1, 0}}), F({{0, 0}})), std::sqrt(2.0) / 2.0));
  // Nearest of two: (3,0) is 1 from (2,0), (0,2) is 0 from itself.
  CHECK(close_rel(gd(F({{3, 0}, {0, 2}}), F({{0, 2}, {2, 0}})), 0.5));
  CHECK(close_rel(gd(F({{0, 3}, {4, 0}}), F({{0, 0}})), 5.0 / 2.0));
  // Snapping: 5e-5 counts as zero, 2e-4 does not.
  CHECK(gd(F({{0, 5e-5}}), F({{0, 0}})) == 0.0);
  CHECK(close_rel(gd(F({{0, 2e-4}}), F({{0, 0}})), 2e-4));
  CHECK(close_rel(gd(F({{0, 5e-5}}), F({{0, 0}}), 0.0), 5e-5));
  CHECK_THROWS_AS((void)gd(F({}), F({{0, 0}})), UsageError);
}

TEST_CASE("inverted generational distance") {
  CHECK(igd(F({{0, 1}, {1, 0}}), F({{0, 1}, {1, 0}})) == 0.0);
  CHECK(close_rel(igd(F({{0, 0}}), F({{0, 1}, {1, 0}})), std::sqrt(2.0) / 2.0));
  CHECK(close_rel(igd(F({{0, 0}}), F({{1, 1}})), std::sqrt(2.0)));
  CHECK(close_rel(igd(F({{0, 2}, {2, 0}}), F({{0, 2}, {1, 1}, {2, 0}})), std::sqrt(2.0) / 3.0));
  CHECK(close_rel(igd(F({{0, 0}, {10, 10}}), F({{3, 4}})), 5.0));
  CHECK_THROWS_AS((void)igd(F({{0, 0}}), F({})), UsageError);
}

TEST_CASE("spread") {
  const auto p = F({{0, 2}, {2, 0}});
  CHECK(spread(F({{0, 2}, {1, 1}, {2, 0}}), p) == 0.0);
  CHECK(spread(F({{2, 0}, {0, 2}, {1, 1}}), p) == 0.0);
  CHECK(spread(F({{0, 2}, {2, 0}}), p) == 0.0);
  // Gaps 1 and 2 along a line: mean 1.5, deviation 1, no extreme offset.
  const auto line = F({{0, 3}, {1, 2}, {3, 0}});
  CHECK(close_rel(spread(line, F({{0, 3}, {3, 0}})), 1.0 / 3.0));
  // Doubling one gap strictly increases the spread.
  const auto even = F({{0, 4}, {1, 3}, {2, 2}, {3, 1}, {4, 0}});
  const auto doubled = F({{0, 4}, {2, 2}, {3, 1}, {4, 0}});
  const auto ref = F({{0, 4}, {4, 0}});
  CHECK(spread(even, ref) == 0.0);
  CHECK(close_rel(spread(doubled, ref), 1.0 / 3.0));
  // Extreme offsets sqrt 2 and sqrt 2 / 2 around a single gap of sqrt 2 / 2.
  const double r2 = std::sqrt(2.0);
  CHECK(close_rel(spread(F({{1, 1}, {1.5, 0.5}}), p), (r2 + r2 / 2.0) / (r2 + r2 / 2.0 + r2 / 2.0)));
  CHECK_THROWS_AS((void)spread(F({{1, 1}}), p), UsageError);
}

TEST_CASE("relative spread") {
  const auto p = F({{0, 3}, {1, 2}, {3, 0}});
  CHECK(relative_spread(p, p) == 0.0);
  const auto s = F({{0, 3}, {1.5, 1.5}, {3, 0}});
  // spread(P, P) = 1/3, spread(S, P) = 0.
  CHECK(close_rel(relative_spread(s, p), 1.0 / 3.0));
  // Swapping the roles of the two spread values gives the same magnitude.
  const auto q = F({{0, 3}, {1.5, 1.5}, {3, 0}});
  const auto t = F({{0, 3}, {1, 2}, {3, 0}});
  CHECK(close_rel(relative_spread(t, q), 1.0 / 3.0));
  CHECK(relative_spread(F({{0, 3}, {3, 0}}), F({{0, 3}, {3, 0}})) == 0.0);
  CHECK(close_rel(relative_spread(F({{0, 3}, {1, 2}, {3, 0}}), F({{0, 3}, {1.5, 1.5}, {3, 0}})), 1.0 / 3.0));
}

TEST_CASE("investment ratio") {
  CHECK(investment_ratio(2.0, 1.0) == 2.0);
  CHECK(investment_ratio(0.5, 0.5) == -1.0);
  CHECK(investment_ratio(0.8, 2.0) == -2.5);
  CHECK(investment_ratio(inf, 0.3) == inf);
  CHECK(investment_ratio(1.0, 4.0) == 0.25);
  CHECK(investment_ratio(0.0, 1.0) == -inf);
  CHECK_THROWS_AS((void)investment_ratio(1.0, 0.0), UsageError);
  CHECK_THROWS_AS((void)investment_ratio(-1.0, 1.0), UsageError);
}

TEST_CASE("quality ratio") {
  CHECK(quality_ratio(0.3, 0.2, 0.3, 0.2) == 1.0);
  CHECK(quality_ratio(4.0, 1.0, 1.0, 1.0) == 2.0);
  CHECK(quality_ratio(1e-3, 0.1, 0.0, 0.05) == inf);
  CHECK(quality_ratio(0.0, 0.1, 0.0, 0.1) == 1.0);
  CHECK(quality_ratio(1.0, 0.0, 0.0, 2.0) == 1.0);
  CHECK_THROWS_AS((void)quality_ratio(-1.0, 1.0, 1.0, 1.0), UsageError);
}

TEST_CASE("scaling objectives scales distances only") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = testing::random_points(rng, 15, 100);
    auto p = testing::random_points(rng, 30, 100);
    const double lambda = 3.5;
    auto scaled = [&](std::vector<ObjectiveVector> v) {
      for (auto& x : v)
        for (auto& c : x) c *= lambda;
      return F(std::move(v));
    };
    CHECK(close_rel(gd(scaled(s), scaled(p), 0.0), lambda * gd(F(s), F(p), 0.0), 1e-10));
    CHECK(close_rel(igd(scaled(s), scaled(p), 0.0), lambda * igd(F(s), F(p), 0.0), 1e-10));
    CHECK(purity(scaled(s), scaled(p)) == purity(F(s), F(p)));
    CHECK(close_rel(spread(scaled(s), scaled(p)), spread(F(s), F(p)), 1e-10));
  }
}

TEST_CASE("metrics report and JSON") {
  const auto s = F({{0, 1}, {1, 0}});
  const auto r = compute_metrics(s, s, 1234);
  CHECK(r.onvg == 2);
  CHECK(r.purity == 1.0);
  CHECK(r.gd == 0.0);
  CHECK(r.evaluations == 1234);
  CHECK(to_json(r).find("\"evaluations\"") != std::string::npos);
}

TEST_CASE("front CSV round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "mobnb_metrics_test";
  std::filesystem::create_directories(dir);
  const Front f = F({{0.1, 1.0 / 3.0}, {1e-300, -2.5e10}, {std::nextafter(1.0, 2.0), 0.0}});
  write_front_csv(dir / "f.csv", f);
  const auto back = read_front_csv(dir / "f.csv", FrontSource::reference);
  CHECK(back.points == f.points);
  CHECK(back.source == FrontSource::reference);
  CHECK(format_double(0.1) == "0.1");
  std::filesystem::remove_all(dir);
}
