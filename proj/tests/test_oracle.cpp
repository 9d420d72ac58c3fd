#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>

#include "mobnb/metrics.hpp"
#include "mobnb/oracle.hpp"
#include "support.hpp"

using namespace mobnb;

namespace {

double dist(const ObjectiveVector& a, const ObjectiveVector& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

double nearest(const std::vector<ObjectiveVector>& set, const ObjectiveVector& q) {
  double best = INFINITY;
  for (const auto& p : set) best = std::min(best, dist(p, q));
  return best;
}

bool weakly_dominated_by_some(const ObjectiveVector& v, const std::vector<ObjectiveVector>& set) {
  return std::any_of(set.begin(), set.end(), [&](const ObjectiveVector& p) { return p[0] <= v[0] && p[1] <= v[1]; });
}

// f1 = x, f2 = (1 - x)^2 on [0, 1]: every point is Pareto optimal.
ProblemSpec parabola() {
  return {"parabola", {VariableDomain::continuous(0, 1)}, {}, 2, 0, 0, ParetoType::continuous,
          [](std::span<const double> x, std::span<const double>, RawEvaluation& out) {
            out.objectives[0] = x[0];
            out.objectives[1] = (1 - x[0]) * (1 - x[0]);
          }};
}

OracleConfig coarse(std::size_t grid) {
  OracleConfig c;
  c.continuous_grid_points = grid;
  c.refine_points = 0;
  c.resample = false;
  return c;
}

}  // namespace

TEST_CASE("gear front by full enumeration") {
  OracleConfig cfg;
  cfg.workers = 2;
  const auto r = enumerate_true_front(make_gear(), cfg);
  CHECK(r.evaluations == 5764801);
  CHECK(r.front.size() == 28);
  CHECK(r.solutions.size() == 28);
  CHECK(r.continuous_pitch.empty());
  for (const auto& s : r.solutions) CHECK(make_gear().evaluate(s.vars).objectives == s.objectives);
  // The front is mutually non-dominated and identical to the full pipeline.
  const std::vector<ObjectiveVector> pts = r.front.points;
  CHECK(testing::brute_nondominated(pts).size() == pts.size());
  CHECK(reference_front(make_gear(), cfg).front.points == r.front.points);
}

TEST_CASE("worker count does not change the result") {
  auto cfg = coarse(21);
  cfg.workers = 1;
  const auto one = enumerate_true_front(make_mela(), cfg);
  cfg.workers = 3;
  const auto three = enumerate_true_front(make_mela(), cfg);
  CHECK(one.front.points == three.front.points);
  CHECK(one.contributing_combinations == three.contributing_combinations);
}

TEST_CASE("single-point domain") {
  const ProblemSpec point("point", {}, {VariableDomain::integer(3, 3), VariableDomain::binary()}, 2, 0, 0,
                          ParetoType::discrete, [](std::span<const double>, std::span<const double> y, RawEvaluation& out) {
                            out.objectives[0] = y[0] + y[1];
                            out.objectives[1] = y[0] - y[1];
                          });
  const auto r = reference_front(restrict_integers(point, IntegerBox{{3, 1}, {3, 1}}), OracleConfig{});
  REQUIRE(r.front.size() == 1);
  CHECK(r.front.points[0] == ObjectiveVector{4, 2});
  CHECK(r.evaluations == 1);
}

TEST_CASE("capacity limit") {
  auto cfg = coarse(401);
  cfg.max_enumeration = 1000;
  try {
    (void)enumerate_true_front(make_mela(), cfg);
    FAIL("expected a capacity error");
  } catch (const CapacityError& e) {
    CHECK(e.required() == 256ULL * 401 * 401);
  }
  CHECK_THROWS_AS((void)lattice_size(make_mela(), cfg), CapacityError);
  cfg.max_enumeration = 256ULL * 401 * 401;
  CHECK(lattice_size(make_mela(), cfg) == 256ULL * 401 * 401);
}

TEST_CASE("refinement is the identity without continuous variables") {
  const auto problem = restrict_integers(make_gear(), IntegerBox{{12, 12, 12, 12}, {20, 20, 20, 20}});
  const auto base = enumerate_true_front(problem, coarse(2));
  const auto refined = refine_continuous_sections(base, problem, OracleConfig{});
  CHECK(refined.front.points == base.front.points);
  CHECK(refined.evaluations == base.evaluations);
}

TEST_CASE("refinement keeps exactly optimal points") {
  const auto base = enumerate_true_front(parabola(), coarse(11));
  REQUIRE(base.front.size() == 11);
  const auto refined = refine_continuous_sections(base, parabola(), OracleConfig{});
  CHECK(refined.front.size() > base.front.size());
  // A coarse optimum survives, or is replaced by a neighbour within rounding
  // that weakly dominates it.
  for (const auto& p : base.front.points) {
    CHECK(std::any_of(refined.front.points.begin(), refined.front.points.end(), [&](const ObjectiveVector& q) {
      return q[0] <= p[0] && q[1] <= p[1] && dist(p, q) <= 1e-12;
    }));
  }
  REQUIRE(refined.continuous_pitch.size() == 1);
  CHECK(refined.continuous_pitch[0] < base.continuous_pitch[0]);
}

TEST_CASE("refined tong front weakly dominates the coarse one") {
  const auto tong = make_tong();
  const auto base = enumerate_true_front(tong, coarse(11));
  REQUIRE_FALSE(base.front.empty());
  const auto refined = refine_continuous_sections(base, tong, OracleConfig{});
  for (const auto& p : base.front.points) CHECK(weakly_dominated_by_some(p, refined.front.points));
  for (const auto& s : refined.solutions) CHECK(tong.evaluate(s.vars).violation == 0.0);
}

TEST_CASE("finer grids never lose ground") {
  const auto mela = make_mela();
  const auto c = enumerate_true_front(mela, coarse(11)).front;
  const auto f = enumerate_true_front(mela, coarse(21)).front;
  for (const auto& p : c.points) CHECK(weakly_dominated_by_some(p, f.points));
}

TEST_CASE("straight line resampling") {
  std::vector<ObjectiveVector> line;
  for (int i = 0; i <= 10; ++i) line.push_back({i / 10.0, 1.0 - i / 10.0});
  const double eps = 0.01;
  const auto r = uniform_resample(Front{line, FrontSource::reference}, eps);
  const double length = std::sqrt(2.0);
  const auto expected = static_cast<std::size_t>(std::ceil(length / eps)) + 1;
  REQUIRE(r.size() == expected);
  const double step = length / static_cast<double>(expected - 1);
  for (std::size_t i = 0; i + 1 < r.size(); ++i) CHECK(dist(r.points[i], r.points[i + 1]) == doctest::Approx(step).epsilon(1e-9));
  CHECK(r.points.front() == line.front());
  CHECK(r.points.back() == line.back());
}

TEST_CASE("resampling evens out a curved front") {
  // Quarter circle sampled densely near one end.
  std::vector<ObjectiveVector> arc;
  for (int i = 0; i <= 40; ++i) {
    const double t = std::pow(i / 40.0, 2.0) * M_PI / 2.0;
    arc.push_back({1.0 - std::cos(t), 1.0 - std::sin(t)});
  }
  std::sort(arc.begin(), arc.end());
  const Front before{arc, FrontSource::reference};
  const auto after = uniform_resample(before, 1e-3);
  CHECK(spread(after, after) <= spread(before, before));
  for (const auto& p : after.points) CHECK(nearest(arc, p) < 0.05);

  const auto twice = uniform_resample(after, 1e-3);
  for (const auto& p : twice.points) CHECK(nearest(after.points, p) <= 1e-3 / 100.0);
}

TEST_CASE("resampling passes short and degenerate sections through") {
  std::vector<std::string> warnings;
  const Front tiny{{{0, 1}, {1, 0}}, FrontSource::reference};
  CHECK(uniform_resample(tiny, 1e-3, &warnings).points == tiny.points);
  // Two sections separated by a wide gap keep the gap.
  std::vector<ObjectiveVector> two;
  for (int i = 0; i <= 10; ++i) two.push_back({i * 0.01, 10.0 - i * 0.01});
  for (int i = 0; i <= 10; ++i) two.push_back({5.0 + i * 0.01, 1.0 - i * 0.01});
  const auto r = uniform_resample(Front{two, FrontSource::reference}, 1e-3);
  bool gap = false;
  for (std::size_t i = 0; i + 1 < r.size(); ++i) gap = gap || (r.points[i + 1][0] - r.points[i][0] > 4.0);
  CHECK(gap);
  CHECK(r.points.front() == two.front());
  CHECK(r.points.back() == two.back());
}

TEST_CASE("reference front of a continuous problem is resampled") {
  OracleConfig cfg;
  cfg.continuous_grid_points = 21;
  cfg.epsilon = 1e-2;
  const auto r = reference_front(parabola(), cfg);
  CHECK(r.solutions.empty());
  CHECK(r.front.size() > 100);
  for (std::size_t i = 0; i + 2 < r.front.size(); ++i) {
    CHECK(dist(r.front.points[i], r.front.points[i + 1]) ==
          doctest::Approx(dist(r.front.points[i + 1], r.front.points[i + 2])).epsilon(1e-3));
  }
}

TEST_CASE("cache files") {
  const auto dir = std::filesystem::temp_directory_path() / "mobnb_oracle_cache_test";
  std::filesystem::remove_all(dir);
  OracleConfig a;
  a.continuous_grid_points = 11;
  OracleConfig b = a;
  b.continuous_grid_points = 12;
  CHECK(oracle_cache_path(dir, "mela", a) == oracle_cache_path(dir, "mela", a));
  CHECK(oracle_cache_path(dir, "mela", a) != oracle_cache_path(dir, "mela", b));
  CHECK(oracle_cache_path(dir, "mela", a) != oracle_cache_path(dir, "tong", a));
  OracleConfig w = a;
  w.workers = 4;
  CHECK(oracle_cache_path(dir, "mela", a) == oracle_cache_path(dir, "mela", w));

  const auto first = cached_reference_front(make_mela(), "mela", a, dir);
  CHECK(std::filesystem::exists(oracle_cache_path(dir, "mela", a)));
  const auto second = cached_reference_front(make_mela(), "mela", a, dir);
  CHECK(first.points == second.points);
  CHECK(first.points == reference_front(make_mela(), a).front.points);
  std::filesystem::remove_all(dir);
}

TEST_CASE("invalid configurations") {
  OracleConfig c;
  c.epsilon = 0;
  CHECK_THROWS_AS(c.validate(), UsageError);
  c = {};
  c.continuous_grid_points = 0;
  CHECK_THROWS_AS(c.validate(), UsageError);
  c = {};
  c.max_enumeration = 0;
  CHECK_THROWS_AS(c.validate(), UsageError);
}
