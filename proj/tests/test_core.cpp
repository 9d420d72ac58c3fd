#include <doctest.h>

#include <algorithm>
#include <random>

#include "mobnb/core.hpp"
#include "support.hpp"

using namespace mobnb;
using Points = std::vector<ObjectiveVector>;

TEST_CASE("dominates") {
  CHECK(dominates(ObjectiveVector{1, 2}, ObjectiveVector{2, 3}));
  CHECK_FALSE(dominates(ObjectiveVector{1, 2}, ObjectiveVector{1, 2}));
  CHECK_FALSE(dominates(ObjectiveVector{1, 3}, ObjectiveVector{3, 1}));
  CHECK(dominates(ObjectiveVector{1, 2}, ObjectiveVector{1, 3}));
  CHECK_THROWS_AS((void)dominates(ObjectiveVector{1}, ObjectiveVector{1, 2}), UsageError);
}

TEST_CASE("constrained dominance") {
  const Solution feasible{{}, {5, 5}, 0.0};
  const Solution violated3{{}, {0, 0}, 3.0};
  const Solution violated2{{}, {9, 9}, 2.0};
  const Solution violated5{{}, {0, 0}, 5.0};
  CHECK(constrained_dominates(feasible, violated3));
  CHECK_FALSE(constrained_dominates(violated3, feasible));
  CHECK(constrained_dominates(violated2, violated5));
  CHECK_FALSE(constrained_dominates(violated5, violated2));
  CHECK_FALSE(constrained_dominates(Solution{{}, {1, 2}, 0.0}, Solution{{}, {0, 3}, 0.0}));
}

TEST_CASE("aggregate violation") {
  CHECK(aggregate_violation(std::vector<double>{1.0, 0.0}) == 0.0);
  CHECK(aggregate_violation(std::vector<double>{-1.5, 2.0, -0.5}) == 2.0);
  CHECK(aggregate_violation(std::vector<double>{}, std::vector<double>{-0.25, 0.5}) == 0.75);
}

TEST_CASE("pareto filter examples") {
  CHECK(pareto_filter(Points{{1, 2}, {2, 1}, {2, 2}}) == Points{{1, 2}, {2, 1}});
  CHECK(pareto_filter(Points{}).empty());
  CHECK(pareto_filter(Points{{1, 1}, {1, 1}, {0, 5}}) == Points{{1, 1}, {0, 5}});
}

TEST_CASE("pareto filter matches brute force on random sets") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto pts = testing::random_points(rng, 100);
    const auto expected = testing::brute_nondominated(pts);
    CHECK(nondominated_indices(pts) == expected);
  }
}

TEST_CASE("pareto filter with three objectives matches brute force") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coord(0, 6);
  for (int trial = 0; trial < 50; ++trial) {
    Points pts(60);
    for (auto& p : pts) p = {double(coord(rng)), double(coord(rng)), double(coord(rng))};
    CHECK(nondominated_indices(pts) == testing::brute_nondominated(pts));
  }
}

TEST_CASE("feasible points always beat infeasible ones") {
  const Points objs{{0, 0}, {5, 5}, {6, 4}, {-1, -1}};
  const std::vector<double> viol{1.0, 0.0, 0.0, 2.0};
  CHECK(nondominated_indices(objs, viol) == std::vector<std::size_t>{1, 2});
  // No feasible point: the least violated survive, duplicates collapse.
  const Points objs2{{3, 3}, {1, 1}, {2, 0}, {3, 3}};
  const std::vector<double> viol2{0.5, 0.7, 0.5, 0.5};
  CHECK(nondominated_indices(objs2, viol2) == std::vector<std::size_t>{0, 2});
}

TEST_CASE("ideal point") {
  CHECK(ideal_point(Points{{1, 3}, {2, 1}}) == ObjectiveVector{1, 1});
  CHECK(ideal_point(Points{{5, 5}}) == ObjectiveVector{5, 5});
  CHECK_THROWS_AS((void)ideal_point(Points{}), UsageError);
}

TEST_CASE("ideal point of the whole gear domain by exhaustive scan") {
  // Independent scan: smallest squared ratio error and smallest largest tooth.
  const double target = 1.0 / 6.931;
  double best_f1 = 1e300;
  double best_f2 = 1e300;
  Points all;
  for (int a = 12; a <= 60; ++a) {
    for (int b = 12; b <= 60; ++b) {
      for (int c = 12; c <= 60; ++c) {
        for (int d = 12; d <= 60; ++d) {
          const double e = target - double(a) * b / (double(c) * d);
          best_f1 = std::min(best_f1, e * e);
          best_f2 = std::min(best_f2, double(std::max({a, b, c, d})));
        }
      }
    }
  }
  CHECK(best_f2 == 12.0);
  CHECK(best_f1 < 1e-11);
  // Sampled subset through ideal_point agrees with its own brute minimum.
  for (int a = 12; a <= 60; a += 7) {
    for (int d = 12; d <= 60; d += 5) {
      const double e = target - double(a) * 12 / (double(20) * d);
      all.push_back({e * e, double(std::max({a, 20, d}))});
    }
  }
  const auto ideal = ideal_point(all);
  double m1 = 1e300, m2 = 1e300;
  for (const auto& p : all) {
    m1 = std::min(m1, p[0]);
    m2 = std::min(m2, p[1]);
  }
  CHECK(ideal == ObjectiveVector{m1, m2});
}

TEST_CASE("archive merge") {
  auto sol = [](double a, double b) { return Solution{{}, {a, b}, 0.0}; };
  ParetoArchive archive;
  archive.members = {sol(1, 2)};
  archive.evaluation_count = 10;
  const std::vector<Solution> incoming{sol(0, 3), sol(2, 2)};
  const auto merged = archive_merge(archive, incoming, 5);
  REQUIRE(merged.size() == 2);
  CHECK(merged.members[0].objectives == ObjectiveVector{1, 2});
  CHECK(merged.members[1].objectives == ObjectiveVector{0, 3});
  CHECK(merged.evaluation_count == 15);

  const auto from_empty = archive_merge({}, std::vector<Solution>{sol(4, 4)});
  REQUIRE(from_empty.size() == 1);
  CHECK(from_empty.members[0].objectives == ObjectiveVector{4, 4});
}

TEST_CASE("archive merge equals the filter of the union") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const auto a = testing::random_points(rng, 40);
    const auto b = testing::random_points(rng, 40);
    ParetoArchive archive;
    for (std::size_t i : testing::brute_nondominated(a)) archive.members.push_back({{}, a[i], 0.0});
    std::vector<Solution> incoming;
    for (const auto& p : b) incoming.push_back({{}, p, 0.0});
    const auto merged = archive_merge(archive, incoming);

    Points u;
    for (const auto& s : archive.members) u.push_back(s.objectives);
    u.insert(u.end(), b.begin(), b.end());
    Points expected;
    for (std::size_t i : testing::brute_nondominated(u)) expected.push_back(u[i]);
    Points got;
    for (const auto& s : merged.members) got.push_back(s.objectives);
    CHECK(got == expected);
  }
}
