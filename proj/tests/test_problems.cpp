#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "mobnb/problems.hpp"
#include "support.hpp"

using namespace mobnb;

TEST_CASE("gear at the lower corner") {
  const VariableVector z{{}, {12, 12, 12, 12}};
  const auto literal = make_gear(GearObjective::literal).evaluate(z);
  CHECK(literal.objectives[0] == doctest::Approx(-0.855721).epsilon(1e-6));
  CHECK(literal.objectives[0] == 1.0 / 6.931 - 1.0);
  CHECK(literal.objectives[1] == 12.0);
  CHECK(literal.violation == 0.0);

  const auto squared = make_gear().evaluate(z);
  CHECK(squared.objectives[0] == 0.7322578740113634);
  CHECK(squared.objectives[0] == (1.0 / 6.931 - 1.0) * (1.0 / 6.931 - 1.0));
  CHECK(squared.objectives[1] == 12.0);
}

TEST_CASE("mela at the origin") {
  const auto r = make_mela().evaluate({{0, 0}, std::vector<int>(8, 0)});
  CHECK(r.objectives == ObjectiveVector{0, 0});
  CHECK(r.violation == 0.0);
}

TEST_CASE("tong at the origin satisfies every constraint") {
  for (auto sign : {TongG2Sign::minus, TongG2Sign::plus}) {
    const auto r = make_tong(sign).evaluate({{0, 0, 0}, {0, 0, 0}});
    CHECK(r.objectives == ObjectiveVector{0, 0});
    CHECK(r.violation == 0.0);
  }
}

TEST_CASE("tong g2 sign switch") {
  // x3 = 5 moves g2 by 90 between the two readings: 45 <= 40 fails only with +9x3.
  const VariableVector v{{0, 0, 5}, {0, 0, 0}};
  RawEvaluation minus, plus;
  const std::vector<double> y{0, 0, 0};
  make_tong(TongG2Sign::minus).evaluate_values(v.continuous, y, minus);
  make_tong(TongG2Sign::plus).evaluate_values(v.continuous, y, plus);
  CHECK(minus.inequality[1] == 40.0 + 45.0);
  CHECK(plus.inequality[1] == 40.0 - 45.0);
}

TEST_CASE("truss at the upper bounds") {
  // Independent sums: volume and compliance terms of the nine members.
  const double r2 = std::sqrt(2.0);
  const double a[9] = {10, 10, 10, 15, 15, 15, 15, 15, 15};
  const double len[9] = {1, 1, 1, r2, 1, r2, 1, r2, 1};
  double volume = 0.0;
  for (int i = 0; i < 9; ++i) volume += len[i] * a[i];
  const double compliance = 4.0 / a[0] + 1.0 / a[1] + 1.0 / a[2] + 8.0 * r2 / a[3] + 4.0 / a[4] + 2.0 * r2 / a[5] +
                            4.0 / a[6] + 2.0 * r2 / a[7];
  const auto r = make_truss().evaluate({{10, 10, 10}, {3, 3, 3, 3, 3, 3}});
  CHECK(testing::close_rel(r.objectives[0], volume));
  CHECK(testing::close_rel(r.objectives[0], 75.0 + 45.0 * r2));
  CHECK(testing::close_rel(r.objectives[1], compliance));
  CHECK(testing::close_rel(r.objectives[1], 0.6 + (12.0 * r2 + 8.0) / 15.0));
  CHECK(r.violation == 0.0);
}

TEST_CASE("brake clearance constraint") {
  const auto brake = make_brake();
  RawEvaluation raw;
  const std::vector<double> x{110.0, 1000.0, 2.0};
  brake.evaluate_values(x, std::vector<double>{55.0}, raw);
  CHECK(raw.inequality[0] >= 0.0);
  const std::vector<double> close{80.0, 1000.0, 2.0};
  brake.evaluate_values(close, std::vector<double>{70.0}, raw);
  CHECK(raw.inequality[0] < 0.0);
  // ro == ri stays finite and counts as infeasible.
  const auto r = brake.evaluate({{75.0, 1000.0, 2.0}, {75}});
  CHECK(std::isfinite(r.objectives[1]));
  CHECK(r.violation > 0.0);
}

TEST_CASE("registry matches the problem table") {
  struct Row {
    const char* name;
    std::size_t vars, ints, constraints;
  };
  const Row rows[] = {{"gear", 4, 4, 0}, {"brake", 4, 1, 5}, {"truss", 9, 6, 0}, {"mela", 10, 8, 0}, {"tong", 6, 3, 9}};
  const auto reg = registry();
  REQUIRE(reg.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CAPTURE(rows[i].name);
    CHECK(reg[i].name() == rows[i].name);
    CHECK(reg[i].variable_count() == rows[i].vars);
    CHECK(reg[i].integer_domains().size() == rows[i].ints);
    CHECK(reg[i].constraint_count() == rows[i].constraints);
    CHECK(reg[i].objective_count() == 2);
  }
  const auto gear = make_problem("gear");
  for (const auto& d : gear.integer_domains()) {
    CHECK(d.kind == DomainKind::integer);
    CHECK(d.code_lo() == 12);
    CHECK(d.code_hi() == 60);
  }
  const auto tong = make_problem("tong");
  for (const auto& d : tong.continuous_domains()) {
    CHECK(d.lo == -100.0);
    CHECK(d.hi == 100.0);
  }
  const auto mela = make_problem("mela");
  for (const auto& d : mela.integer_domains()) CHECK(d.kind == DomainKind::binary);
  CHECK(make_problem("gear").pareto_type() == ParetoType::discrete);
  CHECK(make_problem("tong").pareto_type() == ParetoType::continuous);
  CHECK_THROWS_AS((void)make_problem("bearing"), UsageError);
  CHECK_THROWS_AS((void)make_problem("nope"), UsageError);
}

TEST_CASE("discrete sets are encoded by index") {
  const auto d = VariableDomain::discrete_set({1, 5, 10, 15});
  CHECK(d.code_lo() == 0);
  CHECK(d.code_hi() == 3);
  CHECK(d.value(2) == 10.0);
  CHECK_THROWS_AS((void)VariableDomain::discrete_set({}), UsageError);
  CHECK_THROWS_AS((void)VariableDomain::discrete_set({5, 1}), UsageError);
  CHECK_THROWS_AS((void)VariableDomain::continuous(2, 1), UsageError);
}

TEST_CASE("out-of-domain input is rejected") {
  CHECK_THROWS_AS((void)make_gear().evaluate({{}, {11, 12, 12, 12}}), UsageError);
  CHECK_THROWS_AS((void)make_gear().evaluate({{}, {12, 12, 12}}), UsageError);
  CHECK_THROWS_AS((void)make_mela().evaluate({{1.5, 0}, std::vector<int>(8, 0)}), UsageError);
}

TEST_CASE("evaluation is deterministic and finite over random domain points") {
  std::mt19937_64 rng(17);
  for (const auto& p : registry()) {
    CAPTURE(p.name());
    for (int i = 0; i < 10000; ++i) {
      VariableVector v;
      for (const auto& d : p.continuous_domains()) v.continuous.push_back(std::uniform_real_distribution<double>(d.lo, d.hi)(rng));
      for (const auto& d : p.integer_domains()) v.integer.push_back(std::uniform_int_distribution<int>(d.code_lo(), d.code_hi())(rng));
      const auto a = p.evaluate(v);
      const auto b = p.evaluate(v);
      REQUIRE(a.objectives == b.objectives);
      REQUIRE(a.violation == b.violation);
      for (double f : a.objectives) REQUIRE(std::isfinite(f));
      if (p.name() == "gear" || p.name() == "truss" || p.name() == "mela") REQUIRE(a.violation == 0.0);
    }
  }
}

TEST_CASE("restricting integers narrows the box and keeps values") {
  const auto truss = make_truss();
  const IntegerBox box{{1, 0, 2, 3, 0, 0}, {2, 3, 2, 3, 1, 0}};
  const auto sub = restrict_integers(truss, box);
  const auto sub_box = sub.integer_box();
  CHECK(sub_box.combinations() == 2 * 4 * 1 * 1 * 2 * 1);
  // Re-based codes map to the same member areas.
  const auto full = truss.evaluate({{1, 1, 1}, {2, 3, 2, 3, 1, 0}});
  const auto part = sub.evaluate({{1, 1, 1}, {1, 3, 0, 0, 1, 0}});
  CHECK(full.objectives == part.objectives);
}

TEST_CASE("integer box") {
  const IntegerBox box{{0, 12}, {1, 60}};
  CHECK(box.combinations() == 98);
  CHECK_FALSE(box.is_point());
  CHECK(IntegerBox{{3, 4}, {3, 4}}.is_point());
}
