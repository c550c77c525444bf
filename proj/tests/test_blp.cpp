#include <doctest.h>

#include "support.hpp"
#include "vcsp/blp.hpp"
#include "vcsp/families.hpp"
#include "vcsp/polymorphism.hpp"

using namespace vcsp;
using testing::function;
using testing::q;

namespace {

VcspInstance two_term() {
  return VcspInstance(testing::cycle3_language(), 2, {{"f", {0, 1}}, {"f", {1, 0}}});
}

VcspInstance unary35() {
  return VcspInstance(testing::single(function(2, 1, {3, 5})), 1, {{"f", {0}}});
}

/// Boolean equality cost: both constant assignments are optimal, so the
/// half-half mixture is an optimal BLP point.
VcspInstance half_integral() {
  return VcspInstance(testing::single(function(2, 2, {0, 1, 1, 0}), "b"), 2, {{"b", {0, 1}}});
}

}  // namespace

TEST_CASE("build_blp layout") {
  const auto program = build_blp(unary35());
  CHECK(program.lp.var_count() == 4);
  CHECK(program.lp.objective() == std::vector<Rational>{3, 5, 0, 0});
  CHECK(program.columns.size() == 4);
  CHECK(program.columns[0].kind == BlpColumn::Kind::TermTuple);
  CHECK(program.columns[2].kind == BlpColumn::Kind::VariableLabel);
}

TEST_CASE("3-cycle uniform point is BLP-feasible with value 0") {
  const auto instance = two_term();
  BlpSolution sol;
  sol.value = 0;
  for (int t = 0; t < 2; ++t) {
    sol.term_distributions.push_back({{1, 5, 6}, {q(1, 3), q(1, 3), q(1, 3)}});
  }
  sol.var_distributions = {{q(1, 3), q(1, 3), q(1, 3)}, {q(1, 3), q(1, 3), q(1, 3)}};
  CHECK(is_valid_blp_solution(instance, sol));
  sol.var_distributions[0] = {q(1, 2), q(1, 2), 0};
  CHECK_FALSE(is_valid_blp_solution(instance, sol));
}

TEST_CASE("blp_value") {
  const auto u = blp_value(unary35());
  CHECK(u.value == ExtRational(3));
  REQUIRE(u.solution);
  CHECK(u.solution->var_distributions[0] == std::vector<Rational>{1, 0});

  const auto gap = blp_value(two_term());
  CHECK(gap.value == ExtRational(0));
  REQUIRE(gap.solution);
  CHECK(is_valid_blp_solution(two_term(), *gap.solution));
  CHECK(brute_force_optimum(two_term()).value.is_infinite());
  CHECK_FALSE(blp_solves(two_term()));

  const VcspInstance empty_dom(testing::single(function(2, 1, {-1, -1})), 1, {{"f", {0}}});
  CHECK(blp_value(empty_dom).value.is_infinite());
  CHECK_FALSE(blp_value(empty_dom).solution);

  const VcspInstance none(testing::cycle3_language(), 3, {});
  CHECK(blp_value(none).value == ExtRational(0));
  CHECK(blp_solves(none));
}

TEST_CASE("BLP bounds the optimum and solves single terms") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> value(-1, 8);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<long> table;
    for (int i = 0; i < 9; ++i) table.push_back(value(rng));
    const auto lang = testing::single(function(3, 2, table));
    const VcspInstance one(lang, 2, {{"f", {0, 1}}});
    CHECK(blp_solves(one));
    const auto many = testing::random_instance(lang, 2, 4, 4, rng);
    const auto r = blp_value(many);
    CHECK(r.value <= testing::enumerate_minimum(many));
    if (r.solution) CHECK(is_valid_blp_solution(many, *r.solution));
  }
}

TEST_CASE("BLP solves Boolean submodular instances") {
  const auto [mn, mx] = chain_lattice(2);
  const auto omega = multimorphism(mn, mx);
  Language lang(Domain(2));
  lang.add("f", sample_admitting_function(omega, 2, 9, 1));
  lang.add("g", sample_admitting_function(omega, 2, 9, 2));
  lang.add("u", sample_admitting_function(omega, 1, 9, 3));
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 15; ++trial) {
    const auto instance = testing::random_instance(lang, 3, 4, 5, rng);
    CHECK(blp_value(instance).value == testing::enumerate_minimum(instance));
  }
}

TEST_CASE("rounding with a symmetric fractional polymorphism") {
  const auto [mn, mx] = chain_lattice(2);
  const auto omega = multimorphism(mn, mx);
  SUBCASE("integral solutions round to themselves") {
    const auto r = blp_value(unary35());
    const auto rounded = round_with_polymorphism(unary35(), *r.solution, FractionalOperation::indicator(mn));
    CHECK(rounded.x == Assignment{0});
    CHECK(rounded.value == ExtRational(3));
  }
  SUBCASE("half-integral solution") {
    const auto instance = half_integral();
    BlpSolution sol;
    sol.value = 0;
    sol.term_distributions = {{{0, 1, 2, 3}, {q(1, 2), 0, 0, q(1, 2)}}};
    sol.var_distributions = {{q(1, 2), q(1, 2)}, {q(1, 2), q(1, 2)}};
    REQUIRE(is_valid_blp_solution(instance, sol));
    CHECK(blp_value(instance).value == ExtRational(0));
    CHECK(common_denominator(sol) == 2);
    const auto rounded = round_with_polymorphism(instance, sol, omega);
    CHECK(rounded.value == ExtRational(0));
    CHECK(rounded.x == Assignment{0, 0});
    CHECK(evaluate_instance(instance, Assignment{1, 1}) == ExtRational(0));
    CHECK(evaluate_instance(instance, Assignment{0, 1}) == ExtRational(1));
    const auto found = round_with_polymorphism(instance, sol);
    CHECK(found.value == ExtRational(0));
  }
  SUBCASE("denominator mismatch") {
    const auto instance = half_integral();
    BlpSolution sol;
    sol.value = 0;
    sol.term_distributions = {{{0, 1, 2, 3}, {q(1, 3), 0, 0, q(2, 3)}}};
    sol.var_distributions = {{q(1, 3), q(2, 3)}, {q(1, 3), q(2, 3)}};
    CHECK_THROWS_AS(round_with_polymorphism(instance, sol, omega), std::invalid_argument);
  }
  SUBCASE("non-symmetric omega") {
    const auto r = blp_value(unary35());
    CHECK_THROWS_AS(round_with_polymorphism(unary35(), *r.solution, FractionalOperation::projection_average(2, 2)),
                    std::invalid_argument);
  }
}

TEST_CASE("self_reduce") {
  const auto [mn, mx] = chain_lattice(2);
  const auto omega = multimorphism(mn, mx);
  Language lang(Domain(2));
  lang.add("f", sample_admitting_function(omega, 2, 9, 8));
  lang.add("u", sample_admitting_function(omega, 1, 9, 9));
  const VcspInstance instance(lang, 4, {{"f", {0, 1}}, {"f", {1, 2}}, {"f", {2, 3}}, {"u", {3}}, {"f", {3, 0}}});
  const auto r = self_reduce(instance);
  REQUIRE(r);
  CHECK(r->value == blp_value(instance).value);
  CHECK(r->value == brute_force_optimum(instance).value);
  CHECK(evaluate_instance(instance, r->x) == r->value);

  const auto none = self_reduce(VcspInstance(lang, 3, {}));
  REQUIRE(none);
  CHECK(none->x == Assignment{0, 0, 0});
  CHECK(none->value == ExtRational(0));

  CHECK_FALSE(self_reduce(two_term()));
}
