#include <doctest.h>

#include <set>

#include "support.hpp"
#include "vcsp/clone.hpp"
#include "vcsp/errors.hpp"
#include "vcsp/families.hpp"
#include "vcsp/polymorphism.hpp"

using namespace vcsp;
using testing::function;
using testing::q;

namespace {

Operation min_op(int k, int m) {
  return Operation::from_function(k, m, [](std::span<const Label> x) {
    return *std::min_element(x.begin(), x.end());
  });
}

Operation max_op(int k, int m) {
  return Operation::from_function(k, m, [](std::span<const Label> x) {
    return *std::max_element(x.begin(), x.end());
  });
}

/// Direct evaluation over every ordered list of m dom tuples.
bool admits_by_enumeration(const Language& lang, const FractionalOperation& omega) {
  const int m = omega.arity();
  for (const auto& [name, f] : lang.functions()) {
    const auto dom = f.dom();
    std::vector<std::size_t> pick(static_cast<std::size_t>(m), 0);
    while (true) {
      std::vector<Tuple> xs;
      for (std::size_t i : pick) xs.push_back(f.space().tuple_at(dom[i]));
      ExtRational lhs(0);
      for (const auto& [g, w] : omega.weights()) lhs += ExtRational(w) * f(g.apply(xs));
      if (lhs > average_value(f, xs)) return false;
      std::size_t i = pick.size();
      while (i > 0 && pick[i - 1] + 1 == dom.size()) pick[--i] = 0;
      if (i == 0) break;
      ++pick[i - 1];
    }
  }
  return true;
}

}  // namespace

TEST_CASE("is_symmetric") {
  CHECK(is_symmetric(min_op(3, 2)));
  CHECK_FALSE(is_symmetric(Operation::projection(2, 2, 0)));
  CHECK(is_symmetric(testing::cycle3_operation()));
  CHECK(is_symmetric(max_op(3, 4)));
  CHECK(is_symmetric(Operation::projection(3, 1, 0)));
}

TEST_CASE("superposition") {
  SUBCASE("ternary min from binary min") {
    const auto e1 = Operation::projection(3, 3, 0);
    const auto e2 = Operation::projection(3, 3, 1);
    const auto e3 = Operation::projection(3, 3, 2);
    const auto inner = superpose(min_op(3, 2), std::vector<Operation>{e2, e3});
    CHECK(superpose(min_op(3, 2), std::vector<Operation>{e1, inner}) == min_op(3, 3));
  }
  SUBCASE("projections are an identity") {
    const auto h = testing::cycle3_operation();
    std::vector<Operation> es{Operation::projection(3, 2, 0), Operation::projection(3, 2, 1)};
    CHECK(superpose(h, es) == h);
  }
  SUBCASE("max of two mins") {
    const auto mn = min_op(2, 2);
    CHECK(superpose(max_op(2, 2), std::vector<Operation>{mn, mn}) == mn);
  }
  SUBCASE("arity mismatch") {
    CHECK_THROWS_AS(superpose(min_op(2, 2), std::vector<Operation>{min_op(2, 2)}), std::invalid_argument);
  }
}

TEST_CASE("superpose_fractional") {
  const FractionalOperation omega{{min_op(2, 2), q(1, 2)}, {max_op(2, 2), q(1, 2)}};
  SUBCASE("one half on the quaternary min") {
    const auto m12 = Operation::from_function(2, 4, [](std::span<const Label> x) {
      return std::min(x[0], x[1]);
    });
    const auto m34 = Operation::from_function(2, 4, [](std::span<const Label> x) {
      return std::min(x[2], x[3]);
    });
    const auto result = superpose_fractional(omega, std::vector<Operation>{m12, m34});
    CHECK(result.weight(min_op(2, 4)) == q(1, 2));
  }
  SUBCASE("projections leave an indicator unchanged") {
    const auto h = testing::cycle3_operation();
    std::vector<Operation> es{Operation::projection(3, 2, 0), Operation::projection(3, 2, 1)};
    CHECK(superpose_fractional(FractionalOperation::indicator(h), es) == FractionalOperation::indicator(h));
  }
  SUBCASE("colliding superpositions merge") {
    const auto avg = FractionalOperation::projection_average(3, 2);
    const auto g = testing::cycle3_operation();
    CHECK(superpose_fractional(avg, std::vector<Operation>{g, g}) == FractionalOperation::indicator(g));
  }
}

TEST_CASE("fractional operations validate weights") {
  CHECK_THROWS_AS(FractionalOperation({{min_op(2, 2), q(1, 2)}}), std::invalid_argument);
  CHECK_THROWS_AS(FractionalOperation({{min_op(2, 2), q(3, 2)}, {max_op(2, 2), q(-1, 2)}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(FractionalOperation({{min_op(2, 2), q(1, 2)}, {min_op(2, 3), q(1, 2)}}),
                  std::invalid_argument);
}

TEST_CASE("multisets and symmetric operations") {
  MultisetSpace space(3, 2);
  CHECK(space.size() == 6);
  CHECK(space.index_of(Tuple{2, 0}) == space.index_of(Tuple{0, 2}));
  CHECK(binomial(5, 2, 100) == 10);
  const auto sym = SymmetricOperation::from_operation(testing::cycle3_operation());
  CHECK(sym.to_operation() == testing::cycle3_operation());
  CHECK(SymmetricOperation::from_operation(sym.to_operation()) == sym);
  CHECK_THROWS_AS(SymmetricOperation::from_operation(Operation::projection(2, 2, 0)), std::invalid_argument);
  for (unsigned bits = 0; bits < 8; ++bits) {
    SymmetricOperation s(2, 2, {Label(bits & 1), Label((bits >> 1) & 1), Label((bits >> 2) & 1)});
    CHECK(is_symmetric(s.to_operation()));
    CHECK(SymmetricOperation::from_operation(s.to_operation()) == s);
  }
}

TEST_CASE("check_fractional_polymorphism") {
  SUBCASE("projection average holds for any language") {
    const auto lang = testing::cycle3_language();
    for (int m = 1; m <= 3; ++m) {
      CHECK(check_fractional_polymorphism(lang, FractionalOperation::projection_average(3, m)).holds());
    }
  }
  SUBCASE("min/max violated by a non-submodular function") {
    const auto lang = testing::single(function(2, 2, {1, 0, 0, 1}));
    const auto v = check_fractional_polymorphism(lang, multimorphism(min_op(2, 2), max_op(2, 2)));
    REQUIRE_FALSE(v.holds());
    CHECK(v.violation->function == "f");
    CHECK(v.violation->tuples == std::vector<Tuple>{{0, 1}, {1, 0}});
    CHECK(v.violation->lhs == ExtRational(1));
    CHECK(v.violation->rhs == ExtRational(0));
  }
  SUBCASE("3-cycle language admits its tournament operation") {
    CHECK(check_fractional_polymorphism(testing::cycle3_language(),
                                        FractionalOperation::indicator(testing::cycle3_operation()))
              .holds());
  }
  SUBCASE("leaving dom f makes the left side infinite") {
    const auto lang = testing::cycle3_language();
    const auto v = check_fractional_polymorphism(lang, FractionalOperation::indicator(min_op(3, 2)));
    REQUIRE_FALSE(v.holds());
    CHECK(v.violation->lhs.is_infinite());
  }
  SUBCASE("ordered and multiset checks agree for symmetric operations") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> value(-1, 6);
    std::uniform_int_distribution<int> label(0, 1);
    for (int trial = 0; trial < 60; ++trial) {
      std::vector<long> t;
      for (int i = 0; i < 4; ++i) t.push_back(value(rng));
      if (std::all_of(t.begin(), t.end(), [](long v) { return v < 0; })) t[0] = 0;
      const auto lang = testing::single(function(2, 2, t));
      const int m = 2 + trial % 2;
      FractionalOperation::Weights weights;
      for (int g = 0; g < 2; ++g) {
        std::vector<Label> values;
        for (std::size_t i = 0; i < MultisetSpace(2, m).size(); ++i) values.push_back(Label(label(rng)));
        values.front() = 0;
        values.back() = 1;
        weights[SymmetricOperation(2, m, values).to_operation()] += q(1, 2);
      }
      const FractionalOperation omega(weights);
      const bool ordered = check_fractional_polymorphism(lang, omega, CheckMode::Ordered).holds();
      CHECK(ordered == check_fractional_polymorphism(lang, omega, CheckMode::Multiset).holds());
      CHECK(ordered == admits_by_enumeration(lang, omega));
    }
  }
}

TEST_CASE("find_symmetric_fpol") {
  SUBCASE("3-cycle: binary yes, ternary no") {
    const auto lang = testing::cycle3_language();
    const auto two = find_symmetric_fpol(lang, 2);
    REQUIRE(two);
    CHECK(two->is_symmetric());
    CHECK(check_fractional_polymorphism(lang, *two).holds());
    CHECK_FALSE(find_symmetric_fpol(lang, 3));
  }
  SUBCASE("Boolean submodular function") {
    const auto f = function(2, 2, {0, 2, 3, 4});
    CHECK(testing::admits_pair(f, min_op(2, 2), max_op(2, 2)));
    const auto lang = testing::single(f);
    const auto omega = find_symmetric_fpol(lang, 2);
    REQUIRE(omega);
    CHECK(omega->is_symmetric());
    CHECK(admits_by_enumeration(lang, *omega));
  }
  SUBCASE("crisp disequality on two labels has no binary symmetric one") {
    const auto lang = testing::single(function(2, 2, {-1, 0, 0, -1}));
    CHECK_FALSE(find_symmetric_fpol(lang, 2));
    CHECK_FALSE(find_symmetric_fpol(lang, 4));
    CHECK(find_symmetric_fpol(lang, 3));
  }
  SUBCASE("operation cap") {
    CHECK_THROWS_AS(find_symmetric_fpol(testing::cycle3_language(), 4, 1000), CapExceeded);
  }
}

TEST_CASE("generate_clone") {
  SUBCASE("binary max generates ternary max") {
    CHECK(generate_clone(2, {max_op(2, 2)}, 3).contains(max_op(2, 3)));
  }
  SUBCASE("no operations: only projections") {
    const auto c = generate_clone(3, {}, 2);
    CHECK(c.members() == std::vector<Operation>{Operation::projection(3, 2, 0), Operation::projection(3, 2, 1)});
  }
  SUBCASE("3-cycle operation generates no ternary symmetric operation") {
    const auto c = generate_clone(3, {testing::cycle3_operation()}, 3);
    const auto members = c.members();
    CHECK(std::none_of(members.begin(), members.end(), [](const Operation& g) { return is_symmetric(g); }));
    CHECK_FALSE(find_generated_symmetric(3, {testing::cycle3_operation()}, 3));
  }
  SUBCASE("cap") {
    CHECK_THROWS_AS(generate_clone(3, {testing::cycle3_operation()}, 3, 5), CapExceeded);
  }
  SUBCASE("agrees with a naive closure") {
    const std::vector<Operation> ops{Operation(2, 2, {0, 1, 1, 0}), Operation(2, 2, {1, 1, 1, 0})};
    std::set<Operation> closure{Operation::projection(2, 2, 0), Operation::projection(2, 2, 1)};
    bool grew = true;
    while (grew) {
      grew = false;
      const std::vector<Operation> current(closure.begin(), closure.end());
      for (const auto& h : ops) {
        for (const auto& a : current) {
          for (const auto& b : current) {
            grew |= closure.insert(superpose(h, std::vector<Operation>{a, b})).second;
          }
        }
      }
    }
    const auto members = generate_clone(2, ops, 2).members();
    CHECK(std::set<Operation>(members.begin(), members.end()) == closure);
  }
}

TEST_CASE("find_generated_symmetric") {
  CHECK(find_generated_symmetric(2, {max_op(2, 2)}, 4) == max_op(2, 4));
  CHECK_FALSE(find_generated_symmetric(2, {Operation::projection(2, 2, 0)}, 2));
  CHECK(find_generated_symmetric(3, {testing::cycle3_operation()}, 2) == testing::cycle3_operation());
}
