#include <doctest.h>

#include "support.hpp"
#include "vcsp/families.hpp"
#include "vcsp/polymorphism.hpp"

using namespace vcsp;
using testing::q;

namespace {

/// 0 < a, b < 1 with a, b incomparable; labels 0, a=1, b=2, 1=3.
OperationPair diamond() {
  const Operation meet(4, 2, {0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 2, 2, 0, 1, 2, 3});
  const Operation join(4, 2, {0, 1, 2, 3, 1, 1, 3, 3, 2, 3, 2, 3, 3, 3, 3, 3});
  return {meet, join};
}

/// 0 < b, c < 1 with b = 1 and c = 2 incomparable; the top is 3.
DefectPoset diamond_poset() {
  std::vector<std::vector<bool>> less(4, std::vector<bool>(4, false));
  less[0][1] = less[0][2] = less[0][3] = true;
  less[1][3] = less[2][3] = true;
  return DefectPoset(4, 1, 2, less);
}

/// 0 < e < b, c < 1 with labels 0, e=1, b=2, c=3, 1=4.
DefectPoset five_poset() {
  std::vector<std::vector<bool>> less(5, std::vector<bool>(5, false));
  for (int x = 0; x < 5; ++x) {
    for (int y = 0; y < 5; ++y) {
      const int rx = x == 3 ? 2 : x;
      const int ry = y == 3 ? 2 : y;
      less[x][y] = rx < ry;
    }
  }
  return DefectPoset(5, 2, 3, less);
}

}  // namespace

TEST_CASE("lattice multimorphisms") {
  const auto [mn, mx] = chain_lattice(3);
  const auto chain = lattice_multimorphism(mn, mx);
  CHECK(chain.weight(mn) == q(1, 2));
  CHECK(chain.weight(mx) == q(1, 2));
  CHECK(mn(1, 2) == 1);
  CHECK(mx(0, 2) == 2);

  const auto [meet, join] = diamond();
  CHECK_NOTHROW(lattice_multimorphism(meet, join));
  CHECK(meet(1, 2) == 0);
  CHECK(join(1, 2) == 3);

  // x * y = (x + y) mod 3 fails idempotence first; a left-biased table
  // idempotent and commutative but not associative.
  const Operation rps(3, 2, {0, 0, 2, 0, 1, 1, 2, 1, 2});
  try {
    validate_lattice(rps, mx);
    FAIL("expected an axiom violation");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("associativity") != std::string::npos);
  }
  CHECK(is_semilattice_operation(mn));
  CHECK_FALSE(is_semilattice_operation(rps));
}

TEST_CASE("k-submodular operations") {
  const auto [min0, max0] = k_submodular_ops(2);
  CHECK(min0.domain_size() == 3);
  CHECK(min0(1, 2) == 0);
  CHECK(max0(1, 2) == 0);
  CHECK(max0(0, 2) == 2);
  CHECK(min0(1, 1) == 1);
  CHECK(min0(0, 1) == 0);
  const auto [m1, x1] = k_submodular_ops(1);
  const auto [mn, mx] = chain_lattice(2);
  CHECK(m1 == mn);
  CHECK(x1 == mx);
  CHECK(is_semilattice_operation(min0));
}

TEST_CASE("skew bisubmodular") {
  const auto [min0, max0] = k_submodular_ops(2);
  const auto one = skew_bisubmodular_fpol(1);
  CHECK(one == multimorphism(min0, max0));
  const auto half = skew_bisubmodular_fpol(q(1, 2));
  CHECK(half.weight(min0) == q(1, 2));
  CHECK(half.weight(max0) == q(1, 4));
  CHECK(half.weight(max1_operation()) == q(1, 4));
  CHECK(max1_operation()(1, 2) == 1);
  CHECK(max1_operation()(0, 2) == 2);
  CHECK_THROWS_AS(skew_bisubmodular_fpol(0), std::invalid_argument);
  CHECK_THROWS_AS(skew_bisubmodular_fpol(q(3, 2)), std::invalid_argument);
}

TEST_CASE("rooted trees") {
  const RootedTree chain({0, 0, 1});
  CHECK(chain.root() == 0);
  CHECK(chain.distance(0, 2) == 2);
  CHECK(chain.path(2, 0) == std::vector<Label>{2, 1, 0});
  CHECK(chain.is_ancestor(0, 2));
  CHECK_FALSE(chain.is_ancestor(2, 0));
  CHECK_THROWS_AS(RootedTree({1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(RootedTree({0, 1}), std::invalid_argument);
}

TEST_CASE("strong tree operations") {
  const auto [g1, g2] = strong_tree_ops(RootedTree({0, 0, 1}));
  CHECK(g1(0, 2) == 1);
  CHECK(g2(0, 2) == 1);
  const auto [s1, s2] = strong_tree_ops(RootedTree({0, 0, 0}));
  CHECK(s1(1, 2) == 0);
  CHECK(s2(1, 2) == 0);
  const RootedTree t({0, 0, 1, 1, 2});
  const auto [t1, t2] = strong_tree_ops(t);
  for (Label a = 0; a < 5; ++a) {
    CHECK(t1(a, a) == a);
    CHECK(t2(a, a) == a);
    for (Label b = 0; b < 5; ++b) {
      CHECK(t1(a, b) == t1(b, a));
      CHECK(t2(a, b) == t2(b, a));
    }
  }
}

TEST_CASE("weak tree operations") {
  const auto [g1, g2] = weak_tree_ops(RootedTree({0, 0, 1}));
  CHECK(g1(0, 2) == 0);
  CHECK(g2(0, 2) == 2);
  const auto [s1, s2] = weak_tree_ops(RootedTree({0, 0, 0}));
  CHECK(s1(1, 2) == 0);
  CHECK(s2(1, 2) == 0);
  CHECK(s1(0, 2) == 0);
  CHECK(s2(0, 2) == 2);
  const auto [m0, x0] = k_submodular_ops(2);
  CHECK(s1 == m0);
  CHECK(s2 == x0);
  CHECK(is_semilattice_operation(weak_tree_ops(RootedTree({0, 0, 0, 1, 1})).first));
}

TEST_CASE("1-defect chains") {
  const auto poset = diamond_poset();
  const auto [g1, g2] = one_defect_ops(poset);
  CHECK(g1(1, 2) == 0);
  CHECK(g2(1, 2) == 3);
  CHECK(g1(0, 1) == 0);
  CHECK(g2(0, 1) == 1);
  CHECK(g1(1, 3) == 1);

  std::vector<std::vector<bool>> none(2, std::vector<bool>(2, false));
  CHECK_THROWS_AS(one_defect_ops(DefectPoset(2, 0, 1, none)), std::invalid_argument);

  const auto h3 = one_defect_symmetric(poset, g1, 3);
  CHECK(is_symmetric(h3));
  CHECK(h3(std::vector<Label>{1, 2, 3}) == 0);
  CHECK(h3(std::vector<Label>{1, 3, 3}) == 1);
  const auto meet3 = Operation::from_function(4, 3, [&](std::span<const Label> x) {
    return g1(x[0], g1(x[1], x[2]));
  });
  for (Label a = 0; a < 4; ++a) {
    for (Label b = 0; b < 4; ++b) {
      for (Label c = 0; c < 4; ++c) {
        const bool defect = (a == 1 || b == 1 || c == 1) && (a == 2 || b == 2 || c == 2);
        if (!defect) CHECK(h3(std::vector<Label>{a, b, c}) == meet3(std::vector<Label>{a, b, c}));
      }
    }
  }

  const auto five = five_poset();
  const auto [f1, f2] = one_defect_ops(five);
  CHECK(f1(2, 3) == 1);
  CHECK(f2(2, 3) == 4);
  const auto h = one_defect_symmetric(five, f1, 3);
  CHECK(h(std::vector<Label>{2, 3, 0}) == 0);
  CHECK(h(std::vector<Label>{2, 3, 4}) == 1);
  for (int m = 2; m <= 4; ++m) {
    CHECK(is_symmetric(one_defect_symmetric(five, f1, m)));
    CHECK(is_symmetric(one_defect_symmetric(poset, g1, m)));
  }
}

TEST_CASE("sampled functions admit their fractional operation") {
  const auto [mn, mx] = chain_lattice(3);
  const auto [m0, x0] = k_submodular_ops(2);
  const auto [w1, w2] = weak_tree_ops(RootedTree({0, 0, 0, 0, 1}));
  const auto [d1, d2] = one_defect_ops(diamond_poset());
  const std::vector<FractionalOperation> omegas{
      multimorphism(mn, mx), multimorphism(m0, x0), skew_bisubmodular_fpol(q(1, 3)),
      multimorphism(w1, w2), multimorphism(d1, d2)};
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto f = sample_admitting_function(omegas[i], 2, 12, seed);
      CHECK(f.is_finite_valued());
      for (const auto& v : f.table()) {
        CHECK(v >= ExtRational(0));
        CHECK(v <= ExtRational(12));
      }
      CHECK(check_fractional_polymorphism(testing::single(f), omegas[i]).holds());
      CHECK(f == sample_admitting_function(omegas[i], 2, 12, seed));
    }
  }
  const auto constant = sample_admitting_function(omegas[0], 2, 0, 4);
  for (const auto& v : constant.table()) CHECK(v == ExtRational(0));
}
