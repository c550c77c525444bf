#include <doctest.h>

#include "support.hpp"
#include "vcsp/tournament.hpp"

using namespace vcsp;

namespace {

Tournament cycle3() { return Tournament(3, {{0, 1}, {1, 2}, {2, 0}}); }

/// Acyclic iff no directed cycle; checked by repeatedly removing sources.
bool acyclic_by_sources(const Tournament& t) {
  std::vector<bool> removed(static_cast<std::size_t>(t.size()), false);
  for (int step = 0; step < t.size(); ++step) {
    int source = -1;
    for (int v = 0; v < t.size() && source < 0; ++v) {
      if (removed[v]) continue;
      bool has_in = false;
      for (int u = 0; u < t.size(); ++u) {
        if (!removed[u] && u != v && t.has_edge(Label(u), Label(v))) has_in = true;
      }
      if (!has_in) source = v;
    }
    if (source < 0) return false;
    removed[source] = true;
  }
  return true;
}

}  // namespace

TEST_CASE("tournament validation") {
  CHECK_THROWS_AS(Tournament(3, {{0, 1}, {1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(Tournament(3, {{0, 1}, {1, 0}, {1, 2}, {2, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Tournament(2, {{0, 0}}), std::invalid_argument);
  CHECK(Tournament::from_bits(3, 0) == Tournament::transitive(3));
}

TEST_CASE("stp_from_tournament") {
  const auto [meet, join] = stp_from_tournament(cycle3());
  CHECK(meet(0, 1) == 0);
  CHECK(meet(1, 2) == 1);
  CHECK(meet(2, 0) == 2);
  CHECK(join == testing::cycle3_operation());
  const auto [mn, mx] = stp_from_tournament(Tournament::transitive(3));
  CHECK(mn == order_lattice({0, 1, 2}).meet);
  CHECK(mx == order_lattice({0, 1, 2}).join);
  for (unsigned long bits = 0; bits < 64; ++bits) {
    const auto [m, j] = stp_from_tournament(Tournament::from_bits(4, bits));
    for (Label a = 0; a < 4; ++a) {
      CHECK(m(a, a) == a);
      for (Label b = 0; b < 4; ++b) {
        CHECK(m(a, b) == m(b, a));
        CHECK(j(a, b) == j(b, a));
        CHECK((m(a, b) == a || m(a, b) == b));
        CHECK((a == b || m(a, b) != j(a, b)));
      }
    }
  }
}

TEST_CASE("is_valid_flip") {
  CHECK(is_valid_flip(cycle3(), {0, 1}));
  CHECK_FALSE(is_valid_flip(Tournament::transitive(3), {0, 1}));
  CHECK_THROWS_AS(is_valid_flip(cycle3(), {1, 0}), std::invalid_argument);
  // 0 -> 1 -> 2 -> 0 plus a sink 3.
  const Tournament t(4, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {1, 3}, {2, 3}});
  CHECK(is_valid_flip(t, {0, 1}));
  CHECK(is_valid_flip(t, {2, 0}));
  CHECK_FALSE(is_valid_flip(t, {0, 3}));
  CHECK_FALSE(is_valid_flip(t, {2, 3}));
}

TEST_CASE("make_acyclic") {
  const auto transitive = make_acyclic(Tournament::transitive(4));
  CHECK(transitive.flips.empty());
  CHECK(transitive.order == std::vector<Label>{0, 1, 2, 3});

  const auto r = make_acyclic(cycle3());
  REQUIRE(r.flips.size() == 1);
  CHECK(r.flips[0] == Edge{2, 0});
  CHECK(r.order == std::vector<Label>{0, 1, 2});
  CHECK(verify_flip_sequence(cycle3(), r.flips));
  CHECK_FALSE(verify_flip_sequence(Tournament::transitive(3), {{0, 1}}));
  CHECK_FALSE(verify_flip_sequence(cycle3(), {}));
  CHECK(verify_flip_sequence(Tournament::transitive(3), {}));
}

TEST_CASE("each flip lowers the out-degree of the vertex being integrated") {
  for (unsigned long bits = 0; bits < 1024; ++bits) {
    Tournament t = Tournament::from_bits(5, bits);
    const auto r = make_acyclic(t);
    for (const auto& [c, a] : r.flips) {
      const int before = t.out_degree(c);
      REQUIRE(is_valid_flip(t, {c, a}));
      t.flip(c, a);
      CHECK(t.out_degree(c) == before - 1);
    }
    CHECK(acyclic_by_sources(t));
    CHECK(t.is_acyclic());
  }
}

TEST_CASE("is_acyclic agrees with source removal") {
  for (unsigned long bits = 0; bits < 1024; ++bits) {
    const auto t = Tournament::from_bits(5, bits);
    CHECK(t.is_acyclic() == acyclic_by_sources(t));
  }
}
