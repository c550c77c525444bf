#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "vcsp/blp.hpp"
#include "vcsp/linear_program.hpp"
#include "vcsp/operation.hpp"
#include "vcsp/vcsp_core.hpp"

namespace testing {

using vcsp::CostFunction;
using vcsp::ExtRational;
using vcsp::Label;
using vcsp::Language;
using vcsp::Operation;
using vcsp::Rational;
using vcsp::Tuple;
using vcsp::VcspInstance;

inline Rational q(long p, long r = 1) {
  Rational x(p, r);
  x.canonicalize();
  return x;
}

inline ExtRational inf() { return ExtRational::infinity(); }

inline CostFunction function(int k, int arity, const std::vector<long>& values) {
  std::vector<ExtRational> table;
  for (long v : values) table.push_back(v < 0 ? inf() : ExtRational(v));
  return CostFunction(k, arity, std::move(table));
}

inline Language single(const CostFunction& f, std::string name = "f") {
  Language language(vcsp::Domain(f.domain_size()));
  language.add(std::move(name), f);
  return language;
}

/// D = {a, b, c}, f = 0 on (a,b), (b,c), (c,a) and inf elsewhere.
inline Language cycle3_language() {
  Language language(vcsp::Domain({"a", "b", "c"}));
  language.add("f", function(3, 2, {-1, 0, -1, -1, -1, 0, 0, -1, -1}));
  return language;
}

/// The symmetric operation of the cycle a -> b -> c -> a: off the diagonal
/// it returns the head of the edge.
inline Operation cycle3_operation() {
  return Operation(3, 2, {0, 1, 0, 1, 1, 2, 0, 2, 2});
}

inline Operation op2(std::vector<Label> table) {
  int k = 1;
  while (static_cast<std::size_t>(k * k) < table.size()) ++k;
  return Operation(k, 2, std::move(table));
}

/// Exhaustive minimum written independently of the library oracle.
inline ExtRational enumerate_minimum(const VcspInstance& instance) {
  const int k = instance.domain_size();
  const std::size_t n = instance.var_count();
  std::vector<Label> x(n, 0);
  ExtRational best = inf();
  while (true) {
    ExtRational total(0);
    for (const auto& term : instance.terms()) {
      Tuple t;
      for (std::size_t v : term.scope) t.push_back(x[v]);
      total += instance.language().function(term.function)(t);
    }
    if (total < best) best = total;
    std::size_t i = n;
    while (i > 0 && x[i - 1] == k - 1) x[--i] = 0;
    if (i == 0) break;
    ++x[i - 1];
  }
  return best;
}

/// Random instance over the functions of `language` with distinct variables
/// in every scope.
inline VcspInstance random_instance(const Language& language, std::size_t min_vars,
                                    std::size_t max_vars, std::size_t max_terms,
                                    std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> vars(min_vars, max_vars);
  const std::size_t n = vars(rng);
  std::uniform_int_distribution<std::size_t> terms(1, max_terms);
  std::uniform_int_distribution<std::size_t> pick(0, language.size() - 1);
  const std::size_t count = terms(rng);
  std::vector<vcsp::Term> out;
  for (std::size_t t = 0; t < count; ++t) {
    const auto& named = language.functions()[pick(rng)];
    std::vector<std::size_t> scope(n);
    for (std::size_t i = 0; i < n; ++i) scope[i] = i;
    std::shuffle(scope.begin(), scope.end(), rng);
    scope.resize(static_cast<std::size_t>(named.function.arity()));
    out.push_back({named.name, scope});
  }
  return VcspInstance(language, n, std::move(out));
}

/// Brute-force LP oracle: min c.x subject to A x <= b and 0 <= x, over a
/// bounded region, by enumerating every vertex as the solution of a square
/// subsystem of tight constraints.
struct VertexOracle {
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  std::vector<Rational> objective;

  std::optional<Rational> minimum() const {
    const std::size_t n = objective.size();
    std::vector<std::vector<Rational>> all = rows;
    std::vector<Rational> bounds = rhs;
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Rational> row(n, 0);
      row[j] = -1;
      all.push_back(row);
      bounds.push_back(0);
    }
    std::optional<Rational> best;
    std::vector<std::size_t> pick;
    enumerate(all, bounds, 0, pick, best);
    return best;
  }

 private:
  void enumerate(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                 std::size_t from, std::vector<std::size_t>& pick,
                 std::optional<Rational>& best) const {
    const std::size_t n = objective.size();
    if (pick.size() == n) {
      auto x = solve_square(a, b, pick);
      if (!x) return;
      for (std::size_t i = 0; i < a.size(); ++i) {
        Rational lhs = 0;
        for (std::size_t j = 0; j < n; ++j) lhs += a[i][j] * (*x)[j];
        if (lhs > b[i]) return;
      }
      Rational value = 0;
      for (std::size_t j = 0; j < n; ++j) value += objective[j] * (*x)[j];
      if (!best || value < *best) best = value;
      return;
    }
    for (std::size_t i = from; i < a.size(); ++i) {
      pick.push_back(i);
      enumerate(a, b, i + 1, pick, best);
      pick.pop_back();
    }
  }

  static std::optional<std::vector<Rational>> solve_square(const std::vector<std::vector<Rational>>& a,
                                                           const std::vector<Rational>& b,
                                                           const std::vector<std::size_t>& pick) {
    const std::size_t n = pick.size();
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m[i][j] = a[pick[i]][j];
      m[i][n] = b[pick[i]];
    }
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t p = col;
      while (p < n && m[p][col] == 0) ++p;
      if (p == n) return std::nullopt;
      std::swap(m[p], m[col]);
      for (std::size_t i = 0; i < n; ++i) {
        if (i == col || m[i][col] == 0) continue;
        const Rational factor = m[i][col] / m[col][col];
        for (std::size_t j = col; j <= n; ++j) m[i][j] -= factor * m[col][j];
      }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n] / m[i][i];
    return x;
  }
};

/// f(g1(x,y)) + f(g2(x,y)) <= f(x) + f(y) for all x, y in dom f, checked
/// directly on binary functions.
inline bool admits_pair(const CostFunction& f, const Operation& g1, const Operation& g2) {
  const auto dom = f.dom();
  for (std::size_t i : dom) {
    for (std::size_t j : dom) {
      const Tuple x = f.space().tuple_at(i);
      const Tuple y = f.space().tuple_at(j);
      Tuple a, b;
      for (std::size_t p = 0; p < x.size(); ++p) {
        a.push_back(g1(x[p], y[p]));
        b.push_back(g2(x[p], y[p]));
      }
      if (f(a) + f(b) > f.at(i) + f.at(j)) return false;
    }
  }
  return true;
}

}  // namespace testing
