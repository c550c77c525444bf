#include "vcsp/polymorphism.hpp"

#include <map>
#include <stdexcept>

#include "vcsp/errors.hpp"
#include "vcsp/linear_program.hpp"

namespace vcsp {

namespace {

// Advances `idx` to the next list over {0..n-1}^m in lexicographic order;
// with `sorted` set only nondecreasing lists are produced.
bool next_index_list(std::vector<std::size_t>& idx, std::size_t n, bool sorted) {
  for (std::size_t p = idx.size(); p-- > 0;) {
    if (idx[p] + 1 < n) {
      ++idx[p];
      for (std::size_t q = p + 1; q < idx.size(); ++q) idx[q] = sorted ? idx[p] : 0;
      return true;
    }
  }
  return false;
}

}  // namespace

FpolVerdict check_fractional_polymorphism(const Language& language,
                                          const FractionalOperation& omega, CheckMode mode,
                                          std::size_t cap) {
  if (omega.domain_size() != language.domain().size()) {
    throw std::invalid_argument("fractional operation and language use different domains");
  }
  const bool symmetric = omega.is_symmetric();
  if (mode == CheckMode::Multiset && !symmetric) {
    throw std::invalid_argument("multiset checking requires a symmetric fractional operation");
  }
  const bool sorted = mode == CheckMode::Multiset || (mode == CheckMode::Auto && symmetric);
  const std::size_t m = static_cast<std::size_t>(omega.arity());

  for (const auto& [name, f] : language.functions()) {
    std::vector<Tuple> dom;
    for (std::size_t i : f.dom()) dom.push_back(f.space().tuple_at(i));
    if (dom.empty()) continue;
    if (sorted) {
      binomial(dom.size() + m - 1, m, cap);
    } else {
      checked_power(dom.size(), m, cap);
    }

    std::vector<std::size_t> idx(m, 0);
    std::vector<Tuple> xs(m);
    do {
      ExtRational rhs;
      for (std::size_t j = 0; j < m; ++j) {
        xs[j] = dom[idx[j]];
        rhs += f(xs[j]);
      }
      rhs = rhs / Rational(static_cast<long>(m));
      ExtRational lhs;
      for (const auto& [g, w] : omega.weights()) {
        lhs += ExtRational(w) * f(g.apply(xs));
        if (lhs.is_infinite()) break;
      }
      if (lhs > rhs) return {Violation{name, xs, lhs, rhs}};
    } while (next_index_list(idx, dom.size(), sorted));
  }
  return {};
}

std::optional<FractionalOperation> find_symmetric_fpol(const Language& language, int arity,
                                                       std::size_t operation_cap) {
  if (arity < 1) throw std::invalid_argument("arity must be >= 1");
  const int k = language.domain().size();
  const std::size_t m = static_cast<std::size_t>(arity);
  const std::size_t multiset_count =
      binomial(m + static_cast<std::size_t>(k) - 1, m, operation_cap);
  const std::size_t op_count = checked_power(static_cast<std::size_t>(k), multiset_count,
                                             operation_cap);
  const MultisetSpace multisets(k, arity);

  // One row per (f, multiset of m dom-f tuples). For each row and each output
  // coordinate we record which multiset of labels a symmetric operation sees.
  struct Row {
    const CostFunction* f;
    std::vector<std::size_t> coordinate_multisets;
    Rational rhs;
  };
  std::vector<Row> rows;
  for (const auto& [name, f] : language.functions()) {
    std::vector<Tuple> dom;
    for (std::size_t i : f.dom()) dom.push_back(f.space().tuple_at(i));
    if (dom.empty()) continue;
    std::vector<std::size_t> idx(m, 0);
    Tuple column(m);
    do {
      Row row{&f, {}, 0};
      for (int j = 0; j < f.arity(); ++j) {
        for (std::size_t i = 0; i < m; ++i) column[i] = dom[idx[i]][j];
        row.coordinate_multisets.push_back(multisets.index_of(column));
      }
      for (std::size_t i = 0; i < m; ++i) row.rhs += f(dom[idx[i]]).finite_value();
      row.rhs /= static_cast<long>(m);
      rows.push_back(std::move(row));
    } while (next_index_list(idx, dom.size(), true));
  }

  // Enumerate symmetric operations as value vectors over multisets, keep those
  // that never leave dom f, and merge operations with identical LP columns.
  std::vector<std::vector<Label>> candidates;
  std::map<std::vector<Rational>, std::size_t> seen_columns;
  std::vector<std::vector<Rational>> columns;
  std::vector<Label> values(multiset_count, 0);
  Tuple image;
  for (std::size_t op = 0; op < op_count; ++op) {
    std::vector<Rational> column;
    column.reserve(rows.size());
    bool keep = true;
    for (const auto& row : rows) {
      image.resize(row.coordinate_multisets.size());
      for (std::size_t j = 0; j < image.size(); ++j) image[j] = values[row.coordinate_multisets[j]];
      const ExtRational& value = (*row.f)(image);
      if (value.is_infinite()) {
        keep = false;
        break;
      }
      column.push_back(value.finite_value());
    }
    if (keep && seen_columns.emplace(column, candidates.size()).second) {
      candidates.push_back(values);
      columns.push_back(std::move(column));
    }
    for (std::size_t p = multiset_count; p-- > 0;) {
      if (++values[p] < k) break;
      values[p] = 0;
    }
  }
  if (candidates.empty()) return std::nullopt;

  LinearProgram lp(candidates.size());
  std::vector<Rational> coefficients(candidates.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < candidates.size(); ++c) coefficients[c] = columns[c][r];
    lp.add_constraint(coefficients, Relation::LessEqual, rows[r].rhs);
  }
  lp.add_constraint(std::vector<Rational>(candidates.size(), Rational(1)), Relation::Equal, 1);

  const LpOutcome outcome = solve_lp(lp);
  if (outcome.status != LpStatus::Optimal) return std::nullopt;

  FractionalOperation::Weights weights;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    if (sgn(outcome.point[c]) > 0) {
      weights[SymmetricOperation(k, arity, candidates[c]).to_operation()] += outcome.point[c];
    }
  }
  FractionalOperation omega(std::move(weights));
  if (!check_fractional_polymorphism(language, omega).holds()) {
    throw std::logic_error("detected symmetric fractional polymorphism failed verification");
  }
  return omega;
}

}  // namespace vcsp
