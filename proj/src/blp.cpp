#include "vcsp/blp.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

#include "vcsp/polymorphism.hpp"

namespace vcsp {

BlpProgram build_blp(const VcspInstance& instance) {
  const std::size_t k = static_cast<std::size_t>(instance.domain_size());
  const std::size_t n = instance.var_count();
  if (n == 0) throw std::invalid_argument("the relaxation needs at least one variable");

  std::vector<BlpColumn> columns;
  std::vector<std::vector<std::size_t>> term_columns(instance.terms().size());
  for (std::size_t t = 0; t < instance.terms().size(); ++t) {
    for (std::size_t x : instance.term_function(t).dom()) {
      term_columns[t].push_back(columns.size());
      columns.push_back({BlpColumn::Kind::TermTuple, t, x});
    }
  }
  const std::size_t alpha_start = columns.size();
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t a = 0; a < k; ++a) columns.push_back({BlpColumn::Kind::VariableLabel, v, a});
  }

  LinearProgram lp(columns.size());
  std::vector<Rational> objective(columns.size());
  for (std::size_t t = 0; t < instance.terms().size(); ++t) {
    const auto& f = instance.term_function(t);
    for (std::size_t c : term_columns[t]) objective[c] = f.at(columns[c].item).finite_value();
  }
  lp.set_objective(std::move(objective));

  std::vector<Rational> row(columns.size());
  auto clear = [&] { std::fill(row.begin(), row.end(), Rational(0)); };
  for (std::size_t t = 0; t < instance.terms().size(); ++t) {
    const auto& f = instance.term_function(t);
    const auto& scope = instance.terms()[t].scope;
    for (std::size_t i = 0; i < scope.size(); ++i) {
      for (std::size_t a = 0; a < k; ++a) {
        clear();
        for (std::size_t c : term_columns[t]) {
          if (f.space().tuple_at(columns[c].item)[i] == a) row[c] = 1;
        }
        row[alpha_start + scope[i] * k + a] -= 1;
        lp.add_constraint(row, Relation::Equal, 0);
      }
    }
  }
  for (std::size_t t = 0; t < instance.terms().size(); ++t) {
    clear();
    for (std::size_t c : term_columns[t]) row[c] = 1;
    lp.add_constraint(row, Relation::Equal, 1);
  }
  for (std::size_t v = 0; v < n; ++v) {
    clear();
    for (std::size_t a = 0; a < k; ++a) row[alpha_start + v * k + a] = 1;
    lp.add_constraint(row, Relation::Equal, 1);
  }
  return {std::move(lp), std::move(columns)};
}

BlpResult blp_value(const VcspInstance& instance) {
  if (instance.var_count() == 0) {
    return {ExtRational(0), BlpSolution{ExtRational(0), {}, {}}};
  }
  const BlpProgram program = build_blp(instance);
  const LpOutcome outcome = solve_lp(program.lp);
  if (outcome.status == LpStatus::Infeasible) return {ExtRational::infinity(), std::nullopt};
  if (outcome.status == LpStatus::Unbounded) {
    throw std::logic_error("the relaxation of a finite instance cannot be unbounded");
  }

  const std::size_t k = static_cast<std::size_t>(instance.domain_size());
  BlpSolution solution;
  solution.value = ExtRational(outcome.value);
  solution.term_distributions.resize(instance.terms().size());
  solution.var_distributions.assign(instance.var_count(), std::vector<Rational>(k));
  for (std::size_t c = 0; c < program.columns.size(); ++c) {
    const auto& col = program.columns[c];
    if (col.kind == BlpColumn::Kind::TermTuple) {
      auto& dist = solution.term_distributions[col.owner];
      dist.tuples.push_back(col.item);
      dist.probabilities.push_back(outcome.point[c]);
    } else {
      solution.var_distributions[col.owner][col.item] = outcome.point[c];
    }
  }
  return {solution.value, std::move(solution)};
}

bool is_valid_blp_solution(const VcspInstance& instance, const BlpSolution& solution) {
  const std::size_t k = static_cast<std::size_t>(instance.domain_size());
  if (solution.term_distributions.size() != instance.terms().size()) return false;
  if (solution.var_distributions.size() != instance.var_count()) return false;
  for (const auto& alpha : solution.var_distributions) {
    if (alpha.size() != k) return false;
    Rational total = 0;
    for (const auto& p : alpha) {
      if (sgn(p) < 0) return false;
      total += p;
    }
    if (total != 1) return false;
  }
  Rational objective = 0;
  for (std::size_t t = 0; t < instance.terms().size(); ++t) {
    const auto& f = instance.term_function(t);
    const auto& scope = instance.terms()[t].scope;
    const auto& dist = solution.term_distributions[t];
    if (dist.tuples.size() != dist.probabilities.size()) return false;
    Rational total = 0;
    std::vector<std::vector<Rational>> marginals(scope.size(), std::vector<Rational>(k));
    for (std::size_t j = 0; j < dist.tuples.size(); ++j) {
      const Rational& p = dist.probabilities[j];
      if (sgn(p) < 0) return false;
      if (dist.tuples[j] >= f.space().size()) return false;
      const ExtRational& value = f.at(dist.tuples[j]);
      if (sgn(p) > 0 && value.is_infinite()) return false;
      if (sgn(p) > 0) objective += p * value.finite_value();
      total += p;
      const Tuple x = f.space().tuple_at(dist.tuples[j]);
      for (std::size_t i = 0; i < scope.size(); ++i) marginals[i][x[i]] += p;
    }
    if (total != 1) return false;
    for (std::size_t i = 0; i < scope.size(); ++i) {
      if (marginals[i] != solution.var_distributions[scope[i]]) return false;
    }
  }
  return solution.value == ExtRational(objective);
}

bool blp_solves(const VcspInstance& instance, std::size_t cap) {
  const OracleResult oracle = brute_force_optimum(instance, cap);
  return blp_value(instance).value == oracle.value;
}

long common_denominator(const BlpSolution& solution) {
  mpz_class lcm = 1;
  auto absorb = [&](const Rational& q) { mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t()); };
  for (const auto& dist : solution.term_distributions) {
    for (const auto& p : dist.probabilities) absorb(p);
  }
  for (const auto& alpha : solution.var_distributions) {
    for (const auto& p : alpha) absorb(p);
  }
  if (!lcm.fits_slong_p()) throw std::overflow_error("common denominator too large");
  return lcm.get_si();
}

RoundedAssignment round_with_polymorphism(const VcspInstance& instance,
                                          const BlpSolution& solution,
                                          const FractionalOperation& omega) {
  if (!omega.is_symmetric()) throw std::invalid_argument("rounding needs a symmetric fractional operation");
  if (omega.domain_size() != instance.domain_size()) {
    throw std::invalid_argument("fractional operation and instance use different domains");
  }
  const long m = omega.arity();
  const long denominator = common_denominator(solution);
  if (m % denominator != 0) {
    throw std::invalid_argument("solution denominator " + std::to_string(denominator) +
                                " does not divide the arity " + std::to_string(m));
  }

  // alpha_v as a sorted m-tuple of labels: label a repeated m * alpha_v(a) times.
  std::vector<Tuple> multisets;
  for (const auto& alpha : solution.var_distributions) {
    Tuple labels;
    for (std::size_t a = 0; a < alpha.size(); ++a) {
      const Rational copies = alpha[a] * m;
      for (long r = 0; r < copies.get_num().get_si(); ++r) labels.push_back(static_cast<Label>(a));
    }
    multisets.push_back(std::move(labels));
  }

  std::optional<RoundedAssignment> best;
  for (const auto& g : omega.support()) {
    Assignment x;
    for (const auto& labels : multisets) x.push_back(g(labels));
    ExtRational value = evaluate_instance(instance, x);
    if (!best || value < best->value) best = RoundedAssignment{std::move(x), std::move(value)};
  }
  if (best->value > solution.value) {
    throw std::logic_error("rounded value " + best->value.str() + " exceeds the BLP value " +
                           solution.value.str());
  }
  return *best;
}

RoundedAssignment round_with_polymorphism(const VcspInstance& instance,
                                          const BlpSolution& solution) {
  const long m = common_denominator(solution);
  auto omega = find_symmetric_fpol(instance.language(), static_cast<int>(m));
  if (!omega) {
    throw std::runtime_error("no symmetric fractional polymorphism of arity " + std::to_string(m));
  }
  return round_with_polymorphism(instance, solution, *omega);
}

std::optional<RoundedAssignment> self_reduce(const VcspInstance& instance) {
  const ExtRational target = blp_value(instance).value;
  if (target.is_infinite()) return std::nullopt;
  const int k = instance.domain_size();

  VcspInstance current = instance;
  Assignment x(instance.var_count(), 0);
  for (std::size_t v = 0; v < instance.var_count(); ++v) {
    bool fixed = false;
    for (int d = 0; d < k && !fixed; ++d) {
      std::vector<ExtRational> table(k, ExtRational::infinity());
      table[d] = 0;
      VcspInstance candidate = current.with_term("@const" + std::to_string(d),
                                                 CostFunction(k, 1, std::move(table)), {v});
      if (blp_value(candidate).value == target) {
        current = std::move(candidate);
        x[v] = static_cast<Label>(d);
        fixed = true;
      }
    }
    if (!fixed) return std::nullopt;
  }
  ExtRational value = evaluate_instance(instance, x);
  if (value != target) return std::nullopt;
  return RoundedAssignment{std::move(x), std::move(value)};
}

}  // namespace vcsp
