#include <mutex>
#include <optional>
#include <stdexcept>
#include <utility>

#include "vcsp/linear_program.hpp"

namespace vcsp {

LinearProgram::LinearProgram(std::size_t var_count)
    : objective_(var_count), nonnegative_(var_count, true) {
  if (var_count == 0) throw std::invalid_argument("LinearProgram needs at least one variable");
}

void LinearProgram::set_objective(std::vector<Rational> objective) {
  if (objective.size() != var_count()) {
    throw std::invalid_argument("objective length does not match variable count");
  }
  objective_ = std::move(objective);
}

void LinearProgram::set_objective_coefficient(std::size_t var, const Rational& value) {
  objective_.at(var) = value;
}

void LinearProgram::set_nonnegative(std::size_t var, bool nonnegative) {
  nonnegative_.at(var) = nonnegative;
}

void LinearProgram::add_constraint(std::vector<Rational> coefficients, Relation relation,
                                   const Rational& rhs) {
  if (coefficients.size() != var_count()) {
    throw std::invalid_argument("constraint row length does not match variable count");
  }
  constraints_.push_back({std::move(coefficients), relation, rhs});
}

std::string to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal:
      return "optimal";
    case LpStatus::Infeasible:
      return "infeasible";
    case LpStatus::Unbounded:
      return "unbounded";
  }
  return "unknown";
}

namespace {

std::mutex observer_mutex;
ScopedSolveObserver::Callback observer;

enum class ColumnKind { Structural, Slack, Artificial };

// Standard form: min c'x, Ax = b, x >= 0, b >= 0. Free variables are split
// into a plus and a minus column; rows with negative rhs are negated.
class Tableau {
 public:
  explicit Tableau(const LinearProgram& lp) : lp_(lp) {
    const std::size_t n = lp.var_count();
    for (std::size_t j = 0; j < n; ++j) {
      plus_col_.push_back(add_column(ColumnKind::Structural));
      minus_col_.push_back(lp.is_nonnegative(j) ? npos : add_column(ColumnKind::Structural));
    }
    const auto& rows = lp.constraints();
    rows_ = rows.size();
    row_sign_.resize(rows_, 1);
    std::vector<Relation> relation(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      relation[i] = rows[i].relation;
      if (sgn(rows[i].rhs) < 0) {
        row_sign_[i] = -1;
        if (relation[i] == Relation::LessEqual) {
          relation[i] = Relation::GreaterEqual;
        } else if (relation[i] == Relation::GreaterEqual) {
          relation[i] = Relation::LessEqual;
        }
      }
    }
    slack_col_.assign(rows_, npos);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (relation[i] != Relation::Equal) slack_col_[i] = add_column(ColumnKind::Slack);
    }
    init_col_.assign(rows_, npos);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (relation[i] == Relation::LessEqual) {
        init_col_[i] = slack_col_[i];
      } else {
        init_col_[i] = add_column(ColumnKind::Artificial);
      }
    }

    cols_ = kind_.size();
    a_.assign(rows_, std::vector<Rational>(cols_ + 1));
    for (std::size_t i = 0; i < rows_; ++i) {
      auto& row = a_[i];
      const auto& src = rows[i];
      for (std::size_t j = 0; j < n; ++j) {
        if (sgn(src.coefficients[j]) == 0) continue;
        row[plus_col_[j]] = src.coefficients[j] * row_sign_[i];
        if (minus_col_[j] != npos) row[minus_col_[j]] = -row[plus_col_[j]];
      }
      if (slack_col_[i] != npos) row[slack_col_[i]] = relation[i] == Relation::LessEqual ? 1 : -1;
      if (kind_[init_col_[i]] == ColumnKind::Artificial) row[init_col_[i]] = 1;
      row[cols_] = src.rhs * row_sign_[i];
    }
    basis_ = init_col_;
  }

  // Returns the Farkas ray when phase 1 proves infeasibility.
  std::optional<std::vector<Rational>> phase_one() {
    std::vector<Rational> cost(cols_);
    bool any_artificial = false;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (kind_[j] == ColumnKind::Artificial) {
        cost[j] = 1;
        any_artificial = true;
      }
    }
    if (!any_artificial) return std::nullopt;
    load_costs(cost);
    run(/*allow_artificial=*/true);
    if (sgn(objective_value_) > 0) return multipliers();
    drive_out_artificials();
    return std::nullopt;
  }

  // Returns the entering column if the LP is unbounded.
  std::optional<std::size_t> phase_two() {
    std::vector<Rational> cost(cols_);
    for (std::size_t j = 0; j < lp_.var_count(); ++j) {
      cost[plus_col_[j]] = lp_.objective()[j];
      if (minus_col_[j] != npos) cost[minus_col_[j]] = -lp_.objective()[j];
    }
    load_costs(cost);
    return run(/*allow_artificial=*/false);
  }

  const Rational& objective_value() const { return objective_value_; }

  std::vector<Rational> point() const {
    std::vector<Rational> value(cols_);
    for (std::size_t r = 0; r < rows_; ++r) value[basis_[r]] = a_[r][cols_];
    return to_original(value);
  }

  std::vector<Rational> ray(std::size_t entering) const {
    std::vector<Rational> direction(cols_);
    direction[entering] = 1;
    for (std::size_t r = 0; r < rows_; ++r) direction[basis_[r]] = -a_[r][entering];
    return to_original(direction);
  }

  // y = c_B' B^{-1}, read from the columns that formed the initial basis.
  std::vector<Rational> multipliers() const {
    std::vector<Rational> y(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      Rational sum;
      for (std::size_t r = 0; r < rows_; ++r) {
        const Rational& cb = cost_[basis_[r]];
        if (sgn(cb) != 0 && sgn(a_[r][init_col_[i]]) != 0) sum += cb * a_[r][init_col_[i]];
      }
      y[i] = sum * row_sign_[i];
    }
    return y;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t add_column(ColumnKind kind) {
    kind_.push_back(kind);
    return kind_.size() - 1;
  }

  std::vector<Rational> to_original(const std::vector<Rational>& standard) const {
    std::vector<Rational> x(lp_.var_count());
    for (std::size_t j = 0; j < x.size(); ++j) {
      x[j] = standard[plus_col_[j]];
      if (minus_col_[j] != npos) x[j] -= standard[minus_col_[j]];
    }
    return x;
  }

  void load_costs(std::vector<Rational> cost) {
    cost_ = std::move(cost);
    reduced_ = cost_;
    objective_value_ = 0;
    for (std::size_t r = 0; r < rows_; ++r) {
      const Rational& cb = cost_[basis_[r]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (sgn(a_[r][j]) != 0) reduced_[j] -= cb * a_[r][j];
      }
      objective_value_ += cb * a_[r][cols_];
    }
  }

  // Bland's rule: lowest-index improving column, then the minimum-ratio row
  // with the lowest-index basic variable.
  std::optional<std::size_t> run(bool allow_artificial) {
    for (;;) {
      std::size_t entering = npos;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (!allow_artificial && kind_[j] == ColumnKind::Artificial) continue;
        if (sgn(reduced_[j]) < 0) {
          entering = j;
          break;
        }
      }
      if (entering == npos) return std::nullopt;

      std::size_t leaving = npos;
      Rational best_ratio;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (sgn(a_[r][entering]) <= 0) continue;
        Rational ratio = a_[r][cols_] / a_[r][entering];
        if (leaving == npos || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leaving])) {
          leaving = r;
          best_ratio = std::move(ratio);
        }
      }
      if (leaving == npos) return entering;
      pivot(leaving, entering);
    }
  }

  void pivot(std::size_t p, std::size_t q) {
    auto& prow = a_[p];
    const Rational inv = 1 / prow[q];
    std::vector<std::size_t> nonzero;
    for (std::size_t j = 0; j <= cols_; ++j) {
      if (sgn(prow[j]) == 0) continue;
      prow[j] *= inv;
      nonzero.push_back(j);
    }
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == p || sgn(a_[r][q]) == 0) continue;
      const Rational factor = a_[r][q];
      auto& row = a_[r];
      for (std::size_t j : nonzero) row[j] -= factor * prow[j];
    }
    if (sgn(reduced_[q]) != 0) {
      const Rational factor = reduced_[q];
      for (std::size_t j : nonzero) {
        if (j == cols_) {
          objective_value_ += factor * prow[j];
        } else {
          reduced_[j] -= factor * prow[j];
        }
      }
    }
    basis_[p] = q;
  }

  // Pivots zero-valued artificials out of the basis where possible; rows with
  // no nonzero non-artificial entry are redundant and keep their artificial.
  void drive_out_artificials() {
    for (std::size_t r = 0; r < rows_; ++r) {
      if (kind_[basis_[r]] != ColumnKind::Artificial) continue;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (kind_[j] != ColumnKind::Artificial && sgn(a_[r][j]) != 0) {
          pivot(r, j);
          break;
        }
      }
    }
  }

  const LinearProgram& lp_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<ColumnKind> kind_;
  std::vector<std::size_t> plus_col_;
  std::vector<std::size_t> minus_col_;
  std::vector<std::size_t> slack_col_;
  std::vector<std::size_t> init_col_;
  std::vector<int> row_sign_;
  std::vector<std::vector<Rational>> a_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> cost_;
  std::vector<Rational> reduced_;
  Rational objective_value_;
};

LpOutcome solve_uninstrumented(const LinearProgram& lp) {
  Tableau tableau(lp);
  LpOutcome outcome;
  if (auto farkas = tableau.phase_one()) {
    outcome.status = LpStatus::Infeasible;
    outcome.multipliers = std::move(*farkas);
    return outcome;
  }
  if (auto entering = tableau.phase_two()) {
    outcome.status = LpStatus::Unbounded;
    outcome.ray_origin = tableau.point();
    outcome.ray = tableau.ray(*entering);
    return outcome;
  }
  outcome.status = LpStatus::Optimal;
  outcome.value = tableau.objective_value();
  outcome.point = tableau.point();
  outcome.multipliers = tableau.multipliers();
  return outcome;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational sum;
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (sgn(a[j]) != 0 && sgn(b[j]) != 0) sum += a[j] * b[j];
  }
  return sum;
}

bool satisfies(const LinearConstraint& row, const Rational& lhs) {
  switch (row.relation) {
    case Relation::Equal:
      return lhs == row.rhs;
    case Relation::LessEqual:
      return lhs <= row.rhs;
    case Relation::GreaterEqual:
      return lhs >= row.rhs;
  }
  return false;
}

bool is_feasible(const LinearProgram& lp, const std::vector<Rational>& x) {
  if (x.size() != lp.var_count()) return false;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (lp.is_nonnegative(j) && sgn(x[j]) < 0) return false;
  }
  for (const auto& row : lp.constraints()) {
    if (!satisfies(row, dot(row.coefficients, x))) return false;
  }
  return true;
}

// Sign pattern a multiplier must have for a row of the given relation, so that
// y_i * (a_i x) >= y_i * b_i holds for every feasible x.
bool multiplier_sign_ok(Relation relation, const Rational& y) {
  switch (relation) {
    case Relation::Equal:
      return true;
    case Relation::LessEqual:
      return sgn(y) <= 0;
    case Relation::GreaterEqual:
      return sgn(y) >= 0;
  }
  return false;
}

// Returns c - sum_i y_i a_i (or -sum_i y_i a_i when `objective` is null).
std::vector<Rational> reduced_costs(const LinearProgram& lp, const std::vector<Rational>& y,
                                    bool with_objective) {
  std::vector<Rational> r(lp.var_count());
  if (with_objective) r = lp.objective();
  const auto& rows = lp.constraints();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (sgn(y[i]) == 0) continue;
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (sgn(rows[i].coefficients[j]) != 0) r[j] -= y[i] * rows[i].coefficients[j];
    }
  }
  return r;
}

bool verify_dual(const LinearProgram& lp, const std::vector<Rational>& y, const Rational& value) {
  const auto& rows = lp.constraints();
  if (y.size() != rows.size()) return false;
  Rational bound;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!multiplier_sign_ok(rows[i].relation, y[i])) return false;
    bound += y[i] * rows[i].rhs;
  }
  const auto r = reduced_costs(lp, y, true);
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (lp.is_nonnegative(j) ? sgn(r[j]) < 0 : sgn(r[j]) != 0) return false;
  }
  return bound == value;
}

bool verify_farkas(const LinearProgram& lp, const std::vector<Rational>& y) {
  const auto& rows = lp.constraints();
  if (y.size() != rows.size()) return false;
  Rational bound;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!multiplier_sign_ok(rows[i].relation, y[i])) return false;
    bound += y[i] * rows[i].rhs;
  }
  // Combined row: sum_i y_i a_i = -r.
  const auto r = reduced_costs(lp, y, false);
  for (std::size_t j = 0; j < r.size(); ++j) {
    if (lp.is_nonnegative(j) ? sgn(r[j]) < 0 : sgn(r[j]) != 0) return false;
  }
  return sgn(bound) > 0;
}

bool verify_ray(const LinearProgram& lp, const std::vector<Rational>& origin,
                const std::vector<Rational>& ray) {
  if (!is_feasible(lp, origin) || ray.size() != lp.var_count()) return false;
  for (std::size_t j = 0; j < ray.size(); ++j) {
    if (lp.is_nonnegative(j) && sgn(ray[j]) < 0) return false;
  }
  for (const auto& row : lp.constraints()) {
    const int s = sgn(dot(row.coefficients, ray));
    if (row.relation == Relation::Equal && s != 0) return false;
    if (row.relation == Relation::LessEqual && s > 0) return false;
    if (row.relation == Relation::GreaterEqual && s < 0) return false;
  }
  return sgn(dot(lp.objective(), ray)) < 0;
}

}  // namespace

LpOutcome solve_lp(const LinearProgram& lp) {
  LpOutcome outcome = solve_uninstrumented(lp);
  ScopedSolveObserver::Callback callback;
  {
    std::lock_guard lock(observer_mutex);
    callback = observer;
  }
  if (callback) callback(lp, outcome);
  return outcome;
}

bool verify_certificate(const LinearProgram& lp, const LpOutcome& outcome) {
  switch (outcome.status) {
    case LpStatus::Optimal:
      if (!is_feasible(lp, outcome.point)) return false;
      if (dot(lp.objective(), outcome.point) != outcome.value) return false;
      return outcome.multipliers.empty() || verify_dual(lp, outcome.multipliers, outcome.value);
    case LpStatus::Infeasible:
      if (!outcome.multipliers.empty()) return verify_farkas(lp, outcome.multipliers);
      return solve_uninstrumented(lp).status == LpStatus::Infeasible;
    case LpStatus::Unbounded:
      if (!outcome.ray.empty()) return verify_ray(lp, outcome.ray_origin, outcome.ray);
      return solve_uninstrumented(lp).status == LpStatus::Unbounded;
  }
  return false;
}

ScopedSolveObserver::ScopedSolveObserver(Callback callback) {
  std::lock_guard lock(observer_mutex);
  previous_ = std::exchange(observer, std::move(callback));
}

ScopedSolveObserver::~ScopedSolveObserver() {
  std::lock_guard lock(observer_mutex);
  observer = std::move(previous_);
}

}  // namespace vcsp
