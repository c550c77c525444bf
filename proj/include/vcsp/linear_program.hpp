#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "vcsp/ext_rational.hpp"

namespace vcsp {

enum class Relation { Equal, LessEqual, GreaterEqual };

struct LinearConstraint {
  std::vector<Rational> coefficients;
  Relation relation = Relation::Equal;
  Rational rhs;
};

/// A minimisation LP over exact rationals. Variables are nonnegative unless
/// flagged free.
class LinearProgram {
 public:
  explicit LinearProgram(std::size_t var_count);

  std::size_t var_count() const noexcept { return objective_.size(); }
  const std::vector<Rational>& objective() const noexcept { return objective_; }
  const std::vector<LinearConstraint>& constraints() const noexcept { return constraints_; }
  bool is_nonnegative(std::size_t var) const { return nonnegative_.at(var); }

  void set_objective(std::vector<Rational> objective);
  void set_objective_coefficient(std::size_t var, const Rational& value);
  void set_nonnegative(std::size_t var, bool nonnegative);
  void add_constraint(std::vector<Rational> coefficients, Relation relation, const Rational& rhs);

  friend bool operator==(const LinearProgram&, const LinearProgram&) = default;

 private:
  std::vector<Rational> objective_;
  std::vector<LinearConstraint> constraints_;
  std::vector<bool> nonnegative_;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string to_string(LpStatus status);

/// Solver result together with the certificate that backs it.
///
/// Optimal: `value`, `point`, and `multipliers` holding a dual solution with
/// the same objective. Infeasible: `multipliers` is a Farkas ray, one entry per
/// constraint. Unbounded: `ray_origin` is feasible and `ray` is an improving
/// recession direction.
struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  Rational value;
  std::vector<Rational> point;
  std::vector<Rational> multipliers;
  std::vector<Rational> ray_origin;
  std::vector<Rational> ray;

  friend bool operator==(const LpOutcome&, const LpOutcome&) = default;
};

/// Two-phase primal simplex on a dense rational tableau with Bland's rule.
/// Deterministic: equal inputs give equal outcomes.
LpOutcome solve_lp(const LinearProgram& lp);

/// Checks an outcome against `lp` by exact substitution. Optimal points must
/// be feasible with matching objective (and a supplied dual must certify
/// optimality); Infeasible/Unbounded outcomes are checked through their
/// certificate, or by re-solving when none is attached.
bool verify_certificate(const LinearProgram& lp, const LpOutcome& outcome);

/// Installs a callback invoked after every solve_lp call on this process
/// while the guard is alive. Guards nest; the innermost one wins.
class ScopedSolveObserver {
 public:
  using Callback = std::function<void(const LinearProgram&, const LpOutcome&)>;
  explicit ScopedSolveObserver(Callback callback);
  ~ScopedSolveObserver();
  ScopedSolveObserver(const ScopedSolveObserver&) = delete;
  ScopedSolveObserver& operator=(const ScopedSolveObserver&) = delete;

 private:
  Callback previous_;
};

}  // namespace vcsp
