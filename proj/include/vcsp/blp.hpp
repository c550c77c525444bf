#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "vcsp/linear_program.hpp"
#include "vcsp/operation.hpp"
#include "vcsp/vcsp_core.hpp"

namespace vcsp {

/// What an LP column of the relaxation stands for.
struct BlpColumn {
  enum class Kind { TermTuple, VariableLabel };
  Kind kind;
  std::size_t owner;  ///< term index or variable index
  std::size_t item;   ///< tuple index into D^arity, or label
};

struct BlpProgram {
  LinearProgram lp;
  std::vector<BlpColumn> columns;
};

/// Columns mu_t(x) for x in dom f_t (terms in order, tuples ascending), then
/// alpha_v(a) (variables in order, labels ascending). All rows are equalities:
/// marginals, then sum_x mu_t(x) = 1, then sum_a alpha_v(a) = 1.
/// Throws std::invalid_argument for an instance without variables.
BlpProgram build_blp(const VcspInstance& instance);

struct TermDistribution {
  std::vector<std::size_t> tuples;  ///< dom f_t, ascending
  std::vector<Rational> probabilities;
};

struct BlpSolution {
  ExtRational value;
  std::vector<TermDistribution> term_distributions;
  std::vector<std::vector<Rational>> var_distributions;  ///< [v][a]
};

struct BlpResult {
  ExtRational value;  ///< inf when the relaxation is infeasible
  std::optional<BlpSolution> solution;
};

BlpResult blp_value(const VcspInstance& instance);

/// Checks normalisation, support inside dom f_t, marginal consistency and
/// that `value` is the objective of the distributions.
bool is_valid_blp_solution(const VcspInstance& instance, const BlpSolution& solution);

/// BLP(I) equals the brute-force optimum (inf = inf counts as equal).
bool blp_solves(const VcspInstance& instance, std::size_t cap = kDefaultEnumerationCap);

/// LCM of every denominator in the solution.
long common_denominator(const BlpSolution& solution);

struct RoundedAssignment {
  Assignment x;
  ExtRational value;
};

/// Reads each alpha_v as an m-multiset and applies every g in supp(omega);
/// returns the best assignment, earliest operation winning ties. Throws
/// std::invalid_argument for a non-symmetric omega or when a denominator does
/// not divide m, and std::logic_error when the rounded value exceeds the BLP
/// value (omega is then not a fractional polymorphism of the language).
RoundedAssignment round_with_polymorphism(const VcspInstance& instance,
                                          const BlpSolution& solution,
                                          const FractionalOperation& omega);

/// As above with omega found by find_symmetric_fpol at arity
/// common_denominator(solution). Throws std::runtime_error when none exists.
RoundedAssignment round_with_polymorphism(const VcspInstance& instance,
                                          const BlpSolution& solution);

/// Fixes variables in ascending order to the smallest label that keeps the
/// BLP value, using unary constant terms. Returns nothing when some variable
/// has no such label or the relaxation is infeasible.
std::optional<RoundedAssignment> self_reduce(const VcspInstance& instance);

}  // namespace vcsp
