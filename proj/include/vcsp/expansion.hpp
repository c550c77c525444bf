#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "vcsp/operation.hpp"
#include "vcsp/polymorphism.hpp"
#include "vcsp/vcsp_core.hpp"

namespace vcsp {

enum class CollectionKind { Ordered, Unordered };

/// A finite sequence (Ordered) or set (Unordered) of m-ary operations.
class Collection {
 public:
  /// Unordered members are sorted and deduplicated.
  Collection(CollectionKind kind, std::vector<Operation> members);

  static Collection projections(int domain_size, int arity, CollectionKind kind);
  /// The class of g under permutation of its arguments, as an Unordered collection.
  static Collection symmetry_class(const Operation& g);

  CollectionKind kind() const noexcept { return kind_; }
  const std::vector<Operation>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  int arity() const noexcept { return members_.front().arity(); }
  int domain_size() const noexcept { return members_.front().domain_size(); }

  /// A single symmetric operation.
  bool is_symmetric_singleton() const;
  /// Members' tables joined by " | ", wrapped in {} or ().
  std::string str() const;

  friend bool operator==(const Collection&, const Collection&) = default;
  friend std::strong_ordering operator<=>(const Collection& a, const Collection& b);

 private:
  CollectionKind kind_;
  std::vector<Operation> members_;
};

/// A probability distribution over collections of one kind and arity.
class GeneralisedFractionalOperation {
 public:
  using Weights = std::map<Collection, Rational>;

  explicit GeneralisedFractionalOperation(Weights weights);
  static GeneralisedFractionalOperation indicator(const Collection& g);

  const Weights& weights() const noexcept { return weights_; }
  int arity() const noexcept { return weights_.begin()->first.arity(); }
  int domain_size() const noexcept { return weights_.begin()->first.domain_size(); }
  Rational weight(const Collection& g) const;

  /// sum_g rho(g) (1/|g|) sum_{h in g} chi_h.
  FractionalOperation flatten() const;

  friend bool operator==(const GeneralisedFractionalOperation&,
                         const GeneralisedFractionalOperation&) = default;

 private:
  Weights weights_;
};

/// sum_g rho(g) f^{|g|}(g(x^1..x^m)) <= f^m(x^1..x^m) over all ordered lists
/// of m dom-f tuples.
FpolVerdict check_generalised_fpol(const Language& language,
                                   const GeneralisedFractionalOperation& rho,
                                   std::size_t cap = kDefaultCheckCap);

/// As check_generalised_fpol with f^{|rhs|}(rhs(x^1..x^m)) on the right.
FpolVerdict check_collection_inequality(const Language& language,
                                        const GeneralisedFractionalOperation& rho,
                                        const Collection& rhs,
                                        std::size_t cap = kDefaultCheckCap);

inline constexpr std::size_t kDefaultSuperpositionCap = 2'000'000;

/// nu_d of the recursion nu_0 = uniform over g,
/// nu_i = nu_{i-1} - (l/2) chi_{i-1} + (l/2) eta_{i-1}, where l is the least
/// weight in supp(nu_{i-1}), chi_{i-1} is uniform over that support and
/// eta_{i-1} averages omega[g_1..g_k] over all k-tuples from it.
FractionalOperation exp_recursion(const Collection& g, const FractionalOperation& omega,
                                  int depth, std::size_t cap = kDefaultSuperpositionCap);

/// nu_d grouped into symmetry classes; a class receives the total weight of
/// its members.
GeneralisedFractionalOperation exp_operator(const Collection& g,
                                            const FractionalOperation& omega, int depth,
                                            std::size_t cap = kDefaultSuperpositionCap);

struct ExpansionNode {
  Collection collection;
  Rational weight;
  std::optional<std::size_t> parent;
  std::vector<std::size_t> children;
  bool alive = true;
};

/// The node-weighted tree of the constructive expansion; node 0 is the root.
class ExpansionTree {
 public:
  explicit ExpansionTree(Collection root);

  const std::vector<ExpansionNode>& nodes() const noexcept { return nodes_; }
  const ExpansionNode& node(std::size_t i) const { return nodes_.at(i); }
  std::size_t alive_count() const;

  std::size_t add_child(std::size_t parent, Collection collection, Rational weight);
  void remove_descendants(std::size_t node);

  bool is_leaf(std::size_t node) const { return nodes_.at(node).children.empty(); }
  /// A proper ancestor holds the same collection.
  bool is_covered(std::size_t node) const;
  /// Leaves below `node` in left-to-right order.
  std::vector<std::size_t> leaves(std::size_t node) const;
  /// nu_g: leaf weights below g divided by w(g), grouped by collection.
  std::map<Collection, Rational> distribution(std::size_t node) const;
  /// Nodes below `node` (itself last) in post-order.
  std::vector<std::size_t> post_order(std::size_t node) const;

 private:
  std::vector<ExpansionNode> nodes_;
};

struct ExpansionOptions {
  /// Restricts the collection set; the projection class is always allowed.
  std::optional<std::set<Collection>> allowed;
  /// When set, invariant (a) and leaf-weight conservation are checked on
  /// every node after the expansion and after each pruning round, and the
  /// output is checked as a fractional polymorphism.
  std::optional<Language> audit;
  int max_depth = 12;
  std::size_t tree_cap = 100'000;
  std::size_t clone_cap = 500'000;
  std::size_t superposition_cap = kDefaultSuperpositionCap;
  /// Lifts the default limit of k <= 2 with m <= 3, or k = 3 with m = 2.
  bool allow_large = false;
};

struct ExpansionResult {
  FractionalOperation omega;
  ExpansionTree tree;          ///< the tree after pruning
  std::size_t expansions = 0;  ///< nodes expanded
  std::size_t pruning_rounds = 0;
  std::size_t audits = 0;      ///< node checks performed
};

/// Thrown when supp(omega) generates no symmetric operation of the target
/// arity within the clone cap, or no depth up to max_depth reaches one.
class GenerationWitnessNotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Builds a symmetric m-ary fractional operation from omega by tree expansion
/// over symmetry classes followed by pruning. Nodes are expanded in DFS
/// pre-order, children in canonical collection order; each pruning round
/// takes the first covering node in post-order.
ExpansionResult expand_to_symmetric(const FractionalOperation& omega, int arity,
                                    const ExpansionOptions& options = {});

}  // namespace vcsp
