#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "vcsp/operation.hpp"
#include "vcsp/vcsp_core.hpp"

namespace vcsp {

struct OperationPair {
  Operation first;
  Operation second;
};

/// 1/2 g1 + 1/2 g2 (a single operation with weight 1 when g1 == g2).
FractionalOperation multimorphism(const Operation& g1, const Operation& g2);

bool is_semilattice_operation(const Operation& g);

/// Throws std::invalid_argument naming the first failing axiom:
/// idempotence, commutativity, associativity or absorption.
void validate_lattice(const Operation& meet, const Operation& join);

/// Validates the lattice and returns 1/2 meet + 1/2 join.
FractionalOperation lattice_multimorphism(const Operation& meet, const Operation& join);

/// min and max on the chain 0 < 1 < ... < k-1.
OperationPair chain_lattice(int domain_size);

/// (min_0, max_0) on {0..k}; the domain has k+1 labels.
OperationPair k_submodular_ops(int k);

/// max_1 on {0,1,2}: 1 on the pairs {1,2}, max otherwise.
Operation max1_operation();

/// 1/2 min_0 + alpha/2 max_0 + (1-alpha)/2 max_1 on {0,1,2}, 0 < alpha <= 1.
FractionalOperation skew_bisubmodular_fpol(const Rational& alpha);

/// A rooted tree on {0..k-1} given by parent links; the root is its own parent.
class RootedTree {
 public:
  explicit RootedTree(std::vector<Label> parent);

  int size() const noexcept { return static_cast<int>(parent_.size()); }
  Label root() const noexcept { return root_; }
  Label parent(Label a) const { return parent_.at(a); }
  const std::vector<Label>& parents() const noexcept { return parent_; }
  int depth(Label a) const { return depth_.at(a); }

  /// a is an ancestor of b (a on the path from b to the root, a == b included).
  bool is_ancestor(Label a, Label b) const;
  Label lowest_common_ancestor(Label a, Label b) const;
  /// Vertices of the path from a to b, both ends included.
  std::vector<Label> path(Label a, Label b) const;
  int distance(Label a, Label b) const;

  friend bool operator==(const RootedTree& x, const RootedTree& y) { return x.parent_ == y.parent_; }

 private:
  std::vector<Label> parent_;
  std::vector<int> depth_;
  Label root_ = 0;
};

OperationPair strong_tree_ops(const RootedTree& tree);
OperationPair weak_tree_ops(const RootedTree& tree);

/// A strict partial order on {0..k-1} relating every pair except {b, c}.
class DefectPoset {
 public:
  /// less[x][y] means x < y.
  DefectPoset(int size, Label b, Label c, std::vector<std::vector<bool>> less);

  int size() const noexcept { return static_cast<int>(less_.size()); }
  Label b() const noexcept { return b_; }
  Label c() const noexcept { return c_; }
  bool less(Label x, Label y) const { return less_.at(x).at(y); }
  const std::vector<std::vector<bool>>& relation() const noexcept { return less_; }

  friend bool operator==(const DefectPoset&, const DefectPoset&) = default;

 private:
  Label b_;
  Label c_;
  std::vector<std::vector<bool>> less_;
};

/// g1 = meet and g2 = join off the pair {b, c}. On {b, c} the images are the
/// greatest common lower bound and least common upper bound outside {b, c}
/// when both exist, otherwise the order-minimal pair u < v outside {b, c}.
/// Throws std::invalid_argument when no admissible pair exists.
OperationPair one_defect_ops(const DefectPoset& poset);

/// h(x_1..x_m) = g(h_1, g(h_2, ..., g(h_{M-1}, h_M))) over the M = C(m,2)
/// terms h_i = g(x_p, x_q), p < q, in lexicographic order. g(b, c) must lie
/// below both b and c or above both. The result is checked to be symmetric.
Operation one_defect_symmetric(const DefectPoset& poset, const Operation& g, int arity);

/// Random finite-valued function with integer values in [0, value_bound]
/// admitting omega. Candidate summands of four shapes (dense random, unary in
/// one coordinate, box indicator, box complement) are drawn and kept when they
/// admit omega; the function is a sum of three accepted summands. Every
/// candidate counts towards `max_attempts`; exhausting it throws
/// std::runtime_error. Deterministic for a given seed.
CostFunction sample_admitting_function(const FractionalOperation& omega, int arity,
                                       int value_bound, std::uint64_t seed,
                                       std::size_t max_attempts = 100'000);

}  // namespace vcsp
