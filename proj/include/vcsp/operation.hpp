#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "vcsp/ext_rational.hpp"
#include "vcsp/vcsp_core.hpp"

namespace vcsp {

/// An m-ary operation on D = {0..k-1}, stored as a row-major table of k^m labels.
class Operation {
 public:
  Operation(int domain_size, int arity, std::vector<Label> table);

  static Operation projection(int domain_size, int arity, int coordinate);
  static Operation constant(int domain_size, int arity, Label value);
  static Operation from_function(int domain_size, int arity,
                                 const std::function<Label(std::span<const Label>)>& fn);

  int domain_size() const noexcept { return space_.domain_size(); }
  int arity() const noexcept { return space_.arity(); }
  const TupleSpace& space() const noexcept { return space_; }
  const std::vector<Label>& table() const noexcept { return table_; }

  Label at(std::size_t index) const { return table_[index]; }
  Label operator()(std::span<const Label> args) const { return table_[space_.index_of(args)]; }
  Label operator()(Label x, Label y) const { return table_[x * domain_size() + y]; }

  /// Applies the operation coordinate-wise to m tuples of equal length.
  Tuple apply(std::span<const Tuple> tuples) const;

  /// Space-separated table entries.
  std::string str() const;

  friend bool operator==(const Operation& a, const Operation& b) {
    return a.arity() == b.arity() && a.domain_size() == b.domain_size() && a.table_ == b.table_;
  }
  /// Canonical order: arity, then domain size, then table lexicographically.
  friend std::strong_ordering operator<=>(const Operation& a, const Operation& b);

 private:
  TupleSpace space_;
  std::vector<Label> table_;
};

bool is_symmetric(const Operation& g);

/// h[g_1,...,g_n](x) = h(g_1(x),...,g_n(x)).
Operation superpose(const Operation& h, std::span<const Operation> gs);

/// Sorted m-tuples over D (the m-multisets), enumerated in lexicographic order.
class MultisetSpace {
 public:
  MultisetSpace(int domain_size, int arity);

  int domain_size() const noexcept { return k_; }
  int arity() const noexcept { return m_; }
  std::size_t size() const noexcept { return multisets_.size(); }

  const Tuple& multiset_at(std::size_t index) const { return multisets_[index]; }
  /// Index of the multiset of `labels`; the input need not be sorted.
  std::size_t index_of(std::span<const Label> labels) const;

 private:
  int k_;
  int m_;
  std::vector<Tuple> multisets_;
  std::map<Tuple, std::size_t> index_;
};

/// C(n, r), throwing CapExceeded past `cap`.
std::size_t binomial(std::size_t n, std::size_t r, std::size_t cap);

/// A symmetric operation given as a map from m-multisets to labels.
class SymmetricOperation {
 public:
  SymmetricOperation(int domain_size, int arity, std::vector<Label> values);

  /// Throws std::invalid_argument when g is not symmetric.
  static SymmetricOperation from_operation(const Operation& g);

  int domain_size() const noexcept { return k_; }
  int arity() const noexcept { return m_; }
  const std::vector<Label>& values() const noexcept { return values_; }
  Operation to_operation() const;

  friend bool operator==(const SymmetricOperation&, const SymmetricOperation&) = default;

 private:
  int k_;
  int m_;
  std::vector<Label> values_;
};

/// A probability distribution over m-ary operations with rational weights.
class FractionalOperation {
 public:
  using Weights = std::map<Operation, Rational>;

  /// Weights must be positive, sum to exactly 1, and share arity and domain.
  explicit FractionalOperation(Weights weights);
  FractionalOperation(std::initializer_list<std::pair<const Operation, Rational>> weights)
      : FractionalOperation(Weights(weights)) {}

  static FractionalOperation indicator(const Operation& g);
  /// (1/m) sum_i e_i^(m).
  static FractionalOperation projection_average(int domain_size, int arity);

  int arity() const noexcept { return weights_.begin()->first.arity(); }
  int domain_size() const noexcept { return weights_.begin()->first.domain_size(); }
  const Weights& weights() const noexcept { return weights_; }
  std::vector<Operation> support() const;
  Rational weight(const Operation& g) const;
  bool is_symmetric() const;

  friend bool operator==(const FractionalOperation&, const FractionalOperation&) = default;

 private:
  Weights weights_;
};

/// omega[g_1,...,g_n], merging the weights of colliding superpositions.
FractionalOperation superpose_fractional(const FractionalOperation& omega,
                                         std::span<const Operation> gs);

}  // namespace vcsp
