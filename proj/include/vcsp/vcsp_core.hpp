#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vcsp/ext_rational.hpp"

namespace vcsp {

/// Labels are 0..k-1 internally; domains in this library are tiny.
using Label = std::uint8_t;
using Tuple = std::vector<Label>;
using Assignment = std::vector<Label>;

inline constexpr int kMaxDomainSize = 64;

/// Row-major (lexicographic) indexing of D^n.
class TupleSpace {
 public:
  TupleSpace(int domain_size, int arity);

  int domain_size() const noexcept { return k_; }
  int arity() const noexcept { return n_; }
  std::size_t size() const noexcept { return size_; }

  std::size_t index_of(std::span<const Label> tuple) const;
  Tuple tuple_at(std::size_t index) const;

 private:
  int k_;
  int n_;
  std::size_t size_;
};

/// k^n, throwing CapExceeded when the result would pass `cap`.
std::size_t checked_power(std::size_t base, std::size_t exponent, std::size_t cap);

class Domain {
 public:
  explicit Domain(int size = 1);
  explicit Domain(std::vector<std::string> label_names);

  int size() const noexcept { return static_cast<int>(names_.size()); }
  const std::string& label_name(Label label) const { return names_.at(label); }
  const std::vector<std::string>& label_names() const noexcept { return names_; }
  bool has_custom_names() const noexcept { return custom_; }
  std::optional<Label> find_label(std::string_view name) const;

  friend bool operator==(const Domain&, const Domain&) = default;

 private:
  std::vector<std::string> names_;
  bool custom_ = false;
};

/// Dense table over D^n with values in Q ∪ {inf}.
class CostFunction {
 public:
  CostFunction(int domain_size, int arity, std::vector<ExtRational> table);

  int domain_size() const noexcept { return space_.domain_size(); }
  int arity() const noexcept { return space_.arity(); }
  const TupleSpace& space() const noexcept { return space_; }
  const std::vector<ExtRational>& table() const noexcept { return table_; }

  const ExtRational& at(std::size_t index) const { return table_.at(index); }
  const ExtRational& operator()(std::span<const Label> tuple) const {
    return table_[space_.index_of(tuple)];
  }

  /// Indices of tuples with finite value, ascending.
  std::vector<std::size_t> dom() const;
  bool is_finite_valued() const;

  friend bool operator==(const CostFunction& a, const CostFunction& b) {
    return a.domain_size() == b.domain_size() && a.arity() == b.arity() && a.table_ == b.table_;
  }

 private:
  TupleSpace space_;
  std::vector<ExtRational> table_;
};

struct NamedFunction {
  std::string name;
  CostFunction function;

  friend bool operator==(const NamedFunction&, const NamedFunction&) = default;
};

/// A named set of cost functions over one domain, kept in insertion order.
class Language {
 public:
  explicit Language(Domain domain = Domain(1)) : domain_(std::move(domain)) {}

  const Domain& domain() const noexcept { return domain_; }
  const std::vector<NamedFunction>& functions() const noexcept { return functions_; }
  std::size_t size() const noexcept { return functions_.size(); }

  void add(std::string name, CostFunction function);
  std::optional<std::size_t> find(std::string_view name) const;
  const CostFunction& function(std::string_view name) const;
  bool is_finite_valued() const;

  friend bool operator==(const Language&, const Language&) = default;

 private:
  Domain domain_;
  std::vector<NamedFunction> functions_;
};

struct Term {
  std::string function;
  std::vector<std::size_t> scope;

  friend bool operator==(const Term&, const Term&) = default;
};

class VcspInstance {
 public:
  VcspInstance(Language language, std::size_t var_count, std::vector<Term> terms);

  const Language& language() const noexcept { return language_; }
  std::size_t var_count() const noexcept { return var_count_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  const CostFunction& term_function(std::size_t t) const {
    return language_.functions()[function_index_[t]].function;
  }
  int domain_size() const noexcept { return language_.domain().size(); }

  /// Copy with one more term; the function is added to the language when new.
  VcspInstance with_term(const std::string& name, const CostFunction& function,
                         std::vector<std::size_t> scope) const;

  friend bool operator==(const VcspInstance& a, const VcspInstance& b) {
    return a.language_ == b.language_ && a.var_count_ == b.var_count_ && a.terms_ == b.terms_;
  }

 private:
  Language language_;
  std::size_t var_count_;
  std::vector<Term> terms_;
  std::vector<std::size_t> function_index_;
};

ExtRational evaluate_instance(const VcspInstance& instance, std::span<const Label> x);

/// (1/m) * sum_i f(x^i).
ExtRational average_value(const CostFunction& f, std::span<const Tuple> tuples);

struct OracleResult {
  ExtRational value;
  std::optional<Assignment> argmin;  ///< Lexicographically smallest minimiser.
};

inline constexpr std::size_t kDefaultEnumerationCap = 10'000'000;

/// Exhaustive minimum over all k^|V| assignments.
OracleResult brute_force_optimum(const VcspInstance& instance,
                                 std::size_t cap = kDefaultEnumerationCap);

}  // namespace vcsp
