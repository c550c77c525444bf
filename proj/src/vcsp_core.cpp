#include "vcsp/vcsp_core.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "vcsp/errors.hpp"

namespace vcsp {

std::size_t checked_power(std::size_t base, std::size_t exponent, std::size_t cap) {
  std::size_t result = 1;
  for (std::size_t i = 0; i < exponent; ++i) {
    if (base != 0 && result > cap / base) {
      throw CapExceeded(std::to_string(base) + "^" + std::to_string(exponent) +
                        " exceeds the cap of " + std::to_string(cap));
    }
    result *= base;
  }
  if (result > cap) throw CapExceeded("enumeration size exceeds the cap of " + std::to_string(cap));
  return result;
}

TupleSpace::TupleSpace(int domain_size, int arity) : k_(domain_size), n_(arity) {
  if (domain_size < 1 || domain_size > kMaxDomainSize) {
    throw std::invalid_argument("domain size must be in 1.." + std::to_string(kMaxDomainSize));
  }
  if (arity < 0) throw std::invalid_argument("negative arity");
  size_ = checked_power(static_cast<std::size_t>(k_), static_cast<std::size_t>(n_),
                        std::numeric_limits<std::size_t>::max() / 2);
}

std::size_t TupleSpace::index_of(std::span<const Label> tuple) const {
  std::size_t index = 0;
  for (Label v : tuple) index = index * k_ + v;
  return index;
}

Tuple TupleSpace::tuple_at(std::size_t index) const {
  Tuple t(n_);
  for (int i = n_ - 1; i >= 0; --i) {
    t[i] = static_cast<Label>(index % k_);
    index /= k_;
  }
  return t;
}

Domain::Domain(int size) {
  if (size < 1 || size > kMaxDomainSize) {
    throw std::invalid_argument("domain size must be in 1.." + std::to_string(kMaxDomainSize));
  }
  for (int i = 0; i < size; ++i) names_.push_back(std::to_string(i));
}

Domain::Domain(std::vector<std::string> label_names) : names_(std::move(label_names)), custom_(true) {
  if (names_.empty() || names_.size() > static_cast<std::size_t>(kMaxDomainSize)) {
    throw std::invalid_argument("domain size must be in 1.." + std::to_string(kMaxDomainSize));
  }
  auto sorted = names_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("duplicate label name");
  }
}

std::optional<Label> Domain::find_label(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<Label>(i);
  }
  return std::nullopt;
}

CostFunction::CostFunction(int domain_size, int arity, std::vector<ExtRational> table)
    : space_(domain_size, arity), table_(std::move(table)) {
  if (arity < 1) throw std::invalid_argument("cost functions must have arity >= 1");
  if (table_.size() != space_.size()) {
    throw std::invalid_argument("cost table has " + std::to_string(table_.size()) +
                                " entries, expected " + std::to_string(space_.size()));
  }
}

std::vector<std::size_t> CostFunction::dom() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (table_[i].is_finite()) out.push_back(i);
  }
  return out;
}

bool CostFunction::is_finite_valued() const {
  return std::all_of(table_.begin(), table_.end(), [](const auto& v) { return v.is_finite(); });
}

void Language::add(std::string name, CostFunction function) {
  if (name.empty()) throw std::invalid_argument("function name must not be empty");
  if (find(name)) throw std::invalid_argument("duplicate function name '" + name + "'");
  if (function.domain_size() != domain_.size()) {
    throw std::invalid_argument("function '" + name + "' is defined over a different domain");
  }
  functions_.push_back({std::move(name), std::move(function)});
}

std::optional<std::size_t> Language::find(std::string_view name) const {
  for (std::size_t i = 0; i < functions_.size(); ++i) {
    if (functions_[i].name == name) return i;
  }
  return std::nullopt;
}

const CostFunction& Language::function(std::string_view name) const {
  auto index = find(name);
  if (!index) throw std::invalid_argument("unknown function '" + std::string(name) + "'");
  return functions_[*index].function;
}

bool Language::is_finite_valued() const {
  return std::all_of(functions_.begin(), functions_.end(),
                     [](const auto& nf) { return nf.function.is_finite_valued(); });
}

VcspInstance::VcspInstance(Language language, std::size_t var_count, std::vector<Term> terms)
    : language_(std::move(language)), var_count_(var_count), terms_(std::move(terms)) {
  for (const auto& term : terms_) {
    auto index = language_.find(term.function);
    if (!index) throw std::invalid_argument("term uses unknown function '" + term.function + "'");
    const auto& f = language_.functions()[*index].function;
    if (term.scope.size() != static_cast<std::size_t>(f.arity())) {
      throw std::invalid_argument("term '" + term.function + "' has scope length " +
                                  std::to_string(term.scope.size()) + ", expected arity " +
                                  std::to_string(f.arity()));
    }
    for (std::size_t v : term.scope) {
      if (v >= var_count_) throw std::invalid_argument("term scope index out of range");
    }
    function_index_.push_back(*index);
  }
}

VcspInstance VcspInstance::with_term(const std::string& name, const CostFunction& function,
                                     std::vector<std::size_t> scope) const {
  Language language = language_;
  if (auto existing = language.find(name)) {
    if (!(language.functions()[*existing].function == function)) {
      throw std::invalid_argument("function name '" + name + "' already bound differently");
    }
  } else {
    language.add(name, function);
  }
  auto terms = terms_;
  terms.push_back({name, std::move(scope)});
  return VcspInstance(std::move(language), var_count_, std::move(terms));
}

ExtRational evaluate_instance(const VcspInstance& instance, std::span<const Label> x) {
  if (x.size() != instance.var_count()) throw std::invalid_argument("assignment length mismatch");
  for (Label v : x) {
    if (v >= instance.domain_size()) throw std::invalid_argument("assignment label out of range");
  }
  ExtRational total;
  Tuple scoped;
  for (std::size_t t = 0; t < instance.terms().size(); ++t) {
    const auto& scope = instance.terms()[t].scope;
    scoped.resize(scope.size());
    for (std::size_t i = 0; i < scope.size(); ++i) scoped[i] = x[scope[i]];
    total += instance.term_function(t)(scoped);
    if (total.is_infinite()) break;
  }
  return total;
}

ExtRational average_value(const CostFunction& f, std::span<const Tuple> tuples) {
  if (tuples.empty()) throw std::invalid_argument("average_value needs at least one tuple");
  ExtRational sum;
  for (const auto& t : tuples) {
    if (t.size() != static_cast<std::size_t>(f.arity())) {
      throw std::invalid_argument("tuple length does not match arity");
    }
    sum += f(t);
  }
  return sum / Rational(static_cast<long>(tuples.size()));
}

OracleResult brute_force_optimum(const VcspInstance& instance, std::size_t cap) {
  const std::size_t k = static_cast<std::size_t>(instance.domain_size());
  const std::size_t count = checked_power(k, instance.var_count(), cap);

  // Terms are pre-resolved to table strides so the inner loop avoids allocation.
  struct Resolved {
    const CostFunction* f;
    std::vector<std::size_t> scope;
  };
  std::vector<Resolved> resolved;
  for (std::size_t t = 0; t < instance.terms().size(); ++t) {
    resolved.push_back({&instance.term_function(t), instance.terms()[t].scope});
  }

  OracleResult best{ExtRational::infinity(), std::nullopt};
  Assignment x(instance.var_count(), 0);
  for (std::size_t iter = 0; iter < count; ++iter) {
    ExtRational total;
    for (const auto& term : resolved) {
      std::size_t index = 0;
      for (std::size_t v : term.scope) index = index * k + x[v];
      total += term.f->at(index);
      if (total.is_infinite()) break;
    }
    if (total.is_finite() && (!best.argmin || total < best.value)) {
      best.value = total;
      best.argmin = x;
    }
    for (std::size_t i = x.size(); i-- > 0;) {
      if (++x[i] < k) break;
      x[i] = 0;
    }
  }
  return best;
}

}  // namespace vcsp
