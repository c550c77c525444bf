#include "vcsp/operation.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "vcsp/errors.hpp"

namespace vcsp {

Operation::Operation(int domain_size, int arity, std::vector<Label> table)
    : space_(domain_size, arity), table_(std::move(table)) {
  if (arity < 1) throw std::invalid_argument("operations must have arity >= 1");
  if (table_.size() != space_.size()) {
    throw std::invalid_argument("operation table has " + std::to_string(table_.size()) +
                                " entries, expected " + std::to_string(space_.size()));
  }
  for (Label v : table_) {
    if (v >= domain_size) throw std::invalid_argument("operation value out of range");
  }
}

Operation Operation::projection(int domain_size, int arity, int coordinate) {
  if (coordinate < 0 || coordinate >= arity) throw std::invalid_argument("bad projection index");
  return from_function(domain_size, arity,
                       [coordinate](std::span<const Label> x) { return x[coordinate]; });
}

Operation Operation::constant(int domain_size, int arity, Label value) {
  return from_function(domain_size, arity, [value](std::span<const Label>) { return value; });
}

Operation Operation::from_function(int domain_size, int arity,
                                   const std::function<Label(std::span<const Label>)>& fn) {
  TupleSpace space(domain_size, arity);
  std::vector<Label> table(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) table[i] = fn(space.tuple_at(i));
  return Operation(domain_size, arity, std::move(table));
}

Tuple Operation::apply(std::span<const Tuple> tuples) const {
  if (tuples.size() != static_cast<std::size_t>(arity())) {
    throw std::invalid_argument("operation applied to the wrong number of tuples");
  }
  const std::size_t n = tuples.front().size();
  Tuple out(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t index = 0;
    for (const auto& t : tuples) {
      if (t.size() != n) throw std::invalid_argument("tuples of unequal length");
      index = index * domain_size() + t[j];
    }
    out[j] = table_[index];
  }
  return out;
}

std::string Operation::str() const {
  std::string out;
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(table_[i]);
  }
  return out;
}

std::strong_ordering operator<=>(const Operation& a, const Operation& b) {
  if (auto c = a.arity() <=> b.arity(); c != 0) return c;
  if (auto c = a.domain_size() <=> b.domain_size(); c != 0) return c;
  return a.table_ <=> b.table_;
}

bool is_symmetric(const Operation& g) {
  const int m = g.arity();
  const auto& space = g.space();
  Tuple x;
  for (std::size_t i = 0; i < space.size(); ++i) {
    x = space.tuple_at(i);
    for (int p = 0; p + 1 < m; ++p) {
      if (x[p] == x[p + 1]) continue;
      std::swap(x[p], x[p + 1]);
      const bool same = g(x) == g.at(i);
      std::swap(x[p], x[p + 1]);
      if (!same) return false;
    }
  }
  return true;
}

Operation superpose(const Operation& h, std::span<const Operation> gs) {
  if (gs.size() != static_cast<std::size_t>(h.arity())) {
    throw std::invalid_argument("superposition needs " + std::to_string(h.arity()) +
                                " inner operations, got " + std::to_string(gs.size()));
  }
  const int k = h.domain_size();
  const int m = gs.front().arity();
  for (const auto& g : gs) {
    if (g.arity() != m) throw std::invalid_argument("inner operations differ in arity");
    if (g.domain_size() != k) throw std::invalid_argument("inner operations differ in domain");
  }
  const std::size_t size = gs.front().space().size();
  std::vector<Label> table(size);
  for (std::size_t i = 0; i < size; ++i) {
    std::size_t index = 0;
    for (const auto& g : gs) index = index * k + g.at(i);
    table[i] = h.at(index);
  }
  return Operation(k, m, std::move(table));
}

std::size_t binomial(std::size_t n, std::size_t r, std::size_t cap) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  // Exact: the running product is always a binomial coefficient itself.
  std::size_t result = 1;
  for (std::size_t i = 1; i <= r; ++i) {
    const std::size_t factor = n - r + i;
    if (result > std::numeric_limits<std::size_t>::max() / factor) {
      throw CapExceeded("binomial coefficient overflow");
    }
    result = result * factor / i;
    if (result > cap) throw CapExceeded("binomial coefficient exceeds the cap");
  }
  return result;
}

MultisetSpace::MultisetSpace(int domain_size, int arity) : k_(domain_size), m_(arity) {
  if (domain_size < 1 || arity < 1) throw std::invalid_argument("bad multiset space");
  binomial(static_cast<std::size_t>(m_ + k_ - 1), static_cast<std::size_t>(m_), 10'000'000);
  Tuple t(m_, 0);
  while (true) {
    index_.emplace(t, multisets_.size());
    multisets_.push_back(t);
    int p = m_ - 1;
    while (p >= 0 && t[p] == k_ - 1) --p;
    if (p < 0) break;
    const Label next = t[p] + 1;
    for (int q = p; q < m_; ++q) t[q] = next;
  }
}

std::size_t MultisetSpace::index_of(std::span<const Label> labels) const {
  Tuple sorted(labels.begin(), labels.end());
  std::sort(sorted.begin(), sorted.end());
  auto it = index_.find(sorted);
  if (it == index_.end()) throw std::invalid_argument("not a multiset of this space");
  return it->second;
}

SymmetricOperation::SymmetricOperation(int domain_size, int arity, std::vector<Label> values)
    : k_(domain_size), m_(arity), values_(std::move(values)) {
  MultisetSpace space(k_, m_);
  if (values_.size() != space.size()) {
    throw std::invalid_argument("symmetric operation needs one value per multiset");
  }
  for (Label v : values_) {
    if (v >= k_) throw std::invalid_argument("symmetric operation value out of range");
  }
}

SymmetricOperation SymmetricOperation::from_operation(const Operation& g) {
  if (!is_symmetric(g)) throw std::invalid_argument("operation is not symmetric");
  MultisetSpace space(g.domain_size(), g.arity());
  std::vector<Label> values(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) values[i] = g(space.multiset_at(i));
  return SymmetricOperation(g.domain_size(), g.arity(), std::move(values));
}

Operation SymmetricOperation::to_operation() const {
  MultisetSpace space(k_, m_);
  return Operation::from_function(k_, m_, [&](std::span<const Label> x) {
    return values_[space.index_of(x)];
  });
}

FractionalOperation::FractionalOperation(Weights weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw std::invalid_argument("fractional operation has empty support");
  const auto& first = weights_.begin()->first;
  Rational total = 0;
  for (const auto& [g, w] : weights_) {
    if (g.arity() != first.arity() || g.domain_size() != first.domain_size()) {
      throw std::invalid_argument("fractional operation mixes arities or domains");
    }
    if (sgn(w) <= 0) throw std::invalid_argument("fractional operation weights must be positive");
    total += w;
  }
  if (total != 1) {
    throw std::invalid_argument("fractional operation weights sum to " + to_string(total) +
                                ", expected 1");
  }
}

FractionalOperation FractionalOperation::indicator(const Operation& g) {
  return FractionalOperation(Weights{{g, Rational(1)}});
}

FractionalOperation FractionalOperation::projection_average(int domain_size, int arity) {
  Weights weights;
  for (int i = 0; i < arity; ++i) {
    weights[Operation::projection(domain_size, arity, i)] += Rational(1, arity);
  }
  return FractionalOperation(std::move(weights));
}

std::vector<Operation> FractionalOperation::support() const {
  std::vector<Operation> out;
  for (const auto& [g, w] : weights_) out.push_back(g);
  return out;
}

Rational FractionalOperation::weight(const Operation& g) const {
  auto it = weights_.find(g);
  return it == weights_.end() ? Rational(0) : it->second;
}

bool FractionalOperation::is_symmetric() const {
  return std::all_of(weights_.begin(), weights_.end(),
                     [](const auto& entry) { return vcsp::is_symmetric(entry.first); });
}

FractionalOperation superpose_fractional(const FractionalOperation& omega,
                                         std::span<const Operation> gs) {
  FractionalOperation::Weights weights;
  for (const auto& [h, w] : omega.weights()) weights[superpose(h, gs)] += w;
  return FractionalOperation(std::move(weights));
}

}  // namespace vcsp
