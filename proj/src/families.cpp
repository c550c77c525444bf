#include "vcsp/families.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

#include "vcsp/polymorphism.hpp"

namespace vcsp {

FractionalOperation multimorphism(const Operation& g1, const Operation& g2) {
  FractionalOperation::Weights weights;
  weights[g1] += Rational(1, 2);
  weights[g2] += Rational(1, 2);
  return FractionalOperation(std::move(weights));
}

namespace {

void require_binary(const Operation& g, const char* what) {
  if (g.arity() != 2) throw std::invalid_argument(std::string(what) + " must be binary");
}

bool idempotent(const Operation& g) {
  for (int x = 0; x < g.domain_size(); ++x) {
    if (g(x, x) != x) return false;
  }
  return true;
}

bool commutative(const Operation& g) {
  for (int x = 0; x < g.domain_size(); ++x) {
    for (int y = 0; y < x; ++y) {
      if (g(x, y) != g(y, x)) return false;
    }
  }
  return true;
}

bool associative(const Operation& g) {
  const int k = g.domain_size();
  for (int x = 0; x < k; ++x) {
    for (int y = 0; y < k; ++y) {
      for (int z = 0; z < k; ++z) {
        if (g(g(x, y), z) != g(x, g(y, z))) return false;
      }
    }
  }
  return true;
}

}  // namespace

bool is_semilattice_operation(const Operation& g) {
  return g.arity() == 2 && idempotent(g) && commutative(g) && associative(g);
}

void validate_lattice(const Operation& meet, const Operation& join) {
  require_binary(meet, "meet");
  require_binary(join, "join");
  if (meet.domain_size() != join.domain_size()) {
    throw std::invalid_argument("meet and join use different domains");
  }
  for (const auto* g : {&meet, &join}) {
    const char* name = g == &meet ? "meet" : "join";
    if (!idempotent(*g)) throw std::invalid_argument(std::string("lattice axiom violated: idempotence of ") + name);
    if (!commutative(*g)) throw std::invalid_argument(std::string("lattice axiom violated: commutativity of ") + name);
    if (!associative(*g)) throw std::invalid_argument(std::string("lattice axiom violated: associativity of ") + name);
  }
  const int k = meet.domain_size();
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      if (meet(a, join(a, b)) != a || join(a, meet(a, b)) != a) {
        throw std::invalid_argument("lattice axiom violated: absorption");
      }
    }
  }
}

FractionalOperation lattice_multimorphism(const Operation& meet, const Operation& join) {
  validate_lattice(meet, join);
  return multimorphism(meet, join);
}

OperationPair chain_lattice(int domain_size) {
  auto lo = Operation::from_function(domain_size, 2, [](std::span<const Label> x) {
    return std::min(x[0], x[1]);
  });
  auto hi = Operation::from_function(domain_size, 2, [](std::span<const Label> x) {
    return std::max(x[0], x[1]);
  });
  return {std::move(lo), std::move(hi)};
}

OperationPair k_submodular_ops(int k) {
  if (k < 1) throw std::invalid_argument("k-submodularity needs k >= 1");
  auto min0 = Operation::from_function(k + 1, 2, [](std::span<const Label> x) {
    return x[0] == x[1] ? x[0] : Label{0};
  });
  auto max0 = Operation::from_function(k + 1, 2, [](std::span<const Label> x) {
    const bool clash = x[0] != 0 && x[1] != 0 && x[0] != x[1];
    return clash ? Label{0} : std::max(x[0], x[1]);
  });
  return {std::move(min0), std::move(max0)};
}

Operation max1_operation() {
  return Operation::from_function(3, 2, [](std::span<const Label> x) {
    const bool clash = x[0] != 0 && x[1] != 0 && x[0] != x[1];
    return clash ? Label{1} : std::max(x[0], x[1]);
  });
}

FractionalOperation skew_bisubmodular_fpol(const Rational& alpha) {
  if (sgn(alpha) <= 0 || alpha > 1) {
    throw std::invalid_argument("alpha must satisfy 0 < alpha <= 1, got " + to_string(alpha));
  }
  const auto [min0, max0] = k_submodular_ops(2);
  FractionalOperation::Weights weights;
  weights[min0] += Rational(1, 2);
  weights[max0] += alpha / 2;
  const Rational rest = (1 - alpha) / 2;
  if (sgn(rest) > 0) weights[max1_operation()] += rest;
  return FractionalOperation(std::move(weights));
}

RootedTree::RootedTree(std::vector<Label> parent) : parent_(std::move(parent)) {
  const int k = size();
  if (k < 1 || k > kMaxDomainSize) throw std::invalid_argument("bad tree size");
  int roots = 0;
  for (int a = 0; a < k; ++a) {
    if (parent_[a] >= k) throw std::invalid_argument("tree parent out of range");
    if (parent_[a] == a) {
      ++roots;
      root_ = static_cast<Label>(a);
    }
  }
  if (roots != 1) throw std::invalid_argument("a tree needs exactly one root");
  depth_.assign(k, -1);
  for (int a = 0; a < k; ++a) {
    int steps = 0;
    Label v = static_cast<Label>(a);
    while (v != root_) {
      v = parent_[v];
      if (++steps > k) throw std::invalid_argument("tree parent links contain a cycle");
    }
    depth_[a] = steps;
  }
}

bool RootedTree::is_ancestor(Label a, Label b) const {
  while (depth_.at(b) > depth_.at(a)) b = parent_[b];
  return a == b;
}

Label RootedTree::lowest_common_ancestor(Label a, Label b) const {
  while (depth_.at(a) > depth_.at(b)) a = parent_[a];
  while (depth_.at(b) > depth_.at(a)) b = parent_[b];
  while (a != b) {
    a = parent_[a];
    b = parent_[b];
  }
  return a;
}

std::vector<Label> RootedTree::path(Label a, Label b) const {
  const Label top = lowest_common_ancestor(a, b);
  std::vector<Label> up;
  for (Label v = a; v != top; v = parent_[v]) up.push_back(v);
  up.push_back(top);
  std::vector<Label> down;
  for (Label v = b; v != top; v = parent_[v]) down.push_back(v);
  up.insert(up.end(), down.rbegin(), down.rend());
  return up;
}

int RootedTree::distance(Label a, Label b) const {
  const Label top = lowest_common_ancestor(a, b);
  return depth_.at(a) + depth_.at(b) - 2 * depth_.at(top);
}

OperationPair strong_tree_ops(const RootedTree& tree) {
  const int k = tree.size();
  std::vector<Label> t1(k * k), t2(k * k);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      const auto p = tree.path(static_cast<Label>(a), static_cast<Label>(b));
      const std::size_t d = p.size() - 1;
      Label a1 = p[d / 2];
      Label a2 = p[(d + 1) / 2];
      if (a1 != a2 && tree.is_ancestor(a2, a1)) std::swap(a1, a2);
      t1[a * k + b] = a1;
      t2[a * k + b] = a2;
    }
  }
  return {Operation(k, 2, std::move(t1)), Operation(k, 2, std::move(t2))};
}

OperationPair weak_tree_ops(const RootedTree& tree) {
  const int k = tree.size();
  std::vector<Label> t1(k * k), t2(k * k);
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      const Label top = tree.lowest_common_ancestor(static_cast<Label>(a), static_cast<Label>(b));
      const auto p = tree.path(static_cast<Label>(a), static_cast<Label>(b));
      t1[a * k + b] = top;
      t2[a * k + b] = p[tree.distance(static_cast<Label>(b), top)];
    }
  }
  return {Operation(k, 2, std::move(t1)), Operation(k, 2, std::move(t2))};
}

DefectPoset::DefectPoset(int size, Label b, Label c, std::vector<std::vector<bool>> less)
    : b_(b), c_(c), less_(std::move(less)) {
  if (size < 2 || size > kMaxDomainSize) throw std::invalid_argument("bad poset size");
  if (b >= size || c >= size || b == c) throw std::invalid_argument("bad defect pair");
  if (less_.size() != static_cast<std::size_t>(size)) throw std::invalid_argument("poset matrix has wrong size");
  for (const auto& row : less_) {
    if (row.size() != static_cast<std::size_t>(size)) throw std::invalid_argument("poset matrix has wrong size");
  }
  for (int x = 0; x < size; ++x) {
    if (less_[x][x]) throw std::invalid_argument("poset relation must be irreflexive");
    for (int y = 0; y < size; ++y) {
      if (less_[x][y] && less_[y][x]) throw std::invalid_argument("poset relation must be antisymmetric");
      for (int z = 0; z < size; ++z) {
        if (less_[x][y] && less_[y][z] && !less_[x][z]) {
          throw std::invalid_argument("poset relation must be transitive");
        }
      }
      if (x == y) continue;
      const bool defect = (x == b && y == c) || (x == c && y == b);
      const bool comparable = less_[x][y] || less_[y][x];
      if (defect && comparable) throw std::invalid_argument("the defect pair must be incomparable");
      if (!defect && !comparable) {
        throw std::invalid_argument("labels " + std::to_string(x) + " and " + std::to_string(y) +
                                    " must be comparable");
      }
    }
  }
}

OperationPair one_defect_ops(const DefectPoset& poset) {
  const int k = poset.size();
  const Label b = poset.b(), c = poset.c();
  std::vector<Label> rest;
  for (int x = 0; x < k; ++x) {
    if (x != b && x != c) rest.push_back(static_cast<Label>(x));
  }
  // D minus {b, c} is a chain; sort it by the order.
  std::sort(rest.begin(), rest.end(), [&](Label x, Label y) { return poset.less(x, y); });

  std::optional<Label> lower, upper;
  for (Label x : rest) {
    if (poset.less(x, b) && poset.less(x, c)) lower = x;
  }
  for (auto it = rest.rbegin(); it != rest.rend(); ++it) {
    if (poset.less(b, *it) && poset.less(c, *it)) upper = *it;
  }
  Label low, high;
  if (lower && upper) {
    low = *lower;
    high = *upper;
  } else if (rest.size() >= 2) {
    low = rest[0];
    high = rest[1];
  } else {
    throw std::invalid_argument("no admissible images for the defect pair");
  }

  std::vector<Label> t1(k * k), t2(k * k);
  for (int x = 0; x < k; ++x) {
    for (int y = 0; y < k; ++y) {
      const bool defect = (x == b && y == c) || (x == c && y == b);
      if (defect) {
        t1[x * k + y] = low;
        t2[x * k + y] = high;
      } else {
        const bool x_first = x == y || poset.less(static_cast<Label>(x), static_cast<Label>(y));
        t1[x * k + y] = static_cast<Label>(x_first ? x : y);
        t2[x * k + y] = static_cast<Label>(x_first ? y : x);
      }
    }
  }
  return {Operation(k, 2, std::move(t1)), Operation(k, 2, std::move(t2))};
}

Operation one_defect_symmetric(const DefectPoset& poset, const Operation& g, int arity) {
  if (arity < 2) throw std::invalid_argument("the symmetric construction needs arity >= 2");
  if (g.arity() != 2 || g.domain_size() != poset.size()) {
    throw std::invalid_argument("g must be a binary operation on the poset");
  }
  const Label b = poset.b(), c = poset.c();
  const Label image = g(b, c);
  const bool below = poset.less(image, b) && poset.less(image, c);
  const bool above = poset.less(b, image) && poset.less(c, image);
  if (!below && !above) {
    throw std::invalid_argument("g(b, c) must lie below both b and c, or above both");
  }
  auto h = Operation::from_function(poset.size(), arity, [&](std::span<const Label> x) {
    std::vector<Label> terms;
    for (int p = 0; p < arity; ++p) {
      for (int q = p + 1; q < arity; ++q) terms.push_back(g(x[p], x[q]));
    }
    Label acc = terms.back();
    for (std::size_t i = terms.size() - 1; i-- > 0;) acc = g(terms[i], acc);
    return acc;
  });
  if (!is_symmetric(h)) throw std::logic_error("constructed operation is not symmetric");
  return h;
}

CostFunction sample_admitting_function(const FractionalOperation& omega, int arity,
                                       int value_bound, std::uint64_t seed,
                                       std::size_t max_attempts) {
  if (arity < 1 || value_bound < 0 || max_attempts == 0) {
    throw std::invalid_argument("sampler needs arity >= 1, value_bound >= 0, max_attempts > 0");
  }
  const int k = omega.domain_size();
  const TupleSpace space(k, arity);
  const int summands = value_bound >= 3 ? 3 : 1;
  const int bound = value_bound / summands;

  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto random_box = [&] {
    std::vector<std::vector<bool>> box(arity, std::vector<bool>(k));
    for (auto& side : box) {
      const unsigned long mask = std::uniform_int_distribution<unsigned long>(1, (1UL << k) - 1)(rng);
      for (int a = 0; a < k; ++a) side[a] = (mask >> a) & 1UL;
    }
    return box;
  };
  auto draw = [&] {
    std::vector<long> values(space.size(), 0);
    const int shape = uniform(0, 3);
    if (shape == 0) {
      for (auto& v : values) v = uniform(0, bound);
    } else if (shape == 1) {
      const int coordinate = uniform(0, arity - 1);
      std::vector<int> unary(k);
      for (auto& u : unary) u = uniform(0, bound);
      for (std::size_t i = 0; i < space.size(); ++i) values[i] = unary[space.tuple_at(i)[coordinate]];
    } else {
      const auto box = random_box();
      const int weight = uniform(std::min(1, bound), bound);
      for (std::size_t i = 0; i < space.size(); ++i) {
        const Tuple x = space.tuple_at(i);
        bool inside = true;
        for (int j = 0; j < arity; ++j) inside = inside && box[j][x[j]];
        values[i] = (inside == (shape == 2)) ? weight : 0;
      }
    }
    return values;
  };
  auto to_function = [&](const std::vector<long>& values) {
    std::vector<ExtRational> table;
    for (long v : values) table.emplace_back(v);
    return CostFunction(k, arity, std::move(table));
  };
  auto admits = [&](const CostFunction& f) {
    Language language{Domain(k)};
    language.add("f", f);
    return check_fractional_polymorphism(language, omega).holds();
  };

  std::vector<long> sum(space.size(), 0);
  int accepted = 0;
  for (std::size_t attempt = 0; attempt < max_attempts && accepted < summands; ++attempt) {
    const auto values = draw();
    if (!admits(to_function(values))) continue;
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += values[i];
    ++accepted;
  }
  if (accepted < summands) {
    throw std::runtime_error("sampler exhausted " + std::to_string(max_attempts) + " attempts");
  }
  CostFunction f = to_function(sum);
  if (!admits(f)) throw std::logic_error("sum of admitting functions failed the check");
  return f;
}

}  // namespace vcsp
