#include "vcsp/expansion.hpp"

#include <algorithm>
#include <numeric>

#include "vcsp/clone.hpp"
#include "vcsp/errors.hpp"

namespace vcsp {

Collection::Collection(CollectionKind kind, std::vector<Operation> members)
    : kind_(kind), members_(std::move(members)) {
  if (members_.empty()) throw std::invalid_argument("collections must be nonempty");
  for (const auto& g : members_) {
    if (g.arity() != members_.front().arity() || g.domain_size() != members_.front().domain_size()) {
      throw std::invalid_argument("collection members must share arity and domain");
    }
  }
  if (kind_ == CollectionKind::Unordered) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }
}

Collection Collection::projections(int domain_size, int arity, CollectionKind kind) {
  std::vector<Operation> members;
  for (int i = 0; i < arity; ++i) members.push_back(Operation::projection(domain_size, arity, i));
  return Collection(kind, std::move(members));
}

Collection Collection::symmetry_class(const Operation& g) {
  const int m = g.arity();
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Operation> members;
  Tuple y(m);
  do {
    members.push_back(Operation::from_function(g.domain_size(), m, [&](std::span<const Label> x) {
      for (int j = 0; j < m; ++j) y[j] = x[perm[j]];
      return g(y);
    }));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return Collection(CollectionKind::Unordered, std::move(members));
}

bool Collection::is_symmetric_singleton() const {
  return members_.size() == 1 && is_symmetric(members_.front());
}

std::string Collection::str() const {
  std::string out = kind_ == CollectionKind::Unordered ? "{" : "(";
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (i) out += " | ";
    out += members_[i].str();
  }
  out += kind_ == CollectionKind::Unordered ? "}" : ")";
  return out;
}

std::strong_ordering operator<=>(const Collection& a, const Collection& b) {
  if (auto c = static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_); c != 0) return c;
  return std::lexicographical_compare_three_way(a.members_.begin(), a.members_.end(),
                                                b.members_.begin(), b.members_.end());
}

GeneralisedFractionalOperation::GeneralisedFractionalOperation(Weights weights)
    : weights_(std::move(weights)) {
  if (weights_.empty()) throw std::invalid_argument("empty generalised fractional operation");
  const auto& first = weights_.begin()->first;
  Rational total = 0;
  for (const auto& [g, w] : weights_) {
    if (g.kind() != first.kind() || g.arity() != first.arity() ||
        g.domain_size() != first.domain_size()) {
      throw std::invalid_argument("collections must share kind, arity and domain");
    }
    if (sgn(w) <= 0) throw std::invalid_argument("collection weights must be positive");
    total += w;
  }
  if (total != 1) throw std::invalid_argument("collection weights sum to " + to_string(total));
}

GeneralisedFractionalOperation GeneralisedFractionalOperation::indicator(const Collection& g) {
  return GeneralisedFractionalOperation(Weights{{g, Rational(1)}});
}

Rational GeneralisedFractionalOperation::weight(const Collection& g) const {
  auto it = weights_.find(g);
  return it == weights_.end() ? Rational(0) : it->second;
}

FractionalOperation GeneralisedFractionalOperation::flatten() const {
  FractionalOperation::Weights out;
  for (const auto& [g, w] : weights_) {
    const Rational share = w / static_cast<long>(g.size());
    for (const auto& h : g.members()) out[h] += share;
  }
  return FractionalOperation(std::move(out));
}

namespace {

ExtRational collection_average(const CostFunction& f, const Collection& c,
                               const std::vector<Tuple>& xs) {
  ExtRational sum;
  for (const auto& g : c.members()) {
    sum += f(g.apply(xs));
    if (sum.is_infinite()) return sum;
  }
  return sum / Rational(static_cast<long>(c.size()));
}

}  // namespace

FpolVerdict check_collection_inequality(const Language& language,
                                        const GeneralisedFractionalOperation& rho,
                                        const Collection& rhs, std::size_t cap) {
  if (rho.arity() != rhs.arity() || rho.domain_size() != rhs.domain_size() ||
      rho.domain_size() != language.domain().size()) {
    throw std::invalid_argument("collections, target and language disagree on arity or domain");
  }
  const std::size_t m = static_cast<std::size_t>(rhs.arity());
  for (const auto& [name, f] : language.functions()) {
    std::vector<Tuple> dom;
    for (std::size_t i : f.dom()) dom.push_back(f.space().tuple_at(i));
    if (dom.empty()) continue;
    const std::size_t count = checked_power(dom.size(), m, cap);
    std::vector<Tuple> xs(m);
    for (std::size_t code = 0; code < count; ++code) {
      std::size_t rest = code;
      for (std::size_t j = m; j-- > 0;) {
        xs[j] = dom[rest % dom.size()];
        rest /= dom.size();
      }
      const ExtRational right = collection_average(f, rhs, xs);
      if (right.is_infinite()) continue;
      ExtRational left;
      for (const auto& [c, w] : rho.weights()) {
        left += ExtRational(w) * collection_average(f, c, xs);
        if (left.is_infinite()) break;
      }
      if (left > right) return {Violation{name, xs, left, right}};
    }
  }
  return {};
}

FpolVerdict check_generalised_fpol(const Language& language,
                                   const GeneralisedFractionalOperation& rho, std::size_t cap) {
  const auto kind = rho.weights().begin()->first.kind();
  return check_collection_inequality(
      language, rho, Collection::projections(rho.domain_size(), rho.arity(), kind), cap);
}

namespace {

using Distribution = std::map<Operation, Rational>;

Distribution initial_distribution(const Collection& g) {
  Distribution nu;
  const Rational share(1, static_cast<long>(g.size()));
  for (const auto& h : g.members()) nu[h] += share;
  return nu;
}

void recursion_step(Distribution& nu, const FractionalOperation& omega, std::size_t cap) {
  std::vector<Operation> support;
  Rational least = nu.begin()->second;
  for (const auto& [g, w] : nu) {
    support.push_back(g);
    if (w < least) least = w;
  }
  const std::size_t s = support.size();
  const std::size_t a = static_cast<std::size_t>(omega.arity());
  const std::size_t combos = checked_power(s, a, cap);
  const Rational half = least / 2;

  Distribution eta;
  std::vector<std::size_t> idx(a, 0);
  std::vector<Operation> args;
  for (std::size_t n = 0; n < combos; ++n) {
    args.clear();
    for (std::size_t i : idx) args.push_back(support[i]);
    for (const auto& [h, w] : omega.weights()) eta[superpose(h, args)] += w;
    for (std::size_t p = a; p-- > 0;) {
      if (++idx[p] < s) break;
      idx[p] = 0;
    }
  }
  const Rational removed = half / static_cast<long>(s);
  for (auto& [g, w] : nu) w -= removed;
  const Rational added = half / static_cast<long>(combos);
  for (const auto& [g, w] : eta) nu[g] += w * added;
}

GeneralisedFractionalOperation::Weights group_by_class(const Distribution& nu,
                                                       std::map<Operation, Collection>& classes) {
  GeneralisedFractionalOperation::Weights out;
  for (const auto& [g, w] : nu) {
    auto it = classes.find(g);
    if (it == classes.end()) it = classes.emplace(g, Collection::symmetry_class(g)).first;
    out[it->second] += w;
  }
  return out;
}

void check_omega(const Collection& g, const FractionalOperation& omega, int depth) {
  if (depth < 0) throw std::invalid_argument("depth must be nonnegative");
  if (omega.domain_size() != g.domain_size()) {
    throw std::invalid_argument("fractional operation and collection use different domains");
  }
}

}  // namespace

FractionalOperation exp_recursion(const Collection& g, const FractionalOperation& omega,
                                  int depth, std::size_t cap) {
  check_omega(g, omega, depth);
  Distribution nu = initial_distribution(g);
  for (int i = 0; i < depth; ++i) recursion_step(nu, omega, cap);
  return FractionalOperation(std::move(nu));
}

GeneralisedFractionalOperation exp_operator(const Collection& g,
                                            const FractionalOperation& omega, int depth,
                                            std::size_t cap) {
  std::map<Operation, Collection> classes;
  const FractionalOperation nu = exp_recursion(g, omega, depth, cap);
  return GeneralisedFractionalOperation(group_by_class(nu.weights(), classes));
}

ExpansionTree::ExpansionTree(Collection root) {
  nodes_.push_back({std::move(root), Rational(1), std::nullopt, {}, true});
}

std::size_t ExpansionTree::alive_count() const {
  return static_cast<std::size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const auto& n) { return n.alive; }));
}

std::size_t ExpansionTree::add_child(std::size_t parent, Collection collection, Rational weight) {
  nodes_.push_back({std::move(collection), std::move(weight), parent, {}, true});
  nodes_.at(parent).children.push_back(nodes_.size() - 1);
  return nodes_.size() - 1;
}

void ExpansionTree::remove_descendants(std::size_t node) {
  std::vector<std::size_t> stack = nodes_.at(node).children;
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    nodes_[i].alive = false;
    stack.insert(stack.end(), nodes_[i].children.begin(), nodes_[i].children.end());
  }
  nodes_[node].children.clear();
}

bool ExpansionTree::is_covered(std::size_t node) const {
  const auto& c = nodes_.at(node).collection;
  for (auto p = nodes_[node].parent; p; p = nodes_[*p].parent) {
    if (nodes_[*p].collection == c) return true;
  }
  return false;
}

std::vector<std::size_t> ExpansionTree::post_order(std::size_t node) const {
  std::vector<std::size_t> out;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{node, 0}};
  while (!stack.empty()) {
    auto& [i, next] = stack.back();
    if (next < nodes_[i].children.size()) {
      const std::size_t child = nodes_[i].children[next++];
      stack.emplace_back(child, 0);
    } else {
      out.push_back(i);
      stack.pop_back();
    }
  }
  return out;
}

std::vector<std::size_t> ExpansionTree::leaves(std::size_t node) const {
  std::vector<std::size_t> out;
  for (std::size_t i : post_order(node)) {
    if (nodes_[i].children.empty()) out.push_back(i);
  }
  return out;
}

std::map<Collection, Rational> ExpansionTree::distribution(std::size_t node) const {
  std::map<Collection, Rational> out;
  const Rational& w = nodes_.at(node).weight;
  for (std::size_t leaf : leaves(node)) out[nodes_[leaf].collection] += nodes_[leaf].weight / w;
  return out;
}

ExpansionResult expand_to_symmetric(const FractionalOperation& omega, int arity,
                                    const ExpansionOptions& options) {
  const int k = omega.domain_size();
  if (arity < 1) throw std::invalid_argument("arity must be >= 1");
  const bool small = (k <= 2 && arity <= 3) || (k == 3 && arity == 2);
  if (!small && !options.allow_large) {
    throw std::invalid_argument("expansion is limited to k <= 2 with m <= 3, or k = 3 with m = 2");
  }
  if (options.audit && options.audit->domain().size() != k) {
    throw std::invalid_argument("audit language uses a different domain");
  }

  const Collection root = Collection::projections(k, arity, CollectionKind::Unordered);
  ExpansionResult result{FractionalOperation::indicator(root.members().front()), ExpansionTree(root)};
  ExpansionTree& tree = result.tree;
  if (root.is_symmetric_singleton()) return result;

  if (!find_generated_symmetric(k, omega.support(), arity, options.clone_cap)) {
    throw GenerationWitnessNotFound("the support generates no symmetric operation of arity " +
                                    std::to_string(arity));
  }

  auto allowed = [&](const Collection& c) {
    return !options.allowed || options.allowed->contains(c) || c == root;
  };
  auto good = [&](const Collection& c) { return c.is_symmetric_singleton() && allowed(c); };

  std::map<Operation, Collection> classes;
  std::map<Collection, GeneralisedFractionalOperation::Weights> exp_cache;
  auto expansion_of = [&](const Collection& c) -> const GeneralisedFractionalOperation::Weights& {
    auto it = exp_cache.find(c);
    if (it != exp_cache.end()) return it->second;
    Distribution nu = initial_distribution(c);
    for (int d = 1; d <= options.max_depth; ++d) {
      recursion_step(nu, omega, options.superposition_cap);
      auto grouped = group_by_class(nu, classes);
      const bool reaches_good =
          std::any_of(grouped.begin(), grouped.end(), [&](const auto& e) { return good(e.first); });
      if (!reaches_good) continue;
      for (const auto& [cls, w] : grouped) {
        if (!allowed(cls)) {
          throw std::invalid_argument("expansion of " + c.str() + " leaves the allowed collections at " +
                                      cls.str());
        }
      }
      return exp_cache.emplace(c, std::move(grouped)).first->second;
    }
    throw GenerationWitnessNotFound("no symmetric class within depth " +
                                    std::to_string(options.max_depth) + " from " + c.str());
  };

  auto audit = [&] {
    if (!options.audit) return;
    for (std::size_t i = 0; i < tree.nodes().size(); ++i) {
      if (!tree.node(i).alive) continue;
      auto dist = tree.distribution(i);
      Rational total = 0;
      for (const auto& [c, w] : dist) total += w;
      if (total != 1) throw std::logic_error("leaf weights below a node do not sum to its weight");
      const GeneralisedFractionalOperation rho(std::move(dist));
      if (!check_collection_inequality(*options.audit, rho, tree.node(i).collection).holds()) {
        throw std::logic_error("tree invariant violated at " + tree.node(i).collection.str());
      }
      ++result.audits;
    }
  };

  // Expansion, depth-first pre-order.
  std::vector<std::size_t> stack{0};
  while (!stack.empty()) {
    const std::size_t i = stack.back();
    stack.pop_back();
    const Collection c = tree.node(i).collection;
    if (good(c) || tree.is_covered(i)) continue;
    const auto& children = expansion_of(c);
    ++result.expansions;
    const Rational w = tree.node(i).weight;
    std::vector<std::size_t> added;
    for (const auto& [cls, p] : children) added.push_back(tree.add_child(i, cls, w * p));
    if (tree.nodes().size() > options.tree_cap) {
      throw CapExceeded("expansion tree exceeds " + std::to_string(options.tree_cap) + " nodes");
    }
    stack.insert(stack.end(), added.rbegin(), added.rend());
  }
  audit();

  // Pruning: repeatedly collapse the first covering node in post-order.
  while (true) {
    std::optional<std::size_t> covering;
    for (std::size_t i : tree.post_order(0)) {
      const auto below = tree.post_order(i);
      const bool covers = std::any_of(below.begin(), below.end() - 1, [&](std::size_t j) {
        return tree.node(j).collection == tree.node(i).collection;
      });
      if (covers) {
        covering = i;
        break;
      }
    }
    if (!covering) break;
    const std::size_t g = *covering;
    const Collection c = tree.node(g).collection;
    const Rational w = tree.node(g).weight;
    auto nu = tree.distribution(g);
    const Rational kappa = 1 - nu[c];
    if (sgn(kappa) <= 0) throw std::logic_error("pruning met a node that only covers itself");
    tree.remove_descendants(g);
    for (const auto& [h, p] : nu) {
      if (h != c && sgn(p) > 0) tree.add_child(g, h, w * p / kappa);
    }
    ++result.pruning_rounds;
    audit();
  }

  FractionalOperation::Weights weights;
  for (const auto& [c, p] : tree.distribution(0)) {
    if (!good(c)) throw std::logic_error("pruning left a leaf outside the good collections");
    weights[c.members().front()] += p;
  }
  result.omega = FractionalOperation(std::move(weights));
  if (options.audit && !check_fractional_polymorphism(*options.audit, result.omega).holds()) {
    throw std::logic_error("expanded fractional operation fails the audit language");
  }
  return result;
}

}  // namespace vcsp
