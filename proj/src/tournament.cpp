#include "vcsp/tournament.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace vcsp {

Tournament::Tournament(int size) : k_(size), adjacency_(static_cast<std::size_t>(size * size), false) {
  if (size < 1 || size > kMaxDomainSize) throw std::invalid_argument("bad tournament size");
}

Tournament::Tournament(int size, const std::vector<Edge>& edges) : Tournament(size) {
  for (const auto& [a, b] : edges) {
    if (a >= k_ || b >= k_) throw std::invalid_argument("tournament edge label out of range");
    if (a == b) throw std::invalid_argument("tournament edges must join distinct labels");
    if (has_edge(a, b) || has_edge(b, a)) {
      throw std::invalid_argument("pair " + std::to_string(a) + " " + std::to_string(b) +
                                  " oriented twice");
    }
    adjacency_[a * k_ + b] = true;
  }
  for (int a = 0; a < k_; ++a) {
    for (int b = a + 1; b < k_; ++b) {
      if (!has_edge(a, b) && !has_edge(b, a)) {
        throw std::invalid_argument("pair " + std::to_string(a) + " " + std::to_string(b) +
                                    " is not oriented");
      }
    }
  }
}

Tournament Tournament::transitive(int size) { return from_bits(size, 0); }

Tournament Tournament::from_bits(int size, unsigned long bits) {
  Tournament t(size);
  int i = 0;
  for (int a = 0; a < size; ++a) {
    for (int b = a + 1; b < size; ++b, ++i) {
      if ((bits >> i) & 1UL) {
        t.adjacency_[b * size + a] = true;
      } else {
        t.adjacency_[a * size + b] = true;
      }
    }
  }
  return t;
}

std::vector<Edge> Tournament::edges() const {
  std::vector<Edge> out;
  for (int a = 0; a < k_; ++a) {
    for (int b = 0; b < k_; ++b) {
      if (has_edge(a, b)) out.emplace_back(static_cast<Label>(a), static_cast<Label>(b));
    }
  }
  return out;
}

int Tournament::out_degree(Label a) const {
  int d = 0;
  for (int b = 0; b < k_; ++b) d += has_edge(a, b);
  return d;
}

void Tournament::flip(Label a, Label b) {
  if (a >= k_ || b >= k_ || !has_edge(a, b)) {
    throw std::invalid_argument("edge " + std::to_string(a) + " -> " + std::to_string(b) +
                                " is not in the tournament");
  }
  adjacency_[a * k_ + b] = false;
  adjacency_[b * k_ + a] = true;
}

bool Tournament::is_acyclic() const {
  // A tournament is acyclic exactly when its out-degrees are pairwise distinct.
  std::vector<int> degrees;
  for (int a = 0; a < k_; ++a) degrees.push_back(out_degree(static_cast<Label>(a)));
  std::sort(degrees.begin(), degrees.end());
  return std::adjacent_find(degrees.begin(), degrees.end()) == degrees.end();
}

std::vector<Label> Tournament::topological_order() const {
  std::vector<Label> order(k_);
  for (int a = 0; a < k_; ++a) order[a] = static_cast<Label>(a);
  std::stable_sort(order.begin(), order.end(),
                   [&](Label a, Label b) { return out_degree(a) > out_degree(b); });
  return order;
}

TournamentPair stp_from_tournament(const Tournament& t) {
  const int k = t.size();
  auto pick = [&](bool tail) {
    return Operation::from_function(k, 2, [&, tail](std::span<const Label> x) {
      if (x[0] == x[1]) return x[0];
      const bool forward = t.has_edge(x[0], x[1]);
      return (forward == tail) ? x[0] : x[1];
    });
  };
  return {pick(true), pick(false)};
}

bool is_valid_flip(const Tournament& t, const Edge& edge) {
  const auto [a, b] = edge;
  if (a >= t.size() || b >= t.size() || !t.has_edge(a, b)) {
    throw std::invalid_argument("edge " + std::to_string(a) + " -> " + std::to_string(b) +
                                " is not in the tournament");
  }
  for (int c = 0; c < t.size(); ++c) {
    if (t.has_edge(b, c) && t.has_edge(c, a)) return true;
  }
  return false;
}

AcyclicResult make_acyclic(const Tournament& t) {
  Tournament current = t;
  AcyclicResult result;
  for (int c = 1; c < t.size(); ++c) {
    while (true) {
      bool flipped = false;
      for (int a = 0; a < c && !flipped; ++a) {
        if (!current.has_edge(c, a)) continue;
        for (int b = 0; b < c; ++b) {
          if (b != a && current.has_edge(a, b) && current.has_edge(b, c)) {
            const Edge e{static_cast<Label>(c), static_cast<Label>(a)};
            result.flips.push_back(e);
            current.flip(e.first, e.second);
            flipped = true;
            break;
          }
        }
      }
      if (!flipped) break;
    }
  }
  if (!current.is_acyclic()) throw std::logic_error("make_acyclic left a cycle");
  result.order = current.topological_order();
  return result;
}

bool verify_flip_sequence(const Tournament& t, const std::vector<Edge>& flips) {
  Tournament current = t;
  for (const auto& e : flips) {
    if (e.first >= t.size() || e.second >= t.size() || !current.has_edge(e.first, e.second)) {
      return false;
    }
    if (!is_valid_flip(current, e)) return false;
    current.flip(e.first, e.second);
  }
  return current.is_acyclic();
}

TournamentPair order_lattice(const std::vector<Label>& order) {
  const int k = static_cast<int>(order.size());
  std::vector<int> rank(k, -1);
  for (int i = 0; i < k; ++i) {
    if (order[i] >= k || rank[order[i]] != -1) throw std::invalid_argument("not a permutation");
    rank[order[i]] = i;
  }
  auto meet = Operation::from_function(k, 2, [&](std::span<const Label> x) {
    return rank[x[0]] <= rank[x[1]] ? x[0] : x[1];
  });
  auto join = Operation::from_function(k, 2, [&](std::span<const Label> x) {
    return rank[x[0]] >= rank[x[1]] ? x[0] : x[1];
  });
  return {std::move(meet), std::move(join)};
}

}  // namespace vcsp
