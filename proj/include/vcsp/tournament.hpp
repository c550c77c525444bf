#pragma once

#include <utility>
#include <vector>

#include "vcsp/operation.hpp"

namespace vcsp {

using Edge = std::pair<Label, Label>;

/// Complete orientation of the pairs of {0..k-1}.
class Tournament {
 public:
  /// Every unordered pair must appear exactly once among `edges`.
  Tournament(int size, const std::vector<Edge>& edges);

  /// Transitive tournament with a -> b for a < b.
  static Tournament transitive(int size);
  /// The tournament with the given index in lexicographic pair order; bit i
  /// set reverses the i-th pair (a < b) to b -> a.
  static Tournament from_bits(int size, unsigned long bits);

  int size() const noexcept { return k_; }
  bool has_edge(Label a, Label b) const { return adjacency_[a * k_ + b]; }
  /// Edges in lexicographic order.
  std::vector<Edge> edges() const;
  int out_degree(Label a) const;

  /// Reverses the edge a -> b; throws std::invalid_argument when absent.
  void flip(Label a, Label b);

  bool is_acyclic() const;
  /// Vertices by increasing in-degree; meaningful for acyclic tournaments.
  std::vector<Label> topological_order() const;

  friend bool operator==(const Tournament&, const Tournament&) = default;

 private:
  explicit Tournament(int size);
  int k_;
  std::vector<bool> adjacency_;
};

struct TournamentPair {
  Operation meet;  ///< tail of the edge between the two arguments
  Operation join;  ///< head of the edge between the two arguments
};

TournamentPair stp_from_tournament(const Tournament& t);

/// True when some c closes a directed 3-cycle a -> b -> c -> a.
/// Throws std::invalid_argument when a -> b is not an edge.
bool is_valid_flip(const Tournament& t, const Edge& edge);

struct AcyclicResult {
  std::vector<Edge> flips;    ///< edges as oriented at the moment they were flipped
  std::vector<Label> order;   ///< topological order of the final tournament
};

/// Integrates vertices 0, 1, ... in turn; while the new vertex c lies on a
/// 3-cycle c -> a -> b -> c with a, b < c, flips c -> a for the
/// lexicographically smallest (a, b).
AcyclicResult make_acyclic(const Tournament& t);

/// Replays the flips, requiring each to be valid when applied, and that the
/// final tournament is acyclic.
bool verify_flip_sequence(const Tournament& t, const std::vector<Edge>& flips);

/// Binary min and max with respect to a total order given as a label sequence.
TournamentPair order_lattice(const std::vector<Label>& order);

}  // namespace vcsp
