#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "vcsp/operation.hpp"

namespace vcsp {

inline constexpr std::size_t kDefaultCloneCap = 500'000;

/// The n-ary members of the clone generated by `ops`, found breadth-first.
///
/// Layer 0 holds the n-ary projections; layer i+1 holds every new h[g_1..g_a]
/// with h in `ops` and some g_j from layer i. Each layer is sorted, so the
/// result is deterministic.
struct CloneResult {
  std::vector<std::vector<Operation>> layers;

  std::size_t size() const;
  /// All members in canonical order.
  std::vector<Operation> members() const;
  bool contains(const Operation& g) const;
};

/// Throws CapExceeded when more than `cap` operations are discovered.
CloneResult generate_clone(int domain_size, const std::vector<Operation>& ops, int arity,
                           std::size_t cap = kDefaultCloneCap);

/// The first symmetric member met in layer order, or nothing at fixpoint.
std::optional<Operation> find_generated_symmetric(int domain_size,
                                                  const std::vector<Operation>& ops, int arity,
                                                  std::size_t cap = kDefaultCloneCap);

}  // namespace vcsp
