#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "vcsp/operation.hpp"
#include "vcsp/vcsp_core.hpp"

namespace vcsp {

/// Ordered enumerates all |dom f|^m tuple lists; Multiset only the sorted
/// ones, which is sound for symmetric fractional operations. Auto picks
/// Multiset exactly when the fractional operation is symmetric.
enum class CheckMode { Auto, Ordered, Multiset };

struct Violation {
  std::string function;
  std::vector<Tuple> tuples;  ///< x^1..x^m, each in dom f.
  ExtRational lhs;            ///< sum_g omega(g) f(g(x^1..x^m))
  ExtRational rhs;            ///< f^m(x^1..x^m)
};

struct FpolVerdict {
  std::optional<Violation> violation;
  bool holds() const noexcept { return !violation; }
};

inline constexpr std::size_t kDefaultCheckCap = 10'000'000;

/// Checks the fractional polymorphism inequality for every f in the
/// language and every list of m tuples from dom f. Functions are visited in
/// language order and tuple lists lexicographically by dom index, so the
/// reported witness is the first violation in that order.
FpolVerdict check_fractional_polymorphism(const Language& language,
                                          const FractionalOperation& omega,
                                          CheckMode mode = CheckMode::Auto,
                                          std::size_t cap = kDefaultCheckCap);

inline constexpr std::size_t kDefaultSymmetricOperationCap = 100'000;

/// Decides by an exact feasibility LP whether the language admits a
/// symmetric fractional polymorphism of arity m, and returns one if so.
/// Throws CapExceeded when k^C(m+k-1,m) exceeds `operation_cap`.
std::optional<FractionalOperation> find_symmetric_fpol(
    const Language& language, int arity,
    std::size_t operation_cap = kDefaultSymmetricOperationCap);

}  // namespace vcsp
