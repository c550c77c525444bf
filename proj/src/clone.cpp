#include "vcsp/clone.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "vcsp/errors.hpp"

namespace vcsp {

std::size_t CloneResult::size() const {
  std::size_t total = 0;
  for (const auto& layer : layers) total += layer.size();
  return total;
}

std::vector<Operation> CloneResult::members() const {
  std::vector<Operation> out;
  for (const auto& layer : layers) out.insert(out.end(), layer.begin(), layer.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool CloneResult::contains(const Operation& g) const {
  for (const auto& layer : layers) {
    if (std::binary_search(layer.begin(), layer.end(), g)) return true;
  }
  return false;
}

namespace {

// Runs the layered closure; `stop` is consulted after each completed layer.
CloneResult run_bfs(int domain_size, const std::vector<Operation>& ops, int arity,
                    std::size_t cap, const std::function<bool(const std::vector<Operation>&)>& stop) {
  if (arity < 1) throw std::invalid_argument("clone arity must be >= 1");
  for (const auto& h : ops) {
    if (h.domain_size() != domain_size) throw std::invalid_argument("operation domain mismatch");
  }
  std::vector<Operation> generators = ops;
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()), generators.end());

  CloneResult result;
  std::set<Operation> known;
  std::vector<Operation> all;
  std::vector<Operation> first;
  for (int i = 0; i < arity; ++i) first.push_back(Operation::projection(domain_size, arity, i));
  std::sort(first.begin(), first.end());
  first.erase(std::unique(first.begin(), first.end()), first.end());

  std::vector<Operation> layer = std::move(first);
  std::size_t latest_start = 0;
  while (!layer.empty()) {
    for (const auto& g : layer) known.insert(g);
    all.insert(all.end(), layer.begin(), layer.end());
    result.layers.push_back(layer);
    if (known.size() > cap) {
      throw CapExceeded("clone generation discovered more than " + std::to_string(cap) +
                        " operations");
    }
    if (stop(layer)) break;

    std::set<Operation> fresh;
    for (const auto& h : generators) {
      const std::size_t a = static_cast<std::size_t>(h.arity());
      std::vector<std::size_t> idx(a, 0);
      std::vector<Operation> args;
      while (true) {
        const bool touches_latest =
            std::any_of(idx.begin(), idx.end(), [&](std::size_t i) { return i >= latest_start; });
        if (touches_latest) {
          args.clear();
          for (std::size_t i : idx) args.push_back(all[i]);
          Operation g = superpose(h, args);
          if (!known.contains(g) && fresh.insert(std::move(g)).second &&
              known.size() + fresh.size() > cap) {
            throw CapExceeded("clone generation discovered more than " + std::to_string(cap) +
                              " operations");
          }
        }
        std::size_t p = a;
        while (p > 0 && ++idx[p - 1] == all.size()) idx[--p] = 0;
        if (p == 0) break;
      }
    }
    latest_start = all.size();
    layer.assign(fresh.begin(), fresh.end());
  }
  return result;
}

}  // namespace

CloneResult generate_clone(int domain_size, const std::vector<Operation>& ops, int arity,
                           std::size_t cap) {
  return run_bfs(domain_size, ops, arity, cap, [](const auto&) { return false; });
}

std::optional<Operation> find_generated_symmetric(int domain_size,
                                                  const std::vector<Operation>& ops, int arity,
                                                  std::size_t cap) {
  std::optional<Operation> found;
  run_bfs(domain_size, ops, arity, cap, [&](const std::vector<Operation>& layer) {
    for (const auto& g : layer) {
      if (is_symmetric(g)) {
        found = g;
        return true;
      }
    }
    return false;
  });
  return found;
}

}  // namespace vcsp
