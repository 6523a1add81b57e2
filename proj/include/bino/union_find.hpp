#pragma once

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

namespace bino {

/// Disjoint sets over 0..n-1. The root of every set is its smallest element,
/// so representatives do not depend on the order of unions.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    std::size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      auto next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace bino
