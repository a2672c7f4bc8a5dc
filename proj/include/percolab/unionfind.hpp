#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace percolab {

// Disjoint-set forest with union by size and path halving.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  int find(int v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];  // path halving
      v = parent_[v];
    }
    return v;
  }

  // Returns the surviving root (false in .second if already joined).
  std::pair<int, bool> unite(int a, int b) {
    int ra = find(a), rb = find(b);
    if (ra == rb) return {ra, false};
    if (size_[ra] < size_[rb]) std::swap(ra, rb);
    parent_[rb] = ra;
    size_[ra] += size_[rb];
    return {ra, true};
  }

  std::int64_t size(int v) { return size_[find(v)]; }
  std::int64_t root_size(int root) const { return size_[root]; }

 private:
  std::vector<int> parent_;
  std::vector<std::int64_t> size_;
};

}  // namespace percolab
