#pragma once

#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

namespace pdgeom {

/// Maximum-cardinality matching in a bipartite graph (Hopcroft-Karp).
///
/// Left vertices are 0..adjacency.size()-1, right vertices 0..right_count-1.
/// Neighbours are tried in the order given, so sorted adjacency lists give
/// lowest-index tie breaking.
class HopcroftKarp {
 public:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  HopcroftKarp(const std::vector<std::vector<std::size_t>>& adjacency,
               std::size_t right_count)
      : adj_(adjacency),
        match_left_(adjacency.size(), npos),
        match_right_(right_count, npos),
        level_(adjacency.size(), 0) {
    while (layer()) {
      for (std::size_t u = 0; u < adj_.size(); ++u) {
        if (match_left_[u] == npos && augment(u)) ++size_;
      }
    }
  }

  std::size_t size() const noexcept { return size_; }
  bool is_perfect() const noexcept {
    return size_ == adj_.size() && size_ == match_right_.size();
  }
  /// Right partner of left vertex u, or npos.
  std::size_t partner_of_left(std::size_t u) const { return match_left_[u]; }
  const std::vector<std::size_t>& left_matches() const noexcept {
    return match_left_;
  }

 private:
  static constexpr std::size_t kUnreached =
      std::numeric_limits<std::size_t>::max();

  // BFS from free left vertices; true if some free right vertex is reachable.
  bool layer() {
    std::queue<std::size_t> queue;
    for (std::size_t u = 0; u < adj_.size(); ++u) {
      if (match_left_[u] == npos) {
        level_[u] = 0;
        queue.push(u);
      } else {
        level_[u] = kUnreached;
      }
    }
    bool found = false;
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop();
      for (const auto v : adj_[u]) {
        const auto w = match_right_[v];
        if (w == npos) {
          found = true;
        } else if (level_[w] == kUnreached) {
          level_[w] = level_[u] + 1;
          queue.push(w);
        }
      }
    }
    return found;
  }

  bool augment(std::size_t u) {
    for (const auto v : adj_[u]) {
      const auto w = match_right_[v];
      if (w == npos || (level_[w] == level_[u] + 1 && augment(w))) {
        match_left_[u] = v;
        match_right_[v] = u;
        return true;
      }
    }
    level_[u] = kUnreached;
    return false;
  }

  const std::vector<std::vector<std::size_t>>& adj_;
  std::vector<std::size_t> match_left_;
  std::vector<std::size_t> match_right_;
  std::vector<std::size_t> level_;
  std::size_t size_ = 0;
};

}  // namespace pdgeom
