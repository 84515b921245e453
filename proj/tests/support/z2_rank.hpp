#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "pdgeom/homology.hpp"

namespace pdgeom::gen {

// Persistent Betti numbers computed from ranks of Z/2 matrices, with no
// column reduction over a filtration order. Chains are bit masks, so the
// complex may hold at most 64 simplices of each dimension.
class PersistentBettiOracle {
 public:
  explicit PersistentBettiOracle(const FilteredComplex& k) : k_(k) {
    for (std::size_t i = 0; i < k.size(); ++i) {
      const auto& s = k.simplices()[i];
      auto& slot = by_dim_[s.dimension()];
      local_[i] = slot.size();
      slot.push_back(i);
      index_[s.vertices] = i;
    }
  }

  // Rank of H_dim(K_a) -> H_dim(K_b) for a <= b.
  int betti(int dim, double a, double b) const {
    const auto cycles = cycle_basis(dim, a);
    const auto bounds = boundaries(dim + 1, b);
    auto both = bounds;
    both.insert(both.end(), cycles.begin(), cycles.end());
    return rank(both) - rank(bounds);
  }

 private:
  using Mask = std::uint64_t;

  static int rank(std::vector<Mask> rows) {
    int r = 0;
    for (int bit = 0; bit < 64; ++bit) {
      const Mask m = Mask{1} << bit;
      std::size_t pivot = r;
      while (pivot < rows.size() && !(rows[pivot] & m)) ++pivot;
      if (pivot == rows.size()) continue;
      std::swap(rows[r], rows[pivot]);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i != static_cast<std::size_t>(r) && (rows[i] & m)) rows[i] ^= rows[r];
      }
      ++r;
    }
    return r;
  }

  // Boundary of simplex i as a mask over simplices one dimension lower.
  Mask boundary(std::size_t i) const {
    const auto& v = k_.simplices()[i].vertices;
    Mask m = 0;
    if (v.size() < 2) return m;
    for (std::size_t drop = 0; drop < v.size(); ++drop) {
      auto face = v;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
      m ^= Mask{1} << local_.at(index_.at(face));
    }
    return m;
  }

  std::vector<std::size_t> present(int dim, double t) const {
    std::vector<std::size_t> out;
    const auto it = by_dim_.find(dim);
    if (it == by_dim_.end()) return out;
    for (auto i : it->second) {
      if (k_.simplices()[i].value <= t) out.push_back(i);
    }
    return out;
  }

  std::vector<Mask> boundaries(int dim, double t) const {
    std::vector<Mask> out;
    for (auto i : present(dim, t)) out.push_back(boundary(i));
    return out;
  }

  // Kernel of the boundary map on dim-chains present at t.
  std::vector<Mask> cycle_basis(int dim, double t) const {
    struct Row {
      Mask image;
      Mask chain;
    };
    std::vector<Row> rows;
    for (auto i : present(dim, t)) rows.push_back({boundary(i), Mask{1} << local_.at(i)});
    std::vector<Mask> kernel;
    std::size_t r = 0;
    for (int bit = 0; bit < 64; ++bit) {
      const Mask m = Mask{1} << bit;
      std::size_t pivot = r;
      while (pivot < rows.size() && !(rows[pivot].image & m)) ++pivot;
      if (pivot == rows.size()) continue;
      std::swap(rows[r], rows[pivot]);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i != r && (rows[i].image & m)) {
          rows[i].image ^= rows[r].image;
          rows[i].chain ^= rows[r].chain;
        }
      }
      ++r;
    }
    for (std::size_t i = r; i < rows.size(); ++i) kernel.push_back(rows[i].chain);
    return kernel;
  }

  const FilteredComplex& k_;
  std::map<int, std::vector<std::size_t>> by_dim_;
  std::map<std::size_t, std::size_t> local_;
  std::map<std::vector<VertexId>, std::size_t> index_;
};

// Betti numbers implied by a persistence result: classes born by a that
// are still alive at b.
inline int betti_from_pairs(const PersistencePairs& p, int dim, double a, double b) {
  int count = 0;
  for (const auto& pair : p.pairs) {
    if (pair.dimension == dim && pair.birth <= a && pair.death > b) ++count;
  }
  for (const auto& e : p.essential) {
    if (e.dimension == dim && e.birth <= a) ++count;
  }
  return count;
}

}  // namespace pdgeom::gen
