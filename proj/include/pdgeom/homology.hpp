#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <iterator>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "pdgeom/diagram.hpp"
#include "pdgeom/error.hpp"
#include "pdgeom/text.hpp"

namespace pdgeom {

using VertexId = std::uint32_t;

struct Simplex {
  std::vector<VertexId> vertices;  // sorted, distinct
  double value = 0.0;

  int dimension() const { return static_cast<int>(vertices.size()) - 1; }

  friend bool operator==(const Simplex&, const Simplex&) = default;
};

inline std::string describe(const std::vector<VertexId>& vertices) {
  std::string s = "{";
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    s += (i ? " " : "") + std::to_string(vertices[i]);
  }
  return s + "}";
}

/// Simplicial complex with a filtration value per simplex. Construction
/// checks closure under faces and monotonicity along face relations.
class FilteredComplex {
 public:
  FilteredComplex() = default;

  explicit FilteredComplex(std::vector<Simplex> simplices)
      : simplices_(std::move(simplices)) {
    std::map<std::vector<VertexId>, std::size_t> index;
    for (std::size_t i = 0; i < simplices_.size(); ++i) {
      auto& s = simplices_[i];
      if (s.vertices.empty()) throw input_error("simplex with no vertices");
      if (!std::isfinite(s.value)) {
        throw input_error("simplex " + describe(s.vertices) +
                          " has a non-finite filtration value");
      }
      std::sort(s.vertices.begin(), s.vertices.end());
      if (std::adjacent_find(s.vertices.begin(), s.vertices.end()) !=
          s.vertices.end()) {
        throw input_error("simplex " + describe(s.vertices) +
                          " repeats a vertex");
      }
      if (!index.emplace(s.vertices, i).second) {
        throw input_error("simplex " + describe(s.vertices) +
                          " listed twice");
      }
    }
    for (const auto& s : simplices_) {
      if (s.vertices.size() < 2) continue;
      for (std::size_t drop = 0; drop < s.vertices.size(); ++drop) {
        auto face = s.vertices;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
        const auto it = index.find(face);
        if (it == index.end()) {
          throw input_error("missing face " + describe(face) + " of " +
                            describe(s.vertices));
        }
        const auto& f = simplices_[it->second];
        if (f.value > s.value) {
          throw input_error("face " + describe(face) + " @ " +
                            text::format_exact(f.value) +
                            " enters after coface " + describe(s.vertices) +
                            " @ " + text::format_exact(s.value));
        }
      }
    }
  }

  const std::vector<Simplex>& simplices() const noexcept { return simplices_; }
  std::size_t size() const noexcept { return simplices_.size(); }
  bool empty() const noexcept { return simplices_.empty(); }

 private:
  std::vector<Simplex> simplices_;
};

struct PersistencePair {
  double birth = 0.0;
  double death = 0.0;
  int dimension = 0;

  friend bool operator==(const PersistencePair&,
                         const PersistencePair&) = default;
};

struct EssentialClass {
  double birth = 0.0;
  int dimension = 0;

  friend bool operator==(const EssentialClass&, const EssentialClass&) = default;
};

struct PersistencePairs {
  std::vector<PersistencePair> pairs;       // birth < death only
  std::vector<EssentialClass> essential;

  /// Finite pairs of one degree as a persistence diagram.
  PersistenceDiagram diagram(int dimension) const {
    std::vector<DiagramPoint> points;
    for (const auto& p : pairs) {
      if (p.dimension == dimension) points.push_back({p.birth, p.death});
    }
    return PersistenceDiagram(std::move(points));
  }

  friend bool operator==(const PersistencePairs&,
                         const PersistencePairs&) = default;
};

/// Filtration order: (value, dimension, vertices lexicographically).
inline std::vector<std::size_t> filtration_order(const FilteredComplex& k) {
  const auto& s = k.simplices();
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::forward_as_tuple(s[a].value, s[a].vertices.size(), s[a].vertices) <
           std::forward_as_tuple(s[b].value, s[b].vertices.size(), s[b].vertices);
  });
  return order;
}

/// Persistent homology over Z/2 by standard column reduction of the
/// filtered boundary matrix. Zero-length pairs are dropped.
inline PersistencePairs persistence(const FilteredComplex& complex) {
  const auto& simplices = complex.simplices();
  const auto order = filtration_order(complex);
  const std::size_t n = order.size();

  std::map<std::vector<VertexId>, std::size_t> position;
  for (std::size_t pos = 0; pos < n; ++pos) {
    position.emplace(simplices[order[pos]].vertices, pos);
  }

  // Columns hold sorted row positions; the last entry is the pivot.
  std::vector<std::vector<std::size_t>> columns(n);
  for (std::size_t pos = 0; pos < n; ++pos) {
    const auto& verts = simplices[order[pos]].vertices;
    if (verts.size() < 2) continue;
    auto& col = columns[pos];
    for (std::size_t drop = 0; drop < verts.size(); ++drop) {
      auto face = verts;
      face.erase(face.begin() + static_cast<std::ptrdiff_t>(drop));
      col.push_back(position.at(face));
    }
    std::sort(col.begin(), col.end());
  }

  constexpr std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> column_with_pivot(n, none);
  std::vector<char> paired(n, 0);
  PersistencePairs result;
  std::vector<std::size_t> scratch;

  for (std::size_t j = 0; j < n; ++j) {
    auto& col = columns[j];
    while (!col.empty() && column_with_pivot[col.back()] != none) {
      const auto& other = columns[column_with_pivot[col.back()]];
      scratch.clear();
      std::set_symmetric_difference(col.begin(), col.end(), other.begin(),
                                    other.end(), std::back_inserter(scratch));
      col.swap(scratch);
    }
    if (col.empty()) continue;
    const std::size_t low = col.back();
    column_with_pivot[low] = j;
    paired[low] = paired[j] = 1;
    const auto& born = simplices[order[low]];
    const auto& dies = simplices[order[j]];
    if (born.value < dies.value) {
      result.pairs.push_back({born.value, dies.value, born.dimension()});
    }
  }
  for (std::size_t pos = 0; pos < n; ++pos) {
    if (!paired[pos] && columns[pos].empty()) {
      const auto& s = simplices[order[pos]];
      result.essential.push_back({s.value, s.dimension()});
    }
  }

  std::sort(result.pairs.begin(), result.pairs.end(), [](const auto& a, const auto& b) {
    return std::tie(a.dimension, a.birth, a.death) <
           std::tie(b.dimension, b.birth, b.death);
  });
  std::sort(result.essential.begin(), result.essential.end(),
            [](const auto& a, const auto& b) {
              return std::tie(a.dimension, a.birth) < std::tie(b.dimension, b.birth);
            });
  return result;
}

/// Vertex id for role 0, 1, 2 (a, b, c) of the triangle built for point i.
inline VertexId realization_vertex(std::size_t point, int role) {
  return static_cast<VertexId>(3 * point + static_cast<std::size_t>(role));
}

/// One disjoint triangle per diagram point (x, y): vertices and edges enter
/// at x, the 2-cell at y. Its degree-1 persistence is the diagram.
inline FilteredComplex realize(const PersistenceDiagram& diagram) {
  std::vector<Simplex> simplices;
  simplices.reserve(7 * diagram.size());
  for (std::size_t i = 0; i < diagram.size(); ++i) {
    const auto [x, y] = diagram[i];
    const VertexId a = realization_vertex(i, 0);
    const VertexId b = realization_vertex(i, 1);
    const VertexId c = realization_vertex(i, 2);
    simplices.push_back({{a}, x});
    simplices.push_back({{b}, x});
    simplices.push_back({{c}, x});
    simplices.push_back({{a, b}, x});
    simplices.push_back({{a, c}, x});
    simplices.push_back({{b, c}, x});
    simplices.push_back({{a, b, c}, y});
  }
  return FilteredComplex(std::move(simplices));
}

inline bool roundtrip_check(const PersistenceDiagram& diagram) {
  return persistence(realize(diagram)).diagram(1) == diagram;
}

// ---------------------------------------------------------------------------
// Text format: one simplex per line, "v1 v2 ... vk @ value".

inline FilteredComplex parse_complex(std::istream& in) {
  std::vector<Simplex> simplices;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = text::trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto where = "line " + std::to_string(line_no) + ": ";
    const auto at = body.find('@');
    if (at == std::string_view::npos) {
      throw input_error(where + "expected \"v1 ... vk @ value\"");
    }
    Simplex s;
    for (auto tok : text::split_whitespace(body.substr(0, at))) {
      VertexId v = 0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw input_error(where + "malformed vertex id");
      }
      s.vertices.push_back(v);
    }
    const auto value = text::parse_double(body.substr(at + 1));
    if (!value) throw input_error(where + "malformed filtration value");
    s.value = *value;
    simplices.push_back(std::move(s));
  }
  return FilteredComplex(std::move(simplices));
}

inline FilteredComplex parse_complex(const std::string& contents) {
  std::istringstream in(contents);
  return parse_complex(in);
}

inline FilteredComplex read_complex_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open complex file: " + path);
  try {
    return parse_complex(in);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

inline void write_complex(std::ostream& out, const FilteredComplex& k) {
  for (const auto& s : k.simplices()) {
    for (auto v : s.vertices) out << v << ' ';
    out << "@ " << text::format_exact(s.value) << '\n';
  }
}

}  // namespace pdgeom
