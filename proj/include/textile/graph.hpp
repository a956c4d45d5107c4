#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "textile/errors.hpp"
#include "textile/matrix.hpp"

namespace textile {

using Vertex = std::size_t;
/// Position of an edge in its graph's canonical edge list.
using EdgeId = std::size_t;

/// Edge k (0-based) among the M(i,j) parallel edges from source to range.
/// Vertices are 0-based internally and printed 1-based.
struct Edge {
  char tag = 'A';
  Vertex source = 0;
  Vertex range = 0;
  std::size_t multiplicity_index = 0;

  /// Identifier "(i,j,k)" with 1-based components.
  std::string id() const {
    return "(" + std::to_string(source + 1) + "," + std::to_string(range + 1) + "," +
           std::to_string(multiplicity_index + 1) + ")";
  }

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge& x, const Edge& y) {
    return std::tie(x.source, x.range, x.multiplicity_index) <=>
           std::tie(y.source, y.range, y.multiplicity_index);
  }
};

/// Finite directed multigraph realizing a nonnegative integer matrix.
class DirectedMultigraph {
public:
  DirectedMultigraph() = default;

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  char label() const noexcept { return label_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }

  Vertex source(EdgeId e) const { return edges_.at(e).source; }
  Vertex range(EdgeId e) const { return edges_.at(e).range; }

  /// Edges leaving v, in canonical order.
  std::vector<EdgeId> out_edges(Vertex v) const {
    std::vector<EdgeId> out;
    for (EdgeId e = 0; e < edges_.size(); ++e)
      if (edges_[e].source == v) out.push_back(e);
    return out;
  }

  /// Looks up an edge by its "(i,j,k)" identifier.
  std::optional<EdgeId> find(const std::string& id) const {
    for (EdgeId e = 0; e < edges_.size(); ++e)
      if (edges_[e].id() == id) return e;
    return std::nullopt;
  }

  /// Recounts parallel edges into the adjacency matrix.
  CountMatrix adjacency() const {
    CountMatrix m(vertex_count_, vertex_count_);
    for (const auto& e : edges_) ++m(e.source, e.range);
    return m;
  }

  friend DirectedMultigraph graph_from_matrix(const CountMatrix& m, char tag);

private:
  std::size_t vertex_count_ = 0;
  char label_ = 'A';
  std::vector<Edge> edges_;
};

/// Builds the graph with exactly m(i,j) edges i -> j, ordered by
/// (source, range, multiplicity index).
inline DirectedMultigraph graph_from_matrix(const CountMatrix& m, char tag) {
  require_square_nonnegative(m, std::string("graph ") + tag);
  DirectedMultigraph g;
  g.vertex_count_ = m.rows();
  g.label_ = tag;
  for (Vertex i = 0; i < m.rows(); ++i)
    for (Vertex j = 0; j < m.cols(); ++j)
      for (std::int64_t k = 0; k < m(i, j); ++k)
        g.edges_.push_back(Edge{tag, i, j, static_cast<std::size_t>(k)});
  return g;
}

// ---------------------------------------------------------------------------
// Essentiality

/// Describes the first zero row or column, if any ("row 2", "column 1").
inline std::optional<std::string> find_zero_line(const CountMatrix& m) {
  require_square_nonnegative(m, "essentiality");
  for (std::size_t i = 0; i < m.rows(); ++i) {
    bool nonzero = false;
    for (std::size_t j = 0; j < m.cols() && !nonzero; ++j) nonzero = m(i, j) > 0;
    if (!nonzero) return "zero row " + std::to_string(i + 1);
  }
  for (std::size_t j = 0; j < m.cols(); ++j) {
    bool nonzero = false;
    for (std::size_t i = 0; i < m.rows() && !nonzero; ++i) nonzero = m(i, j) > 0;
    if (!nonzero) return "zero column " + std::to_string(j + 1);
  }
  return std::nullopt;
}

inline bool is_essential(const CountMatrix& m) { return !find_zero_line(m).has_value(); }

// ---------------------------------------------------------------------------
// Irreducibility

namespace detail {

inline std::vector<bool> reachable_from(const CountMatrix& m, Vertex start, bool reversed) {
  const std::size_t n = m.rows();
  std::vector<bool> seen(n, false);
  std::deque<Vertex> queue{start};
  seen[start] = true;
  while (!queue.empty()) {
    const Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w = 0; w < n; ++w) {
      const auto entry = reversed ? m(w, v) : m(v, w);
      if (entry > 0 && !seen[w]) {
        seen[w] = true;
        queue.push_back(w);
      }
    }
  }
  return seen;
}

} // namespace detail

/// A pair (i, j) such that no positive-length path runs from i to j, or
/// nullopt when the support digraph is strongly connected.
inline std::optional<std::pair<Vertex, Vertex>> find_unreachable_pair(const CountMatrix& m) {
  require_square_nonnegative(m, "irreducibility");
  if (m.rows() == 1) {
    if (m(0, 0) > 0) return std::nullopt;
    return std::pair<Vertex, Vertex>{0, 0};
  }
  // With two or more vertices, one component reaching everything both ways
  // also yields closed walks of positive length through every vertex.
  const auto forward = detail::reachable_from(m, 0, false);
  for (Vertex j = 0; j < m.rows(); ++j)
    if (!forward[j]) return std::pair<Vertex, Vertex>{0, j};
  const auto backward = detail::reachable_from(m, 0, true);
  for (Vertex i = 0; i < m.rows(); ++i)
    if (!backward[i]) return std::pair<Vertex, Vertex>{i, 0};
  return std::nullopt;
}

/// Boolean-power reference: OR of supp(M^k) for k = 1..n covers every entry.
inline bool is_irreducible_by_powers(const CountMatrix& m) {
  require_square_nonnegative(m, "irreducibility");
  const std::size_t n = m.rows();
  Matrix<std::uint8_t> support(n, n), power(n, n), reach(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) support(i, j) = power(i, j) = reach(i, j) = m(i, j) > 0;
  for (std::size_t k = 2; k <= n; ++k) {
    Matrix<std::uint8_t> next(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l)
        if (power(i, l))
          for (std::size_t j = 0; j < n; ++j) next(i, j) |= support(l, j);
    power = std::move(next);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) reach(i, j) |= power(i, j);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!reach(i, j)) return false;
  return true;
}

/// True iff every (i, j) is joined by a path of positive length. Cross-checked
/// against the boolean-power computation for small matrices.
inline bool is_irreducible(const CountMatrix& m) {
  const bool connected = !find_unreachable_pair(m).has_value();
  if (m.rows() <= 64 && connected != is_irreducible_by_powers(m))
    throw std::logic_error("irreducibility: graph search and matrix powers disagree");
  return connected;
}

// ---------------------------------------------------------------------------
// Condition (I)

/// Returns the vertices of a cycle without an exit, i.e. a cycle all of whose
/// vertices have out-degree exactly 1, or nullopt if every cycle has an exit.
inline std::optional<std::vector<Vertex>> find_exit_free_cycle(const CountMatrix& m) {
  require_square_nonnegative(m, "condition (I)");
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) > 1) throw PreconditionError("condition (I) requires a {0,1} matrix");
  if (auto line = find_zero_line(m))
    throw PreconditionError("condition (I) requires an essential matrix (" + *line + ")");

  const std::size_t n = m.rows();
  constexpr std::size_t none = static_cast<std::size_t>(-1);
  // successor[v] is the unique target of v when v has out-degree 1.
  std::vector<std::size_t> successor(n, none);
  for (Vertex v = 0; v < n; ++v) {
    std::size_t degree = 0, target = none;
    for (Vertex w = 0; w < n; ++w)
      if (m(v, w) > 0) {
        ++degree;
        target = w;
      }
    if (degree == 1) successor[v] = target;
  }

  // Walk the functional subgraph; state 1 = on current walk, 2 = finished.
  std::vector<std::uint8_t> state(n, 0);
  for (Vertex start = 0; start < n; ++start) {
    if (state[start] != 0 || successor[start] == none) continue;
    std::vector<Vertex> walk;
    Vertex v = start;
    while (v != none && successor[v] != none && state[v] == 0) {
      state[v] = 1;
      walk.push_back(v);
      v = successor[v];
    }
    if (v != none && successor[v] != none && state[v] == 1) {
      auto it = std::find(walk.begin(), walk.end(), v);
      return std::vector<Vertex>(it, walk.end());
    }
    for (Vertex w : walk) state[w] = 2;
  }
  return std::nullopt;
}

inline bool satisfies_condition_I(const CountMatrix& m) {
  return !find_exit_free_cycle(m).has_value();
}

} // namespace textile
