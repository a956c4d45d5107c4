#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "textile/errors.hpp"
#include "textile/graph.hpp"
#include "textile/matrix.hpp"
#include "textile/system.hpp"

namespace textile {

/// Lattice position; i grows to the right, j grows upwards.
struct Cell {
  std::int64_t i = 0;
  std::int64_t j = 0;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

/// A finite set of placed tiles.
class PavedPatch {
public:
  const std::map<Cell, Tile>& cells() const noexcept { return cells_; }
  bool empty() const noexcept { return cells_.empty(); }
  bool contains(Cell c) const { return cells_.contains(c); }
  std::optional<Tile> at(Cell c) const {
    auto it = cells_.find(c);
    if (it == cells_.end()) return std::nullopt;
    return it->second;
  }

  void place(Cell c, const Tile& t) { cells_[c] = t; }

  /// Every pair of neighbouring cells agrees on its shared edge.
  bool is_paved() const {
    for (const auto& [c, t] : cells_) {
      if (auto east = at({c.i + 1, c.j}); east && t.right != east->left) return false;
      if (auto north = at({c.i, c.j + 1}); north && t.top != north->bottom) return false;
    }
    return true;
  }

private:
  std::map<Cell, Tile> cells_;
};

enum class Move { Right, Down };

inline const char* to_string(Move m) { return m == Move::Right ? "R" : "D"; }

/// A monotone right/down chain of tiles from `start` at the origin to the last
/// entry of `tiles` at `end_position`.
struct StaircaseWitness {
  Tile start;
  std::vector<Move> moves;
  std::vector<Tile> tiles; // tiles[k] is placed by moves[k]
  Cell end_position;
};

// ---------------------------------------------------------------------------
// Diagonal property

struct DiagonalReport {
  bool holds = true;
  /// Indices (omega1, omega2) into the tile list for the first pair whose
  /// completion count exceeds one, and that count.
  std::optional<std::pair<std::size_t, std::size_t>> counterexample;
  std::size_t count = 0;
};

/// For every pair (w1 at (i,j), w2 at (i+1,j-1)) counts completions (w3 at
/// (i,j-1), w4 at (i+1,j)); the property holds iff no count exceeds one.
inline DiagonalReport check_diagonal_property(std::span<const Tile> tiles) {
  // w3 is fixed by (top, right) = (b(w1), l(w2)); w4 by (left, bottom) =
  // (r(w1), t(w2)). The two choices are independent, so count = c3 * c4.
  std::map<std::pair<EdgeId, EdgeId>, std::size_t> by_top_right, by_left_bottom;
  for (const auto& t : tiles) {
    ++by_top_right[{t.top, t.right}];
    ++by_left_bottom[{t.left, t.bottom}];
  }
  auto lookup = [](const auto& table, std::pair<EdgeId, EdgeId> key) -> std::size_t {
    auto it = table.find(key);
    return it == table.end() ? 0 : it->second;
  };

  DiagonalReport report;
  for (std::size_t x = 0; x < tiles.size(); ++x)
    for (std::size_t y = 0; y < tiles.size(); ++y) {
      const std::size_t c3 = lookup(by_top_right, {tiles[x].bottom, tiles[y].left});
      const std::size_t c4 = lookup(by_left_bottom, {tiles[x].right, tiles[y].top});
      const std::size_t count = c3 * c4;
      report.count = std::max(report.count, count);
      if (count > 1 && report.holds) {
        report.holds = false;
        report.counterexample = std::pair{x, y};
        report.count = count;
        return report;
      }
    }
  return report;
}

inline DiagonalReport check_diagonal_property(const TextileSystem& sys) {
  return check_diagonal_property(std::span<const Tile>(sys.tiles));
}

// ---------------------------------------------------------------------------
// Transitivity via matrices

/// Irreducibility of A_kappa + B_kappa, asserted equal to that of H_kappa.
inline bool is_transitive_matrix(const TextileSystem& sys) {
  const bool sum_irreducible = is_irreducible(sys.a_kappa + sys.b_kappa);
  if (sum_irreducible != is_irreducible(sys.h_kappa))
    throw std::logic_error("A_kappa + B_kappa and H_kappa disagree on irreducibility");
  return sum_irreducible;
}

/// True iff for all (p, q) in Omega^2 there are n, m <= |Omega| with
/// A(A+B)^n (p,q) > 0 and B(A+B)^m (p,q) > 0. Boolean arithmetic throughout.
inline bool both_letter_reachability(const TextileSystem& sys) {
  const std::size_t n = sys.omega_size();
  using Bits = Matrix<std::uint8_t>;
  auto support = [n](const CountMatrix& m) {
    Bits out(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(i, j) = m(i, j) > 0;
    return out;
  };
  auto bool_product = [n](const Bits& x, const Bits& y) {
    Bits out(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (x(i, k))
          for (std::size_t j = 0; j < n; ++j) out(i, j) |= y(k, j);
    return out;
  };
  const Bits a = support(sys.a_kappa), b = support(sys.b_kappa);
  const Bits sum = support(sys.a_kappa + sys.b_kappa);
  Bits a_hits = a, b_hits = b, a_power = a, b_power = b;
  for (std::size_t k = 1; k <= n; ++k) {
    a_power = bool_product(a_power, sum);
    b_power = bool_product(b_power, sum);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        a_hits(i, j) |= a_power(i, j);
        b_hits(i, j) |= b_power(i, j);
      }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!a_hits(i, j) || !b_hits(i, j)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Transitivity via staircase search

/// Re-checks a witness link by link: every tile is in E_kappa, each Right
/// step matches l(next) = r(prev), each Down step matches t(next) = b(prev),
/// the end position is consistent with the moves and satisfies j < 0 < i.
inline bool verify_witness(const TextileSystem& sys, const StaircaseWitness& w) {
  if (w.moves.size() != w.tiles.size()) return false;
  auto known = [&](const Tile& t) {
    return std::find(sys.tiles.begin(), sys.tiles.end(), t) != sys.tiles.end();
  };
  if (!known(w.start)) return false;
  Tile prev = w.start;
  Cell pos{0, 0};
  for (std::size_t k = 0; k < w.moves.size(); ++k) {
    const Tile& next = w.tiles[k];
    if (!known(next)) return false;
    if (w.moves[k] == Move::Right) {
      if (next.left != prev.right) return false;
      ++pos.i;
    } else {
      if (next.top != prev.bottom) return false;
      --pos.j;
    }
    prev = next;
  }
  return pos == w.end_position && pos.j < 0 && 0 < pos.i;
}

namespace detail {

/// Tile indices grouped by left edge and by top edge.
struct TileIndex {
  std::map<EdgeId, std::vector<std::size_t>> by_left, by_top;
  explicit TileIndex(const TextileSystem& sys) {
    for (std::size_t k = 0; k < sys.tiles.size(); ++k) {
      by_left[sys.tiles[k].left].push_back(k);
      by_top[sys.tiles[k].top].push_back(k);
    }
  }
};

/// Breadth-first search over (tile, used Right, used Down) states starting at
/// `source`. Returns, for each reached state, the predecessor state and move.
struct StaircaseSearch {
  static constexpr std::size_t none = static_cast<std::size_t>(-1);
  struct Visit {
    std::size_t parent = none;
    Move move = Move::Right;
    std::size_t depth = 0;
    bool seen = false;
  };
  std::vector<Visit> visits; // index = tile * 4 + flags
  std::size_t source = 0;

  static std::size_t state(std::size_t tile, unsigned flags) { return tile * 4 + flags; }

  StaircaseSearch(const TextileSystem& sys, const TileIndex& index, std::size_t from,
                  std::size_t max_steps)
      : visits(sys.tiles.size() * 4), source(from) {
    std::deque<std::size_t> queue;
    visits[state(from, 0)].seen = true;
    queue.push_back(state(from, 0));
    while (!queue.empty()) {
      const std::size_t s = queue.front();
      queue.pop_front();
      const std::size_t tile = s / 4;
      const unsigned flags = static_cast<unsigned>(s % 4);
      if (visits[s].depth == max_steps) continue;
      auto expand = [&](const std::map<EdgeId, std::vector<std::size_t>>& table, EdgeId key,
                        Move move, unsigned flag) {
        auto it = table.find(key);
        if (it == table.end()) return;
        for (std::size_t next : it->second) {
          const std::size_t t = state(next, flags | flag);
          if (visits[t].seen) continue;
          visits[t] = Visit{s, move, visits[s].depth + 1, true};
          queue.push_back(t);
        }
      };
      expand(index.by_left, sys.tiles[tile].right, Move::Right, 1u);
      expand(index.by_top, sys.tiles[tile].bottom, Move::Down, 2u);
    }
  }

  bool reaches(std::size_t tile) const { return visits[state(tile, 3)].seen; }

  StaircaseWitness witness(const TextileSystem& sys, std::size_t target) const {
    std::vector<std::pair<Move, std::size_t>> path;
    for (std::size_t s = state(target, 3); s != state(source, 0); s = visits[s].parent)
      path.emplace_back(visits[s].move, s / 4);
    std::reverse(path.begin(), path.end());
    StaircaseWitness w;
    w.start = sys.tiles[source];
    for (const auto& [move, tile] : path) {
      w.moves.push_back(move);
      w.tiles.push_back(sys.tiles[tile]);
      if (move == Move::Right)
        ++w.end_position.i;
      else
        --w.end_position.j;
    }
    return w;
  }
};

inline std::size_t tile_index(const TextileSystem& sys, const Tile& t) {
  auto it = std::find(sys.tiles.begin(), sys.tiles.end(), t);
  if (it == sys.tiles.end()) throw InputError("tile is not in E_kappa");
  return static_cast<std::size_t>(it - sys.tiles.begin());
}

} // namespace detail

/// Result of a witness search; `witness` is empty when none exists within
/// `max_steps` moves.
struct WitnessSearch {
  std::optional<StaircaseWitness> witness;
  std::size_t max_steps = 0;
};

/// Shortest staircase from `from` at (0,0) to `to` at some (i,j) with
/// j < 0 < i, using at most max_steps moves.
inline WitnessSearch find_transitivity_witness(const TextileSystem& sys, const Tile& from,
                                               const Tile& to, std::size_t max_steps) {
  const std::size_t source = detail::tile_index(sys, from);
  const std::size_t target = detail::tile_index(sys, to);
  const detail::TileIndex index(sys);
  const detail::StaircaseSearch search(sys, index, source, max_steps);
  WitnessSearch result{std::nullopt, max_steps};
  if (search.reaches(target)) {
    auto w = search.witness(sys, target);
    if (!verify_witness(sys, w)) throw std::logic_error("staircase witness failed re-validation");
    result.witness = std::move(w);
  }
  return result;
}

/// The default search bound 2 |Omega_kappa|.
inline std::size_t default_max_steps(const TextileSystem& sys) { return 2 * sys.omega_size(); }

/// First ordered tile pair without a witness, if any.
inline std::optional<std::pair<std::size_t, std::size_t>>
find_unconnected_tiles(const TextileSystem& sys, std::size_t max_steps) {
  const detail::TileIndex index(sys);
  for (std::size_t x = 0; x < sys.tiles.size(); ++x) {
    const detail::StaircaseSearch search(sys, index, x, max_steps);
    for (std::size_t y = 0; y < sys.tiles.size(); ++y)
      if (!search.reaches(y)) return std::pair{x, y};
  }
  return std::nullopt;
}

/// Every ordered pair of tiles is joined by a staircase within max_steps.
inline bool is_transitive_search(const TextileSystem& sys, std::size_t max_steps) {
  return !find_unconnected_tiles(sys, max_steps).has_value();
}

// ---------------------------------------------------------------------------
// Patch extension

/// All tiles that agree with every placed neighbour of `position`.
inline std::vector<Tile> extend_patch(const TextileSystem& sys, const PavedPatch& patch,
                                      Cell position) {
  if (patch.contains(position)) throw DomainError("position is already occupied");
  const auto west = patch.at({position.i - 1, position.j});
  const auto east = patch.at({position.i + 1, position.j});
  const auto north = patch.at({position.i, position.j + 1});
  const auto south = patch.at({position.i, position.j - 1});
  if (!patch.empty() && !west && !east && !north && !south)
    throw DomainError("position (" + std::to_string(position.i) + "," +
                      std::to_string(position.j) + ") is not adjacent to the patch");
  std::vector<Tile> out;
  for (const auto& t : sys.tiles) {
    if (west && t.left != west->right) continue;
    if (east && t.right != east->left) continue;
    if (north && t.top != north->bottom) continue;
    if (south && t.bottom != south->top) continue;
    out.push_back(t);
  }
  return out;
}

} // namespace textile
