#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "textile/errors.hpp"
#include "textile/graph.hpp"
#include "textile/matrix.hpp"

namespace textile {

/// (alpha, b) in E_A x E_B with r(alpha) = s(b).
struct AbPair {
  EdgeId alpha = 0;
  EdgeId b = 0;
  friend auto operator<=>(const AbPair&, const AbPair&) = default;
};

/// (a, beta) in E_B x E_A with r(a) = s(beta).
struct BaPair {
  EdgeId a = 0;
  EdgeId beta = 0;
  friend auto operator<=>(const BaPair&, const BaPair&) = default;
};

/// A tile (alpha, b, a, beta) with kappa(alpha, b) = (a, beta):
///
///       alpha
///     o ----> o
///   a |       | b
///     v       v
///     o ----> o
///       beta
struct Tile {
  EdgeId top = 0;    // alpha in E_A
  EdgeId right = 0;  // b in E_B
  EdgeId left = 0;   // a in E_B
  EdgeId bottom = 0; // beta in E_A
  friend auto operator<=>(const Tile&, const Tile&) = default;
};

/// Element (alpha, a) of Omega_kappa.
struct OmegaPair {
  EdgeId alpha = 0;
  EdgeId a = 0;
  friend auto operator<=>(const OmegaPair&, const OmegaPair&) = default;
};

/// A map kappa : Sigma^AB -> Sigma^BA stored as (domain, image) entries in
/// domain order. Construction does not validate; see validate_specification.
class Specification {
public:
  using Entry = std::pair<AbPair, BaPair>;

  Specification() = default;
  explicit Specification(std::vector<Entry> entries) : entries_(std::move(entries)) {
    std::stable_sort(entries_.begin(), entries_.end(),
                     [](const Entry& x, const Entry& y) { return x.first < y.first; });
  }

  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  /// Image of the first entry with the given domain pair.
  std::optional<BaPair> operator()(const AbPair& p) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), p,
                               [](const Entry& e, const AbPair& q) { return e.first < q; });
    if (it == entries_.end() || it->first != p) return std::nullopt;
    return it->second;
  }

private:
  std::vector<Entry> entries_;
};

/// Outcome of validate_specification. On failure `constraint` names the
/// violated requirement and `offending` holds the entry involved.
struct ValidationReport {
  bool valid = true;
  std::string constraint;
  std::string message;
  std::optional<Specification::Entry> offending;

  explicit operator bool() const noexcept { return valid; }
};

/// The assembled LR-textile system. Every matrix is indexed by `omega`.
struct TextileSystem {
  DirectedMultigraph graph_a;
  DirectedMultigraph graph_b;
  Specification kappa;
  std::vector<Tile> tiles;      // E_kappa, in domain order of kappa
  std::vector<OmegaPair> omega; // Omega_kappa, lexicographic in (alpha, a)
  CountMatrix a_kappa;
  CountMatrix b_kappa;
  CountMatrix h_kappa;

  std::size_t omega_size() const noexcept { return omega.size(); }

  std::optional<std::size_t> omega_index(const OmegaPair& p) const {
    auto it = std::lower_bound(omega.begin(), omega.end(), p);
    if (it == omega.end() || *it != p) return std::nullopt;
    return static_cast<std::size_t>(it - omega.begin());
  }

  /// (top, left) of a tile as a point of Omega_kappa.
  static OmegaPair corner(const Tile& t) { return {t.top, t.left}; }
};

// ---------------------------------------------------------------------------

namespace detail {

inline void require_common_vertices(const DirectedMultigraph& ga, const DirectedMultigraph& gb) {
  if (ga.vertex_count() != gb.vertex_count())
    throw InputError("graphs have different vertex counts (" + std::to_string(ga.vertex_count()) +
                     " vs " + std::to_string(gb.vertex_count()) + ")");
}

inline std::string pair_text(const DirectedMultigraph& ga, const DirectedMultigraph& gb,
                             const Specification::Entry& e) {
  return "(" + ga.edge(e.first.alpha).id() + "," + gb.edge(e.first.b).id() + ") -> (" +
         gb.edge(e.second.a).id() + "," + ga.edge(e.second.beta).id() + ")";
}

} // namespace detail

/// Sigma^AB: pairs (alpha, b) with r(alpha) = s(b), lexicographic order.
inline std::vector<AbPair> sigma_ab(const DirectedMultigraph& ga, const DirectedMultigraph& gb) {
  detail::require_common_vertices(ga, gb);
  std::vector<AbPair> out;
  for (EdgeId alpha = 0; alpha < ga.edge_count(); ++alpha)
    for (EdgeId b = 0; b < gb.edge_count(); ++b)
      if (ga.range(alpha) == gb.source(b)) out.push_back({alpha, b});
  return out;
}

/// Sigma^BA: pairs (a, beta) with r(a) = s(beta), lexicographic order.
inline std::vector<BaPair> sigma_ba(const DirectedMultigraph& ga, const DirectedMultigraph& gb) {
  detail::require_common_vertices(ga, gb);
  std::vector<BaPair> out;
  for (EdgeId a = 0; a < gb.edge_count(); ++a)
    for (EdgeId beta = 0; beta < ga.edge_count(); ++beta)
      if (gb.range(a) == ga.source(beta)) out.push_back({a, beta});
  return out;
}

/// Throws CommutationError naming the first entry where AB and BA differ.
inline void require_commuting(const CountMatrix& a, const CountMatrix& b) {
  if (a.rows() != b.rows() || !a.square() || !b.square())
    throw InputError("A and B must be square of the same size");
  const CountMatrix ab = a * b, ba = b * a;
  for (std::size_t i = 0; i < ab.rows(); ++i)
    for (std::size_t j = 0; j < ab.cols(); ++j)
      if (ab(i, j) != ba(i, j))
        throw CommutationError("AB != BA at (" + std::to_string(i + 1) + "," +
                               std::to_string(j + 1) + "): AB=" + std::to_string(ab(i, j)) +
                               ", BA=" + std::to_string(ba(i, j)));
}

/// Matches, for each vertex pair (i, j), the sorted two-step paths alpha.b
/// from i to j with the sorted paths a.beta from i to j, position by position.
inline Specification canonical_specification(const DirectedMultigraph& ga,
                                             const DirectedMultigraph& gb) {
  detail::require_common_vertices(ga, gb);
  require_commuting(ga.adjacency(), gb.adjacency());

  using Block = std::pair<Vertex, Vertex>;
  std::map<Block, std::vector<AbPair>> ab_paths;
  std::map<Block, std::vector<BaPair>> ba_paths;
  for (const auto& p : sigma_ab(ga, gb))
    ab_paths[{ga.source(p.alpha), gb.range(p.b)}].push_back(p);
  for (const auto& p : sigma_ba(ga, gb))
    ba_paths[{gb.source(p.a), ga.range(p.beta)}].push_back(p);

  std::vector<Specification::Entry> entries;
  for (const auto& [block, domain] : ab_paths) {
    const auto& image = ba_paths[block];
    // AB = BA guarantees equal block sizes.
    for (std::size_t k = 0; k < domain.size(); ++k) entries.emplace_back(domain[k], image.at(k));
  }
  return Specification(std::move(entries));
}

/// Single-vertex graphs for [n] and [m].
inline std::pair<DirectedMultigraph, DirectedMultigraph> exchange_graphs(std::int64_t n,
                                                                         std::int64_t m) {
  if (n <= 1 || m <= 1)
    throw PreconditionError("exchange specification needs N, M > 1 (got N=" + std::to_string(n) +
                            ", M=" + std::to_string(m) + ")");
  return {graph_from_matrix(CountMatrix{{n}}, 'A'), graph_from_matrix(CountMatrix{{m}}, 'B')};
}

/// kappa(alpha_i, a_k) = (a_k, alpha_i) on the one-vertex graphs [n], [m].
inline Specification exchange_specification(std::int64_t n, std::int64_t m) {
  exchange_graphs(n, m); // validates n, m
  std::vector<Specification::Entry> entries;
  for (EdgeId i = 0; i < static_cast<EdgeId>(n); ++i)
    for (EdgeId k = 0; k < static_cast<EdgeId>(m); ++k) entries.push_back({{i, k}, {k, i}});
  return Specification(std::move(entries));
}

/// Checks that kappa is a bijection Sigma^AB -> Sigma^BA preserving s(alpha)
/// = s(a) and r(b) = r(beta). Reports the first failure instead of throwing.
inline ValidationReport validate_specification(const Specification& kappa,
                                               const DirectedMultigraph& ga,
                                               const DirectedMultigraph& gb) {
  auto fail = [&](std::string constraint, const Specification::Entry* entry,
                  std::string message) {
    ValidationReport r;
    r.valid = false;
    r.constraint = std::move(constraint);
    if (entry) {
      r.offending = *entry;
      message += ": " + detail::pair_text(ga, gb, *entry);
    }
    r.message = std::move(message);
    return r;
  };

  if (ga.vertex_count() != gb.vertex_count())
    return fail("common vertex set", nullptr, "graphs have different vertex counts");

  for (const auto& e : kappa.entries()) {
    const auto [alpha, b] = e.first;
    const auto [a, beta] = e.second;
    if (alpha >= ga.edge_count() || b >= gb.edge_count() || a >= gb.edge_count() ||
        beta >= ga.edge_count())
      return fail("edge identifiers", nullptr, "entry references an unknown edge");
    if (ga.range(alpha) != gb.source(b))
      return fail("domain in Sigma^AB", &e, "r(alpha) != s(b)");
    if (gb.range(a) != ga.source(beta))
      return fail("image in Sigma^BA", &e, "r(a) != s(beta)");
    if (ga.source(alpha) != gb.source(a)) return fail("s(alpha) = s(a)", &e, "s(alpha) != s(a)");
    if (gb.range(b) != ga.range(beta)) return fail("r(b) = r(beta)", &e, "r(b) != r(beta)");
  }

  const auto& entries = kappa.entries();
  for (std::size_t k = 1; k < entries.size(); ++k)
    if (entries[k].first == entries[k - 1].first)
      return fail("well-defined", &entries[k], "domain pair listed twice");

  std::map<BaPair, std::size_t> images;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    auto [it, inserted] = images.emplace(entries[k].second, k);
    if (!inserted) return fail("injective", &entries[k], "not injective, image already used");
  }

  const auto domain = sigma_ab(ga, gb);
  if (domain.size() != entries.size()) {
    for (const auto& p : domain)
      if (!kappa(p))
        return fail("total on Sigma^AB", nullptr,
                    "no image for (" + ga.edge(p.alpha).id() + "," + gb.edge(p.b).id() + ")");
  }
  const auto codomain = sigma_ba(ga, gb);
  if (codomain.size() != images.size()) {
    for (const auto& q : codomain)
      if (!images.contains(q))
        return fail("surjective onto Sigma^BA", nullptr,
                    "(" + gb.edge(q.a).id() + "," + ga.edge(q.beta).id() + ") is not hit");
  }
  return {};
}

/// Builds E_kappa, Omega_kappa, A_kappa, B_kappa and H_kappa.
inline TextileSystem build_system(DirectedMultigraph ga, DirectedMultigraph gb,
                                  Specification kappa) {
  if (auto report = validate_specification(kappa, ga, gb); !report)
    throw SpecificationError("invalid specification (" + report.constraint + "): " +
                             report.message);

  TextileSystem sys;
  sys.tiles.reserve(kappa.size());
  std::set<OmegaPair> omega;
  for (const auto& [dom, img] : kappa.entries()) {
    sys.tiles.push_back(Tile{dom.alpha, dom.b, img.a, img.beta});
    omega.insert({dom.alpha, img.a});
  }
  sys.omega.assign(omega.begin(), omega.end());

  const std::size_t n = sys.omega.size();
  sys.a_kappa = CountMatrix(n, n);
  sys.b_kappa = CountMatrix(n, n);

  // Omega elements grouped by their second (E_B) and first (E_A) component.
  std::map<EdgeId, std::vector<std::size_t>> by_b_edge, by_a_edge;
  for (std::size_t k = 0; k < n; ++k) {
    by_b_edge[sys.omega[k].a].push_back(k);
    by_a_edge[sys.omega[k].alpha].push_back(k);
  }

  for (const auto& t : sys.tiles) {
    const std::size_t row = *sys.omega_index(TextileSystem::corner(t));
    // A_kappa((alpha,a),(delta,b)) = 1 for every (delta,b) in Omega.
    if (auto it = by_b_edge.find(t.right); it != by_b_edge.end())
      for (std::size_t col : it->second) sys.a_kappa(row, col) = 1;
    // B_kappa((alpha,a),(beta,d)) = 1 for every (beta,d) in Omega.
    if (auto it = by_a_edge.find(t.bottom); it != by_a_edge.end())
      for (std::size_t col : it->second) sys.b_kappa(row, col) = 1;
  }

  sys.h_kappa = block2x2(sys.a_kappa, sys.a_kappa, sys.b_kappa, sys.b_kappa);
  sys.graph_a = std::move(ga);
  sys.graph_b = std::move(gb);
  sys.kappa = std::move(kappa);
  return sys;
}

/// Builds the system for A, B with the canonical specification.
inline TextileSystem build_canonical_system(const CountMatrix& a, const CountMatrix& b) {
  auto ga = graph_from_matrix(a, 'A');
  auto gb = graph_from_matrix(b, 'B');
  auto kappa = canonical_specification(ga, gb);
  return build_system(std::move(ga), std::move(gb), std::move(kappa));
}

/// The [N], [M] system with the exchanging specification.
inline TextileSystem build_exchange_system(std::int64_t n, std::int64_t m) {
  auto [ga, gb] = exchange_graphs(n, m);
  return build_system(std::move(ga), std::move(gb), exchange_specification(n, m));
}

/// A_kappa B_kappa == B_kappa A_kappa over the integers.
inline bool check_commutation(const TextileSystem& sys) {
  return sys.a_kappa * sys.b_kappa == sys.b_kappa * sys.a_kappa;
}

} // namespace textile
