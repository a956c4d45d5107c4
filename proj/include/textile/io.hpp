#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "textile/closedform.hpp"
#include "textile/errors.hpp"
#include "textile/graph.hpp"
#include "textile/ktheory.hpp"
#include "textile/system.hpp"
#include "textile/tiling.hpp"

namespace textile::io {

using Json = nlohmann::ordered_json;

enum class KappaKind { Canonical, Exchange, Explicit };

/// One explicit specification entry, edges given as "(i,j,k)" identifiers.
struct KappaEntryText {
  std::string alpha, b, a, beta;
};

/// Parsed input document: {"A": [[..]], "B": [[..]], "kappa": ...}.
struct SystemInput {
  CountMatrix matrix_a;
  CountMatrix matrix_b;
  KappaKind kind = KappaKind::Canonical;
  std::vector<KappaEntryText> entries;
};

inline const char* to_string(KappaKind k) {
  switch (k) {
  case KappaKind::Canonical: return "canonical";
  case KappaKind::Exchange: return "exchange";
  case KappaKind::Explicit: return "explicit";
  }
  return "?";
}

inline CountMatrix parse_matrix(const Json& j, const std::string& name) {
  if (!j.is_array() || j.empty()) throw InputError(name + " must be a non-empty array of rows");
  const std::size_t n = j.size();
  CountMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Json& row = j[i];
    if (!row.is_array() || row.size() != n) throw InputError(name + " must be square");
    for (std::size_t k = 0; k < n; ++k) {
      if (!row[k].is_number_integer()) throw InputError(name + " entries must be integers");
      m(i, k) = row[k].get<std::int64_t>();
      if (m(i, k) < 0) throw InputError(name + " entries must be nonnegative");
    }
  }
  return m;
}

inline SystemInput parse_system_input(const Json& doc) {
  if (!doc.is_object()) throw InputError("input must be a JSON object");
  for (const char* key : {"A", "B"})
    if (!doc.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  SystemInput in;
  in.matrix_a = parse_matrix(doc["A"], "A");
  in.matrix_b = parse_matrix(doc["B"], "B");
  if (in.matrix_a.rows() != in.matrix_b.rows())
    throw InputError("A and B must have the same dimension");

  const Json kappa = doc.value("kappa", Json("canonical"));
  if (kappa.is_string()) {
    const auto s = kappa.get<std::string>();
    if (s == "canonical")
      in.kind = KappaKind::Canonical;
    else if (s == "exchange")
      in.kind = KappaKind::Exchange;
    else
      throw InputError("unknown kappa \"" + s + "\"");
    return in;
  }
  if (!kappa.is_array()) throw InputError("kappa must be a string or a list of entries");
  in.kind = KappaKind::Explicit;
  for (const auto& e : kappa) {
    if (!e.is_object() || !e.contains("from") || !e.contains("to"))
      throw InputError("kappa entries need \"from\" and \"to\"");
    const Json& from = e["from"];
    const Json& to = e["to"];
    auto ok = [](const Json& p) {
      return p.is_array() && p.size() == 2 && p[0].is_string() && p[1].is_string();
    };
    if (!ok(from) || !ok(to)) throw InputError("kappa \"from\"/\"to\" must be pairs of edge ids");
    in.entries.push_back({from[0].get<std::string>(), from[1].get<std::string>(),
                          to[0].get<std::string>(), to[1].get<std::string>()});
  }
  return in;
}

inline SystemInput parse_system_input(std::istream& is) {
  Json doc;
  try {
    doc = Json::parse(is);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return parse_system_input(doc);
}

namespace detail {

inline EdgeId resolve(const DirectedMultigraph& g, const std::string& id) {
  std::string compact;
  for (char c : id)
    if (c != ' ') compact += c;
  if (auto e = g.find(compact)) return *e;
  throw InputError(std::string("unknown edge ") + id + " in graph " + g.label());
}

} // namespace detail

/// Builds the system described by the input; throws CommutationError,
/// SpecificationError, PreconditionError or InputError.
inline TextileSystem build_from_input(const SystemInput& in) {
  require_commuting(in.matrix_a, in.matrix_b);
  switch (in.kind) {
  case KappaKind::Canonical: return build_canonical_system(in.matrix_a, in.matrix_b);
  case KappaKind::Exchange:
    if (in.matrix_a.rows() != 1)
      throw PreconditionError("kappa \"exchange\" needs 1x1 matrices A = [N], B = [M]");
    return build_exchange_system(in.matrix_a(0, 0), in.matrix_b(0, 0));
  case KappaKind::Explicit: break;
  }
  auto ga = graph_from_matrix(in.matrix_a, 'A');
  auto gb = graph_from_matrix(in.matrix_b, 'B');
  std::vector<Specification::Entry> entries;
  for (const auto& e : in.entries)
    entries.push_back({{detail::resolve(ga, e.alpha), detail::resolve(gb, e.b)},
                       {detail::resolve(gb, e.a), detail::resolve(ga, e.beta)}});
  return build_system(std::move(ga), std::move(gb), Specification(std::move(entries)));
}

// ---------------------------------------------------------------------------
// Report fragments

inline Json check(bool value, std::string detail) {
  return Json{{"value", value}, {"detail", std::move(detail)}};
}

inline Json matrix_json(const CountMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Json integers_json(const std::vector<Integer>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(x.str());
  return out;
}

inline Json group_json(const AbelianGroup& g) {
  return Json{{"group", g.to_string()},
              {"free_rank", g.free_rank},
              {"invariant_factors", integers_json(g.torsion)}};
}

inline Json tile_json(const TextileSystem& sys, std::size_t index) {
  const Tile& t = sys.tiles[index];
  return Json{{"index", index},
              {"top", sys.graph_a.edge(t.top).id()},
              {"right", sys.graph_b.edge(t.right).id()},
              {"left", sys.graph_b.edge(t.left).id()},
              {"bottom", sys.graph_a.edge(t.bottom).id()}};
}

inline Json summary_json(const TextileSystem& sys, KappaKind kind) {
  return Json{{"vertices", sys.graph_a.vertex_count()},
              {"edges_a", sys.graph_a.edge_count()},
              {"edges_b", sys.graph_b.edge_count()},
              {"tiles", sys.tiles.size()},
              {"omega", sys.omega_size()},
              {"kappa", to_string(kind)}};
}

inline Json kgroups_json(const KGroups& k) {
  return Json{{"k0", group_json(k.k0)},
              {"k1", group_json(k.k1)},
              {"k0_from_h_kappa", group_json(k.k0_from_h)},
              {"h_kappa_cross_check", k.h_cross_check}};
}

inline Json matrices_json(const TextileSystem& sys) {
  return Json{{"A", matrix_json(sys.graph_a.adjacency())},
              {"B", matrix_json(sys.graph_b.adjacency())},
              {"A_kappa", matrix_json(sys.a_kappa)},
              {"B_kappa", matrix_json(sys.b_kappa)},
              {"H_kappa", matrix_json(sys.h_kappa)}};
}

inline Json trace_json(const EuclidTrace& t) {
  return Json{{"m", t.m},           {"n", t.n},       {"quotients", t.quotients},
              {"remainders", t.remainders}, {"gcd", t.gcd}, {"divisible", t.divisible}};
}

inline Json closed_form_json(const ClosedFormVerification& v) {
  return Json{{"N", v.n},
              {"M", v.m},
              {"euclid", trace_json(v.closed_form.trace)},
              {"g", v.closed_form.g.str()},
              {"summands", integers_json(v.closed_form.summands)},
              {"closed_form_k0", group_json(v.closed_form.canonical)},
              {"closed_form_k1", group_json(v.closed_form.k1)},
              {"computed_k0", group_json(v.computed.k0)},
              {"computed_k1", group_json(v.computed.k1)},
              {"agree", v.agree()}};
}

/// Result of the structural checks; `passed` drives the exit status.
struct CheckOutcome {
  Json report;
  bool passed = true;
};

inline std::string vertex_list(const std::vector<Vertex>& vs) {
  std::string s;
  for (Vertex v : vs) s += (s.empty() ? "" : ",") + std::to_string(v + 1);
  return s;
}

inline Json essential_check(const CountMatrix& m) {
  const auto line = find_zero_line(m);
  return check(!line, line ? *line : "no zero row or column");
}

inline Json irreducible_check(const CountMatrix& m) {
  const auto pair = find_unreachable_pair(m);
  if (!pair) return check(true, "support digraph strongly connected");
  return check(false, "no path from " + std::to_string(pair->first + 1) + " to " +
                          std::to_string(pair->second + 1));
}

/// Builds the full check report (structural checks, transitivity, K-groups).
inline CheckOutcome run_checks(const TextileSystem& sys, KappaKind kind, std::size_t max_steps,
                               bool emit_matrices) {
  CheckOutcome out;
  Json checks = Json::object();
  bool structural = true;
  auto add = [&](const char* key, Json value, bool is_structural) {
    if (is_structural && !value["value"].get<bool>()) structural = false;
    checks[key] = std::move(value);
  };

  const CountMatrix a = sys.graph_a.adjacency(), b = sys.graph_b.adjacency();
  add("a_essential", essential_check(a), true);
  add("b_essential", essential_check(b), true);
  add("ab_commute", check(a * b == b * a, "AB = BA entrywise"), true);
  const auto validation = validate_specification(sys.kappa, sys.graph_a, sys.graph_b);
  add("kappa_valid",
      check(validation.valid, validation.valid ? "bijection with endpoint constraints"
                                               : validation.constraint + ": " + validation.message),
      true);
  add("a_kappa_essential", essential_check(sys.a_kappa), true);
  add("b_kappa_essential", essential_check(sys.b_kappa), true);
  add("a_kappa_b_kappa_commute",
      check(check_commutation(sys), "A_kappa B_kappa = B_kappa A_kappa entrywise"), true);

  const bool h_essential = is_essential(sys.h_kappa);
  add("h_kappa_essential", essential_check(sys.h_kappa), true);
  bool condition_i = false;
  if (h_essential) {
    const auto cycle = find_exit_free_cycle(sys.h_kappa);
    condition_i = !cycle;
    add("h_kappa_condition_I",
        check(condition_i, cycle ? "exit-free cycle through " + vertex_list(*cycle)
                                 : "every cycle has an exit"),
        true);
  } else {
    add("h_kappa_condition_I", check(false, "undefined: H_kappa is not essential"), true);
  }

  const auto diagonal = check_diagonal_property(sys);
  add("diagonal_property",
      check(diagonal.holds,
            diagonal.holds ? "every diagonal pair has at most one completion"
                           : "tiles " + std::to_string(diagonal.counterexample->first) + " and " +
                                 std::to_string(diagonal.counterexample->second) + " have " +
                                 std::to_string(diagonal.count) + " completions"),
      true);

  const bool transitive = is_transitive_matrix(sys);
  add("h_kappa_irreducible", irreducible_check(sys.h_kappa), false);
  add("transitive", irreducible_check(sys.a_kappa + sys.b_kappa), false);
  const auto unconnected = find_unconnected_tiles(sys, max_steps);
  add("transitive_search",
      check(!unconnected, unconnected ? "no staircase from tile " +
                                            std::to_string(unconnected->first) + " to tile " +
                                            std::to_string(unconnected->second) + " within " +
                                            std::to_string(max_steps) + " steps"
                                      : "staircase witness for every tile pair within " +
                                            std::to_string(max_steps) + " steps"),
      false);
  add("simple_purely_infinite_criteria",
      check(transitive && condition_i,
            "matrix-level sufficient conditions only: H_kappa irreducible and condition (I)"),
      false);

  out.passed = structural;
  out.report["system"] = summary_json(sys, kind);
  out.report["checks"] = std::move(checks);
  out.report["structural_checks_passed"] = structural;
  out.report["kgroups"] = kgroups_json(kgroups_of_system(sys));
  if (kind == KappaKind::Exchange) {
    const auto n = static_cast<std::int64_t>(sys.graph_a.edge_count());
    const auto m = static_cast<std::int64_t>(sys.graph_b.edge_count());
    if (n <= m) out.report["closed_form"] = closed_form_json(verify_closed_form(n, m));
  }
  if (emit_matrices) out.report["matrices"] = matrices_json(sys);
  return out;
}

// ---------------------------------------------------------------------------
// Plain-text rendering

namespace detail {

inline std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  if (j.is_array()) {
    std::string s = "[";
    for (std::size_t k = 0; k < j.size(); ++k) s += (k ? ", " : "") + scalar_text(j[k]);
    return s + "]";
  }
  return j.dump();
}

inline bool is_flat_object(const Json& j) {
  if (!j.is_object()) return false;
  return std::all_of(j.begin(), j.end(), [](const Json& v) { return !v.is_object(); });
}

inline bool is_table(const Json& j) {
  return j.is_array() && !j.empty() &&
         std::all_of(j.begin(), j.end(), [](const Json& v) { return is_flat_object(v); });
}

inline void render(const Json& j, std::ostringstream& os, std::size_t indent);

inline void render_table(const Json& rows, std::ostringstream& os, std::size_t indent) {
  std::vector<std::string> keys;
  for (auto it = rows[0].begin(); it != rows[0].end(); ++it) keys.push_back(it.key());
  std::vector<std::size_t> width(keys.size());
  for (std::size_t c = 0; c < keys.size(); ++c) {
    width[c] = keys[c].size();
    for (const auto& r : rows)
      width[c] = std::max(width[c], scalar_text(r.value(keys[c], Json())).size());
  }
  auto line = [&](auto cell) {
    os << std::string(indent, ' ');
    for (std::size_t c = 0; c < keys.size(); ++c) {
      const std::string s = cell(c);
      os << s;
      if (c + 1 < keys.size()) os << std::string(width[c] - s.size() + 2, ' ');
    }
    os << '\n';
  };
  line([&](std::size_t c) { return keys[c]; });
  for (const auto& r : rows) line([&](std::size_t c) { return scalar_text(r.value(keys[c], Json())); });
}

inline void render(const Json& j, std::ostringstream& os, std::size_t indent) {
  std::size_t width = 0;
  for (auto it = j.begin(); it != j.end(); ++it) width = std::max(width, it.key().size());
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    os << std::string(indent, ' ') << it.key();
    if (v.is_object() && v.contains("value") && v.contains("detail") && v.size() == 2) {
      os << std::string(width - it.key().size() + 2, ' ') << scalar_text(v["value"]) << "  ("
         << scalar_text(v["detail"]) << ")\n";
    } else if (v.is_object() && v.contains("group") && v.contains("free_rank")) {
      os << std::string(width - it.key().size() + 2, ' ') << v["group"].get<std::string>()
         << '\n';
    } else if (v.is_object()) {
      os << ":\n";
      render(v, os, indent + 2);
    } else if (is_table(v)) {
      os << ":\n";
      render_table(v, os, indent + 2);
    } else {
      os << std::string(width - it.key().size() + 2, ' ') << scalar_text(v) << '\n';
    }
  }
}

} // namespace detail

/// Aligned plain-text rendering of a report object.
inline std::string pretty(const Json& report) {
  std::ostringstream os;
  detail::render(report, os, 0);
  return os.str();
}

} // namespace textile::io
