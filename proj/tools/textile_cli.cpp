// Command-line front end for the textile-system library.
//
// Exit codes:
//   0  success
//   1  a structural check failed, or a closed-form comparison disagreed
//   2  usage error
//   3  input error (malformed JSON, bad matrix, unknown edge, bad tile index)
//   4  AB != BA
//   5  invalid specification kappa
//   6  precondition violated (e.g. N > M, N <= 1)
//   7  internal error

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"

#include "textile/io.hpp"
#include "textile/textile.hpp"

namespace {

using textile::io::Json;

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kInput = 3,
  kCommutation = 4,
  kSpecification = 5,
  kPrecondition = 6,
  kInternal = 7,
};

struct Options {
  bool pretty = false;
  bool emit_matrices = false;
  std::optional<std::size_t> max_steps;
  std::uint64_t seed = 1;
  std::string input; // path, or empty / "-" for stdin
};

textile::io::SystemInput read_input(const std::string& path) {
  if (path.empty() || path == "-") return textile::io::parse_system_input(std::cin);
  std::ifstream file(path);
  if (!file) throw textile::InputError("cannot open " + path);
  return textile::io::parse_system_input(file);
}

void emit(const Json& report, const Options& opt) {
  if (opt.pretty)
    std::cout << textile::io::pretty(report);
  else
    std::cout << report.dump(2) << '\n';
}

std::size_t steps_for(const textile::TextileSystem& sys, const Options& opt) {
  return opt.max_steps.value_or(textile::default_max_steps(sys));
}

int cmd_check(const Options& opt) {
  const auto in = read_input(opt.input);
  const auto sys = textile::io::build_from_input(in);
  auto outcome = textile::io::run_checks(sys, in.kind, steps_for(sys, opt), opt.emit_matrices);
  emit(outcome.report, opt);
  return outcome.passed ? kOk : kCheckFailed;
}

int cmd_kgroups(const Options& opt) {
  const auto in = read_input(opt.input);
  const auto sys = textile::io::build_from_input(in);
  Json report;
  report["system"] = textile::io::summary_json(sys, in.kind);
  const auto k = textile::kgroups_of_system(sys);
  report["kgroups"] = textile::io::kgroups_json(k);
  if (opt.emit_matrices) report["matrices"] = textile::io::matrices_json(sys);
  emit(report, opt);
  return k.h_cross_check ? kOk : kCheckFailed;
}

int cmd_closedform(std::int64_t n, std::int64_t m, const Options& opt) {
  const auto v = textile::verify_closed_form(n, m);
  Json report = textile::io::closed_form_json(v);
  if (opt.emit_matrices)
    report["matrices"] = textile::io::matrices_json(textile::build_exchange_system(n, m));
  emit(report, opt);
  return v.agree() ? kOk : kCheckFailed;
}

int cmd_sweep(std::int64_t n_max, std::int64_t m_max, const Options& opt) {
  if (n_max < 2 || m_max < 2) throw textile::PreconditionError("sweep bounds must be >= 2");
  Json rows = Json::array();
  bool all = true;
  for (std::int64_t n = 2; n <= n_max; ++n)
    for (std::int64_t m = n; m <= m_max; ++m) {
      const auto v = textile::verify_closed_form(n, m);
      all = all && v.agree();
      rows.push_back(Json{{"N", n},
                          {"M", m},
                          {"k0", v.computed.k0.to_string()},
                          {"closed_form_k0", v.closed_form.canonical.to_string()},
                          {"k1", v.computed.k1.to_string()},
                          {"agree", v.agree()}});
    }
  emit(Json{{"rows", std::move(rows)}, {"all_agree", all}}, opt);
  return all ? kOk : kCheckFailed;
}

int cmd_tiles(const Options& opt) {
  const auto in = read_input(opt.input);
  const auto sys = textile::io::build_from_input(in);
  Json tiles = Json::array();
  for (std::size_t k = 0; k < sys.tiles.size(); ++k)
    tiles.push_back(textile::io::tile_json(sys, k));
  Json omega = Json::array();
  for (std::size_t k = 0; k < sys.omega.size(); ++k)
    omega.push_back(Json{{"index", k},
                         {"alpha", sys.graph_a.edge(sys.omega[k].alpha).id()},
                         {"a", sys.graph_b.edge(sys.omega[k].a).id()}});
  Json report{{"system", textile::io::summary_json(sys, in.kind)},
              {"tiles", std::move(tiles)},
              {"omega", std::move(omega)}};
  if (opt.emit_matrices) report["matrices"] = textile::io::matrices_json(sys);
  emit(report, opt);
  return kOk;
}

int cmd_witness(std::size_t from, std::size_t to, const Options& opt) {
  const auto in = read_input(opt.input);
  const auto sys = textile::io::build_from_input(in);
  if (from >= sys.tiles.size() || to >= sys.tiles.size())
    throw textile::InputError("tile index out of range (system has " +
                              std::to_string(sys.tiles.size()) + " tiles)");
  const std::size_t steps = steps_for(sys, opt);
  const auto search =
      textile::find_transitivity_witness(sys, sys.tiles[from], sys.tiles[to], steps);
  Json report{{"from", textile::io::tile_json(sys, from)},
              {"to", textile::io::tile_json(sys, to)},
              {"max_steps", steps},
              {"found", search.witness.has_value()}};
  if (search.witness) {
    std::string moves;
    Json path = Json::array();
    for (std::size_t k = 0; k < search.witness->moves.size(); ++k) {
      moves += textile::to_string(search.witness->moves[k]);
      const auto& t = search.witness->tiles[k];
      path.push_back(static_cast<std::size_t>(
          std::find(sys.tiles.begin(), sys.tiles.end(), t) - sys.tiles.begin()));
    }
    report["moves"] = moves;
    report["tiles"] = std::move(path);
    report["end_position"] = Json::array({search.witness->end_position.i,
                                          search.witness->end_position.j});
  }
  emit(report, opt);
  return kOk;
}

int cmd_corpus(const Options& opt) {
  Json rows = Json::array();
  bool all = true;
  for (const auto& entry : textile::standard_corpus(opt.seed)) {
    const auto& sys = entry.system;
    const bool matrix = textile::is_transitive_matrix(sys);
    const bool small = sys.omega_size() <= 12;
    const bool search = small ? textile::is_transitive_search(sys, steps_for(sys, opt)) : matrix;
    const auto k = textile::kgroups_of_system(sys);
    const bool cond = textile::satisfies_condition_I(sys.h_kappa);
    const bool diag = textile::check_diagonal_property(sys).holds;
    const bool comm = textile::check_commutation(sys);
    const bool ok = (search == matrix) && cond && diag && comm && k.h_cross_check;
    all = all && ok;
    rows.push_back(Json{{"system", entry.name},
                        {"omega", sys.omega_size()},
                        {"transitive", matrix},
                        {"search", small ? (search ? "true" : "false") : "skipped"},
                        {"condition_I", cond},
                        {"diagonal", diag},
                        {"commute", comm},
                        {"k0", k.k0.to_string()},
                        {"k0_h_agree", k.h_cross_check}});
  }
  emit(Json{{"seed", opt.seed}, {"rows", std::move(rows)}, {"all_pass", all}}, opt);
  return all ? kOk : kCheckFailed;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Textile systems, Cuntz-Krieger K-groups and closed forms"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_flag("--pretty", opt.pretty, "aligned plain-text output instead of JSON");
  app.add_flag("--emit-matrices", opt.emit_matrices, "include A, B, A_kappa, B_kappa, H_kappa");
  app.add_option("--max-steps", opt.max_steps, "staircase search bound (default 2|Omega|)");
  app.add_option("--seed", opt.seed, "seed for corpus generation");

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", opt.input, "system JSON file (default: standard input)");
  };
  auto* check = app.add_subcommand("check", "build the system and run every check");
  add_input(check);
  auto* kgroups = app.add_subcommand("kgroups", "K-groups of O_{H_kappa}");
  add_input(kgroups);
  std::int64_t n = 0, m = 0;
  auto* closedform = app.add_subcommand("closedform", "closed form for the [N],[M] exchange");
  closedform->add_option("N", n)->required();
  closedform->add_option("M", m)->required();
  std::int64_t n_max = 0, m_max = 0;
  auto* sweep = app.add_subcommand("sweep", "compare closed form and SNF for 2<=N<=M");
  sweep->add_option("NMAX", n_max)->required();
  sweep->add_option("MMAX", m_max)->required();
  auto* tiles = app.add_subcommand("tiles", "list E_kappa and Omega_kappa");
  add_input(tiles);
  std::size_t from = 0, to = 0;
  auto* witness = app.add_subcommand("witness", "staircase from tile TILE to tile TILE2");
  witness->add_option("TILE", from)->required();
  witness->add_option("TILE2", to)->required();
  add_input(witness);
  auto* corpus = app.add_subcommand("corpus", "run the checks over the validation corpus");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*check) return cmd_check(opt);
    if (*kgroups) return cmd_kgroups(opt);
    if (*closedform) return cmd_closedform(n, m, opt);
    if (*sweep) return cmd_sweep(n_max, m_max, opt);
    if (*tiles) return cmd_tiles(opt);
    if (*witness) return cmd_witness(from, to, opt);
    if (*corpus) return cmd_corpus(opt);
  } catch (const textile::InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const textile::CommutationError& e) {
    std::cerr << "commutation error: " << e.what() << '\n';
    return kCommutation;
  } catch (const textile::SpecificationError& e) {
    std::cerr << "specification error: " << e.what() << '\n';
    return kSpecification;
  } catch (const textile::PreconditionError& e) {
    std::cerr << "precondition error: " << e.what() << '\n';
    return kPrecondition;
  } catch (const textile::DomainError& e) {
    std::cerr << "precondition error: " << e.what() << '\n';
    return kPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kUsage;
}
