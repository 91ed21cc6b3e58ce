#include "cli.hpp"

#include "mincode/errors.hpp"
#include "mincode/gadget.hpp"
#include "mincode/program.hpp"
#include "mincode/report.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

namespace mincode::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 1;

struct CommandSpec {
  std::string command;
  std::string input;
  std::string objective;
  std::string rate;
  std::string routing_only;
  std::string solution;
  std::string costs;
  std::string output;
  std::string lp_dump;
  std::uint64_t seed = kDefaultSeed;
  unsigned field_degree = 16;
  bool integer = false;
  bool gadgets = false;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void emit(const CommandSpec& spec, std::ostream& out, const std::string& text) {
  if (spec.output.empty() || spec.output == "-") {
    out << text;
    return;
  }
  std::ofstream file(spec.output, std::ios::binary);
  if (!file) throw UsageError("cannot write '" + spec.output + "'");
  file << text;
}

std::set<std::size_t> routing_set(const Network& net, const std::string& list) {
  std::set<std::size_t> nodes = net.routing_nodes();
  if (list.empty()) return nodes;
  if (list == "ALL") {
    for (std::size_t v = 0; v < net.node_count(); ++v) nodes.insert(v);
    return nodes;
  }
  std::stringstream items(list);
  std::string id;
  while (std::getline(items, id, ',')) {
    const auto v = net.find_node(id);
    if (!v) throw UsageError("--routing-only: unknown node '" + id + "'");
    nodes.insert(*v);
  }
  return nodes;
}

std::map<std::string, Rational> edge_costs(const Network& net, const std::string& path) {
  std::map<std::string, Rational> costs;
  for (const auto& e : net.edges()) costs[e.id] = Rational(1);
  if (path.empty()) return costs;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path, e.what());
  }
  if (!doc.is_object()) throw ParseError(path, "expected an object of edge costs");
  for (const auto& [id, value] : doc.items()) {
    if (!net.find_edge(id)) throw ParseError(path + ": " + id, "no such edge in the network");
    try {
      costs[id] = value.is_number_integer() ? Rational(value.get<std::int64_t>())
                                            : parse_rational(value.get<std::string>());
    } catch (const std::exception& e) {
      throw ParseError(path + ": " + id, e.what());
    }
  }
  return costs;
}

ProgramOptions program_options(const CommandSpec& spec, const Network& net) {
  ProgramOptions options;
  options.integer_mode = spec.integer;
  options.routing_only = routing_set(net, spec.routing_only);
  if (!spec.objective.empty()) {
    const auto kind = parse_objective_kind(spec.objective);
    if (!kind) throw UsageError("unknown objective '" + spec.objective + "'");
    options.objective.kind = *kind;
  }
  if (spec.rate == "max") {
    if (!spec.objective.empty() && options.objective.kind != ObjectiveKind::max_rate)
      throw UsageError("--rate max implies --objective max-rate, got '" + spec.objective + "'");
    options.objective.kind = ObjectiveKind::max_rate;
  } else if (!spec.rate.empty()) {
    if (options.objective.kind == ObjectiveKind::max_rate)
      throw UsageError("--objective max-rate takes no fixed --rate");
    try {
      options.rate = parse_rational(spec.rate);
    } catch (const RationalFormatError& e) {
      throw UsageError(std::string("--rate: ") + e.what());
    }
  } else if (options.objective.kind != ObjectiveKind::max_rate) {
    options.rate = multicast_capacity(net);
  }
  if (options.objective.kind == ObjectiveKind::min_coding_nodes) options.integer_mode = true;
  if (options.objective.kind == ObjectiveKind::min_resource) options.objective.edge_costs = edge_costs(net, spec.costs);
  return options;
}

Network load_network(const CommandSpec& spec) { return parse_network(read_file(spec.input)); }

struct Solved {
  std::optional<FlowSolution> sol;
  std::optional<Rational> objective;
  LpStatus status = LpStatus::infeasible;
};

Solved solve(const CommandSpec& spec, const Network& net, const Catalog& cat, const ProgramOptions& options) {
  const auto program = build_lp(net, cat, options);
  if (!spec.lp_dump.empty()) {
    std::ofstream dump(spec.lp_dump);
    if (!dump) throw UsageError("cannot write '" + spec.lp_dump + "'");
    dump << write_lp_format(program.lp);
  }
  const auto result = solve_program(program);
  Solved solved;
  solved.status = result.status;
  if (result.status != LpStatus::optimal) return solved;
  solved.sol = extract_solution(program, result, net, cat);
  solved.objective = result.objective;
  return solved;
}

std::vector<std::string> describe(const std::vector<Violation>& violations) {
  std::vector<std::string> lines;
  for (const auto& v : violations) lines.push_back(to_string(v.kind) + " at " + v.entity + ": " + v.detail);
  return lines;
}

int fail_with(std::ostream& err, const std::string& message) {
  err << "error: " << message << "\n";
  return failure;
}

int cmd_check(const CommandSpec& spec, std::ostream& out) {
  const auto net = load_network(spec);
  const Catalog cat(net.receiver_count());
  nlohmann::ordered_json doc{{"status", "valid"},
                             {"nodes", net.node_count()},
                             {"edges", net.edge_count()},
                             {"receivers", net.receiver_count()},
                             {"receiver_sets", cat.set_count()},
                             {"collections", cat.collection_count()},
                             {"acyclic", net.is_acyclic()}};
  emit(spec, out, doc.dump(2) + "\n");
  return success;
}

int cmd_capacity(const CommandSpec& spec, std::ostream& out) {
  const auto net = load_network(spec);
  nlohmann::ordered_json doc;
  doc["max_flow"] = nlohmann::ordered_json::object();
  for (std::size_t k = 0; k < net.receiver_count(); ++k)
    doc["max_flow"][net.node(net.receiver_node(k)).id] = to_string(max_flow(net, k));
  doc["capacity"] = to_string(multicast_capacity(net));
  emit(spec, out, doc.dump(2) + "\n");
  return success;
}

int cmd_solve(const CommandSpec& spec, std::ostream& out, std::ostream& err) {
  const auto net = load_network(spec);
  const Catalog cat(net.receiver_count());
  const auto options = program_options(spec, net);
  const auto solved = solve(spec, net, cat, options);
  if (!solved.sol) {
    nlohmann::ordered_json doc{{"status", to_string(solved.status)}, {"objective", to_string(options.objective.kind)}};
    if (options.rate) doc["rate"] = to_string(*options.rate);
    emit(spec, out, doc.dump(2) + "\n");
    return fail_with(err, "program is " + to_string(solved.status));
  }
  SolutionMeta meta;
  meta.status = "optimal";
  meta.objective = to_string(options.objective.kind);
  meta.objective_value = solved.objective;
  meta.time_instances = denominator_lcm(solved.sol->values());
  emit(spec, out, write_solution(net, cat, *solved.sol, meta));
  return success;
}

// Violations of the solution document against the network, or of the
// conservation identities.
std::vector<std::string> audit(const Network& net, const Catalog& cat, const FlowSolution& sol,
                               const std::set<std::size_t>& routing_only) {
  auto lines = describe(check_solution(net, sol, cat, routing_only));
  if (!lines.empty()) return lines;
  return describe(check_conservation(net, sol, cat));
}

int cmd_verify(const CommandSpec& spec, std::ostream& out, std::ostream& err) {
  if (spec.solution.empty()) throw UsageError("verify needs --solution");
  const auto net = load_network(spec);
  const Catalog cat(net.receiver_count());
  const auto sol = parse_solution(read_file(spec.solution), net, cat);
  const auto problems = audit(net, cat, sol, routing_set(net, spec.routing_only));
  nlohmann::ordered_json doc{{"status", problems.empty() ? "valid" : "invalid"},
                             {"h", to_string(sol.h)},
                             {"violations", problems}};
  emit(spec, out, doc.dump(2) + "\n");
  if (!problems.empty()) return fail_with(err, problems.front());
  return success;
}

// Solution given by --solution, else solved from the command's options.
std::optional<FlowSolution> obtain_solution(const CommandSpec& spec, const Network& net, const Catalog& cat,
                                            std::ostream& err) {
  if (!spec.solution.empty()) {
    auto sol = parse_solution(read_file(spec.solution), net, cat);
    const auto problems = audit(net, cat, sol, routing_set(net, spec.routing_only));
    if (!problems.empty()) {
      err << "error: solution fails verification: " << problems.front() << "\n";
      return std::nullopt;
    }
    return sol;
  }
  const auto options = program_options(spec, net);
  auto solved = solve(spec, net, cat, options);
  if (!solved.sol) err << "error: program is " << to_string(solved.status) << "\n";
  return solved.sol;
}

int cmd_construct(const CommandSpec& spec, std::ostream& out, std::ostream& err) {
  const auto net = load_network(spec);
  if (!net.is_acyclic()) return fail_with(err, "code construction needs an acyclic network");
  const Catalog cat(net.receiver_count());
  const auto sol = obtain_solution(spec, net, cat, err);
  if (!sol) return failure;
  const auto integral = make_integral(net, *sol);
  const auto graph = remove_cycles(expand_gadgets(integral.net, integral.sol, cat, spec.seed));
  const auto h = numerator(integral.sol.h).convert_to<std::int64_t>();
  const auto code = assign_code(graph, h, {spec.field_degree, spec.seed});
  const auto ranks = verify_code(code, h);
  emit(spec, out, write_code_report(net, code, ranks, integral.instances, spec.seed));
  if (!ranks.valid()) return fail_with(err, "some receiver cannot decode; try another --seed or a larger field");
  return success;
}

int cmd_export_dot(const CommandSpec& spec, std::ostream& out, std::ostream& err) {
  const auto net = load_network(spec);
  const Catalog cat(net.receiver_count());
  if (!spec.gadgets) {
    if (spec.solution.empty()) {
      emit(spec, out, network_dot(net, cat));
      return success;
    }
    const auto sol = obtain_solution(spec, net, cat, err);
    if (!sol) return failure;
    emit(spec, out, network_dot(net, cat, &*sol));
    return success;
  }
  if (!net.is_acyclic()) return fail_with(err, "gadget expansion needs an acyclic network");
  const auto sol = obtain_solution(spec, net, cat, err);
  if (!sol) return failure;
  const auto integral = make_integral(net, *sol);
  const auto graph = remove_cycles(expand_gadgets(integral.net, integral.sol, cat, spec.seed));
  emit(spec, out, gadget_dot(graph, net, cat));
  return success;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CommandSpec spec;
  CLI::App app{"Minimum-cost network coding for single-source multicast", "mincode"};
  app.require_subcommand(1);

  auto input = [&](CLI::App* sub) { sub->add_option("input", spec.input, "Network document (JSON)")->required(); };
  auto output = [&](CLI::App* sub) { sub->add_option("-o,--output", spec.output, "Write the report here"); };
  auto program = [&](CLI::App* sub) {
    sub->add_option("--objective", spec.objective,
                    "min-coding-ops, min-packets-coded, min-resource, max-rate or min-coding-nodes");
    sub->add_option("--rate", spec.rate, "Fixed rate p or p/q, or 'max' (default: multicast capacity)");
    sub->add_option("--routing-only", spec.routing_only, "Comma-separated node ids without coding, or ALL");
    sub->add_option("--costs", spec.costs, "Edge costs for min-resource (JSON object; default 1 per edge)");
    sub->add_flag("--integer", spec.integer, "Integral rate and indicators (branch and bound)");
  };
  auto coding = [&](CLI::App* sub) {
    sub->add_option("--seed", spec.seed, "Seed for matching and coefficients")->capture_default_str();
    sub->add_option("--field-degree", spec.field_degree, "m in GF(2^m)")
        ->check(CLI::Range(1u, 32u))
        ->capture_default_str();
  };

  auto* check = app.add_subcommand("check", "Validate a network document");
  input(check);
  output(check);
  auto* capacity = app.add_subcommand("capacity", "Per-receiver max-flow and multicast capacity");
  input(capacity);
  output(capacity);
  auto* solve_cmd = app.add_subcommand("solve", "Solve the information-flow program");
  input(solve_cmd);
  output(solve_cmd);
  program(solve_cmd);
  solve_cmd->add_option("--lp-dump", spec.lp_dump, "Also write the program in LP format");
  auto* verify = app.add_subcommand("verify", "Check a solution document against a network");
  input(verify);
  output(verify);
  verify->add_option("--solution", spec.solution, "Solution document")->required();
  verify->add_option("--routing-only", spec.routing_only, "Comma-separated node ids without coding, or ALL");
  auto* construct = app.add_subcommand("construct", "Build and verify a random linear code");
  input(construct);
  output(construct);
  program(construct);
  coding(construct);
  construct->add_option("--solution", spec.solution, "Use this solution instead of solving");
  auto* dot = app.add_subcommand("export-dot", "Graphviz drawing of the network or gadget graph");
  input(dot);
  output(dot);
  program(dot);
  coding(dot);
  dot->add_option("--solution", spec.solution, "Annotate with this solution");
  dot->add_flag("--gadgets", spec.gadgets, "Draw the gadget graph (solves first without --solution)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return success;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return success;
  } catch (const CLI::ParseError& e) {
    err << "usage: " << e.what() << "\n";
    return usage;
  }

  try {
    if (check->parsed()) return cmd_check(spec, out);
    if (capacity->parsed()) return cmd_capacity(spec, out);
    if (solve_cmd->parsed()) return cmd_solve(spec, out, err);
    if (verify->parsed()) return cmd_verify(spec, out, err);
    if (construct->parsed()) return cmd_construct(spec, out, err);
    if (dot->parsed()) return cmd_export_dot(spec, out, err);
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << "\n";
    return usage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return usage;
  } catch (const ValidationError& e) {
    err << "invalid network: " << e.what() << "\n";
    return usage;
  } catch (const ProgramError& e) {
    err << "usage: " << e.what() << "\n";
    return usage;
  } catch (const std::out_of_range& e) {
    err << "unsupported: " << e.what() << "\n";
    return usage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return failure;
  }
  return usage;
}

}  // namespace mincode::cli
