// Command-line driver: generators, walks, oracles and verification suites.

#include <CLI11.hpp>
#include <iostream>
#include <random>
#include <sstream>

#include "tpd/circuits.hpp"
#include "tpd/construct.hpp"
#include "tpd/errors.hpp"
#include "tpd/instances.hpp"
#include "tpd/io.hpp"
#include "tpd/oracle.hpp"
#include "tpd/polytope.hpp"
#include "tpd/verify.hpp"
#include "tpd/walks.hpp"

namespace {

using namespace tpd;

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct Config {
  std::string gen;
  std::string instance_file;
  std::string u;
  std::string v;
  std::string from;
  std::string to;
  std::string cost;
  std::string kind;
  std::string suite = "all";
  std::string out;
  std::string eps = "1/1024";
  int k = -1;
  int m = 2;
  int n = 3;
  int count = 10;
  std::uint64_t cap_states = kDefaultMaxStates;
  std::uint64_t cap_trees = kDefaultMaxTrees;
  std::uint64_t cap_solves = kDefaultMaxSolves;
  int workers = 1;
  std::uint64_t seed = 20161;
};

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(Rational::parse(tok));
  return out;
}

// The instance and, when the source provides them, the two endpoints.
struct Source {
  Instance inst;
  std::optional<Matrix> from;
  std::optional<Matrix> to;
  std::optional<GeneratedCase> generated;
};

Source load_source(const Config& c) {
  const int given = !c.gen.empty() + !c.instance_file.empty() + (!c.u.empty() || !c.v.empty());
  if (given != 1) throw InvalidArgument("give exactly one of --gen, --instance, or --u/--v");
  std::optional<Source> s;
  if (!c.gen.empty()) {
    GeneratedCase g = generate(c.gen);
    s = Source{g.instance, g.from, g.to, g};
  } else if (!c.instance_file.empty()) {
    s = Source{instance_from_json(Json::parse(read_file(c.instance_file))), {}, {}, {}};
  } else {
    if (c.u.empty() || c.v.empty()) throw InvalidArgument("--u and --v go together");
    s = Source{Instance(parse_list(c.u), parse_list(c.v)), {}, {}, {}};
  }
  if (!c.from.empty()) s->from = parse_matrix(c.from);
  if (!c.to.empty()) s->to = parse_matrix(c.to);
  return *s;
}

std::pair<Matrix, Matrix> endpoints(const Source& s) {
  if (!s.from || !s.to) throw InvalidArgument("this command needs --from and --to (or a --gen case)");
  return {*s.from, *s.to};
}

void emit(const Config& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
  } else {
    write_file(c.out, text);
  }
}

void emit_table(const Config& c, const Table& t) {
  const bool json = c.out.size() > 5 && c.out.ends_with(".json");
  emit(c, json ? t.to_json().dump(2) + "\n" : t.to_csv());
}

int cmd_gen(const Config& c) {
  const Source s = load_source(c);
  if (!s.generated) throw InvalidArgument("gen needs --gen");
  emit(c, to_json(*s.generated).dump(2) + "\n");
  return 0;
}

int cmd_vertices(const Config& c) {
  const Source s = load_source(c);
  const VertexSet vs = enumerate_vertices(s.inst, c.cap_trees);
  Table t{{"vertex", "flows", "support"}, {}};
  for (int i = 0; i < vs.size(); ++i) {
    const Assignment& a = vs.vertices[static_cast<std::size_t>(i)];
    t.rows.push_back({std::to_string(i + 1), a.flows().str(), a.support().str()});
  }
  if (!c.out.empty()) emit_table(c, t);
  std::cout << vs.size() << " vertices" << (is_nondegenerate(s.inst) ? "" : " (degenerate margins)") << "\n";
  if (c.out.empty()) std::cout << t.to_csv();
  return 0;
}

int cmd_adjacency(const Config& c) {
  const Source s = load_source(c);
  const VertexGraph g = build_vertex_graph(s.inst, c.cap_trees);
  Table t{{"a", "b"}, {}};
  for (int a = 0; a < g.size(); ++a) {
    for (int b : g.adjacency[static_cast<std::size_t>(a)]) {
      if (a < b) t.rows.push_back({std::to_string(a + 1), std::to_string(b + 1)});
    }
  }
  if (!c.out.empty()) emit_table(c, t);
  std::cout << g.size() << " vertices, " << t.rows.size() << " edges\n";
  if (c.out.empty()) std::cout << t.to_csv();
  return 0;
}

int cmd_diameter(const Config& c) {
  const Source s = load_source(c);
  const VertexGraph g = build_vertex_graph(s.inst, c.cap_trees);
  const int d = graph_diameter(g, c.workers);
  const HirschData h = hirsch_data(g.vertices, s.inst.m(), s.inst.n());
  const bool ok = d <= h.bound;
  std::cout << "diameter " << d << ", hirsch bound " << h.bound << ", " << (ok ? "pass" : "fail") << "\n";
  std::cout << g.size() << " vertices, critical edges " << h.critical.str() << "\n";
  return ok ? 0 : kExitCheckFailed;
}

int cmd_walk(const Config& c) {
  const Source s = load_source(c);
  const Matrix from = s.from ? *s.from : throw InvalidArgument("walk needs --from (or a --gen case)");
  std::optional<Walk> w;
  std::optional<std::size_t> marks;
  if (c.kind == "cdfm") {
    w = cdfm_walk_2xn(s.inst, from, endpoints(s).second);
  } else if (c.kind == "edge2n") {
    ConstructedWalk cw = edge_walk_2xn(s.inst, from, endpoints(s).second);
    marks = cw.trace.size();
    w = cw.walk;
  } else if (c.kind == "edge3n") {
    ConstructedWalk cw = edge_walk_3xn(s.inst, from, endpoints(s).second);
    marks = cw.trace.size();
    w = cw.walk;
  } else if (c.kind == "monotone2n") {
    Matrix cost(s.inst.m(), s.inst.n());
    if (c.cost.empty()) {
      std::mt19937_64 rng(c.seed);
      cost = random_cost(s.inst.m(), s.inst.n(), rng);
    } else {
      cost = parse_matrix(c.cost);
    }
    ConstructedWalk cw = monotone_walk_2xn(s.inst, from, cost);
    marks = cw.trace.size();
    w = cw.walk;
    std::cout << "cost " << cost.str() << ", objective " << objective(cost, w->front()) << " -> "
              << objective(cost, w->back()) << (is_monotone(*w, cost) ? ", monotone" : ", not monotone") << "\n";
  } else if (c.kind == "signcompat") {
    w = decomposition_walk(from, sign_compatible_decomposition(from, endpoints(s).second));
  } else {
    throw InvalidArgument("unknown walk kind \"" + c.kind + "\"");
  }
  const WalkReport r = validate_walk(*w, s.inst);
  std::cout << walk_kind_name(w->kind()) << " walk, length " << w->length() << ", "
            << (r.valid ? "valid" : "invalid: " + r.violation->reason) << "\n";
  if (marks) std::cout << *marks << " marks\n";
  for (const WalkStep& st : w->steps()) std::cout << "  " << st.circuit.str() << " alpha " << st.alpha << "\n";
  if (!c.out.empty()) write_file(c.out, to_json(*w).dump(2) + "\n");
  return r.valid ? 0 : kExitCheckFailed;
}

int cmd_oracle(const Config& c) {
  const Source s = load_source(c);
  const auto [from, to] = endpoints(s);
  if (c.kind == "cde") {
    const VertexGraph g = build_vertex_graph(s.inst, c.cap_trees);
    std::cout << "CD_e distance " << graph_distance(g, from, to) << "\n";
    return 0;
  }
  const auto circuits = enumerate_circuits(s.inst.m(), s.inst.n());
  if (c.kind == "cdfm") {
    const auto d = cdfm_distance(from, to, circuits, {-1, c.cap_states});
    if (d) {
      std::cout << "CD_fm distance " << *d << "\n";
    } else {
      std::cout << "CD_fm distance exceeds the depth cap " << s.inst.m() + s.inst.n() << "\n";
    }
    return 0;
  }
  if (c.kind == "cd") {
    if (c.k >= 0) {
      const bool yes = cd_at_most(from, to, c.k, circuits, c.cap_solves);
      std::cout << "CD <= " << c.k << ": " << (yes ? "true" : "false") << "\n";
    } else {
      std::cout << "CD distance " << min_cd(from, to, circuits, c.cap_solves) << "\n";
    }
    return 0;
  }
  throw InvalidArgument("unknown oracle kind \"" + c.kind + "\"");
}

int cmd_perturb(const Config& c) {
  const Source s = load_source(c);
  if (!s.generated || s.generated->circuits.empty()) throw InvalidArgument("perturb needs a --gen case with circuits");
  const GeneratedCase p = perturb_certified(*s.generated, Rational::parse(c.eps), 16, c.cap_solves);
  const int k = p.expected.at("cd_distance");
  const auto circuits = enumerate_circuits(p.instance.m(), p.instance.n());
  const bool below = cd_at_most(p.from, p.to, k - 1, circuits, c.cap_solves);
  const bool at = cd_at_most(p.from, p.to, k, circuits, c.cap_solves);
  std::cout << p.name << ": eps " << p.eps << ", CD <= " << k - 1 << " " << (below ? "true" : "false") << ", CD <= "
            << k << " " << (at ? "true" : "false") << ", " << (!below && at ? "pass" : "fail") << "\n";
  if (!c.out.empty()) write_file(c.out, to_json(p).dump(2) + "\n");
  return !below && at ? 0 : kExitCheckFailed;
}

int cmd_verify(const Config& c) {
  VerifyOptions opts{c.seed, c.workers, c.cap_trees, c.cap_states, c.cap_solves};
  bool ok = true;
  Table t{{"check", "passed", "detail"}, {}};
  if (!c.gen.empty()) {
    const GeneratedCase g = generate(c.gen);
    for (const CaseCheck& ch : check_case(g, c.suite, opts)) {
      std::cout << ch.line << "\n";
      ok = ok && ch.passed;
      t.rows.push_back({g.name, ch.passed ? "true" : "false", ch.line});
    }
  } else {
    for (int id : suite_criteria(c.suite)) {
      const CriterionResult r = run_criterion(id, opts);
      std::cout << r.line() << std::endl;
      ok = ok && r.passed;
      t.rows.push_back({std::to_string(id), r.passed ? "true" : "false", r.detail});
    }
  }
  if (!c.out.empty()) emit_table(c, t);
  return ok ? 0 : kExitCheckFailed;
}

int cmd_sweep(const Config& c) {
  if (c.count < 1) throw InvalidArgument("--count must be positive");
  std::mt19937_64 rng(c.seed);
  Table t{{"instance", "u", "v", "vertices", "critical", "diameter", "hirsch_bound", "longest_walk", "pass"}, {}};
  bool ok = true;
  for (int r = 0; r < c.count; ++r) {
    const Instance inst = random_instance(c.m, c.n, rng);
    const VertexGraph g = build_vertex_graph(inst, c.cap_trees);
    const DistanceTable d = all_pairs_distances(g, c.workers);
    const HirschData h = hirsch_data(g.vertices, c.m, c.n);
    int longest = -1;
    if (c.m == 2 || c.m == 3) {
      for (int a = 0; a < g.size(); ++a) {
        for (int b = 0; b < g.size(); ++b) {
          const Matrix& x = g.vertices.vertices[static_cast<std::size_t>(a)].flows();
          const Matrix& y = g.vertices.vertices[static_cast<std::size_t>(b)].flows();
          const int len = c.m == 2 ? edge_walk_2xn(inst, x, y).walk.length() : edge_walk_3xn(inst, x, y).walk.length();
          longest = std::max(longest, len);
        }
      }
    }
    const bool pass = d.diameter() <= h.bound && longest <= h.bound;
    ok = ok && pass;
    std::ostringstream u;
    std::ostringstream v;
    for (std::size_t i = 0; i < inst.u().size(); ++i) u << (i ? " " : "") << inst.u()[i];
    for (std::size_t j = 0; j < inst.v().size(); ++j) v << (j ? " " : "") << inst.v()[j];
    t.rows.push_back({std::to_string(r + 1), u.str(), v.str(), std::to_string(g.size()), std::to_string(h.k),
                      std::to_string(d.diameter()), std::to_string(h.bound),
                      longest < 0 ? "" : std::to_string(longest), pass ? "true" : "false"});
  }
  emit_table(c, t);
  return ok ? 0 : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Circuit and edge walks on transportation polytopes"};
  app.require_subcommand(1);
  app.fallthrough();
  Config c;
  app.add_option("--cap-states", c.cap_states, "Most states a maximal-step search may store")->check(CLI::PositiveNumber);
  app.add_option("--cap-trees", c.cap_trees, "Most spanning trees vertex enumeration may visit")->check(CLI::PositiveNumber);
  app.add_option("--cap-solves", c.cap_solves, "Most linear solves the circuit subset search may do")
      ->check(CLI::PositiveNumber);
  app.add_option("--workers", c.workers, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", c.seed, "Seed for random margins and costs");
  app.add_option("--out", c.out, "Write the result (JSON, or CSV for tables) here");

  const auto add_source = [&](CLI::App* sub) {
    sub->add_option("--gen", c.gen, "Generator: example1, coincide:N, diameter:N, hirsch:M,N");
    sub->add_option("--instance", c.instance_file, "Instance JSON file");
    sub->add_option("--u", c.u, "Supply margins, comma separated");
    sub->add_option("--v", c.v, "Demand margins, comma separated");
  };
  const auto add_endpoints = [&](CLI::App* sub) {
    sub->add_option("--from", c.from, "Start vertex, rows separated by ';'");
    sub->add_option("--to", c.to, "Target vertex, rows separated by ';'");
  };

  std::map<CLI::App*, std::function<int(const Config&)>> commands;
  const auto command = [&](const char* name, const char* help, std::function<int(const Config&)> fn) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_source(sub);
    commands[sub] = std::move(fn);
    return sub;
  };

  command("gen", "Print a generated case as JSON", cmd_gen);
  command("vertices", "Enumerate vertices", cmd_vertices);
  command("adjacency", "List the edges of the vertex graph", cmd_adjacency);
  command("diameter", "Graph diameter against the Hirsch bound", cmd_diameter);
  CLI::App* walk = command("walk", "Build and validate a walk", cmd_walk);
  add_endpoints(walk);
  walk->add_option("--kind", c.kind, "Walk construction")
      ->required()
      ->check(CLI::IsMember({"cdfm", "edge2n", "monotone2n", "edge3n", "signcompat"}));
  walk->add_option("--cost", c.cost, "Cost matrix for monotone2n (random from --seed if absent)");
  CLI::App* oracle = command("oracle", "Brute-force distance", cmd_oracle);
  add_endpoints(oracle);
  oracle->add_option("--kind", c.kind, "Distance")->required()->check(CLI::IsMember({"cde", "cdfm", "cd"}));
  oracle->add_option("--k", c.k, "Decide CD <= k instead of computing CD")->check(CLI::NonNegativeNumber);
  CLI::App* perturb = command("perturb", "Certified perturbation of a lower-bound case", cmd_perturb);
  perturb->add_option("--eps", c.eps, "Starting perturbation");
  CLI::App* verify = command("verify", "Run a verification suite", cmd_verify);
  verify->add_option("--suite", c.suite, "Suite")
      ->check(CLI::IsMember({"hierarchy", "marking", "monotone", "hirsch", "lowerbound", "all"}));
  CLI::App* sweep = app.add_subcommand("sweep", "Random-margin sweep of diameters and edge walks");
  sweep->add_option("--m", c.m, "Supplies")->check(CLI::Range(2, 8));
  sweep->add_option("--n", c.n, "Demands")->check(CLI::Range(2, 8));
  sweep->add_option("--count", c.count, "Instances");
  commands[sweep] = cmd_sweep;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  try {
    for (const auto& [sub, fn] : commands) {
      if (sub->parsed()) return fn(c);
    }
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
