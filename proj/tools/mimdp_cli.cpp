// mimdp: solve (sigma, rho) and LCVP problems over decomposition trees.
//
// Exit codes: 0 ok / feasible, 1 infeasible, 2 error, 3 budget exceeded.

#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mimdp/mimdp.hpp"

namespace {

using namespace mimdp;

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitError = 2;
constexpr int kExitBudget = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

std::string fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(h));
  return out;
}

struct Budgets {
  std::uint64_t nodes = kDefaultNodeBudget;
  std::size_t classes = kDefaultClassCap;
};

Budgets budgets_from_env() {
  Budgets b;
  if (const char* env = std::getenv("MIMW_BUDGET")) {
    std::uint64_t v = 0;
    std::string_view s(env);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v == 0) throw InvalidArgument("MIMW_BUDGET must be a positive integer");
    b.nodes = v;
    b.classes = static_cast<std::size_t>(v);
  }
  return b;
}

std::string join_vertices(const std::vector<Vertex>& vs) {
  std::string out;
  for (Vertex v : vs) out += (out.empty() ? "" : " ") + std::to_string(v + 1);
  return out;
}

// "3,1,2" or "1..5" or mixtures like "1..3,5,4"; 1-based.
std::vector<Vertex> parse_order(const std::string& text, std::size_t n) {
  std::vector<Vertex> order;
  auto num = [&](std::string_view t) {
    long long v = detail::parse_int(t, 0, "vertex");
    if (v < 1 || static_cast<std::size_t>(v) > n) throw InvalidArgument("vertex " + std::string(t) + " out of range in --dec-order");
    return static_cast<Vertex>(v - 1);
  };
  std::string_view rest(text);
  while (!rest.empty()) {
    auto comma = rest.find(',');
    std::string_view tok = rest.substr(0, comma);
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    if (auto dots = tok.find(".."); dots != std::string_view::npos) {
      Vertex a = num(tok.substr(0, dots)), b = num(tok.substr(dots + 2));
      for (Vertex v = a; a <= b ? v <= b : v >= b; v += a <= b ? 1 : -1) order.push_back(v);
    } else {
      order.push_back(num(tok));
    }
  }
  std::vector<char> seen(n, 0);
  for (Vertex v : order) {
    if (seen[v]) throw InvalidArgument("vertex " + std::to_string(v + 1) + " repeated in --dec-order");
    seen[v] = 1;
  }
  if (order.size() != n) throw InvalidArgument("--dec-order must list all " + std::to_string(n) + " vertices");
  return order;
}

// Shared flags of solve / oracle / mimw.
struct Inputs {
  std::string graph_path;
  std::string problem;
  std::optional<int> param;
  std::string sigma, rho;
  std::string objective;
  std::optional<int> distance;
  std::string matrix_path;
  std::string dec_path, dec_order, dec_interval;
  bool stats = false;
  bool timing = false;
  unsigned threads = 1;
};

void add_graph_flag(CLI::App* cmd, Inputs& in) {
  cmd->add_option("--graph", in.graph_path, "graph file")->required();
}

void add_dec_flags(CLI::App* cmd, Inputs& in) {
  cmd->add_option("--dec", in.dec_path, "decomposition file");
  cmd->add_option("--dec-order", in.dec_order, "caterpillar from a vertex order, e.g. 1,3,2 or 1..5");
  cmd->add_option("--dec-interval", in.dec_interval, "interval model file; builds the interval decomposition");
}

void add_problem_flags(CLI::App* cmd, Inputs& in) {
  cmd->add_option("--problem", in.problem, "catalog problem name (see `catalog`)");
  cmd->add_option("--param", in.param, "parameter d of parameterized catalog rows");
  cmd->add_option("--sigma", in.sigma, "sigma set, e.g. {0} or N+ or >=2");
  cmd->add_option("--rho", in.rho, "rho set");
  cmd->add_option("--objective", in.objective, "min | max | exists");
  cmd->add_option("--distance", in.distance, "distance r >= 1");
  cmd->add_option("--matrix", in.matrix_path, "LCVP constraint matrix file");
}

struct Loaded {
  Graph graph;
  std::vector<std::pair<std::string, std::string>> digests;
};

Loaded load_graph(const Inputs& in) {
  Loaded out;
  std::string text = read_file(in.graph_path);
  out.graph = parse_graph(text);
  out.digests.emplace_back("graph", fnv1a(text));
  return out;
}

DecompositionTree load_dec(const Inputs& in, Loaded& loaded) {
  int sources = !in.dec_path.empty() + !in.dec_order.empty() + !in.dec_interval.empty();
  if (sources == 0) throw InvalidArgument("missing decomposition source: give --dec, --dec-order or --dec-interval");
  if (sources > 1) throw InvalidArgument("conflicting flags: give only one of --dec, --dec-order, --dec-interval");
  const Graph& g = loaded.graph;
  if (!in.dec_path.empty()) {
    std::string text = read_file(in.dec_path);
    loaded.digests.emplace_back("dec", fnv1a(text));
    auto dec = parse_decomposition(text);
    validate(dec, g);
    return dec;
  }
  if (!in.dec_order.empty()) return caterpillar_from_order(parse_order(in.dec_order, g.n()));
  std::string text = read_file(in.dec_interval);
  loaded.digests.emplace_back("intervals", fnv1a(text));
  return interval_decomposition(g, parse_intervals(text));
}

// Either a (sigma, rho) problem or an LCVP matrix.
struct Task {
  std::optional<Problem> problem;
  std::optional<ConstraintMatrix> matrix;
  int distance = 1;
  PartitionObjective partition_objective = PartitionObjective::exists;
};

Task load_task(const Inputs& in, Loaded& loaded) {
  Task t;
  bool named = !in.problem.empty(), custom = !in.sigma.empty() || !in.rho.empty(), matrix = !in.matrix_path.empty();
  if (named + custom + matrix == 0) throw InvalidArgument("missing problem: give --problem, --sigma/--rho or --matrix");
  if (named + custom + matrix > 1) throw InvalidArgument("conflicting flags: --problem, --sigma/--rho and --matrix are exclusive");
  if (in.param && !named) throw InvalidArgument("--param applies to --problem only");
  if (in.distance && *in.distance < 1) throw InvalidArgument("--distance must be >= 1");
  if (matrix) {
    if (in.distance) throw InvalidArgument("conflicting flags: the matrix file fixes r; drop --distance");
    std::string text = read_file(in.matrix_path);
    loaded.digests.emplace_back("matrix", fnv1a(text));
    t.matrix = parse_matrix(text);
    t.distance = t.matrix->r;
    if (!in.objective.empty()) t.partition_objective = parse_partition_objective(in.objective);
    return t;
  }
  if (named) {
    t.problem = catalog_lookup(in.problem, in.param);
  } else {
    if (in.sigma.empty() || in.rho.empty()) throw InvalidArgument("--sigma and --rho must be given together");
    t.problem = Problem{parse_set_spec(in.sigma), parse_set_spec(in.rho), Objective::min, "custom"};
  }
  if (!in.objective.empty()) t.problem->objective = parse_objective(in.objective);
  t.distance = in.distance.value_or(1);
  return t;
}

void print_header(const std::string& command, const Loaded& loaded, const Task& task) {
  std::cout << "command: " << command << "\n";
  for (const auto& [what, digest] : loaded.digests) std::cout << "digest_" << what << ": " << digest << "\n";
  std::cout << "n: " << loaded.graph.n() << "\n";
  std::cout << "m: " << loaded.graph.m() << "\n";
  if (task.problem) {
    std::cout << "problem: " << task.problem->name << "\n";
    std::cout << "sigma: " << task.problem->sigma.to_string() << "\n";
    std::cout << "rho: " << task.problem->rho.to_string() << "\n";
    std::cout << "objective: " << to_string(task.problem->objective) << "\n";
  } else {
    std::cout << "problem: lcvp\n";
    std::cout << "q: " << task.matrix->q() << "\n";
    std::cout << "objective: " << to_string(task.partition_objective) << "\n";
  }
  std::cout << "distance: " << task.distance << "\n";
}

int cmd_solve(const Inputs& in) {
  Loaded loaded = load_graph(in);
  Task task = load_task(in, loaded);
  DecompositionTree dec = load_dec(in, loaded);
  Budgets budget = budgets_from_env();
  SolverOptions opt;
  opt.class_cap = budget.classes;
  opt.threads = in.threads;
  Solution sol = task.problem ? solve_distance_r(loaded.graph, dec, *task.problem, task.distance, opt)
                              : solve_lcvp(loaded.graph, dec, *task.matrix, task.partition_objective, opt);
  print_header("solve", loaded, task);
  std::cout << "feasible: " << (sol.feasible ? "yes" : "no") << "\n";
  if (sol.value) std::cout << "value: " << *sol.value << "\n";
  if (sol.witness) std::cout << "witness: " << join_vertices(sol.witness->members()) << "\n";
  if (sol.labels) {
    std::string labels;
    for (int l : *sol.labels) labels += (labels.empty() ? "" : " ") + std::to_string(l + 1);
    std::cout << "labels: " << labels << "\n";
  }
  std::cout << "max_classes: " << sol.stats.max_classes << "\n";
  if (in.stats)
    for (const auto& s : sol.stats.nodes)
      std::cout << "node_classes: node " << s.node << " side " << s.side_size << " inner " << s.inner_classes << " outer " << s.outer_classes
                << " entries " << s.feasible_entries << "\n";
  if (in.timing) std::cout << "elapsed_ms: " << sol.stats.elapsed_ms << "\n";
  return sol.feasible ? kExitOk : kExitInfeasible;
}

int cmd_oracle(const Inputs& in) {
  Loaded loaded = load_graph(in);
  Task task = load_task(in, loaded);
  int sources = !in.dec_path.empty() + !in.dec_order.empty() + !in.dec_interval.empty();
  if (sources > 0) load_dec(in, loaded);  // validated for parity with solve, otherwise unused
  const std::size_t n = loaded.graph.n();
  oracle::OracleResult res;
  bool want_min = true, want_value = true;
  if (task.problem) {
    res = oracle::brute_sigma_rho(loaded.graph, *task.problem, task.distance);
    want_min = task.problem->objective != Objective::max;
    want_value = task.problem->objective != Objective::exists;
  } else {
    res = oracle::brute_lcvp(loaded.graph, *task.matrix);
    want_min = task.partition_objective != PartitionObjective::max_class_one;
    want_value = task.partition_objective != PartitionObjective::exists;
  }
  print_header("oracle", loaded, task);
  std::cout << "feasible: " << (res.feasible ? "yes" : "no") << "\n";
  if (res.feasible) {
    if (want_value) {
      std::cout << "value: " << (want_min ? res.min_value : res.max_value) << "\n";
      std::cout << "optimal_count: " << (want_min ? res.min_count : res.max_count) << "\n";
    }
    std::uint64_t code = want_min ? res.min_code : res.max_code;
    if (task.problem) {
      std::cout << "witness: " << join_vertices(oracle::decode_subset(n, code).members()) << "\n";
    } else {
      std::string labels;
      for (int l : oracle::decode_labeling(n, task.matrix->q(), code)) labels += (labels.empty() ? "" : " ") + std::to_string(l + 1);
      std::cout << "labels: " << labels << "\n";
    }
  }
  return res.feasible ? kExitOk : kExitInfeasible;
}

int cmd_mimw(const Inputs& in, bool optimal_linear, bool brute) {
  Loaded loaded = load_graph(in);
  Budgets budget = budgets_from_env();
  const Graph& g = loaded.graph;
  if (optimal_linear) {
    if (!in.dec_path.empty() || !in.dec_order.empty() || !in.dec_interval.empty())
      throw InvalidArgument("conflicting flags: --optimal-linear searches all orders; drop the decomposition flags");
    LinearWidth best = optimal_linear_mimw(g, budget.nodes);
    std::cout << "command: mimw\n";
    for (const auto& [what, digest] : loaded.digests) std::cout << "digest_" << what << ": " << digest << "\n";
    std::cout << "n: " << g.n() << "\n";
    std::cout << "optimal_order: " << join_vertices(best.order) << "\n";
    std::cout << "linear_mimw: " << best.width << "\n";
    return kExitOk;
  }
  DecompositionTree dec = load_dec(in, loaded);
  CutReport report = mimw_of_dec(g, dec, budget.nodes, in.threads);
  std::cout << "command: mimw\n";
  for (const auto& [what, digest] : loaded.digests) std::cout << "digest_" << what << ": " << digest << "\n";
  std::cout << "n: " << g.n() << "\n";
  for (const auto& c : report.cuts) {
    std::cout << "cut: " << c.edge.first << " " << c.edge.second << " side " << c.side.size() << " cutmim " << c.cutmim;
    if (brute) std::cout << " brute " << oracle::brute_cut_mim(g, c.side);
    std::cout << "\n";
  }
  std::cout << "mimw: " << report.mimw << "\n";
  return kExitOk;
}

int cmd_power(const std::string& graph_path, int k, const std::string& out_path) {
  Graph g = parse_graph(read_file(graph_path));
  Graph h = graph_power(g, k);
  if (out_path.empty()) {
    std::cout << write_graph(h);
  } else {
    write_file(out_path, write_graph(h));
    std::cout << "command: power\nk: " << k << "\nn: " << h.n() << "\nm: " << h.m() << "\nout: " << out_path << "\n";
  }
  return kExitOk;
}

int cmd_catalog() {
  std::cout << "# name sigma rho d objective\n";
  for (const auto& row : catalog()) {
    int d = row.default_parameter.value_or(0);
    std::cout << row.name << " " << row.sigma(d).to_string() << " " << row.rho(d).to_string() << " " << row.tabulated_d(d) << " "
              << to_string(row.default_objective);
    if (row.default_parameter) std::cout << " param=" << d;
    std::cout << "\n";
  }
  return kExitOk;
}

struct GenInputs {
  std::string construction;
  std::size_t k = 3, p = 2, n = 10;
  int d = 1;
  unsigned edge_percent = 50;
  std::uint64_t seed = 1;
  std::string source, classes, out;
};

PartitionedGraph gen_source(const GenInputs& in) {
  if (in.source.empty()) {
    std::mt19937_64 rng(in.seed);
    return random_partitioned(in.k, in.p, in.edge_percent, rng);
  }
  PartitionedGraph pg;
  pg.graph = parse_graph(read_file(in.source));
  if (in.classes.empty()) throw InvalidArgument("--source needs --classes (class number per vertex, e.g. 1,1,2,2)");
  std::vector<long long> ids;
  std::string_view rest(in.classes);
  while (!rest.empty()) {
    auto comma = rest.find(',');
    ids.push_back(detail::parse_int(rest.substr(0, comma), 0, "class"));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
  }
  if (ids.size() != pg.graph.n()) throw InvalidArgument("--classes must name one class per vertex");
  for (std::size_t v = 0; v < ids.size(); ++v) {
    if (ids[v] < 1) throw InvalidArgument("class numbers start at 1");
    if (static_cast<std::size_t>(ids[v]) > pg.classes.size()) pg.classes.resize(static_cast<std::size_t>(ids[v]));
    pg.classes[ids[v] - 1].push_back(static_cast<Vertex>(v));
  }
  for (std::size_t i = 0; i < pg.classes.size(); ++i)
    if (pg.classes[i].empty()) throw InvalidArgument("class " + std::to_string(i + 1) + " is empty");
  return pg;
}

std::optional<bool> source_answer(const PartitionedGraph& pg, oracle::Multicolored kind) {
  try {
    return oracle::brute_multicolored(pg.graph, pg.classes, kind).has_value();
  } catch (const InvalidArgument&) {
    return std::nullopt;
  }
}

void emit(const GenInputs& in, const std::string& graph_text, const std::string& meta_text, const std::string& extra_ext,
          const std::string& extra_text) {
  if (in.out.empty()) {
    std::cout << graph_text;
    if (!meta_text.empty()) std::cout << "# --- metadata\n" << meta_text;
    if (!extra_text.empty()) std::cout << "# --- " << extra_ext << "\n" << extra_text;
    return;
  }
  write_file(in.out + ".graph", graph_text);
  if (!meta_text.empty()) write_file(in.out + ".meta", meta_text);
  if (!extra_text.empty()) write_file(in.out + "." + extra_ext, extra_text);
}

int cmd_gen(const GenInputs& in) {
  const std::string& c = in.construction;
  if (c == "interval") {
    IntervalGraph ig = gen_random_interval(in.n, in.seed);
    emit(in, write_graph(ig.graph), "", "intervals", write_intervals(ig.intervals));
    return kExitOk;
  }
  if (c == "random") {
    std::mt19937_64 rng(in.seed);
    Graph g = random_graph(in.n, in.edge_percent, rng);
    DecompositionTree dec = random_decomposition(in.n, rng);
    emit(in, write_graph(g), "", "dec", write_decomposition(dec));
    return kExitOk;
  }
  PartitionedGraph src = gen_source(in);
  GadgetInstance inst;
  if (c == "core") {
    inst = gen_core(pad_partition(src, PadMode::clique));
  } else if (c == "clique-gadget") {
    inst = gen_clique_gadget(pad_partition(src, PadMode::clique), in.d, source_answer(src, oracle::Multicolored::clique));
  } else if (c == "domset-gadget") {
    inst = gen_domset_gadget(pad_partition(src, PadMode::independent_set), source_answer(src, oracle::Multicolored::independent_set));
  } else if (c == "total-dom-gadget") {
    inst = gen_total_dom_gadget(pad_partition(src, PadMode::independent_set), source_answer(src, oracle::Multicolored::independent_set));
  } else if (c == "d-dom-gadget") {
    inst = gen_d_dom_gadget(pad_partition(src, PadMode::independent_set), in.d, source_answer(src, oracle::Multicolored::independent_set));
  } else {
    throw InvalidArgument("unknown construction '" + c + "'; available: core, clique-gadget, domset-gadget, total-dom-gadget, d-dom-gadget, interval, random");
  }
  emit(in, write_graph(inst.graph), write_metadata(inst), "", "");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mimdp: distance-r (sigma, rho) and LCVP solver over decomposition trees"};
  app.require_subcommand(1);

  Inputs solve_in, oracle_in, mimw_in;
  auto* solve = app.add_subcommand("solve", "run the dynamic program");
  add_graph_flag(solve, solve_in);
  add_problem_flags(solve, solve_in);
  add_dec_flags(solve, solve_in);
  solve->add_flag("--stats", solve_in.stats, "print equivalence-class counts per tree node");
  solve->add_flag("--timing", solve_in.timing, "print elapsed time");
  solve->add_option("--threads", solve_in.threads, "worker threads for table building")->check(CLI::PositiveNumber);

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force reference (same flags as solve)");
  add_graph_flag(oracle_cmd, oracle_in);
  add_problem_flags(oracle_cmd, oracle_in);
  add_dec_flags(oracle_cmd, oracle_in);

  bool optimal_linear = false, brute = false;
  auto* mimw = app.add_subcommand("mimw", "cutmim of every tree edge and their maximum");
  add_graph_flag(mimw, mimw_in);
  add_dec_flags(mimw, mimw_in);
  mimw->add_flag("--optimal-linear", optimal_linear, "exact linear mim-width over all orders (n <= 9)");
  mimw->add_flag("--brute", brute, "also print the brute-force cutmim per edge");
  mimw->add_option("--threads", mimw_in.threads, "worker threads")->check(CLI::PositiveNumber);

  std::string power_graph, power_out;
  int power_k = 1;
  auto* power = app.add_subcommand("power", "write the k-th power of a graph");
  power->add_option("--graph", power_graph, "graph file")->required();
  power->add_option("-k", power_k, "exponent")->required();
  power->add_option("--out", power_out, "output file (default stdout)");

  GenInputs gen_in;
  auto* gen = app.add_subcommand("gen", "generate instances");
  gen->add_option("construction", gen_in.construction,
                  "core | clique-gadget | domset-gadget | total-dom-gadget | d-dom-gadget | interval | random")
      ->required();
  gen->add_option("--k", gen_in.k, "number of classes for a random source");
  gen->add_option("--p", gen_in.p, "class size for a random source");
  gen->add_option("--d", gen_in.d, "gadget parameter d");
  gen->add_option("--n", gen_in.n, "vertex count for interval / random");
  gen->add_option("--edge-prob", gen_in.edge_percent, "edge probability in percent")->check(CLI::Range(0, 100));
  gen->add_option("--seed", gen_in.seed, "random seed");
  gen->add_option("--source", gen_in.source, "source graph file instead of a random source");
  gen->add_option("--classes", gen_in.classes, "class number per source vertex, e.g. 1,1,2,2");
  gen->add_option("--out", gen_in.out, "output prefix; writes PREFIX.graph and PREFIX.meta (default stdout)");

  app.add_subcommand("catalog", "list the built-in (sigma, rho) problems");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*solve) return cmd_solve(solve_in);
    if (*oracle_cmd) return cmd_oracle(oracle_in);
    if (*mimw) return cmd_mimw(mimw_in, optimal_linear, brute);
    if (*power) return cmd_power(power_graph, power_k, power_out);
    if (*gen) return cmd_gen(gen_in);
    return cmd_catalog();
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}
