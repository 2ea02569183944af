#include "signvote/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_map>

#include "signvote/compare.hpp"
#include "signvote/dynamics.hpp"
#include "signvote/error.hpp"
#include "signvote/generate.hpp"
#include "signvote/maximize.hpp"
#include "signvote/simulate.hpp"
#include "signvote/snap_io.hpp"
#include "signvote/structure.hpp"

namespace signvote::cli {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

// Output schema versions, recorded in every manifest.
const std::unordered_map<std::string, std::string> kSchemas = {
    {"graph.tsv", "edges/1"},           {"components.jsonl", "components/1"},
    {"dynamics.csv", "dynamics/1"},     {"steady_state.json", "steady_state/1"},
    {"simulate.csv", "simulate/1"},     {"summary.json", "simulate_summary/1"},
    {"seeds.json", "seeds/1"},          {"contributions.csv", "contributions/1"},
    {"compare.csv", "compare/1"},       {"compare_summary.json", "compare_summary/1"},
    {"generator.conf", "generator/1"},
};

struct Options {
  std::string graph_path;
  std::string generate_path;
  bool repair_dangling = false;
  std::string seeds;
  std::size_t t = 20;
  std::size_t k = 10;
  std::size_t trials = 1000;
  std::uint64_t rng_seed = 1;
  std::string objective = "longterm";
  std::string baseline;
  std::string out_dir = "out";
  bool per_node = false;
  bool contributions = false;
  unsigned threads = 0;
};

struct LoadedGraph {
  SignedDigraph graph;
  std::vector<std::uint64_t> original_id;  // empty: ids are already compact
  json source;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::uint64_t file_id(const LoadedGraph& g, NodeId v) { return g.original_id.empty() ? v : g.original_id[v]; }

LoadedGraph load_graph(const Options& o) {
  LoadedGraph g;
  if (!o.graph_path.empty()) {
    BuildOptions b;
    b.repair_dangling = o.repair_dangling;
    ParsedGraph p = read_snap_file(o.graph_path, b);
    g.graph = std::move(p.graph);
    g.original_id = std::move(p.original_id);
    g.source = {{"kind", "file"}, {"path", o.graph_path}, {"repair_dangling", o.repair_dangling}};
  } else {
    const GeneratorConfig cfg = read_generator_config(o.generate_path);
    g.graph = generate(cfg);
    g.source = {{"kind", "generator"}, {"path", o.generate_path}, {"config", cfg.to_text()}};
  }
  g.source["nodes"] = g.graph.node_count();
  g.source["edges"] = g.graph.edge_count();
  return g;
}

// Seeds are file ids (or generator ids) given as a comma list or a file of
// whitespace/comma separated ids.
std::vector<NodeId> load_seeds(const std::string& spec, const LoadedGraph& g) {
  std::vector<NodeId> seeds;
  if (spec.empty()) return seeds;
  std::string text = spec;
  if (fs::is_regular_file(spec)) {
    std::ifstream in(spec);
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  std::unordered_map<std::uint64_t, NodeId> remap;
  for (NodeId v = 0; v < g.original_id.size(); ++v) remap.emplace(g.original_id[v], v);

  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream tokens(line);
    std::string tok;
    while (tokens >> tok) {
      std::uint64_t id = 0;
      try {
        std::size_t used = 0;
        id = std::stoull(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw Error(ErrorKind::InvalidArgument, "bad seed id '" + tok + "'");
      }
      if (g.original_id.empty()) {
        if (id >= g.graph.node_count()) throw Error(ErrorKind::InvalidArgument, "seed " + tok + " is not a node");
        seeds.push_back(static_cast<NodeId>(id));
      } else {
        auto it = remap.find(id);
        if (it == remap.end()) throw Error(ErrorKind::InvalidArgument, "seed " + tok + " is not a node");
        seeds.push_back(it->second);
      }
    }
  }
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end()), seeds.end());
  return seeds;
}

json id_list(const LoadedGraph& g, const std::vector<NodeId>& nodes) {
  json a = json::array();
  for (NodeId v : nodes) a.push_back(file_id(g, v));
  return a;
}

class Output {
 public:
  explicit Output(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  std::ofstream open(const std::string& name) {
    std::ofstream f(dir_ / name, std::ios::binary);
    if (!f) throw Error(ErrorKind::InvalidArgument, "cannot write " + (dir_ / name).string());
    written_.push_back(name);
    return f;
  }

  void write_json(const std::string& name, const json& j) { open(name) << j.dump(2) << '\n'; }

  const std::vector<std::string>& written() const { return written_; }
  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
  std::vector<std::string> written_;
};

void write_manifest(Output& out, const std::vector<std::string>& args, const std::string& command, json source,
                    json parameters, double seconds) {
  json files = json::object();
  for (const auto& f : out.written()) files[f] = kSchemas.count(f) ? kSchemas.at(f) : "unversioned";
  json m = {{"schema", "manifest/1"},
            {"tool", "signvote"},
            {"tool_version", kToolVersion},
            {"command", command},
            {"argv", args},
            {"graph", std::move(source)},
            {"parameters", std::move(parameters)},
            {"outputs", files},
            {"wall_clock_seconds", seconds}};
  std::ofstream f(out.dir() / "manifest.json", std::ios::binary);
  f << m.dump(2) << '\n';
}

json balance_record(const LoadedGraph& g, const BalanceClass& b) {
  json r = {{"kind", to_string(b.kind)}};
  if (b.kind != BalanceKind::StrictlyUnbalanced) {
    r["s_size"] = b.s_size();
    r["s_bar_size"] = b.s_bar_size();
    std::vector<NodeId> s;
    for (std::size_t k = 0; k < b.nodes.size(); ++k)
      if (b.in_s[k]) s.push_back(b.nodes[k]);
    r["s"] = id_list(g, s);
  }
  return r;
}

// ---- subcommands ----

json cmd_generate(const Options& o, const LoadedGraph& g, Output& out) {
  std::ofstream f = out.open("graph.tsv");
  f << "# nodes " << g.graph.node_count() << " edges " << g.graph.edge_count() << '\n' << serialize_snap(g.graph);
  out.open("generator.conf") << g.source.value("config", "");
  (void)o;
  return json::object();
}

json cmd_classify(const LoadedGraph& g, Output& out, std::ostream& log) {
  const Decomposition dec = decompose(g.graph);
  std::vector<bool> is_sink(dec.components.size(), false);
  for (std::size_t c : dec.sink_components) is_sink[c] = true;
  std::ofstream f = out.open("components.jsonl");
  for (std::size_t c = 0; c < dec.components.size(); ++c) {
    const auto& nodes = dec.components[c];
    const BalanceClass b = classify_balance(nodes, g.graph);
    json r = {{"component_id", c},
              {"size", nodes.size()},
              {"sink", static_cast<bool>(is_sink[c])},
              {"aperiodic", is_aperiodic(nodes, g.graph)},
              {"kind", to_string(b.kind)},
              {"s_size", b.s_size()},
              {"s_bar_size", b.s_bar_size()}};
    f << r.dump() << '\n';
  }
  log << dec.components.size() << " components, " << dec.sink_count() << " sinks, " << dec.non_sink.size()
      << " non-sink nodes\n";
  return json::object();
}

json steady_record(const LoadedGraph& g, const SinkAnalysis& a, const SteadyState& s) {
  auto vec = [](const ColorDistribution& x) {
    json v = json::array();
    for (double e : x.values()) v.push_back(e);
    return v;
  };
  json r = {{"kind", to_string(s.kind)}, {"average_total", s.average_total()}};
  if (s.kind == SteadyKind::Oscillating) {
    r["x_even"] = vec(s.even);
    r["x_odd"] = vec(s.odd);
    r["amplitude"] = oscillation_amplitude(s);
  } else {
    r["x"] = vec(s.even);
  }
  r["non_sink"] = id_list(g, a.decomposition.non_sink);
  json sinks = json::array();
  for (std::size_t z = 0; z < a.sinks.size(); ++z) {
    const SinkInfo& info = a.sinks[z];
    json rec = {{"sink", z}, {"nodes", id_list(g, info.balance.nodes)}, {"drive", s.sinks[z].drive}};
    rec.update(balance_record(g, info.balance));
    if (!info.pi.empty()) rec["pi"] = info.pi;
    if (!info.coupling.empty()) {
      rec[info.balance.kind == BalanceKind::Balanced ? "u_b" : "u_u"] = info.coupling;
    }
    sinks.push_back(std::move(rec));
  }
  r["sinks"] = std::move(sinks);
  return r;
}

json cmd_dynamics(const Options& o, const LoadedGraph& g, Output& out, std::ostream& log) {
  const auto seeds = load_seeds(o.seeds, g);
  const std::size_t n = g.graph.node_count();
  const ColorDistribution x0 = ColorDistribution::indicator(n, seeds);
  const VoterDynamics dyn(g.graph);
  {
    std::ofstream f = out.open("dynamics.csv");
    f << "step,total_white_expectation";
    if (o.per_node)
      for (NodeId v = 0; v < n; ++v) f << ",x_" << file_id(g, v);
    f << '\n';
    std::vector<double> cur(x0.values().begin(), x0.values().end()), next(n);
    for (std::size_t s = 0; s <= o.t; ++s) {
      if (s > 0) {
        dyn.step_into(cur, next);
        cur.swap(next);
      }
      double total = 0.0;
      for (double v : cur) total += v;
      f << s << ',' << num(total);
      if (o.per_node)
        for (double v : cur) f << ',' << num(v);
      f << '\n';
    }
  }
  const SinkAnalysis a = analyze_sinks(g.graph);
  const SteadyState st = steady_state(a, x0);
  out.write_json("steady_state.json", steady_record(g, a, st));
  log << "steady state " << to_string(st.kind) << ", average white " << num(st.average_total()) << '\n';
  return {{"seeds", id_list(g, seeds)}, {"t", o.t}, {"per_node", o.per_node}};
}

json cmd_simulate(const Options& o, const LoadedGraph& g, Output& out, std::ostream& log) {
  const auto seeds = load_seeds(o.seeds, g);
  McOptions mc;
  mc.per_node = o.per_node;
  mc.threads = o.threads;
  const SimStats st = mc_run(g.graph, seeds, o.t, o.trials, o.rng_seed, mc);
  const VoterDynamics dyn(g.graph);
  const auto exact = dyn.totals(ColorDistribution::indicator(g.graph.node_count(), seeds), o.t);
  {
    std::ofstream f = out.open("simulate.csv");
    f << "step,mean,stderr,exact";
    if (o.per_node)
      for (NodeId v = 0; v < g.graph.node_count(); ++v) f << ",p_" << file_id(g, v);
    f << '\n';
    for (std::size_t s = 0; s <= o.t; ++s) {
      f << s << ',' << num(st.mean[s]) << ',' << num(st.std_error[s]) << ',' << num(exact[s]);
      if (o.per_node)
        for (double p : st.node_frequency[s]) f << ',' << num(p);
      f << '\n';
    }
  }
  double worst = 0.0;
  for (std::size_t s = 0; s <= o.t; ++s)
    if (st.std_error[s] > 0) worst = std::max(worst, std::abs(st.mean[s] - exact[s]) / st.std_error[s]);
  out.write_json("summary.json", {{"trials", st.trials},
                                  {"rng_seed", st.rng_seed},
                                  {"t", o.t},
                                  {"final_mean", st.mean.back()},
                                  {"final_stderr", st.std_error.back()},
                                  {"final_exact", exact.back()},
                                  {"max_abs_z", worst}});
  log << "final mean white " << num(st.mean.back()) << " +/- " << num(st.std_error.back()) << " (exact "
      << num(exact.back()) << ")\n";
  return {{"seeds", id_list(g, seeds)}, {"t", o.t}, {"trials", o.trials}, {"rng_seed", o.rng_seed},
          {"per_node", o.per_node}};
}

Objective require_objective(const std::string& name) {
  auto obj = parse_objective(name);
  if (!obj) throw Error(ErrorKind::InvalidArgument, "unknown objective '" + name + "'");
  return *obj;
}

json cmd_maximize(const Options& o, const LoadedGraph& g, Output& out, std::ostream& log) {
  const Objective obj = require_objective(o.objective);
  ContributionVector c;
  SeedSet seeds;
  switch (obj) {
    case Objective::Instant: c = contribution_instant(g.graph, o.t); break;
    case Objective::Average: c = contribution_average(g.graph, o.t); break;
    case Objective::LongTerm:
    case Objective::Oscillation: c = contribution_longterm(g.graph); break;
  }
  std::string method = "svim";
  if (!o.baseline.empty()) {
    auto h = parse_heuristic(o.baseline);
    if (!h) throw Error(ErrorKind::InvalidArgument, "unknown baseline '" + o.baseline + "'");
    seeds = heuristic_seeds(g.graph, o.k, *h, o.rng_seed, &c);
    method = o.baseline;
    if (obj == Objective::Oscillation) {
      seeds.objective = obj;
      const SteadyState s = steady_state(g.graph, ColorDistribution::indicator(g.graph.node_count(), seeds.nodes));
      seeds.value = oscillation_amplitude(s);
    }
  } else {
    seeds = obj == Objective::Oscillation ? oscillation_seeds(g.graph, o.k) : select_top(c, o.k);
  }
  out.write_json("seeds.json", {{"seeds", id_list(g, seeds.nodes)},
                                {"value", seeds.value},
                                {"objective", to_string(seeds.objective)},
                                {"method", method},
                                {"k", o.k},
                                {"t", obj == Objective::Instant || obj == Objective::Average ? json(o.t) : json()}});
  if (o.contributions) {
    std::ofstream f = out.open("contributions.csv");
    f << "node,contribution\n";
    for (NodeId v = 0; v < c.c.size(); ++v) f << file_id(g, v) << ',' << num(c.c[v]) << '\n';
  }
  log << method << " picked " << seeds.nodes.size() << " seeds, value " << num(seeds.value) << '\n';
  return {{"objective", o.objective}, {"k", o.k}, {"t", o.t}, {"baseline", o.baseline}, {"rng_seed", o.rng_seed}};
}

json cmd_compare(const Options& o, const LoadedGraph& g, Output& out, std::ostream& log) {
  CompareOptions co;
  co.objective = require_objective(o.objective);
  co.t = o.t;
  co.k = o.k;
  co.trials = o.trials;
  co.rng_seed = o.rng_seed;
  co.threads = o.threads;
  const CompareResult r = compare(g.graph, co);
  {
    std::ofstream f = out.open("compare.csv");
    f << "step";
    for (const auto& m : r.methods) f << ',' << m.name;
    if (co.trials)
      for (const auto& m : r.methods) f << ',' << m.name << "_mc," << m.name << "_mc_stderr";
    f << '\n';
    for (std::size_t s = 0; s <= co.t; ++s) {
      f << s;
      for (const auto& m : r.methods) f << ',' << num(m.exact[s]);
      if (co.trials)
        for (const auto& m : r.methods) f << ',' << num(m.mc->mean[s]) << ',' << num(m.mc->std_error[s]);
      f << '\n';
    }
  }
  json methods = json::array();
  for (const auto& m : r.methods) {
    json rec = {{"method", m.name}, {"seeds", id_list(g, m.seeds.nodes)}, {"value", m.seeds.value},
                {"final_exact", m.exact.back()}};
    rec["steady_average"] = m.steady ? json(*m.steady) : json();
    if (m.amplitude) rec["amplitude"] = *m.amplitude;
    if (m.mc) rec["final_mc"] = m.mc->mean.back();
    methods.push_back(std::move(rec));
    log << m.name << ": final " << num(m.exact.back());
    if (m.steady) log << ", steady " << num(*m.steady);
    log << '\n';
  }
  out.write_json("compare_summary.json",
                 {{"objective", o.objective}, {"k", o.k}, {"t", o.t}, {"trials", o.trials}, {"methods", methods}});
  return {{"objective", o.objective}, {"k", o.k}, {"t", o.t}, {"trials", o.trials}, {"rng_seed", o.rng_seed}};
}

}  // namespace

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return kUsage;
    case ErrorKind::NoConvergence:
    case ErrorKind::SlowMixing: return kNumericError;
    default: return kDataError;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Voter-model dynamics and influence maximization on signed digraphs", "signvote"};
  app.require_subcommand(1);

  auto add_graph = [&](CLI::App* sub) {
    auto* g = sub->add_option("--graph", o.graph_path, "signed edge list (src dst sign)");
    auto* c = sub->add_option("--generate", o.generate_path, "generator config file");
    g->excludes(c);
    sub->add_flag("--repair-dangling", o.repair_dangling, "give nodes without out-edges a self-loop");
    sub->add_option("--out", o.out_dir, "output directory")->capture_default_str();
  };
  auto add_seeds = [&](CLI::App* sub) {
    sub->add_option("--seeds", o.seeds, "white seed ids: file or comma list");
    sub->add_option("--t", o.t, "steps")->capture_default_str();
  };

  auto* gen = app.add_subcommand("generate", "write a synthetic graph");
  gen->add_option("--generate", o.generate_path, "generator config file")->required();
  gen->add_option("--out", o.out_dir, "output directory")->capture_default_str();

  auto* cls = app.add_subcommand("classify", "components, sinks and balance classes");
  add_graph(cls);

  auto* dyn = app.add_subcommand("dynamics", "exact expected dynamics and steady state");
  add_graph(dyn);
  add_seeds(dyn);
  dyn->add_flag("--per-node", o.per_node, "per-node columns");

  auto* sim = app.add_subcommand("simulate", "Monte Carlo voter model");
  add_graph(sim);
  add_seeds(sim);
  sim->add_flag("--per-node", o.per_node, "per-node white frequencies");
  sim->add_option("--trials", o.trials)->capture_default_str();
  sim->add_option("--rng-seed", o.rng_seed)->capture_default_str();
  sim->add_option("--threads", o.threads, "0 = all cores")->capture_default_str();

  auto* mx = app.add_subcommand("maximize", "seed selection");
  add_graph(mx);
  mx->add_option("--t", o.t)->capture_default_str();
  mx->add_option("--k", o.k)->capture_default_str();
  mx->add_option("--objective", o.objective, "instant|average|longterm|oscillation")->capture_default_str();
  mx->add_option("--baseline", o.baseline, "out_degree|positive_out_degree|degree_difference|random");
  mx->add_option("--rng-seed", o.rng_seed, "random baseline seed")->capture_default_str();
  mx->add_flag("--contributions", o.contributions, "also write contributions.csv");

  auto* cmp = app.add_subcommand("compare", "SVIM against the heuristic baselines");
  add_graph(cmp);
  cmp->add_option("--t", o.t)->capture_default_str();
  cmp->add_option("--k", o.k)->capture_default_str();
  cmp->add_option("--objective", o.objective)->capture_default_str();
  cmp->add_option("--trials", o.trials, "0 skips simulation")->capture_default_str();
  cmp->add_option("--rng-seed", o.rng_seed)->capture_default_str();
  cmp->add_option("--threads", o.threads)->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  if (command != "generate" && o.graph_path.empty() == o.generate_path.empty()) {
    err << "usage error: give exactly one of --graph or --generate\n";
    return kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    const LoadedGraph g = load_graph(o);
    Output output(o.out_dir);
    json params;
    if (command == "generate") params = cmd_generate(o, g, output);
    else if (command == "classify") params = cmd_classify(g, output, out);
    else if (command == "dynamics") params = cmd_dynamics(o, g, output, out);
    else if (command == "simulate") params = cmd_simulate(o, g, output, out);
    else if (command == "maximize") params = cmd_maximize(o, g, output, out);
    else params = cmd_compare(o, g, output, out);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_manifest(output, args, command, g.source, params, secs);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kOk;
}

}  // namespace signvote::cli
