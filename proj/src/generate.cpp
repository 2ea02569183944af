#include "signvote/generate.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "signvote/error.hpp"
#include "signvote/simulate.hpp"
#include "signvote/structure.hpp"

namespace signvote {
namespace {

constexpr Family kFamilies[] = {Family::Balanced,        Family::AntiBalanced, Family::StrictlyUnbalanced,
                                Family::WeaklyConnected, Family::Disconnected, Family::DisconnectedWithWcc,
                                Family::SlowMixing};

std::size_t expected_sizes(Family f) {
  switch (f) {
    case Family::Balanced:
    case Family::AntiBalanced:
    case Family::StrictlyUnbalanced: return 2;
    case Family::WeaklyConnected:
    case Family::Disconnected: return 5;
    case Family::DisconnectedWithWcc: return 7;
    case Family::SlowMixing: return 0;
  }
  return 0;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || p != v.data() + v.size()) {
    throw Error(ErrorKind::InvalidConfig, "key '" + key + "' expects a nonnegative integer, got '" + v + "'");
  }
  return out;
}

struct Block {
  std::size_t first;
  std::size_t size;
};

class Builder {
 public:
  explicit Builder(Rng& rng) : rng_(rng) {}

  Block add_nodes(std::size_t count) {
    const Block b{n_, count};
    n_ += count;
    return b;
  }

  double random_sign() { return std::bernoulli_distribution(0.5)(rng_) ? 1.0 : -1.0; }

  // Random Hamiltonian cycle plus distinct random chords, `edges` in total.
  // sign == 0 draws a random sign per edge.
  void component(Block b, std::size_t edges, double sign) {
    if (b.size < 2) throw Error(ErrorKind::InvalidConfig, "components need at least 2 nodes");
    if (edges < b.size || edges > b.size * (b.size - 1)) {
      throw Error(ErrorKind::InvalidConfig,
                  "cannot place " + std::to_string(edges) + " edges on " + std::to_string(b.size) + " nodes");
    }
    std::vector<NodeId> order(b.size);
    std::iota(order.begin(), order.end(), static_cast<NodeId>(b.first));
    std::shuffle(order.begin(), order.end(), rng_);
    std::size_t placed = 0;
    for (std::size_t i = 0; i < b.size; ++i) placed += add(order[i], order[(i + 1) % b.size], sign);
    std::uniform_int_distribution<std::size_t> pick(b.first, b.first + b.size - 1);
    while (placed < edges) {
      const auto u = static_cast<NodeId>(pick(rng_)), v = static_cast<NodeId>(pick(rng_));
      if (u != v) placed += add(u, v, sign);
    }
  }

  // `count` distinct edges between two blocks. Each edge runs a -> b, or
  // either way by a fair coin when `both_ways`.
  void cross(Block a, Block b, std::size_t count, double sign, bool both_ways) {
    if (count > (both_ways ? 2 : 1) * a.size * b.size) throw Error(ErrorKind::InvalidConfig, "too many cross edges");
    std::uniform_int_distribution<std::size_t> pa(a.first, a.first + a.size - 1), pb(b.first, b.first + b.size - 1);
    std::bernoulli_distribution coin(0.5);
    std::size_t placed = 0;
    while (placed < count) {
      auto u = static_cast<NodeId>(pa(rng_)), v = static_cast<NodeId>(pb(rng_));
      if (both_ways && coin(rng_)) std::swap(u, v);
      placed += add(u, v, sign);
    }
  }

  SignedDigraph finish() const {
    BuildOptions opts;
    opts.node_count = n_;
    return from_edge_list(edges_, opts);
  }

 private:
  bool add(NodeId u, NodeId v, double sign) {
    if (!seen_.insert((static_cast<std::uint64_t>(u) << 32) | v).second) return false;
    edges_.push_back({u, v, sign == 0.0 ? random_sign() : sign});
    return true;
  }

  Rng& rng_;
  std::size_t n_ = 0;
  std::vector<SignedEdge> edges_;
  std::unordered_set<std::uint64_t> seen_;
};

// Two positive components joined by negative edges in both directions.
std::pair<Block, Block> balanced_pair(Builder& b, std::size_t na, std::size_t nb, const GeneratorConfig& cfg) {
  const Block a = b.add_nodes(na), c = b.add_nodes(nb);
  b.component(a, na * cfg.edge_factor, 1.0);
  b.component(c, nb * cfg.edge_factor, 1.0);
  b.cross(a, c, cfg.cross_edges.value_or(std::min(na, nb) * cfg.edge_factor), -1.0, true);
  return {a, c};
}

// G1 with random signs next to two balanced pairs; optionally bridged G1 -> rest.
void five_block(Builder& b, const std::size_t* s, const GeneratorConfig& cfg, bool bridged) {
  const Block g1 = b.add_nodes(s[0]);
  b.component(g1, s[0] * cfg.edge_factor, 0.0);
  const auto [g2, g3] = balanced_pair(b, s[1], s[2], cfg);
  const auto [g4, g5] = balanced_pair(b, s[3], s[4], cfg);
  if (!bridged) return;
  const Block rest{g2.first, g5.first + g5.size - g2.first};
  b.cross(g1, rest, cfg.bridge_edges, 0.0, false);
}

struct Expected {
  std::size_t components;
  std::size_t sinks;
  std::vector<BalanceKind> sink_kinds;  // in sink order
};

Expected expected(Family f) {
  using K = BalanceKind;
  switch (f) {
    case Family::Balanced: return {1, 1, {K::Balanced}};
    case Family::AntiBalanced: return {1, 1, {K::AntiBalanced}};
    case Family::StrictlyUnbalanced: return {1, 1, {K::StrictlyUnbalanced}};
    case Family::Disconnected: return {3, 3, {K::StrictlyUnbalanced, K::Balanced, K::Balanced}};
    case Family::WeaklyConnected: return {3, 2, {K::Balanced, K::Balanced}};
    case Family::DisconnectedWithWcc: return {4, 3, {K::Balanced, K::Balanced, K::Balanced}};
    case Family::SlowMixing: return {1, 1, {K::Balanced}};
  }
  return {};
}

bool verify(const SignedDigraph& g, Family f) {
  const Expected want = expected(f);
  const Decomposition dec = decompose(g);
  if (dec.components.size() != want.components || dec.sink_count() != want.sinks) return false;
  for (const auto& comp : dec.components)
    if (!is_aperiodic(comp, g)) return false;
  for (std::size_t z = 0; z < dec.sink_count(); ++z)
    if (classify_balance(dec.sink_nodes(z), g).kind != want.sink_kinds[z]) return false;
  return true;
}

SignedDigraph build_once(const GeneratorConfig& cfg, const std::vector<std::size_t>& s, Rng& rng) {
  Builder b(rng);
  switch (cfg.family) {
    case Family::Balanced:
    case Family::AntiBalanced: {
      balanced_pair(b, s[0], s[1], cfg);
      SignedDigraph g = b.finish();
      return cfg.family == Family::AntiBalanced ? negate_signs(g) : g;
    }
    case Family::StrictlyUnbalanced: {
      const Block a = b.add_nodes(s[0]), c = b.add_nodes(s[1]);
      b.component(a, s[0] * cfg.edge_factor, 0.0);
      b.component(c, s[1] * cfg.edge_factor, 0.0);
      b.cross(a, c, cfg.cross_edges.value_or(std::min(s[0], s[1]) * cfg.edge_factor), 0.0, true);
      return b.finish();
    }
    case Family::Disconnected: five_block(b, s.data(), cfg, false); return b.finish();
    case Family::WeaklyConnected: five_block(b, s.data(), cfg, true); return b.finish();
    case Family::DisconnectedWithWcc:
      balanced_pair(b, s[0], s[1], cfg);
      five_block(b, s.data() + 2, cfg, true);
      return b.finish();
    case Family::SlowMixing: return slow_mixing(cfg.m);
  }
  throw Error(ErrorKind::InvalidConfig, "unknown family");
}

}  // namespace

const char* to_string(Family family) noexcept {
  switch (family) {
    case Family::Balanced: return "balanced";
    case Family::AntiBalanced: return "anti_balanced";
    case Family::StrictlyUnbalanced: return "strictly_unbalanced";
    case Family::WeaklyConnected: return "weakly_connected";
    case Family::Disconnected: return "disconnected";
    case Family::DisconnectedWithWcc: return "disconnected_with_wcc";
    case Family::SlowMixing: return "slow_mixing";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) noexcept {
  for (Family f : kFamilies)
    if (name == to_string(f)) return f;
  return std::nullopt;
}

std::vector<std::size_t> GeneratorConfig::resolved_sizes() const {
  if (!sizes.empty()) return sizes;
  switch (family) {
    case Family::Balanced:
    case Family::AntiBalanced:
    case Family::StrictlyUnbalanced: return {3000, 6500};
    case Family::WeaklyConnected:
    case Family::Disconnected: return {500, 200, 800, 300, 2700};
    case Family::DisconnectedWithWcc: return {3000, 6500, 500, 200, 800, 300, 2700};
    case Family::SlowMixing: return {};
  }
  return {};
}

std::string GeneratorConfig::to_text() const {
  std::ostringstream out;
  out << "family = " << to_string(family) << '\n';
  if (family == Family::SlowMixing) {
    out << "m = " << m << '\n';
  } else {
    out << "sizes = ";
    const auto s = resolved_sizes();
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? ", " : "") << s[i];
    out << "\nedge_factor = " << edge_factor << '\n';
    if (cross_edges) out << "cross_edges = " << *cross_edges << '\n';
    out << "bridge_edges = " << bridge_edges << '\n';
  }
  out << "seed = " << seed << "\nretries = " << retries << '\n';
  return out.str();
}

GeneratorConfig parse_generator_config(std::string_view text) {
  GeneratorConfig cfg;
  bool have_family = false;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::InvalidConfig, "line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key == "family") {
      auto f = parse_family(value);
      if (!f) throw Error(ErrorKind::InvalidConfig, "unknown family '" + value + "'");
      cfg.family = *f;
      have_family = true;
    } else if (key == "sizes") {
      cfg.sizes.clear();
      std::istringstream parts(value);
      std::string item;
      while (std::getline(parts, item, ',')) cfg.sizes.push_back(parse_uint(key, trim(item)));
    } else if (key == "edge_factor") {
      cfg.edge_factor = parse_uint(key, value);
    } else if (key == "cross_edges") {
      cfg.cross_edges = parse_uint(key, value);
    } else if (key == "bridge_edges") {
      cfg.bridge_edges = parse_uint(key, value);
    } else if (key == "m") {
      cfg.m = parse_uint(key, value);
    } else if (key == "seed") {
      cfg.seed = parse_uint(key, value);
    } else if (key == "retries") {
      cfg.retries = parse_uint(key, value);
    } else {
      throw Error(ErrorKind::InvalidConfig, "unknown key '" + key + "'");
    }
  }
  if (!have_family) throw Error(ErrorKind::InvalidConfig, "missing 'family'");
  return cfg;
}

GeneratorConfig read_generator_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidConfig, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_generator_config(buf.str());
}

SignedDigraph generate(const GeneratorConfig& config) {
  const auto sizes = config.resolved_sizes();
  if (sizes.size() != expected_sizes(config.family)) {
    throw Error(ErrorKind::InvalidConfig, std::string(to_string(config.family)) + " needs " +
                                              std::to_string(expected_sizes(config.family)) + " sizes");
  }
  if (config.family == Family::SlowMixing) return slow_mixing(config.m);
  if (config.edge_factor == 0) throw Error(ErrorKind::InvalidConfig, "edge_factor must be positive");
  for (std::size_t attempt = 0; attempt <= config.retries; ++attempt) {
    Rng rng(trial_seed(config.seed, attempt));
    SignedDigraph g = build_once(config, sizes, rng);
    if (verify(g, config.family)) return g;
  }
  throw Error(ErrorKind::GenerationFailed, std::string(to_string(config.family)) + " failed verification after " +
                                               std::to_string(config.retries + 1) + " attempts");
}

SignedDigraph slow_mixing(std::size_t m) {
  if (m < 3) throw Error(ErrorKind::InvalidConfig, "slow_mixing needs m >= 3");
  std::vector<SignedEdge> edges;
  for (std::size_t side = 0; side < 2; ++side) {
    const auto head = static_cast<NodeId>(side * m);
    for (std::size_t i = 0; i < m; ++i) {
      const auto v = static_cast<NodeId>(head + i);
      if (i > 0) edges.push_back({v, head, 1.0});
      if (i + 1 < m) edges.push_back({v, v + 1, 1.0});
    }
    const auto other_head = static_cast<NodeId>((1 - side) * m);
    edges.push_back({static_cast<NodeId>(head + m - 1), other_head, 1.0});
  }
  return from_edge_list(edges);
}

}  // namespace signvote
