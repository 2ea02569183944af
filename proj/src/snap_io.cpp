#include "signvote/snap_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "signvote/error.hpp"

namespace signvote {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::string_view next_token(std::string_view& line) {
  std::size_t b = 0;
  while (b < line.size() && is_space(line[b])) ++b;
  std::size_t e = b;
  while (e < line.size() && !is_space(line[e])) ++e;
  std::string_view tok = line.substr(b, e - b);
  line.remove_prefix(e);
  return tok;
}

[[noreturn]] void malformed(std::size_t line_no, const std::string& why) {
  throw Error(ErrorKind::MalformedLine, "line " + std::to_string(line_no) + ": " + why);
}

std::uint64_t parse_id(std::string_view tok, std::size_t line_no) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size()) {
    malformed(line_no, "bad node id '" + std::string(tok) + "'");
  }
  return v;
}

double parse_sign(std::string_view tok, std::size_t line_no) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  long long as_int = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), as_int);
  if (ec == std::errc{} && p == tok.data() + tok.size()) {
    if (as_int == 0) throw Error(ErrorKind::ZeroWeightEdge, "line " + std::to_string(line_no) + ": zero sign");
    return as_int > 0 ? 1.0 : -1.0;
  }
  double as_real = 0.0;
  auto [q, ec2] = std::from_chars(tok.data(), tok.data() + tok.size(), as_real);
  if (ec2 != std::errc{} || q != tok.data() + tok.size() || !std::isfinite(as_real)) {
    malformed(line_no, "bad sign '" + std::string(tok) + "'");
  }
  if (as_real == 0.0) throw Error(ErrorKind::ZeroWeightEdge, "line " + std::to_string(line_no) + ": zero weight");
  return as_real;
}

}  // namespace

ParsedGraph parse_snap(std::string_view text, const BuildOptions& options) {
  ParsedGraph out;
  std::unordered_map<std::uint64_t, NodeId> remap;
  std::vector<SignedEdge> edges;

  auto compact = [&](std::uint64_t id) {
    auto [it, inserted] = remap.try_emplace(id, static_cast<NodeId>(out.original_id.size()));
    if (inserted) out.original_id.push_back(id);
    return it->second;
  };

  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);

    std::string_view rest = line;
    std::string_view first = next_token(rest);
    if (first.empty() || first.front() == '#') continue;
    std::string_view second = next_token(rest);
    std::string_view third = next_token(rest);
    if (second.empty() || third.empty()) malformed(line_no, "expected `src dst sign`");
    if (!next_token(rest).empty()) malformed(line_no, "trailing fields");

    const std::uint64_t src = parse_id(first, line_no);
    const std::uint64_t dst = parse_id(second, line_no);
    const double w = parse_sign(third, line_no);
    const NodeId s = compact(src);
    const NodeId t = compact(dst);
    edges.push_back({s, t, w});
    if (w < 0) ++out.stats.negative_edges;
  }
  out.stats.edges = edges.size();
  out.stats.nodes = out.original_id.size();

  BuildOptions build = options;
  build.node_count = out.original_id.size();
  out.graph = from_edge_list(edges, build);
  return out;
}

ParsedGraph read_snap_file(const std::filesystem::path& path, const BuildOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_snap(buf.str(), options);
}

std::string serialize_snap(const SignedDigraph& graph) {
  std::ostringstream os;
  os.precision(17);
  for (const SignedEdge& e : graph.edge_list()) {
    os << e.source << '\t' << e.target << '\t';
    if (std::abs(e.signed_weight) == 1.0) {
      os << (e.signed_weight > 0 ? "1" : "-1");
    } else {
      // a bare integer would read back as a unit sign
      os << std::showpoint << e.signed_weight << std::noshowpoint;
    }
    os << '\n';
  }
  return os.str();
}

void write_snap_file(const std::filesystem::path& path, const SignedDigraph& graph) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
  out << "# nodes " << graph.node_count() << " edges " << graph.edge_count() << '\n';
  out << serialize_snap(graph);
}

}  // namespace signvote
