#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "signvote/graph.hpp"

namespace signvote {

/// Counts taken from the edge lines of the file, before any dangling-node
/// repair adds self-loops.
struct SnapStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t negative_edges = 0;
};

struct ParsedGraph {
  SignedDigraph graph;
  /// original_id[k] is the file id of compacted node k.
  std::vector<std::uint64_t> original_id;
  SnapStats stats;
};

/// Parses a whitespace separated `src dst sign` edge list. Lines starting
/// with '#' and blank lines are skipped. An integer third column is a sign
/// (any nonzero value, unit magnitude); a non-integer number is taken as a
/// signed weight. Node ids are compacted to 0..n-1 in order of first
/// appearance.
ParsedGraph parse_snap(std::string_view text, const BuildOptions& options = {});
ParsedGraph read_snap_file(const std::filesystem::path& path, const BuildOptions& options = {});

/// Inverse of parse_snap for a compacted graph: one `src\tdst\tsign` line per
/// edge in CSR order. Unit weights are written as +1/-1 so the output is a
/// valid sign file; other magnitudes are written as signed reals.
std::string serialize_snap(const SignedDigraph& graph);
void write_snap_file(const std::filesystem::path& path, const SignedDigraph& graph);

}  // namespace signvote
