#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "signvote/graph.hpp"

namespace signvote {

enum class Family {
  Balanced,
  AntiBalanced,
  StrictlyUnbalanced,
  WeaklyConnected,
  Disconnected,
  DisconnectedWithWcc,
  SlowMixing,
};

const char* to_string(Family family) noexcept;
std::optional<Family> parse_family(std::string_view name) noexcept;

/// Synthetic graph recipe.
///
/// `sizes` lists component sizes in family order:
///   balanced, anti_balanced, strictly_unbalanced: [A, B]
///   disconnected, weakly_connected: [G1, G2, G3, G4, G5]
///   disconnected_with_wcc: [A, B, G1, ..., G5]
/// G1 gets random signs; (G2, G3) and (G4, G5) are each joined into a
/// balanced pair. Empty sizes select the family defaults.
struct GeneratorConfig {
  Family family = Family::Balanced;
  std::vector<std::size_t> sizes;
  std::size_t edge_factor = 8;              // edges per node inside a component
  std::optional<std::size_t> cross_edges;   // per balanced pair; default min size * edge_factor
  std::size_t bridge_edges = 3000;          // G1 -> (G2..G5), weakly connected families
  std::size_t m = 8;                        // slow_mixing half size
  std::uint64_t seed = 1;
  std::size_t retries = 10;

  /// The effective sizes (defaults filled in).
  std::vector<std::size_t> resolved_sizes() const;
  /// `key = value` lines that parse back to this config.
  std::string to_text() const;
};

/// Reads `key = value` lines; '#' starts a comment. Keys: family, sizes
/// (comma separated), edge_factor, cross_edges, bridge_edges, m, seed,
/// retries. Raises InvalidConfig on unknown keys or bad values.
GeneratorConfig parse_generator_config(std::string_view text);
GeneratorConfig read_generator_config(const std::filesystem::path& path);

/// Builds the family, checks its condensation, aperiodicity and balance
/// classes, and rebuilds from the next derived seed when the check fails.
SignedDigraph generate(const GeneratorConfig& config);

/// Two chains L1..Lm (nodes 0..m-1) and R1..Rm (nodes m..2m-1). Each chain
/// node points to its successor, every node after the first also points back
/// to its chain head, and Lm -> R1, Rm -> L1 join the halves. Unit positive
/// weights.
SignedDigraph slow_mixing(std::size_t m);

}  // namespace signvote
