#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "signvote/graph.hpp"
#include "signvote/structure.hpp"

namespace signvote {

/// Exact expected-color propagation x_t = P x_{t-1} + g^-.
///
/// Holds the graph by reference together with its ground vector so repeated
/// steps do not recompute g^-. The graph must outlive this object.
class VoterDynamics {
 public:
  explicit VoterDynamics(const SignedDigraph& graph);

  const SignedDigraph& graph() const noexcept { return *graph_; }
  std::span<const double> ground() const noexcept { return ground_; }

  ColorDistribution step(const ColorDistribution& x) const;

  /// Raw form of step for hot loops. Entries that leave [0, 1] by more than
  /// 1e-12 raise InvariantViolation; smaller excursions are clamped.
  void step_into(std::span<const double> x, std::span<double> out) const;

  /// trajectory[0] = x0, trajectory[k+1] = step(trajectory[k]).
  std::vector<ColorDistribution> propagate(const ColorDistribution& x0, std::size_t t) const;

  /// 1^T x_k for k = 0..t without keeping the trajectory.
  std::vector<double> totals(const ColorDistribution& x0, std::size_t t) const;

 private:
  const SignedDigraph* graph_;
  std::vector<double> ground_;
};

ColorDistribution step(const SignedDigraph& graph, const ColorDistribution& x);
std::vector<ColorDistribution> propagate(const SignedDigraph& graph, const ColorDistribution& x0, std::size_t t);

/// Result of iterating until same-parity steps agree.
struct Horizon {
  std::size_t steps = 0;           // T, index of `last`
  ColorDistribution last;          // x_T
  ColorDistribution previous;      // x_{T-1}

  /// Cesaro average over the trailing two-step window.
  double average_total() const { return 0.5 * (last.total() + previous.total()); }
};

struct HorizonOptions {
  double tolerance = 1e-9;          // on max_i |x_{t+2}(i) - x_t(i)|
  std::size_t max_steps = 1'000'000;
};

/// Iterates until ||x_{t+2} - x_t||_inf <= tolerance, comparing same-parity
/// steps so oscillating dynamics also terminate. Raises SlowMixing at the cap.
Horizon run_to_horizon(const VoterDynamics& dynamics, const ColorDistribution& x0, const HorizonOptions& options = {});

enum class CouplingMode { Balanced, AntiBalanced };

/// Right-hand side owner for a coupling solve: one sink of `decomposition`
/// and its S / S-bar partition.
struct CouplingTarget {
  std::size_t sink;
  const BalanceClass* balance;
};

/// Solves (I_X - P_X) u = P_Y 1hat_{Z,S_Z} (Balanced) or
/// (I_X + P_X) u = P_Y 1hat_{Z,S_Z} (AntiBalanced) for every target at once,
/// by the Neumann iteration u <- P_Y 1hat +/- P_X u, falling back to one
/// dense factorisation shared by all right-hand sides. Each result is
/// indexed like decomposition.non_sink.
std::vector<std::vector<double>> solve_u(const SignedDigraph& graph, const Decomposition& decomposition,
                                         std::span<const CouplingTarget> targets, CouplingMode mode,
                                         const SolveOptions& options = {});

std::vector<double> solve_u(const SignedDigraph& graph, const Decomposition& decomposition, std::size_t sink,
                            const BalanceClass& balance, CouplingMode mode, const SolveOptions& options = {});

/// Everything about the sinks that does not depend on the initial colors:
/// balance class, stationary distribution and coupling vector of each sink.
struct SinkInfo {
  std::size_t sink = 0;
  BalanceClass balance;
  std::vector<double> pi;         // aligned with balance.nodes; empty when strictly unbalanced
  std::vector<double> coupling;   // u_b or u_u over X; empty when strictly unbalanced

  /// pi-hat_{Z,S_Z}(k)
  double signed_pi(std::size_t k) const { return balance.sign_at(k) * pi[k]; }
};

struct SinkAnalysis {
  Decomposition decomposition;
  std::vector<SinkInfo> sinks;
};

/// Raises PeriodicComponent if some sink is not aperiodic.
SinkAnalysis analyze_sinks(const SignedDigraph& graph, const SolveOptions& options = {});

enum class SteadyKind { Fixed, Oscillating, UniformHalf };

const char* to_string(SteadyKind kind) noexcept;

struct SinkSteadyState {
  std::size_t sink = 0;
  BalanceKind kind = BalanceKind::StrictlyUnbalanced;
  double drive = 0.0;  // pi-hat^T (x0_Z - 1/2)
};

/// Long-run color distribution. For oscillating dynamics `even` and `odd`
/// are the limits along even and odd steps; otherwise they coincide.
struct SteadyState {
  SteadyKind kind = SteadyKind::Fixed;
  ColorDistribution even;
  ColorDistribution odd;
  std::vector<SinkSteadyState> sinks;

  const ColorDistribution& x() const noexcept { return even; }
  /// (x_e + x_o) / 2, the Cesaro limit.
  ColorDistribution average() const;
  double average_total() const { return 0.5 * (even.total() + odd.total()); }
};

SteadyState steady_state(const SinkAnalysis& analysis, const ColorDistribution& x0);
SteadyState steady_state(const SignedDigraph& graph, const ColorDistribution& x0);

/// |1^T x_o - 1^T x_e| / 2. Raises WrongKind unless the state oscillates.
double oscillation_amplitude(const SteadyState& steady);

}  // namespace signvote
