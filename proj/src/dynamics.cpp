#include "signvote/dynamics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "signvote/error.hpp"

namespace signvote {
namespace {

constexpr double kStepSlack = 1e-12;
constexpr double kSteadySlack = 1e-9;

std::size_t default_cap(std::size_t n) {
  const double nn = static_cast<double>(std::max<std::size_t>(n, 2));
  return std::max<std::size_t>(1000, static_cast<std::size_t>(10.0 * nn * std::log(nn)));
}

double clamp_unit(double v, double slack, const char* what) {
  if (v < -slack || v > 1.0 + slack || std::isnan(v)) {
    throw Error(ErrorKind::InvariantViolation, std::string(what) + " produced probability " + std::to_string(v));
  }
  return std::clamp(v, 0.0, 1.0);
}

}  // namespace

VoterDynamics::VoterDynamics(const SignedDigraph& graph) : graph_(&graph), ground_(ground_vector(graph)) {}

void VoterDynamics::step_into(std::span<const double> x, std::span<double> out) const {
  apply_p(*graph_, x, out);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = clamp_unit(out[i] + ground_[i], kStepSlack, "step");
}

ColorDistribution VoterDynamics::step(const ColorDistribution& x) const {
  std::vector<double> out(x.size());
  step_into(x.values(), out);
  return ColorDistribution(std::move(out));
}

std::vector<ColorDistribution> VoterDynamics::propagate(const ColorDistribution& x0, std::size_t t) const {
  std::vector<ColorDistribution> traj;
  traj.reserve(t + 1);
  traj.push_back(x0);
  for (std::size_t k = 0; k < t; ++k) traj.push_back(step(traj.back()));
  return traj;
}

std::vector<double> VoterDynamics::totals(const ColorDistribution& x0, std::size_t t) const {
  std::vector<double> cur(x0.values().begin(), x0.values().end()), next(cur.size());
  std::vector<double> out;
  out.reserve(t + 1);
  out.push_back(x0.total());
  for (std::size_t k = 0; k < t; ++k) {
    step_into(cur, next);
    cur.swap(next);
    double s = 0.0;
    for (double v : cur) s += v;
    out.push_back(s);
  }
  return out;
}

ColorDistribution step(const SignedDigraph& graph, const ColorDistribution& x) {
  return VoterDynamics(graph).step(x);
}

std::vector<ColorDistribution> propagate(const SignedDigraph& graph, const ColorDistribution& x0, std::size_t t) {
  return VoterDynamics(graph).propagate(x0, t);
}

Horizon run_to_horizon(const VoterDynamics& dynamics, const ColorDistribution& x0, const HorizonOptions& options) {
  const std::size_t n = x0.size();
  // ring of x_t, x_{t+1}, x_{t+2}
  std::vector<double> a(x0.values().begin(), x0.values().end()), b(n), c(n);
  dynamics.step_into(a, b);
  for (std::size_t t = 0; t + 2 <= options.max_steps; ++t) {
    dynamics.step_into(b, c);
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) change = std::max(change, std::abs(c[i] - a[i]));
    if (change <= options.tolerance) {
      return Horizon{t + 2, ColorDistribution(std::move(c)), ColorDistribution(std::move(b))};
    }
    std::swap(a, b);
    std::swap(b, c);
  }
  throw Error(ErrorKind::SlowMixing, "no same-parity convergence within " + std::to_string(options.max_steps) +
                                         " steps (tolerance " + std::to_string(options.tolerance) + ")");
}

std::vector<std::vector<double>> solve_u(const SignedDigraph& graph, const Decomposition& decomposition,
                                         std::span<const CouplingTarget> targets, CouplingMode mode,
                                         const SolveOptions& options) {
  const auto& xs = decomposition.non_sink;
  const std::size_t nx = xs.size();
  const std::size_t m = targets.size();
  std::vector<std::vector<double>> u(m, std::vector<double>(nx, 0.0));
  if (nx == 0 || m == 0) return u;

  std::vector<std::size_t> target_of_sink(decomposition.sink_count(), Decomposition::npos);
  for (std::size_t r = 0; r < m; ++r) {
    const auto& t = targets[r];
    if (t.balance == nullptr || t.balance->kind == BalanceKind::StrictlyUnbalanced) {
      throw Error(ErrorKind::WrongKind, "coupling needs a balanced or anti-balanced sink");
    }
    target_of_sink.at(t.sink) = r;
  }

  // rhs[r][i] = (P_Y 1hat_{Z_r})(i)
  std::vector<std::vector<double>> rhs(m, std::vector<double>(nx, 0.0));
  for (std::size_t i = 0; i < nx; ++i) {
    const NodeId v = xs[i];
    const double d = graph.total_out_weight(v);
    for (const OutEdge& e : graph.out_edges(v)) {
      const std::size_t sink = decomposition.sink_of[e.target];
      if (sink == Decomposition::npos) continue;
      const std::size_t r = target_of_sink[sink];
      if (r == Decomposition::npos) continue;
      const double side = targets[r].balance->sign_at(decomposition.local_index[e.target]);
      rhs[r][i] += e.sign * e.weight / d * side;
    }
  }

  const double s = mode == CouplingMode::Balanced ? 1.0 : -1.0;
  using Method = SolveOptions::Method;
  bool converged = false;
  if (options.method != Method::Direct) {
    const std::size_t cap = options.max_iterations ? options.max_iterations : default_cap(nx);
    std::vector<std::vector<double>> next = rhs;
    for (std::size_t it = 0; it < cap && !converged; ++it) {
      double change = 0.0;
      for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t i = 0; i < nx; ++i) {
          const NodeId v = xs[i];
          double acc = 0.0;
          for (const OutEdge& e : graph.out_edges(v)) {
            if (decomposition.in_non_sink(e.target)) {
              acc += e.sign * e.weight * u[r][decomposition.local_index[e.target]];
            }
          }
          next[r][i] = rhs[r][i] + s * acc / graph.total_out_weight(v);
          change = std::max(change, std::abs(next[r][i] - u[r][i]));
        }
      }
      u.swap(next);
      converged = change <= options.tolerance;
    }
  }

  const bool try_direct = options.method == Method::Direct ||
                          (options.method == Method::Auto && !converged && nx <= options.direct_limit);
  if (try_direct) {
    const auto n = static_cast<Eigen::Index>(nx);
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
    for (std::size_t i = 0; i < nx; ++i) {
      const NodeId v = xs[i];
      for (const OutEdge& e : graph.out_edges(v)) {
        if (decomposition.in_non_sink(e.target)) {
          a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(decomposition.local_index[e.target])) -=
              s * e.sign * e.weight / graph.total_out_weight(v);
        }
      }
    }
    Eigen::MatrixXd b(n, static_cast<Eigen::Index>(m));
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t i = 0; i < nx; ++i) b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(r)) = rhs[r][i];
    const Eigen::MatrixXd sol = a.partialPivLu().solve(b);
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t i = 0; i < nx; ++i) u[r][i] = sol(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(r));
    converged = sol.allFinite();
  }

  if (!converged) {
    throw Error(ErrorKind::NoConvergence,
                "coupling solve over " + std::to_string(nx) + " non-sink nodes did not converge");
  }
  return u;
}

std::vector<double> solve_u(const SignedDigraph& graph, const Decomposition& decomposition, std::size_t sink,
                            const BalanceClass& balance, CouplingMode mode, const SolveOptions& options) {
  const CouplingTarget target{sink, &balance};
  return std::move(solve_u(graph, decomposition, std::span(&target, 1), mode, options).front());
}

SinkAnalysis analyze_sinks(const SignedDigraph& graph, const SolveOptions& options) {
  SinkAnalysis out;
  out.decomposition = decompose(graph);
  const Decomposition& dec = out.decomposition;

  std::vector<CouplingTarget> balanced, anti;
  out.sinks.resize(dec.sink_count());
  for (std::size_t z = 0; z < dec.sink_count(); ++z) {
    auto nodes = dec.sink_nodes(z);
    if (!is_aperiodic(nodes, graph)) {
      throw Error(ErrorKind::PeriodicComponent, "sink component containing node " + std::to_string(nodes.front()) +
                                                    " has period " + std::to_string(period(nodes, graph)));
    }
    SinkInfo& info = out.sinks[z];
    info.sink = z;
    info.balance = classify_balance(nodes, graph);
    if (info.balance.kind == BalanceKind::StrictlyUnbalanced) continue;
    info.pi = stationary(nodes, graph, options);
  }
  for (SinkInfo& info : out.sinks) {
    if (info.balance.kind == BalanceKind::Balanced) balanced.push_back({info.sink, &info.balance});
    if (info.balance.kind == BalanceKind::AntiBalanced) anti.push_back({info.sink, &info.balance});
  }
  auto ub = solve_u(graph, dec, balanced, CouplingMode::Balanced, options);
  for (std::size_t r = 0; r < balanced.size(); ++r) out.sinks[balanced[r].sink].coupling = std::move(ub[r]);
  auto uu = solve_u(graph, dec, anti, CouplingMode::AntiBalanced, options);
  for (std::size_t r = 0; r < anti.size(); ++r) out.sinks[anti[r].sink].coupling = std::move(uu[r]);
  return out;
}

const char* to_string(SteadyKind kind) noexcept {
  switch (kind) {
    case SteadyKind::Fixed: return "Fixed";
    case SteadyKind::Oscillating: return "Oscillating";
    case SteadyKind::UniformHalf: return "UniformHalf";
  }
  return "Unknown";
}

ColorDistribution SteadyState::average() const {
  std::vector<double> v(even.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = 0.5 * (even[i] + odd[i]);
  return ColorDistribution(std::move(v));
}

SteadyState steady_state(const SinkAnalysis& analysis, const ColorDistribution& x0) {
  const Decomposition& dec = analysis.decomposition;
  const std::size_t n = dec.scc_id.size();
  if (x0.size() != n) throw Error(ErrorKind::InvalidArgument, "initial distribution has the wrong length");

  // x_t = 1/2 + P^t (x0 - 1/2), since P 1 + 2 g^- = 1. Only the sink blocks of
  // P^t survive, so each sink contributes independently.
  std::vector<double> even(n, 0.5), odd(n, 0.5);
  SteadyState out;
  bool oscillating = false;
  for (const SinkInfo& info : analysis.sinks) {
    SinkSteadyState summary{info.sink, info.balance.kind, 0.0};
    if (info.balance.kind != BalanceKind::StrictlyUnbalanced) {
      const auto& nodes = info.balance.nodes;
      double drive = 0.0;
      for (std::size_t k = 0; k < nodes.size(); ++k) drive += info.signed_pi(k) * (x0[nodes[k]] - 0.5);
      summary.drive = drive;
      const bool anti = info.balance.kind == BalanceKind::AntiBalanced;
      oscillating = oscillating || anti;
      for (std::size_t k = 0; k < nodes.size(); ++k) {
        const double shift = info.balance.sign_at(k) * drive;
        even[nodes[k]] += shift;
        odd[nodes[k]] += anti ? -shift : shift;
      }
      for (std::size_t i = 0; i < dec.non_sink.size(); ++i) {
        const double shift = info.coupling[i] * drive;
        even[dec.non_sink[i]] += anti ? -shift : shift;
        odd[dec.non_sink[i]] += shift;
      }
    }
    out.sinks.push_back(summary);
  }

  for (std::size_t i = 0; i < n; ++i) {
    even[i] = clamp_unit(even[i], kSteadySlack, "steady state");
    odd[i] = clamp_unit(odd[i], kSteadySlack, "steady state");
  }
  if (oscillating) {
    out.kind = SteadyKind::Oscillating;
  } else {
    const bool half = std::all_of(even.begin(), even.end(), [](double v) { return v == 0.5; });
    out.kind = half ? SteadyKind::UniformHalf : SteadyKind::Fixed;
  }
  out.even = ColorDistribution(std::move(even));
  out.odd = ColorDistribution(std::move(odd));
  return out;
}

SteadyState steady_state(const SignedDigraph& graph, const ColorDistribution& x0) {
  return steady_state(analyze_sinks(graph), x0);
}

double oscillation_amplitude(const SteadyState& steady) {
  if (steady.kind != SteadyKind::Oscillating) {
    throw Error(ErrorKind::WrongKind, std::string("oscillation amplitude of a ") + to_string(steady.kind) + " state");
  }
  return std::abs(steady.odd.total() - steady.even.total()) / 2.0;
}

}  // namespace signvote
