#include "signvote/compare.hpp"

#include <algorithm>
#include <cmath>

#include "signvote/error.hpp"

namespace signvote {

CompareResult compare(const SignedDigraph& graph, const CompareOptions& options) {
  const std::size_t n = graph.node_count();
  CompareResult out;
  out.options = options;

  std::optional<SinkAnalysis> analysis;
  try {
    analysis = analyze_sinks(graph);
  } catch (const Error& e) {
    // short-term objectives do not need aperiodic sinks
    if (e.kind() != ErrorKind::PeriodicComponent) throw;
    if (options.objective == Objective::LongTerm || options.objective == Objective::Oscillation) throw;
  }

  SeedSet svim;
  switch (options.objective) {
    case Objective::Instant:
      out.contribution = contribution_instant(graph, options.t);
      svim = select_top(out.contribution, options.k);
      break;
    case Objective::Average:
      out.contribution = contribution_average(graph, options.t);
      svim = select_top(out.contribution, options.k);
      break;
    case Objective::LongTerm:
      out.contribution = contribution_longterm(*analysis);
      svim = select_top(out.contribution, options.k);
      break;
    case Objective::Oscillation:
      out.contribution = contribution_longterm(*analysis);
      svim = oscillation_seeds(*analysis, options.k);
      break;
  }

  const VoterDynamics dyn(graph);
  auto evaluate = [&](MethodResult& r, const ColorDistribution& x0) {
    r.exact = dyn.totals(x0, options.t);
    if (!analysis) return;
    const SteadyState s = steady_state(*analysis, x0);
    r.steady = s.average_total();
    if (s.kind == SteadyKind::Oscillating) r.amplitude = oscillation_amplitude(s);
  };

  MethodResult first{"svim", svim, {}, {}, {}, {}};
  evaluate(first, ColorDistribution::indicator(n, first.seeds.nodes));
  out.methods.push_back(std::move(first));

  for (Heuristic h : {Heuristic::OutDegree, Heuristic::PositiveOutDegree, Heuristic::DegreeDifference,
                      Heuristic::Random}) {
    MethodResult r{to_string(h), heuristic_seeds(graph, options.k, h, options.rng_seed, &out.contribution), {}, {},
                   {}, {}};
    if (options.objective == Objective::Oscillation) r.seeds.objective = Objective::Oscillation;
    if (h == Heuristic::Random) {
      const double share = n ? static_cast<double>(std::min(options.k, n)) / static_cast<double>(n) : 0.0;
      evaluate(r, ColorDistribution::constant(n, share));
    } else {
      evaluate(r, ColorDistribution::indicator(n, r.seeds.nodes));
    }
    out.methods.push_back(std::move(r));
  }

  if (options.trials > 0) {
    for (std::size_t m = 0; m < out.methods.size(); ++m) {
      MethodResult& r = out.methods[m];
      McOptions mc;
      mc.threads = options.threads;
      if (r.name == "random") mc.random_seed_count = std::min(options.k, n);
      // one stream per method so adding a method does not shift the others
      r.mc = mc_run(graph, r.seeds.nodes, options.t, options.trials, trial_seed(options.rng_seed, 1000 + m), mc);
    }
  }
  return out;
}

}  // namespace signvote
