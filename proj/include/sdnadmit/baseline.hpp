#pragma once

#include <vector>

#include "sdnadmit/oracle.hpp"
#include "sdnadmit/trace.hpp"

namespace sdnadmit {

/*
  Per-step offline baselines.

  opt_fractional solves the fractional packing relaxation over the active
  set: each request may be served partially for prorated benefit, split
  across any mix of its valid realizations, subject to exact capacities.
  Solved by column generation — path columns priced with Dijkstra runs on
  each request's product network — which reaches the same optimum as the
  arc-flow formulation while keeping the master LP tiny.

  opt_integral_bruteforce is the exact all-or-nothing optimum over the same
  active set; exponential, only for cross-checks on tiny instances.
*/
double opt_fractional(const PhysicalNetwork& net, const std::vector<const Request*>& active);

double opt_integral_bruteforce(const PhysicalNetwork& net,
                               const std::vector<const Request*>& active,
                               std::size_t path_cap = 10000,
                               std::size_t node_cap = 4000000);

/*
  Adversarial family for the standby model: a path network where cheap
  long-span requests arrive first and geometrically better, shorter ones
  follow; after a quiet stretch everything departs at once, so standby never
  pays off. The benefit schedule is a reconstruction of the nested-interval
  idea, not a calibrated constant; the harness only reads the ratio trend.
*/
struct LowerBoundParams {
  int n = 8;                 // nodes on the path; power of two, >= 2
  std::int64_t b_max = 0;    // top benefit; 0 means n
  std::uint64_t quiet = 64;  // event-free steps before the mass departure
  int repeat = 0;            // copies per level; 0 picks a scale-aware default
};

GeneratedInstance gen_lower_bound_trace(const LowerBoundParams& params);

}  // namespace sdnadmit
