#pragma once

#include <optional>
#include <vector>

#include "sdnadmit/product.hpp"

namespace sdnadmit {

struct LightestPath {
  bool found = false;
  double weight = 0.0;
  ProductPath path;
};

// Dijkstra over the product network from the whole source set to the whole
// sink set. arc_cost must be nonnegative, one entry per arc. Ties resolve by
// the lexicographic (node id, pr-edge id) vertex order, so reruns are
// bit-identical.
LightestPath lightest_st_path(const ProductNetwork& pn, const ProductRequest& pr,
                              const std::vector<double>& arc_cost);

// Finds a lightest valid realization under current exp-load weights and
// admits it when its weight is within the benefit budget. Returns nothing
// when the best path is too heavy or no path exists.
std::optional<Realization> find_realization(const PhysicalNetwork& net, const Request& req,
                                            const LoadState& state, const WeightParams& params);

struct EnumeratedRealization {
  Realization realization;
  double weight = 0.0;
  ProductPath path;
};

// Brute-force test oracle: every simple source-sink product path of weight at
// most `bound`, folded. Throws enumeration_explosion past `path_cap` results.
std::vector<EnumeratedRealization> enumerate_realizations(
    const PhysicalNetwork& net, const Request& req, const std::vector<double>& weights,
    double bound, const ProductOptions& options, std::size_t path_cap = 10000);

}  // namespace sdnadmit
