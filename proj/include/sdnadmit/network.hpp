#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sdnadmit/errors.hpp"

namespace sdnadmit {

using NodeIdx = int;
using EdgeIdx = int;
// Resources are nodes followed by edges in one index space; flow accounting,
// weights and capacity checks are all keyed by ResourceIdx.
using ResourceIdx = int;

struct NodeDef {
  std::string id;
  std::int64_t capacity = 1;
};

struct EdgeDef {
  std::string id;
  NodeIdx u = -1;
  NodeIdx v = -1;
  std::int64_t capacity = 1;
};

/*
  PhysicalNetwork — static undirected multigraph of servers and links.

  Capacities are positive integers. Parallel edges are allowed and keep
  distinct ids; node and edge ids must not collide so a single resource-id
  namespace works for weights and flows.
*/
class PhysicalNetwork {
public:
  static PhysicalNetwork build(std::vector<NodeDef> nodes, std::vector<EdgeDef> edges);

  int node_count() const { return static_cast<int>(nodes_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int resource_count() const { return node_count() + edge_count(); }

  const NodeDef& node(NodeIdx i) const { return nodes_[static_cast<std::size_t>(i)]; }
  const EdgeDef& edge(EdgeIdx i) const { return edges_[static_cast<std::size_t>(i)]; }

  std::optional<NodeIdx> node_index(std::string_view id) const;
  std::optional<EdgeIdx> edge_index(std::string_view id) const;

  ResourceIdx node_resource(NodeIdx i) const { return i; }
  ResourceIdx edge_resource(EdgeIdx i) const { return node_count() + i; }
  bool is_node_resource(ResourceIdx r) const { return r < node_count(); }
  std::optional<ResourceIdx> resource_index(std::string_view id) const;

  std::int64_t capacity(ResourceIdx r) const;
  const std::string& resource_id(ResourceIdx r) const;
  std::int64_t min_capacity() const { return min_capacity_; }

  // incident edges per node, as (edge index, opposite endpoint)
  const std::vector<std::pair<EdgeIdx, NodeIdx>>& incident(NodeIdx i) const {
    return incident_[static_cast<std::size_t>(i)];
  }

private:
  std::vector<NodeDef> nodes_;
  std::vector<EdgeDef> edges_;
  std::vector<std::vector<std::pair<EdgeIdx, NodeIdx>>> incident_;
  std::int64_t min_capacity_ = 0;
};

/*
  WeightParams — the run-wide constants behind the exponential weights.

  phi = log2(3 * p_max * b_max + 1), so that a fully loaded resource weighs
  exactly 3 * b_max and an empty one weighs zero.
*/
struct WeightParams {
  std::int64_t p_max = 1;
  std::int64_t b_max = 1;
  std::int64_t k = 1;
  double phi = 2.0;

  static WeightParams make(std::int64_t p_max, std::int64_t b_max, std::int64_t k);
};

/*
  LoadState — per-resource flow in demand units.

  Demands are integers, so flows stay exact; load(z) = f(z)/c_z is only formed
  in floating point when a weight is needed. add_flow rejects a negative
  result (accounting bug) and a capacity overshoot (admission bug); both are
  internal errors, not input errors.
*/
class LoadState {
public:
  explicit LoadState(const PhysicalNetwork& net);

  const PhysicalNetwork& net() const { return *net_; }

  std::int64_t flow(ResourceIdx r) const { return flow_[static_cast<std::size_t>(r)]; }
  double load(ResourceIdx r) const;

  void add_flow(ResourceIdx r, std::int64_t amount);

  // order-independent digest of the flow vector; used by atomicity checks
  std::uint64_t digest() const;

  const std::vector<std::int64_t>& flows() const { return flow_; }

private:
  const PhysicalNetwork* net_;
  std::vector<std::int64_t> flow_;
};

// (1/p_max) * (2^(load*phi) - 1); strictly increasing and convex in load
double exp_load_value(double load, const WeightParams& params);

double exp_load(const LoadState& state, const WeightParams& params, ResourceIdx r);
// id-based lookup; throws Errc::unknown_resource
double exp_load(const LoadState& state, const WeightParams& params, std::string_view resource_id);
// weights for all resources at once, indexed by ResourceIdx
std::vector<double> exp_load_all(const LoadState& state, const WeightParams& params);

// true iff demand <= min_z c_z / (3 k phi)
bool check_small_demand(const PhysicalNetwork& net, const WeightParams& params,
                        std::int64_t demand);

}  // namespace sdnadmit
