#include "sdnadmit/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace sdnadmit {

PhysicalNetwork PhysicalNetwork::build(std::vector<NodeDef> nodes, std::vector<EdgeDef> edges) {
  if (nodes.empty()) throw Error(Errc::parse_error, "network has no nodes");

  PhysicalNetwork net;
  std::map<std::string, int> seen;
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
    const auto& n = nodes[static_cast<std::size_t>(i)];
    if (n.id.empty()) throw Error(Errc::parse_error, "empty node id");
    if (n.capacity < 1) throw Error(Errc::parse_error, "node " + n.id + " capacity must be >= 1");
    if (!seen.emplace(n.id, i).second)
      throw Error(Errc::parse_error, "duplicate node id " + n.id);
  }
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    const auto& e = edges[static_cast<std::size_t>(i)];
    if (e.id.empty()) throw Error(Errc::parse_error, "empty edge id");
    if (e.capacity < 1) throw Error(Errc::parse_error, "edge " + e.id + " capacity must be >= 1");
    if (e.u < 0 || e.u >= static_cast<int>(nodes.size()) || e.v < 0 ||
        e.v >= static_cast<int>(nodes.size()))
      throw Error(Errc::parse_error, "edge " + e.id + " references unknown endpoint");
    if (e.u == e.v) throw Error(Errc::parse_error, "edge " + e.id + " is a self-loop");
    if (seen.count(e.id))
      throw Error(Errc::parse_error, "edge id " + e.id + " collides with another resource id");
    seen.emplace(e.id, i);
  }

  net.nodes_ = std::move(nodes);
  net.edges_ = std::move(edges);
  net.incident_.assign(net.nodes_.size(), {});
  for (int i = 0; i < net.edge_count(); ++i) {
    const auto& e = net.edges_[static_cast<std::size_t>(i)];
    net.incident_[static_cast<std::size_t>(e.u)].emplace_back(i, e.v);
    if (e.v != e.u) net.incident_[static_cast<std::size_t>(e.v)].emplace_back(i, e.u);
  }
  net.min_capacity_ = std::numeric_limits<std::int64_t>::max();
  for (const auto& n : net.nodes_) net.min_capacity_ = std::min(net.min_capacity_, n.capacity);
  for (const auto& e : net.edges_) net.min_capacity_ = std::min(net.min_capacity_, e.capacity);
  return net;
}

std::optional<NodeIdx> PhysicalNetwork::node_index(std::string_view id) const {
  for (int i = 0; i < node_count(); ++i)
    if (nodes_[static_cast<std::size_t>(i)].id == id) return i;
  return std::nullopt;
}

std::optional<EdgeIdx> PhysicalNetwork::edge_index(std::string_view id) const {
  for (int i = 0; i < edge_count(); ++i)
    if (edges_[static_cast<std::size_t>(i)].id == id) return i;
  return std::nullopt;
}

std::optional<ResourceIdx> PhysicalNetwork::resource_index(std::string_view id) const {
  if (auto n = node_index(id)) return node_resource(*n);
  if (auto e = edge_index(id)) return edge_resource(*e);
  return std::nullopt;
}

std::int64_t PhysicalNetwork::capacity(ResourceIdx r) const {
  if (is_node_resource(r)) return nodes_[static_cast<std::size_t>(r)].capacity;
  return edges_[static_cast<std::size_t>(r - node_count())].capacity;
}

const std::string& PhysicalNetwork::resource_id(ResourceIdx r) const {
  if (is_node_resource(r)) return nodes_[static_cast<std::size_t>(r)].id;
  return edges_[static_cast<std::size_t>(r - node_count())].id;
}

WeightParams WeightParams::make(std::int64_t p_max, std::int64_t b_max, std::int64_t k) {
  if (p_max < 1 || b_max < 1 || k < 1)
    throw Error(Errc::parse_error, "p_max, b_max and k must be positive");
  WeightParams p;
  p.p_max = p_max;
  p.b_max = b_max;
  p.k = k;
  p.phi = std::log2(3.0 * static_cast<double>(p_max) * static_cast<double>(b_max) + 1.0);
  return p;
}

LoadState::LoadState(const PhysicalNetwork& net) : net_(&net) {
  flow_.assign(static_cast<std::size_t>(net.resource_count()), 0);
}

double LoadState::load(ResourceIdx r) const {
  return static_cast<double>(flow_[static_cast<std::size_t>(r)]) /
         static_cast<double>(net_->capacity(r));
}

void LoadState::add_flow(ResourceIdx r, std::int64_t amount) {
  auto& f = flow_[static_cast<std::size_t>(r)];
  const std::int64_t next = f + amount;
  if (next < 0)
    throw Error(Errc::negative_flow,
                "flow on " + net_->resource_id(r) + " would become " + std::to_string(next));
  if (next > net_->capacity(r))
    throw Error(Errc::capacity_exceeded,
                "flow " + std::to_string(next) + " exceeds capacity " +
                    std::to_string(net_->capacity(r)) + " on " + net_->resource_id(r));
  f = next;
}

std::uint64_t LoadState::digest() const {
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (std::int64_t v : flow_) {
    auto u = static_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) {
      h ^= (u >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  return h;
}

double exp_load_value(double load, const WeightParams& params) {
  return (std::exp2(load * params.phi) - 1.0) / static_cast<double>(params.p_max);
}

double exp_load(const LoadState& state, const WeightParams& params, ResourceIdx r) {
  return exp_load_value(state.load(r), params);
}

double exp_load(const LoadState& state, const WeightParams& params, std::string_view resource_id) {
  auto r = state.net().resource_index(resource_id);
  if (!r) throw Error(Errc::unknown_resource, std::string(resource_id));
  return exp_load(state, params, *r);
}

std::vector<double> exp_load_all(const LoadState& state, const WeightParams& params) {
  std::vector<double> w(static_cast<std::size_t>(state.net().resource_count()));
  for (ResourceIdx r = 0; r < state.net().resource_count(); ++r)
    w[static_cast<std::size_t>(r)] = exp_load(state, params, r);
  return w;
}

bool check_small_demand(const PhysicalNetwork& net, const WeightParams& params,
                        std::int64_t demand) {
  const double bound = static_cast<double>(demand) * 3.0 * static_cast<double>(params.k) * params.phi;
  return bound <= static_cast<double>(net.min_capacity());
}

}  // namespace sdnadmit
