#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "sdnadmit/network.hpp"
#include "sdnadmit/request.hpp"

namespace sdnadmit {

/*
  Product network — the layered search graph for one request.

  One layer per pr-edge; a product vertex is (physical node, layer). Routing
  arcs move along allowed physical links inside a layer; processing arcs jump
  between two layers that share a pr-vertex, at a node allowed to run that
  action. Simple source-to-sink paths here correspond one-to-one with valid
  realizations (fold/expand below), and the correspondence preserves weight.
*/
struct ProductArc {
  int from = -1;
  int to = -1;
  bool processing = false;
  ResourceIdx resource = -1;  // physical edge (routing) or node (processing)
  int component = -1;         // pr-edge index (routing) or pr-vertex index (processing)
  std::int64_t demand = 0;    // request demand of that component
  double weight = 0.0;
};

struct ProductNetwork {
  const PhysicalNetwork* net = nullptr;
  const Request* req = nullptr;
  int layers = 0;  // == number of pr-edges
  std::vector<ProductArc> arcs;
  std::vector<std::vector<int>> out;  // arc indices by source vertex
  // rank of each product vertex under lexicographic (node id, pr-edge id);
  // used for deterministic tie-breaking in searches
  std::vector<int> order_rank;

  int vertex_count() const { return net->node_count() * layers; }
  int vertex_of(NodeIdx node, int layer) const { return node * layers + layer; }
  NodeIdx node_of(int pv) const { return pv / layers; }
  int layer_of(int pv) const { return pv % layers; }
};

struct ProductRequest {
  std::vector<int> sources;  // product vertices, sorted by order_rank
  std::vector<int> sinks;
};

struct ProductOptions {
  // When set, arcs whose resource cannot host even one feasible path
  // (capacity < demand * 3 * k * phi) are dropped, mirroring the admission
  // rule. Baselines build without the filter.
  bool capacity_filter = true;
  WeightParams params;
};

std::pair<ProductNetwork, ProductRequest> build_product(const PhysicalNetwork& net,
                                                        const Request& req,
                                                        const std::vector<double>& weights,
                                                        const ProductOptions& options);

/*
  Realization — a walk in the physical network plus the segmentation that
  pins each pr-path vertex to a walk position. Segments may be empty; the
  whole walk may be a single node.
*/
struct Realization {
  std::vector<NodeIdx> walk_nodes;  // size = walk_edges.size() + 1
  std::vector<EdgeIdx> walk_edges;
  std::vector<int> segmentation;  // size = pr_vertices.size(); maps to walk positions
  std::vector<int> pr_vertices;   // realized pr-path, vertex indices (source..sink)
  std::vector<int> pr_edges;      // realized pr-path, edge indices

  bool operator==(const Realization&) const = default;
};

struct ProductPath {
  int start = -1;          // product vertex; meaningful even when arcs is empty
  std::vector<int> arcs;   // arc indices into ProductNetwork::arcs
};

// contract the product path to a walk + segmentation; throws contract_violation
Realization fold(const ProductNetwork& pn, const ProductRequest& pr, const ProductPath& path);

// inverse of fold; validates the realization first; throws contract_violation
ProductPath expand(const ProductNetwork& pn, const ProductRequest& pr, const Realization& p);

// checks the realization against the request: walk consistency, segmentation
// shape, allowed links per segment, allowed nodes per placement, per-segment
// simplicity. Returns the first violation, if any.
std::optional<Error> validate_realization(const PhysicalNetwork& net, const Request& req,
                                          const Realization& p);

// m_p(z): edge traversals and action placements per resource
std::map<ResourceIdx, std::int64_t> resource_multiplicities(const PhysicalNetwork& net,
                                                            const Request& req,
                                                            const Realization& p);

// m_p(z) * demand(component) per resource: the flow this realization occupies
std::map<ResourceIdx, std::int64_t> realization_charges(const PhysicalNetwork& net,
                                                        const Request& req,
                                                        const Realization& p);

// sum over traversed edges and action placements of weight * multiplicity
double realization_weight(const PhysicalNetwork& net, const Request& req, const Realization& p,
                          const std::vector<double>& weights);

double arc_weight_sum(const ProductNetwork& pn, const ProductPath& path);

}  // namespace sdnadmit
