#include "sdnadmit/product.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace sdnadmit {

namespace {

bool resource_passes_filter(const PhysicalNetwork& net, ResourceIdx r, std::int64_t demand,
                            const ProductOptions& options) {
  if (!options.capacity_filter) return true;
  const auto& p = options.params;
  return static_cast<double>(demand) * 3.0 * static_cast<double>(p.k) * p.phi <=
         static_cast<double>(net.capacity(r));
}

}  // namespace

std::pair<ProductNetwork, ProductRequest> build_product(const PhysicalNetwork& net,
                                                        const Request& req,
                                                        const std::vector<double>& weights,
                                                        const ProductOptions& options) {
  if (static_cast<int>(weights.size()) != net.resource_count())
    throw Error(Errc::contract_violation, "weight vector does not cover every resource");

  ProductNetwork pn;
  pn.net = &net;
  pn.req = &req;
  pn.layers = static_cast<int>(req.pr.edges.size());
  const int nv = pn.vertex_count();
  pn.out.assign(static_cast<std::size_t>(nv), {});

  // rank product vertices by (node id, pr-edge id) for deterministic searches
  {
    std::vector<int> idx(static_cast<std::size_t>(nv));
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
      const auto& na = net.node(pn.node_of(a)).id;
      const auto& nb = net.node(pn.node_of(b)).id;
      if (na != nb) return na < nb;
      return req.pr.edges[static_cast<std::size_t>(pn.layer_of(a))].id <
             req.pr.edges[static_cast<std::size_t>(pn.layer_of(b))].id;
    });
    pn.order_rank.assign(static_cast<std::size_t>(nv), 0);
    for (int r = 0; r < nv; ++r) pn.order_rank[static_cast<std::size_t>(idx[static_cast<std::size_t>(r)])] = r;
  }

  auto push_arc = [&](ProductArc a) {
    a.weight = weights[static_cast<std::size_t>(a.resource)];
    pn.out[static_cast<std::size_t>(a.from)].push_back(static_cast<int>(pn.arcs.size()));
    pn.arcs.push_back(a);
  };

  // routing arcs: two directions per allowed undirected link, per layer
  for (int layer = 0; layer < pn.layers; ++layer) {
    const auto& y = req.pr.edges[static_cast<std::size_t>(layer)];
    for (EdgeIdx ei : y.allowed_edges) {
      const ResourceIdx r = net.edge_resource(ei);
      if (!resource_passes_filter(net, r, y.demand, options)) continue;
      const auto& e = net.edge(ei);
      ProductArc a;
      a.processing = false;
      a.resource = r;
      a.component = layer;
      a.demand = y.demand;
      a.from = pn.vertex_of(e.u, layer);
      a.to = pn.vertex_of(e.v, layer);
      push_arc(a);
      std::swap(a.from, a.to);
      push_arc(a);
    }
  }

  // processing arcs: switch from an incoming to an outgoing layer of a shared
  // pr-vertex, at a node allowed to run the action
  for (int x = 0; x < static_cast<int>(req.pr.vertices.size()); ++x) {
    const auto& vert = req.pr.vertices[static_cast<std::size_t>(x)];
    const auto& incoming = req.pr.in[static_cast<std::size_t>(x)];
    const auto& outgoing = req.pr.out[static_cast<std::size_t>(x)];
    if (incoming.empty() || outgoing.empty()) continue;
    for (int yin : incoming) {
      for (int yout : outgoing) {
        for (NodeIdx v : vert.allowed_nodes) {
          const ResourceIdx r = net.node_resource(v);
          if (!resource_passes_filter(net, r, vert.demand, options)) continue;
          ProductArc a;
          a.processing = true;
          a.resource = r;
          a.component = x;
          a.demand = vert.demand;
          a.from = pn.vertex_of(v, yin);
          a.to = pn.vertex_of(v, yout);
          push_arc(a);
        }
      }
    }
  }

  ProductRequest pr;
  const auto& src = req.pr.vertices[static_cast<std::size_t>(req.pr.source)];
  const auto& snk = req.pr.vertices[static_cast<std::size_t>(req.pr.sink)];
  for (NodeIdx v : src.allowed_nodes)
    for (int y : req.pr.out[static_cast<std::size_t>(req.pr.source)])
      pr.sources.push_back(pn.vertex_of(v, y));
  for (NodeIdx v : snk.allowed_nodes)
    for (int y : req.pr.in[static_cast<std::size_t>(req.pr.sink)])
      pr.sinks.push_back(pn.vertex_of(v, y));
  auto by_rank = [&](int a, int b) {
    return pn.order_rank[static_cast<std::size_t>(a)] < pn.order_rank[static_cast<std::size_t>(b)];
  };
  std::sort(pr.sources.begin(), pr.sources.end(), by_rank);
  std::sort(pr.sinks.begin(), pr.sinks.end(), by_rank);

  return {std::move(pn), std::move(pr)};
}

Realization fold(const ProductNetwork& pn, const ProductRequest& pr, const ProductPath& path) {
  const auto contains = [](const std::vector<int>& v, int x) {
    return std::find(v.begin(), v.end(), x) != v.end();
  };
  if (path.start < 0 || path.start >= pn.vertex_count())
    throw Error(Errc::contract_violation, "product path start out of range");
  if (!contains(pr.sources, path.start))
    throw Error(Errc::contract_violation, "product path does not start in the source set");

  const Request& req = *pn.req;
  Realization p;
  int current = path.start;
  int layer = pn.layer_of(current);
  p.walk_nodes.push_back(pn.node_of(current));
  p.pr_edges.push_back(layer);
  p.pr_vertices.push_back(req.pr.edges[static_cast<std::size_t>(layer)].tail);
  p.segmentation.push_back(0);

  std::set<int> visited{current};
  for (int ai : path.arcs) {
    if (ai < 0 || ai >= static_cast<int>(pn.arcs.size()))
      throw Error(Errc::contract_violation, "arc index out of range");
    const ProductArc& a = pn.arcs[static_cast<std::size_t>(ai)];
    if (a.from != current)
      throw Error(Errc::contract_violation, "product path arcs are not contiguous");
    if (!visited.insert(a.to).second)
      throw Error(Errc::contract_violation, "product path is not simple");
    if (a.processing) {
      p.segmentation.push_back(static_cast<int>(p.walk_edges.size()));
      p.pr_vertices.push_back(a.component);
      layer = pn.layer_of(a.to);
      p.pr_edges.push_back(layer);
    } else {
      p.walk_edges.push_back(a.resource - pn.net->node_count());
      p.walk_nodes.push_back(pn.node_of(a.to));
    }
    current = a.to;
  }
  if (!contains(pr.sinks, current))
    throw Error(Errc::contract_violation, "product path does not end in the sink set");
  p.pr_vertices.push_back(req.pr.edges[static_cast<std::size_t>(layer)].head);
  p.segmentation.push_back(static_cast<int>(p.walk_edges.size()));
  return p;
}

std::optional<Error> validate_realization(const PhysicalNetwork& net, const Request& req,
                                          const Realization& p) {
  const std::size_t segments = p.pr_edges.size();
  if (segments == 0 || p.pr_vertices.size() != segments + 1 ||
      p.segmentation.size() != segments + 1)
    return Error(Errc::contract_violation, "realization has inconsistent pr-path sizes");
  if (p.walk_nodes.size() != p.walk_edges.size() + 1)
    return Error(Errc::contract_violation, "walk node/edge counts disagree");

  for (NodeIdx v : p.walk_nodes)
    if (v < 0 || v >= net.node_count())
      return Error(Errc::contract_violation, "walk references unknown node");
  for (EdgeIdx e : p.walk_edges)
    if (e < 0 || e >= net.edge_count())
      return Error(Errc::contract_violation, "walk references unknown edge");
  for (std::size_t j = 0; j < p.walk_edges.size(); ++j) {
    const auto& e = net.edge(p.walk_edges[j]);
    const NodeIdx a = p.walk_nodes[j], b = p.walk_nodes[j + 1];
    if (!((e.u == a && e.v == b) || (e.u == b && e.v == a)))
      return Error(Errc::contract_violation, "walk edge " + e.id + " does not join its endpoints");
  }

  if (p.segmentation.front() != 0 ||
      p.segmentation.back() != static_cast<int>(p.walk_edges.size()))
    return Error(Errc::contract_violation, "segmentation must span the whole walk");
  for (std::size_t i = 1; i < p.segmentation.size(); ++i)
    if (p.segmentation[i] < p.segmentation[i - 1])
      return Error(Errc::contract_violation, "segmentation must be nondecreasing");

  // realized pr-path must be a simple source-sink path of the pr-graph
  const auto& g = req.pr;
  if (p.pr_vertices.front() != g.source || p.pr_vertices.back() != g.sink)
    return Error(Errc::contract_violation, "pr-path must run from source to sink");
  std::set<int> seen_vertices;
  for (int x : p.pr_vertices) {
    if (x < 0 || x >= static_cast<int>(g.vertices.size()))
      return Error(Errc::contract_violation, "pr-path references unknown vertex");
    if (!seen_vertices.insert(x).second)
      return Error(Errc::contract_violation, "pr-path is not simple");
  }
  for (std::size_t i = 0; i < segments; ++i) {
    const int ei = p.pr_edges[i];
    if (ei < 0 || ei >= static_cast<int>(g.edges.size()))
      return Error(Errc::contract_violation, "pr-path references unknown edge");
    const auto& e = g.edges[static_cast<std::size_t>(ei)];
    if (e.tail != p.pr_vertices[i] || e.head != p.pr_vertices[i + 1])
      return Error(Errc::contract_violation, "pr-edge " + e.id + " does not join pr-path vertices");
  }

  // placements and per-segment link restrictions
  for (std::size_t i = 0; i < p.pr_vertices.size(); ++i) {
    const auto& vert = g.vertices[static_cast<std::size_t>(p.pr_vertices[i])];
    const NodeIdx at = p.walk_nodes[static_cast<std::size_t>(p.segmentation[i])];
    if (!std::binary_search(vert.allowed_nodes.begin(), vert.allowed_nodes.end(), at))
      return Error(Errc::contract_violation,
                   "pr-vertex " + vert.id + " placed at disallowed node " + net.node(at).id);
  }
  for (std::size_t i = 0; i < segments; ++i) {
    const auto& y = g.edges[static_cast<std::size_t>(p.pr_edges[i])];
    const int lo = p.segmentation[i], hi = p.segmentation[i + 1];
    std::set<NodeIdx> segment_nodes;
    for (int j = lo; j <= hi; ++j)
      if (!segment_nodes.insert(p.walk_nodes[static_cast<std::size_t>(j)]).second)
        return Error(Errc::contract_violation, "segment of " + y.id + " revisits a node");
    for (int j = lo; j < hi; ++j)
      if (!std::binary_search(y.allowed_edges.begin(), y.allowed_edges.end(),
                              p.walk_edges[static_cast<std::size_t>(j)]))
        return Error(Errc::contract_violation,
                     "segment of " + y.id + " uses a disallowed link");
  }
  return std::nullopt;
}

ProductPath expand(const ProductNetwork& pn, const ProductRequest& pr, const Realization& p) {
  const Request& req = *pn.req;
  if (auto err = validate_realization(*pn.net, req, p))
    throw Error(Errc::contract_violation, err->what());

  ProductPath path;
  path.start = pn.vertex_of(p.walk_nodes.front(), p.pr_edges.front());
  if (std::find(pr.sources.begin(), pr.sources.end(), path.start) == pr.sources.end())
    throw Error(Errc::contract_violation, "realization does not start in the source set");

  auto find_arc = [&](int from, int to, bool processing, ResourceIdx resource) {
    for (int ai : pn.out[static_cast<std::size_t>(from)]) {
      const auto& a = pn.arcs[static_cast<std::size_t>(ai)];
      if (a.to == to && a.processing == processing && a.resource == resource) return ai;
    }
    throw Error(Errc::contract_violation, "realization uses an arc absent from the product network");
  };

  const std::size_t segments = p.pr_edges.size();
  for (std::size_t i = 0; i < segments; ++i) {
    const int layer = p.pr_edges[i];
    for (int j = p.segmentation[i]; j < p.segmentation[i + 1]; ++j) {
      const int from = pn.vertex_of(p.walk_nodes[static_cast<std::size_t>(j)], layer);
      const int to = pn.vertex_of(p.walk_nodes[static_cast<std::size_t>(j + 1)], layer);
      path.arcs.push_back(find_arc(
          from, to, false, pn.net->edge_resource(p.walk_edges[static_cast<std::size_t>(j)])));
    }
    if (i + 1 < segments) {
      const NodeIdx at = p.walk_nodes[static_cast<std::size_t>(p.segmentation[i + 1])];
      const int from = pn.vertex_of(at, layer);
      const int to = pn.vertex_of(at, p.pr_edges[i + 1]);
      path.arcs.push_back(find_arc(from, to, true, pn.net->node_resource(at)));
    }
  }

  const int end = path.arcs.empty() ? path.start : pn.arcs[static_cast<std::size_t>(path.arcs.back())].to;
  if (std::find(pr.sinks.begin(), pr.sinks.end(), end) == pr.sinks.end())
    throw Error(Errc::contract_violation, "realization does not end in the sink set");
  return path;
}

std::map<ResourceIdx, std::int64_t> resource_multiplicities(const PhysicalNetwork& net,
                                                            const Request& req,
                                                            const Realization& p) {
  std::map<ResourceIdx, std::int64_t> m;
  for (EdgeIdx e : p.walk_edges) ++m[net.edge_resource(e)];
  for (std::size_t i = 1; i + 1 < p.pr_vertices.size(); ++i)
    ++m[net.node_resource(p.walk_nodes[static_cast<std::size_t>(p.segmentation[i])])];
  (void)req;
  return m;
}

std::map<ResourceIdx, std::int64_t> realization_charges(const PhysicalNetwork& net,
                                                        const Request& req,
                                                        const Realization& p) {
  std::map<ResourceIdx, std::int64_t> charges;
  const std::size_t segments = p.pr_edges.size();
  for (std::size_t i = 0; i < segments; ++i) {
    const auto& y = req.pr.edges[static_cast<std::size_t>(p.pr_edges[i])];
    for (int j = p.segmentation[i]; j < p.segmentation[i + 1]; ++j)
      charges[net.edge_resource(p.walk_edges[static_cast<std::size_t>(j)])] += y.demand;
  }
  for (std::size_t i = 1; i + 1 < p.pr_vertices.size(); ++i) {
    const auto& x = req.pr.vertices[static_cast<std::size_t>(p.pr_vertices[i])];
    charges[net.node_resource(p.walk_nodes[static_cast<std::size_t>(p.segmentation[i])])] +=
        x.demand;
  }
  return charges;
}

double realization_weight(const PhysicalNetwork& net, const Request& req, const Realization& p,
                          const std::vector<double>& weights) {
  (void)req;
  double total = 0.0;
  for (EdgeIdx e : p.walk_edges) total += weights[static_cast<std::size_t>(net.edge_resource(e))];
  for (std::size_t i = 1; i + 1 < p.pr_vertices.size(); ++i)
    total += weights[static_cast<std::size_t>(
        net.node_resource(p.walk_nodes[static_cast<std::size_t>(p.segmentation[i])]))];
  return total;
}

double arc_weight_sum(const ProductNetwork& pn, const ProductPath& path) {
  double total = 0.0;
  for (int ai : path.arcs) total += pn.arcs[static_cast<std::size_t>(ai)].weight;
  return total;
}

}  // namespace sdnadmit
