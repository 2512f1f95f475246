#include "sdnadmit/oracle.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace sdnadmit {

LightestPath lightest_st_path(const ProductNetwork& pn, const ProductRequest& pr,
                              const std::vector<double>& arc_cost) {
  const int nv = pn.vertex_count();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(static_cast<std::size_t>(nv), inf);
  std::vector<int> pred_arc(static_cast<std::size_t>(nv), -1);
  std::vector<char> done(static_cast<std::size_t>(nv), 0);

  using Entry = std::tuple<double, int, int>;  // (dist, order rank, vertex)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> queue;
  for (int s : pr.sources) {
    dist[static_cast<std::size_t>(s)] = 0.0;
    queue.emplace(0.0, pn.order_rank[static_cast<std::size_t>(s)], s);
  }

  while (!queue.empty()) {
    auto [d, rank, v] = queue.top();
    queue.pop();
    (void)rank;
    if (done[static_cast<std::size_t>(v)]) continue;
    done[static_cast<std::size_t>(v)] = 1;
    for (int ai : pn.out[static_cast<std::size_t>(v)]) {
      const auto& a = pn.arcs[static_cast<std::size_t>(ai)];
      const double nd = d + arc_cost[static_cast<std::size_t>(ai)];
      if (nd < dist[static_cast<std::size_t>(a.to)]) {
        dist[static_cast<std::size_t>(a.to)] = nd;
        pred_arc[static_cast<std::size_t>(a.to)] = ai;
        queue.emplace(nd, pn.order_rank[static_cast<std::size_t>(a.to)], a.to);
      }
    }
  }

  LightestPath best;
  int best_sink = -1;
  for (int t : pr.sinks) {
    const double d = dist[static_cast<std::size_t>(t)];
    if (d == inf) continue;
    if (!best.found || d < best.weight ||
        (d == best.weight && pn.order_rank[static_cast<std::size_t>(t)] <
                                 pn.order_rank[static_cast<std::size_t>(best_sink)])) {
      best.found = true;
      best.weight = d;
      best_sink = t;
    }
  }
  if (!best.found) return best;

  std::vector<int> arcs;
  int v = best_sink;
  while (pred_arc[static_cast<std::size_t>(v)] >= 0) {
    const int ai = pred_arc[static_cast<std::size_t>(v)];
    arcs.push_back(ai);
    v = pn.arcs[static_cast<std::size_t>(ai)].from;
  }
  std::reverse(arcs.begin(), arcs.end());
  best.path.start = v;
  best.path.arcs = std::move(arcs);
  return best;
}

std::optional<Realization> find_realization(const PhysicalNetwork& net, const Request& req,
                                            const LoadState& state, const WeightParams& params) {
  const auto weights = exp_load_all(state, params);
  ProductOptions options;
  options.capacity_filter = true;
  options.params = params;
  auto [pn, pr] = build_product(net, req, weights, options);

  std::vector<double> arc_cost(pn.arcs.size());
  for (std::size_t i = 0; i < pn.arcs.size(); ++i) arc_cost[i] = pn.arcs[i].weight;

  const auto best = lightest_st_path(pn, pr, arc_cost);
  if (!best.found) return std::nullopt;
  if (best.weight > static_cast<double>(req.benefit)) return std::nullopt;
  return fold(pn, pr, best.path);
}

namespace {

struct Enumerator {
  const ProductNetwork& pn;
  const ProductRequest& pr;
  double bound;
  std::size_t path_cap;
  std::vector<char> on_path;
  std::vector<int> arc_stack;
  std::vector<EnumeratedRealization> results;

  void record(int start, double weight) {
    if (results.size() >= path_cap)
      throw Error(Errc::enumeration_explosion,
                  "more than " + std::to_string(path_cap) + " simple source-sink paths");
    ProductPath path{start, arc_stack};
    EnumeratedRealization out;
    out.realization = fold(pn, pr, path);
    out.weight = weight;
    out.path = std::move(path);
    results.push_back(std::move(out));
  }

  void dfs(int start, int v, double weight) {
    if (std::find(pr.sinks.begin(), pr.sinks.end(), v) != pr.sinks.end())
      record(start, weight);
    for (int ai : pn.out[static_cast<std::size_t>(v)]) {
      const auto& a = pn.arcs[static_cast<std::size_t>(ai)];
      if (on_path[static_cast<std::size_t>(a.to)]) continue;
      const double nw = weight + a.weight;
      if (nw > bound) continue;  // costs are nonnegative, safe to prune
      on_path[static_cast<std::size_t>(a.to)] = 1;
      arc_stack.push_back(ai);
      dfs(start, a.to, nw);
      arc_stack.pop_back();
      on_path[static_cast<std::size_t>(a.to)] = 0;
    }
  }
};

}  // namespace

std::vector<EnumeratedRealization> enumerate_realizations(
    const PhysicalNetwork& net, const Request& req, const std::vector<double>& weights,
    double bound, const ProductOptions& options, std::size_t path_cap) {
  auto [pn, pr] = build_product(net, req, weights, options);
  Enumerator en{pn, pr, bound, path_cap, {}, {}, {}};
  en.on_path.assign(static_cast<std::size_t>(pn.vertex_count()), 0);
  for (int s : pr.sources) {
    if (0.0 > bound) break;
    en.on_path[static_cast<std::size_t>(s)] = 1;
    en.dfs(s, s, 0.0);
    en.on_path[static_cast<std::size_t>(s)] = 0;
  }
  return en.results;
}

}  // namespace sdnadmit
