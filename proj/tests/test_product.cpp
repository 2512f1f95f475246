#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "sdnadmit/harness.hpp"
#include "sdnadmit/oracle.hpp"

using namespace sdnadmit;

namespace {

PhysicalNetwork triangle(std::int64_t capacity = 60) {
  return PhysicalNetwork::build(
      {{"u", capacity}, {"v", capacity}, {"w", capacity}},
      {{"uw", 0, 2, capacity}, {"wv", 2, 1, capacity}, {"uv", 0, 1, capacity}});
}

// s -> a -> t with the action pinned to w, routing anywhere
Request pinned_action_request(const PhysicalNetwork& net, std::int64_t demand = 1,
                              std::int64_t benefit = 3) {
  return serial_chain("r", net, {0}, {1}, {{"a", {2}, demand}}, {demand, demand}, benefit);
}

ProductOptions unfiltered() {
  ProductOptions options;
  options.capacity_filter = false;
  return options;
}

int find_arc(const ProductNetwork& pn, int from, int to, bool processing) {
  for (int ai : pn.out[static_cast<std::size_t>(from)])
    if (pn.arcs[static_cast<std::size_t>(ai)].to == to &&
        pn.arcs[static_cast<std::size_t>(ai)].processing == processing)
      return ai;
  REQUIRE(false);
  return -1;
}

}  // namespace

TEST_CASE("triangle product network has the expected shape") {
  auto net = triangle();
  auto req = pinned_action_request(net);
  std::vector<double> weights(static_cast<std::size_t>(net.resource_count()), 0.0);
  auto [pn, pr] = build_product(net, req, weights, unfiltered());

  CHECK(pn.vertex_count() == 6);  // 3 nodes x 2 layers
  int routing = 0, processing = 0;
  for (const auto& a : pn.arcs) (a.processing ? processing : routing)++;
  CHECK(routing == 12);  // 3 undirected links x 2 directions x 2 layers
  CHECK(processing == 1);
  CHECK(pr.sources.size() == 1);
  CHECK(pr.sinks.size() == 1);
}

TEST_CASE("single-edge pr-graph yields one layer and no processing arcs") {
  auto net = triangle();
  auto req = serial_chain("r", net, {0}, {1}, {}, {1}, 1);
  std::vector<double> weights(static_cast<std::size_t>(net.resource_count()), 0.0);
  auto [pn, pr] = build_product(net, req, weights, unfiltered());
  CHECK(pn.layers == 1);
  CHECK(pn.arcs.size() == 6);  // directed doubling of the triangle
  for (const auto& a : pn.arcs) CHECK_FALSE(a.processing);
}

TEST_CASE("parallel links become parallel arcs with distinct tags") {
  auto net = PhysicalNetwork::build({{"u", 10}, {"v", 10}},
                                    {{"e1", 0, 1, 10}, {"e2", 0, 1, 10}});
  auto req = serial_chain("r", net, {0}, {1}, {}, {1}, 1);
  std::vector<double> weights(static_cast<std::size_t>(net.resource_count()), 0.0);
  auto [pn, pr] = build_product(net, req, weights, unfiltered());
  CHECK(pn.arcs.size() == 4);  // two directions of each parallel link
  std::set<ResourceIdx> tags;
  for (const auto& a : pn.arcs) tags.insert(a.resource);
  CHECK(tags.size() == 2);
}

TEST_CASE("oversized demands filter every arc away") {
  auto net = triangle(10);
  auto req = pinned_action_request(net, 9, 3);
  std::vector<double> weights(static_cast<std::size_t>(net.resource_count()), 0.0);
  ProductOptions options;
  options.capacity_filter = true;
  options.params = WeightParams::make(6, 3, 2);  // 3 k phi >> 10/9
  auto [pn, pr] = build_product(net, req, weights, options);
  CHECK(pn.arcs.empty());
  CHECK_FALSE(pr.sources.empty());  // source and sink sets do not depend on capacity
}

TEST_CASE("fold contracts routing and processing arcs") {
  auto net = triangle();
  auto req = pinned_action_request(net);
  std::vector<double> weights(static_cast<std::size_t>(net.resource_count()), 0.0);
  auto [pn, pr] = build_product(net, req, weights, unfiltered());

  const int u0 = pn.vertex_of(0, 0), w0 = pn.vertex_of(2, 0);
  const int w1 = pn.vertex_of(2, 1), v1 = pn.vertex_of(1, 1);
  ProductPath path{u0, {find_arc(pn, u0, w0, false), find_arc(pn, w0, w1, true),
                        find_arc(pn, w1, v1, false)}};
  const auto p = fold(pn, pr, path);

  CHECK(p.walk_nodes == std::vector<NodeIdx>{0, 2, 1});  // u w v
  CHECK(p.walk_edges.size() == 2);
  CHECK(p.segmentation == std::vector<int>{0, 1, 2});
  CHECK(p.pr_vertices == std::vector<int>{0, 1, 2});  // s a t
  CHECK(p.pr_edges == std::vector<int>{0, 1});

  SUBCASE("expand inverts fold") {
    const auto back = expand(pn, pr, p);
    CHECK(back.start == path.start);
    CHECK(back.arcs == path.arcs);
  }
}

TEST_CASE("a lone processing arc folds to an empty walk") {
  auto net = triangle();
  // everything pinned to v: both segments realize as empty paths
  auto req = serial_chain("r", net, {1}, {1}, {{"a", {1}, 1}}, {1, 1}, 1);
  std::vector<double> weights(static_cast<std::size_t>(net.resource_count()), 0.0);
  auto [pn, pr] = build_product(net, req, weights, unfiltered());

  const int v0 = pn.vertex_of(1, 0), v1 = pn.vertex_of(1, 1);
  ProductPath path{v0, {find_arc(pn, v0, v1, true)}};
  const auto p = fold(pn, pr, path);
  CHECK(p.walk_nodes == std::vector<NodeIdx>{1});
  CHECK(p.walk_edges.empty());
  CHECK(p.segmentation == std::vector<int>{0, 0, 0});
  CHECK(expand(pn, pr, p).arcs == path.arcs);
}

TEST_CASE("two consecutive actions at one node expand to two processing arcs") {
  auto net = triangle();
  auto req = serial_chain("r", net, {2}, {2},
                          {{"a1", {2}, 1}, {"a2", {2}, 1}}, {1, 1, 1}, 1);
  std::vector<double> weights(static_cast<std::size_t>(net.resource_count()), 0.0);
  auto [pn, pr] = build_product(net, req, weights, unfiltered());
  const int w0 = pn.vertex_of(2, 0), w1 = pn.vertex_of(2, 1), w2 = pn.vertex_of(2, 2);
  ProductPath path{w0, {find_arc(pn, w0, w1, true), find_arc(pn, w1, w2, true)}};
  const auto p = fold(pn, pr, path);
  CHECK(p.walk_nodes == std::vector<NodeIdx>{2});
  CHECK(p.segmentation == std::vector<int>{0, 0, 0, 0});
  const auto back = expand(pn, pr, p);
  CHECK(back.arcs == path.arcs);
  CHECK(resource_multiplicities(net, req, p).at(net.node_resource(2)) == 2);
}

TEST_CASE("routing-only paths fold to plain walks") {
  auto net = triangle();
  auto req = serial_chain("r", net, {0}, {1}, {}, {1}, 1);
  std::vector<double> weights(static_cast<std::size_t>(net.resource_count()), 0.0);
  auto [pn, pr] = build_product(net, req, weights, unfiltered());
  const int u = pn.vertex_of(0, 0), w = pn.vertex_of(2, 0), v = pn.vertex_of(1, 0);
  ProductPath path{u, {find_arc(pn, u, w, false), find_arc(pn, w, v, false)}};
  const auto p = fold(pn, pr, path);
  CHECK(p.walk_nodes == std::vector<NodeIdx>{0, 2, 1});
  CHECK(p.pr_vertices.size() == 2);  // no actions
}

TEST_CASE("fold rejects paths outside the source/sink contract") {
  auto net = triangle();
  auto req = pinned_action_request(net);
  std::vector<double> weights(static_cast<std::size_t>(net.resource_count()), 0.0);
  auto [pn, pr] = build_product(net, req, weights, unfiltered());
  const int w0 = pn.vertex_of(2, 0);
  CHECK_THROWS_AS(fold(pn, pr, ProductPath{w0, {}}), Error);
}

TEST_CASE("realization weight counts multiplicities") {
  auto net = triangle();
  auto req = pinned_action_request(net);
  SUBCASE("zero weights sum to zero") {
    std::vector<double> weights(static_cast<std::size_t>(net.resource_count()), 0.0);
    auto [pn, pr] = build_product(net, req, weights, unfiltered());
    auto all = enumerate_realizations(net, req, weights, 10.0, unfiltered());
    REQUIRE(!all.empty());
    for (const auto& found : all)
      CHECK(realization_weight(net, req, found.realization, weights) == 0.0);
  }
  SUBCASE("an edge traversed twice counts twice") {
    // s and t at u, action at v: walk u-v-u traverses uv twice
    auto single = PhysicalNetwork::build({{"u", 60}, {"v", 60}}, {{"uv", 0, 1, 60}});
    auto back = serial_chain("r", single, {0}, {0}, {{"a", {1}, 1}}, {1, 1}, 1);
    std::vector<double> weights(static_cast<std::size_t>(single.resource_count()), 0.0);
    weights[static_cast<std::size_t>(single.edge_resource(0))] = 1.5;
    auto [pn, pr] = build_product(single, back, weights, unfiltered());
    auto all = enumerate_realizations(single, back, weights, 100.0, unfiltered());
    REQUIRE(!all.empty());
    bool found_double = false;
    for (const auto& found : all) {
      if (found.realization.walk_edges.size() == 2) {
        found_double = true;
        CHECK(realization_weight(single, back, found.realization, weights) ==
              doctest::Approx(3.0).epsilon(1e-15));
        const auto mult = resource_multiplicities(single, back, found.realization);
        CHECK(mult.at(single.edge_resource(0)) == 2);
      }
    }
    CHECK(found_double);
  }
}

TEST_CASE("fold and expand are inverse bijections on random instances") {
  std::mt19937_64 weight_rng(7);
  std::size_t checked = 0;
  for (std::uint64_t seed = 1; checked < 400 && seed < 200; ++seed) {
    RandomInstanceParams params;
    params.max_nodes = 6;
    params.max_edges = 9;
    params.max_requests = 4;
    const auto instance = gen_random_instance(params, seed);
    const auto& net = instance.network;
    std::vector<double> weights(static_cast<std::size_t>(net.resource_count()));
    for (auto& w : weights)
      w = std::uniform_real_distribution<double>(0.0, 2.0)(weight_rng);

    for (const auto& ev : instance.trace.events) {
      if (ev.kind != TraceEvent::Kind::arrival) continue;
      std::vector<EnumeratedRealization> paths;
      try {
        paths = enumerate_realizations(net, ev.request, weights,
                                       std::numeric_limits<double>::infinity(), unfiltered(), 400);
      } catch (const Error& e) {
        if (e.code() == Errc::enumeration_explosion) continue;
        throw;
      }
      auto [pn, pr] = build_product(net, ev.request, weights, unfiltered());
      for (const auto& found : paths) {
        ++checked;
        // round trip identity
        const auto back = expand(pn, pr, found.realization);
        CHECK(back.start == found.path.start);
        CHECK(back.arcs == found.path.arcs);
        const auto again = fold(pn, pr, back);
        CHECK(again == found.realization);
        // weight preservation
        const double rw = realization_weight(net, ev.request, found.realization, weights);
        CHECK(std::abs(rw - arc_weight_sum(pn, found.path)) <= 1e-12);
        // multiplicity bound: nothing is used more than k times
        for (const auto& [resource, count] :
             resource_multiplicities(net, ev.request, found.realization))
          CHECK(count <= instance.k);
        // simple pr-path projection
        std::set<int> seen(found.realization.pr_vertices.begin(),
                           found.realization.pr_vertices.end());
        CHECK(seen.size() == found.realization.pr_vertices.size());
      }
    }
  }
  CHECK(checked >= 400);
}
