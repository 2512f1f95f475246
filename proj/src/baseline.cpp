#include "sdnadmit/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include "sdnadmit/simplex.hpp"

namespace sdnadmit {

namespace {

using Charges = std::vector<std::pair<ResourceIdx, std::int64_t>>;

Charges charges_of_path(const ProductNetwork& pn, const ProductPath& path) {
  std::map<ResourceIdx, std::int64_t> acc;
  for (int ai : path.arcs) {
    const auto& a = pn.arcs[static_cast<std::size_t>(ai)];
    acc[a.resource] += a.demand;
  }
  return {acc.begin(), acc.end()};
}

struct RequestLp {
  const Request* request = nullptr;
  ProductNetwork pn;
  ProductRequest pr;
  std::vector<Charges> columns;      // deduplicated resource usage vectors
  std::set<Charges> column_keys;
};

}  // namespace

double opt_fractional(const PhysicalNetwork& net, const std::vector<const Request*>& active) {
  if (active.empty()) return 0.0;

  ProductOptions options;
  options.capacity_filter = false;  // the baseline may use any valid realization

  std::vector<double> zero_weights(static_cast<std::size_t>(net.resource_count()), 0.0);
  std::vector<RequestLp> lp;
  lp.reserve(active.size());
  for (const Request* r : active) {
    RequestLp item;
    item.request = r;
    std::tie(item.pn, item.pr) = build_product(net, *r, zero_weights, options);
    lp.push_back(std::move(item));
  }

  // rows: one convexity row per request, one capacity row per touched resource
  std::map<ResourceIdx, int> capacity_row;
  for (const auto& item : lp)
    for (const auto& a : item.pn.arcs)
      capacity_row.emplace(a.resource, 0);
  {
    int next = static_cast<int>(lp.size());
    for (auto& [resource, row] : capacity_row) row = next++;
  }
  std::vector<double> rhs(lp.size() + capacity_row.size(), 1.0);
  for (const auto& [resource, row] : capacity_row)
    rhs[static_cast<std::size_t>(row)] = static_cast<double>(net.capacity(resource));

  // seed: any realization per routable request (zero-cost shortest path)
  std::vector<double> arc_cost;
  for (auto& item : lp) {
    arc_cost.assign(item.pn.arcs.size(), 0.0);
    auto sp = lightest_st_path(item.pn, item.pr, arc_cost);
    if (!sp.found) continue;  // structurally unroutable: contributes nothing
    auto charges = charges_of_path(item.pn, sp.path);
    item.column_keys.insert(charges);
    item.columns.push_back(std::move(charges));
  }

  const std::size_t iteration_cap = 2000;
  double objective = 0.0;
  for (std::size_t round = 0;; ++round) {
    if (round >= iteration_cap)
      throw Error(Errc::solver_failure, "column generation did not converge");

    std::vector<LpColumn> columns;
    for (std::size_t j = 0; j < lp.size(); ++j) {
      for (const auto& charges : lp[j].columns) {
        LpColumn col;
        col.objective = static_cast<double>(lp[j].request->benefit);
        col.entries.emplace_back(static_cast<int>(j), 1.0);
        for (const auto& [resource, amount] : charges)
          col.entries.emplace_back(capacity_row.at(resource), static_cast<double>(amount));
        columns.push_back(std::move(col));
      }
    }
    auto solved = solve_packing_lp(rhs, columns);
    if (solved.status != LpResult::Status::optimal)
      throw Error(Errc::solver_failure, "master LP did not reach optimality");
    objective = solved.objective;

    // price: a column improves when benefit - mu_j - lambda.charges > 0
    bool improved = false;
    for (std::size_t j = 0; j < lp.size(); ++j) {
      auto& item = lp[j];
      if (item.columns.empty()) continue;
      arc_cost.assign(item.pn.arcs.size(), 0.0);
      for (std::size_t ai = 0; ai < item.pn.arcs.size(); ++ai) {
        const auto& a = item.pn.arcs[ai];
        const double price = solved.duals[static_cast<std::size_t>(capacity_row.at(a.resource))];
        arc_cost[ai] = std::max(price, 0.0) * static_cast<double>(a.demand);
      }
      auto sp = lightest_st_path(item.pn, item.pr, arc_cost);
      if (!sp.found) continue;
      const double mu = solved.duals[j];
      const double reduced = static_cast<double>(item.request->benefit) - mu - sp.weight;
      if (reduced <= 1e-7 * (1.0 + std::abs(static_cast<double>(item.request->benefit)))) continue;
      auto charges = charges_of_path(item.pn, sp.path);
      if (item.column_keys.insert(charges).second) {
        item.columns.push_back(std::move(charges));
        improved = true;
      }
    }
    if (!improved) break;
  }
  return objective;
}

double opt_integral_bruteforce(const PhysicalNetwork& net,
                               const std::vector<const Request*>& active,
                               std::size_t path_cap, std::size_t node_cap) {
  if (active.empty()) return 0.0;

  ProductOptions options;
  options.capacity_filter = false;
  std::vector<double> zero_weights(static_cast<std::size_t>(net.resource_count()), 0.0);

  struct Candidate {
    const Request* request;
    std::vector<Charges> choices;
  };
  std::vector<Candidate> candidates;
  for (const Request* r : active) {
    auto all = enumerate_realizations(net, *r, zero_weights,
                                      std::numeric_limits<double>::infinity(), options, path_cap);
    std::set<Charges> keys;
    Candidate c{r, {}};
    for (const auto& found : all) {
      auto charges = Charges{};
      for (const auto& [resource, amount] : realization_charges(net, *r, found.realization))
        charges.emplace_back(resource, amount);
      if (keys.insert(charges).second) c.choices.push_back(std::move(charges));
    }
    if (c.choices.empty()) continue;  // unroutable, can never be served
    // drop choices that dominate another component-wise; same benefit, so a
    // cheaper footprint is always at least as good
    std::sort(c.choices.begin(), c.choices.end(),
              [](const Charges& a, const Charges& b) { return a.size() < b.size(); });
    std::vector<Charges> kept;
    for (const auto& candidate : c.choices) {
      bool dominated = false;
      for (const auto& other : kept) {
        bool covers = true;
        for (const auto& [resource, amount] : other) {
          auto it = std::find_if(candidate.begin(), candidate.end(),
                                 [&](const auto& e) { return e.first == resource; });
          if (it == candidate.end() || it->second < amount) {
            covers = false;
            break;
          }
        }
        if (covers) {
          dominated = true;
          break;
        }
      }
      if (!dominated) kept.push_back(candidate);
    }
    c.choices = std::move(kept);
    candidates.push_back(std::move(c));
  }
  if (candidates.empty()) return 0.0;

  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return a.request->benefit > b.request->benefit;
  });
  std::vector<std::int64_t> suffix(candidates.size() + 1, 0);
  for (std::size_t i = candidates.size(); i-- > 0;)
    suffix[i] = suffix[i + 1] + candidates[i].request->benefit;

  std::vector<std::int64_t> usage(static_cast<std::size_t>(net.resource_count()), 0);
  std::int64_t best = 0;
  std::size_t visited = 0;

  auto dfs = [&](auto&& self, std::size_t idx, std::int64_t benefit) -> void {
    if (++visited > node_cap)
      throw Error(Errc::enumeration_explosion, "integral brute force exceeded its search budget");
    best = std::max(best, benefit);
    if (idx == candidates.size()) return;
    if (benefit + suffix[idx] <= best) return;  // cannot beat the incumbent
    const auto& c = candidates[idx];
    for (const auto& charges : c.choices) {
      bool fits = true;
      for (const auto& [resource, amount] : charges)
        if (usage[static_cast<std::size_t>(resource)] + amount > net.capacity(resource)) {
          fits = false;
          break;
        }
      if (!fits) continue;
      for (const auto& [resource, amount] : charges)
        usage[static_cast<std::size_t>(resource)] += amount;
      self(self, idx + 1, benefit + c.request->benefit);
      for (const auto& [resource, amount] : charges)
        usage[static_cast<std::size_t>(resource)] -= amount;
    }
    self(self, idx + 1, benefit);
  };
  dfs(dfs, 0, 0);
  return static_cast<double>(best);
}

GeneratedInstance gen_lower_bound_trace(const LowerBoundParams& params) {
  const int n = params.n;
  if (n < 2 || (n & (n - 1)) != 0)
    throw Error(Errc::parse_error, "lower-bound family needs n to be a power of two, n >= 2");
  const std::int64_t b_max = params.b_max > 0 ? params.b_max : n;

  const std::int64_t p_max = static_cast<std::int64_t>(n);  // |V| * k with k = 1
  const auto wp = WeightParams::make(p_max, b_max, 1);
  const auto capacity = static_cast<std::int64_t>(std::ceil(3.0 * wp.phi));

  std::vector<NodeDef> nodes;
  for (int i = 0; i < n; ++i) nodes.push_back({"v" + std::to_string(i), capacity});
  std::vector<EdgeDef> edges;
  for (int i = 0; i + 1 < n; ++i)
    edges.push_back({"l" + std::to_string(i), i, i + 1, capacity});

  GeneratedInstance out;
  out.network = PhysicalNetwork::build(std::move(nodes), std::move(edges));
  out.k = 1;
  out.b_max = b_max;
  out.p_max = p_max;

  int benefit_levels = 0;
  while ((std::int64_t{1} << benefit_levels) < b_max) ++benefit_levels;
  int span_levels = 0;
  while (((n - 1) >> span_levels) > 1) ++span_levels;
  const int levels = std::max(benefit_levels, span_levels) + 1;
  // enough copies per level that the offline optimum can fill the shared
  // prefix with the best payers while the online weights saturate early
  const int repeat = params.repeat > 0
                         ? params.repeat
                         : std::max<int>(4, static_cast<int>(std::ceil(
                                                static_cast<double>(capacity) / 3.0)));

  std::uint64_t t = 1;
  int seq = 0;
  std::vector<std::string> ids;
  for (int level = 0; level < levels; ++level) {
    const std::int64_t benefit = std::min<std::int64_t>(std::int64_t{1} << level, b_max);
    const int span = std::max(1, (n - 1) >> level);
    for (int copy = 0; copy < repeat; ++copy) {
      const std::string id = "r" + std::to_string(++seq);
      Request req = serial_chain(id, out.network, {0}, {span}, {}, {1}, benefit);
      TraceEvent ev;
      ev.t = t++;
      ev.kind = TraceEvent::Kind::arrival;
      ev.request = std::move(req);
      ev.request_id = id;
      out.trace.events.push_back(std::move(ev));
      ids.push_back(id);
    }
  }
  t += params.quiet;
  for (const auto& id : ids) {
    TraceEvent ev;
    ev.t = t;
    ev.kind = TraceEvent::Kind::departure;
    ev.request_id = id;
    out.trace.events.push_back(std::move(ev));
  }
  return out;
}

}  // namespace sdnadmit
