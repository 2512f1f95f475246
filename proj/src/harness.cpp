#include "sdnadmit/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <random>

namespace sdnadmit {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

WeightParams derive_params(const PhysicalNetwork& net, const Trace& trace,
                           const RunConfig& config) {
  std::int64_t k = 1, b_max = 1;
  for (const auto& ev : trace.events) {
    if (ev.kind != TraceEvent::Kind::arrival) continue;
    PrGraph g = ev.request.pr;
    if (auto err = g.finalize()) throw *err;
    k = std::max<std::int64_t>(k, g.longest_st_path_edges);
    b_max = std::max(b_max, ev.request.benefit);
  }
  if (config.k) k = *config.k;
  if (config.b_max) b_max = *config.b_max;
  const std::int64_t p_max =
      config.p_max ? *config.p_max : static_cast<std::int64_t>(net.node_count()) * k;
  return WeightParams::make(p_max, b_max, k);
}

}  // namespace

RunResult run(const PhysicalNetwork& net, const Trace& trace, const RunConfig& config) {
  RunResult result;
  result.params = derive_params(net, trace, config);

  // up-front validation of every arriving request
  for (const auto& ev : trace.events) {
    if (ev.kind != TraceEvent::Kind::arrival) continue;
    if (auto err = validate(ev.request, net, result.params)) {
      const bool precondition = err->code() == Errc::demand_too_large;
      if (precondition && config.precondition == RunConfig::OnPrecondition::warn) {
        std::fprintf(stderr, "[sdnadmit] warning: %s (continuing)\n", err->what());
      } else {
        throw *err;
      }
    }
    result.requests.emplace(ev.request.id, ev.request);
  }

  Scheduler sched(net, result.params, config.retry_order);

  std::uint64_t cached_version = ~std::uint64_t{0};
  double cached_opt = 0.0, cached_int = 0.0;
  auto step_baseline = [&](StepRow& row) {
    if (!config.baseline && !config.integral) return;
    if (sched.active_version() != cached_version) {
      const auto active = sched.active_requests();
      if (config.baseline) cached_opt = opt_fractional(net, active);
      if (config.integral) cached_int = opt_integral_bruteforce(net, active);
      cached_version = sched.active_version();
    }
    if (config.baseline) row.opt_fractional = cached_opt;
    if (config.integral) row.opt_integral = cached_int;
  };

  if (!trace.events.empty()) {
    const std::uint64_t t_max = trace.events.back().t;
    std::size_t next = 0;
    for (std::uint64_t t = 0; t <= t_max; ++t) {
      while (next < trace.events.size() && trace.events[next].t == t) {
        const auto& ev = trace.events[next];
        if (ev.kind == TraceEvent::Kind::arrival) {
          if (config.dump_product) {
            const auto weights = exp_load_all(sched.load_state(), result.params);
            ProductOptions options;
            options.capacity_filter = true;
            options.params = result.params;
            auto [pn, pr] = build_product(net, ev.request, weights, options);
            result.product_dumps.emplace_back(
                "product_" + ev.request.id + "_t" + std::to_string(t) + ".json",
                product_to_json(pn, pr).dump(2) + "\n");
          }
          sched.on_arrival(ev.request, t);
        } else {
          sched.on_departure(ev.request_id, t);
        }
        ++next;
      }
      StepRow row;
      row.t = t;
      row.alg_benefit = sched.benefit_now();
      step_baseline(row);
      result.steps.push_back(row);
    }
  }

  result.log = sched.log();
  for (const auto& row : result.steps) result.total_benefit += row.alg_benefit;
  if (config.baseline) {
    double total = 0.0;
    for (const auto& row : result.steps) total += row.opt_fractional.value_or(0.0);
    result.total_opt_fractional = total;
    if (total > 0.0) result.ratio = static_cast<double>(result.total_benefit) / total;
  }
  return result;
}

njson summary_to_json(const RunResult& result) {
  njson j;
  j["total_benefit"] = result.total_benefit;
  j["total_opt_fractional"] =
      result.total_opt_fractional ? njson(*result.total_opt_fractional) : njson(nullptr);
  j["ratio"] = result.ratio ? njson(*result.ratio) : njson(nullptr);
  j["steps"] = result.steps.size();
  j["decisions"] = result.log.size();
  j["params"] = {{"p_max", result.params.p_max},
                 {"b_max", result.params.b_max},
                 {"k", result.params.k},
                 {"phi", result.params.phi}};
  return j;
}

void write_outputs(const RunResult& result, const PhysicalNetwork& net,
                   const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  const auto path = [&](const std::string& name) { return out_dir + "/" + name; };

  std::string decisions;
  for (const auto& entry : result.log) {
    const Request* req = nullptr;
    if (auto it = result.requests.find(entry.request); it != result.requests.end())
      req = &it->second;
    decisions += log_entry_to_json(entry, net, req).dump();
    decisions += '\n';
  }
  write_text_file(path("decisions.jsonl"), decisions);

  std::string benefit = "t,benefit\n";
  for (const auto& row : result.steps)
    benefit += std::to_string(row.t) + "," + std::to_string(row.alg_benefit) + "\n";
  write_text_file(path("benefit.csv"), benefit);

  if (result.total_opt_fractional) {
    std::string csv = "t,alg_benefit,opt_fractional,opt_integral,ratio\n";
    for (const auto& row : result.steps) {
      csv += std::to_string(row.t) + "," + std::to_string(row.alg_benefit) + ",";
      csv += row.opt_fractional ? format_double(*row.opt_fractional) : std::string{};
      csv += ",";
      csv += row.opt_integral ? format_double(*row.opt_integral) : std::string{};
      csv += ",";
      if (row.opt_fractional && *row.opt_fractional > 0.0)
        csv += format_double(static_cast<double>(row.alg_benefit) / *row.opt_fractional);
      csv += "\n";
    }
    write_text_file(path("baseline.csv"), csv);
  }

  write_text_file(path("summary.json"), summary_to_json(result).dump(2) + "\n");
  for (const auto& [name, content] : result.product_dumps) write_text_file(path(name), content);
}

namespace {

// Bounded sampling on top of mt19937_64 so generated files are pinned by the
// seed alone.
struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    const auto range = static_cast<std::uint64_t>(hi - lo + 1);
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % range;
    std::uint64_t v;
    do {
      v = engine();
    } while (v >= limit);
    return lo + static_cast<std::int64_t>(v % range);
  }
  double real01() { return static_cast<double>(engine() >> 11) * (1.0 / 9007199254740992.0); }
  bool chance(double p) { return real01() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(i) - 1))]);
  }
};

std::vector<NodeIdx> random_node_subset(Rng& rng, int n, int min_size) {
  std::vector<NodeIdx> all(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
  rng.shuffle(all);
  const auto size = rng.uniform(min_size, n);
  all.resize(static_cast<std::size_t>(size));
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace

GeneratedInstance gen_random_instance(const RandomInstanceParams& params, std::uint64_t seed) {
  Rng rng(seed);

  const int n = static_cast<int>(rng.uniform(3, params.max_nodes));
  const auto k = rng.uniform(1, params.max_k);
  const std::int64_t p_max = static_cast<std::int64_t>(n) * k;
  const auto wp = WeightParams::make(p_max, params.b_max, k);
  const auto c_base = static_cast<std::int64_t>(std::ceil(3.0 * static_cast<double>(k) * wp.phi));

  std::vector<NodeDef> nodes;
  for (int i = 0; i < n; ++i)
    nodes.push_back({"v" + std::to_string(i), rng.uniform(c_base, 3 * c_base)});

  // spanning tree first, then extra (possibly parallel) links
  std::vector<EdgeDef> edges;
  std::vector<NodeIdx> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  rng.shuffle(order);
  int edge_seq = 0;
  auto add_edge = [&](NodeIdx u, NodeIdx v) {
    edges.push_back({"e" + std::to_string(edge_seq++), u, v, rng.uniform(c_base, 3 * c_base)});
  };
  for (int i = 1; i < n; ++i)
    add_edge(order[static_cast<std::size_t>(rng.uniform(0, i - 1))],
             order[static_cast<std::size_t>(i)]);
  const auto edge_target = rng.uniform(n - 1, std::max(n - 1, params.max_edges));
  while (static_cast<std::int64_t>(edges.size()) < edge_target) {
    const auto u = static_cast<NodeIdx>(rng.uniform(0, n - 1));
    auto v = static_cast<NodeIdx>(rng.uniform(0, n - 1));
    if (u == v) v = (v + 1) % n;
    add_edge(u, v);
  }

  GeneratedInstance out;
  out.network = PhysicalNetwork::build(std::move(nodes), std::move(edges));
  out.k = k;
  out.b_max = params.b_max;
  out.p_max = p_max;

  std::int64_t d_bound = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::floor(static_cast<double>(out.network.min_capacity()) /
                                              (3.0 * static_cast<double>(k) * wp.phi))));
  while (d_bound > 1 && !check_small_demand(out.network, wp, d_bound)) --d_bound;

  const int m = out.network.edge_count();
  const auto n_requests = rng.uniform(std::max(3, params.max_requests / 2), params.max_requests);

  struct Timed {
    std::uint64_t t;
    std::size_t seq;
    TraceEvent ev;
  };
  std::vector<Timed> events;
  std::uint64_t t = 0;
  std::size_t seq = 0;

  for (int i = 0; i < n_requests; ++i) {
    const std::string id = "r" + std::to_string(i + 1);
    const auto benefit = rng.uniform(1, params.b_max);
    auto demand = [&] { return rng.uniform(1, d_bound); };

    Request req;
    const double kind = rng.real01();
    if (kind < 0.45 || k < 2) {
      req = serial_chain(id, out.network, random_node_subset(rng, n, 1),
                         random_node_subset(rng, n, 1), {}, {demand()}, benefit);
    } else if (kind < 0.85 || k < 3) {
      const auto n_actions = rng.uniform(1, k - 1);
      std::vector<ActionSpec> actions;
      for (int a = 0; a < n_actions; ++a)
        actions.push_back({"a" + std::to_string(a + 1), random_node_subset(rng, n, 1), demand()});
      std::vector<std::int64_t> edge_demands;
      for (int d = 0; d <= n_actions; ++d) edge_demands.push_back(demand());
      req = serial_chain(id, out.network, random_node_subset(rng, n, 1),
                         random_node_subset(rng, n, 1), actions, edge_demands, benefit);
    } else {
      static const char* templates[] = {"a|b", "ab|c", "a(b|c)", "ab|ba"};
      const auto* expr = templates[rng.uniform(0, 3)];
      std::map<char, std::vector<NodeIdx>> placements;
      for (char sym : {'a', 'b', 'c'}) placements[sym] = random_node_subset(rng, n, 1);
      req = from_regex(id, out.network, expr, placements, random_node_subset(rng, n, 1),
                       random_node_subset(rng, n, 1), demand(), benefit);
    }

    // occasionally restrict which links a pr-edge may use
    for (auto& e : req.pr.edges) {
      if (!rng.chance(0.2)) continue;
      std::vector<EdgeIdx> subset(static_cast<std::size_t>(m));
      for (int x = 0; x < m; ++x) subset[static_cast<std::size_t>(x)] = x;
      rng.shuffle(subset);
      subset.resize(static_cast<std::size_t>(rng.uniform(std::max(1, m / 2), m)));
      std::sort(subset.begin(), subset.end());
      e.allowed_edges = std::move(subset);
      e.all_edges = false;
    }

    if (auto err = validate(req, out.network, wp))
      throw Error(Errc::solver_failure, std::string("generator produced an invalid request: ") +
                                            err->what());

    t += static_cast<std::uint64_t>(rng.uniform(0, static_cast<std::int64_t>(params.max_gap)));
    const std::uint64_t depart =
        t + static_cast<std::uint64_t>(rng.uniform(1, static_cast<std::int64_t>(params.max_duration)));
    TraceEvent arrive;
    arrive.t = t;
    arrive.kind = TraceEvent::Kind::arrival;
    arrive.request = std::move(req);
    arrive.request_id = id;
    events.push_back({t, seq++, std::move(arrive)});
    TraceEvent leave;
    leave.t = depart;
    leave.kind = TraceEvent::Kind::departure;
    leave.request_id = id;
    events.push_back({depart, seq++, std::move(leave)});
  }

  std::sort(events.begin(), events.end(), [](const Timed& a, const Timed& b) {
    return a.t != b.t ? a.t < b.t : a.seq < b.seq;
  });
  for (auto& ev : events) out.trace.events.push_back(std::move(ev.ev));
  return out;
}

}  // namespace sdnadmit
