/*
  Python bindings: the main operations behind a JSON-string surface, so the
  module stays a thin shim over the C++ engine. Structured values cross the
  boundary as JSON text; the package wrapper turns them into dicts.
*/
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sdnadmit/harness.hpp"

namespace py = pybind11;
using namespace sdnadmit;

namespace {

PhysicalNetwork net_of(const std::string& network_json) {
  return network_from_json(njson::parse(network_json));
}

WeightParams params_of(std::int64_t p_max, std::int64_t b_max, std::int64_t k) {
  return WeightParams::make(p_max, b_max, k);
}

std::vector<NodeIdx> resolve_nodes(const PhysicalNetwork& net,
                                   const std::vector<std::string>& ids) {
  std::vector<NodeIdx> out;
  for (const auto& id : ids) {
    auto idx = net.node_index(id);
    if (!idx) throw Error(Errc::unknown_placement_target, "node '" + id + "'");
    out.push_back(*idx);
  }
  return out;
}

RetryOrder retry_order_of(const std::string& name) {
  if (name == "fifo") return RetryOrder::fifo;
  if (name == "benefit") return RetryOrder::benefit;
  if (name == "density") return RetryOrder::density;
  throw Error(Errc::parse_error, "retry order must be fifo, benefit or density");
}

// Scheduler plus everything it needs to parse and serialize on its own
class Engine {
public:
  Engine(const std::string& network_json, std::int64_t p_max, std::int64_t b_max, std::int64_t k,
         const std::string& retry_order)
      : net_(net_of(network_json)),
        params_(params_of(p_max, b_max, k)),
        sched_(net_, params_, retry_order_of(retry_order)) {}

  std::string arrive(std::uint64_t t, const std::string& request_json) {
    Request req = request_from_json(njson::parse(request_json), net_);
    if (auto err = validate(req, net_, params_)) throw *err;
    requests_.emplace(req.id, req);
    const auto& entry = sched_.on_arrival(std::move(req), t);
    return log_entry_to_json(entry, net_, &requests_.at(entry.request)).dump();
  }

  std::vector<std::string> depart(std::uint64_t t, const std::string& request_id) {
    return sched_.on_departure(request_id, t);
  }

  std::int64_t benefit() const { return sched_.benefit_now(); }
  std::size_t standby_count() const { return sched_.standby_count(); }

  std::string decisions_jsonl() const {
    std::string text;
    for (const auto& entry : sched_.log()) {
      const Request* req = nullptr;
      if (auto it = requests_.find(entry.request); it != requests_.end()) req = &it->second;
      text += log_entry_to_json(entry, net_, req).dump() + "\n";
    }
    return text;
  }

  std::map<std::string, std::int64_t> flows() const {
    std::map<std::string, std::int64_t> out;
    for (ResourceIdx r = 0; r < net_.resource_count(); ++r)
      out[net_.resource_id(r)] = sched_.load_state().flow(r);
    return out;
  }

private:
  PhysicalNetwork net_;
  WeightParams params_;
  std::map<std::string, Request> requests_;
  Scheduler sched_;
};

std::vector<Request> parse_requests(const PhysicalNetwork& net,
                                    const std::vector<std::string>& request_jsons) {
  std::vector<Request> requests;
  for (const auto& text : request_jsons)
    requests.push_back(request_from_json(njson::parse(text), net));
  return requests;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "online admission control and placement engine";

  py::register_exception<Error>(m, "EngineError");

  m.def("phi", [](std::int64_t p_max, std::int64_t b_max) { return params_of(p_max, b_max, 1).phi; },
        py::arg("p_max"), py::arg("b_max"));

  m.def("exp_load_value",
        [](double load, std::int64_t p_max, std::int64_t b_max) {
          return exp_load_value(load, params_of(p_max, b_max, 1));
        },
        py::arg("load"), py::arg("p_max"), py::arg("b_max"));

  m.def("check_small_demand",
        [](const std::string& network_json, std::int64_t demand, std::int64_t p_max,
           std::int64_t b_max, std::int64_t k) {
          const auto net = net_of(network_json);
          return check_small_demand(net, params_of(p_max, b_max, k), demand);
        },
        py::arg("network"), py::arg("demand"), py::arg("p_max"), py::arg("b_max"), py::arg("k"));

  m.def("validate_request",
        [](const std::string& network_json, const std::string& request_json, std::int64_t p_max,
           std::int64_t b_max, std::int64_t k) -> py::object {
          const auto net = net_of(network_json);
          const auto req = request_from_json(njson::parse(request_json), net);
          if (auto err = validate(req, net, params_of(p_max, b_max, k)))
            return py::str(errc_name(err->code()));
          return py::none();
        },
        py::arg("network"), py::arg("request"), py::arg("p_max"), py::arg("b_max"), py::arg("k"));

  m.def("serial_chain",
        [](const std::string& network_json, const std::string& id,
           const std::vector<std::string>& source_nodes, const std::vector<std::string>& sink_nodes,
           const std::vector<std::tuple<std::string, std::vector<std::string>, std::int64_t>>&
               actions,
           const std::vector<std::int64_t>& edge_demands, std::int64_t benefit) {
          const auto net = net_of(network_json);
          std::vector<ActionSpec> specs;
          for (const auto& [name, nodes, demand] : actions)
            specs.push_back({name, resolve_nodes(net, nodes), demand});
          const auto req = serial_chain(id, net, resolve_nodes(net, source_nodes),
                                        resolve_nodes(net, sink_nodes), specs, edge_demands,
                                        benefit);
          return request_to_json(req, net).dump();
        },
        py::arg("network"), py::arg("id"), py::arg("source_nodes"), py::arg("sink_nodes"),
        py::arg("actions"), py::arg("edge_demands"), py::arg("benefit"));

  m.def("from_regex",
        [](const std::string& network_json, const std::string& id, const std::string& expr,
           const std::map<std::string, std::vector<std::string>>& action_nodes,
           const std::vector<std::string>& source_nodes, const std::vector<std::string>& sink_nodes,
           std::int64_t demand, std::int64_t benefit) {
          const auto net = net_of(network_json);
          std::map<char, std::vector<NodeIdx>> placements;
          for (const auto& [sym, nodes] : action_nodes) {
            if (sym.size() != 1)
              throw Error(Errc::parse_error, "action symbols are single characters");
            placements[sym[0]] = resolve_nodes(net, nodes);
          }
          const auto req = from_regex(id, net, expr, placements, resolve_nodes(net, source_nodes),
                                      resolve_nodes(net, sink_nodes), demand, benefit);
          return request_to_json(req, net).dump();
        },
        py::arg("network"), py::arg("id"), py::arg("expr"), py::arg("action_nodes"),
        py::arg("source_nodes"), py::arg("sink_nodes"), py::arg("demand"), py::arg("benefit"));

  m.def("find_realization",
        [](const std::string& network_json, const std::string& request_json,
           const std::map<std::string, std::int64_t>& flows, std::int64_t p_max,
           std::int64_t b_max, std::int64_t k) -> py::object {
          const auto net = net_of(network_json);
          const auto req = request_from_json(njson::parse(request_json), net);
          const auto params = params_of(p_max, b_max, k);
          LoadState state(net);
          for (const auto& [id, amount] : flows) {
            auto r = net.resource_index(id);
            if (!r) throw Error(Errc::unknown_resource, id);
            state.add_flow(*r, amount);
          }
          const auto p = find_realization(net, req, state, params);
          if (!p) return py::none();
          return py::str(realization_to_json(*p, net, req).dump());
        },
        py::arg("network"), py::arg("request"), py::arg("flows"), py::arg("p_max"),
        py::arg("b_max"), py::arg("k"));

  m.def("opt_fractional",
        [](const std::string& network_json, const std::vector<std::string>& request_jsons) {
          const auto net = net_of(network_json);
          const auto requests = parse_requests(net, request_jsons);
          std::vector<const Request*> active;
          for (const auto& r : requests) active.push_back(&r);
          return opt_fractional(net, active);
        },
        py::arg("network"), py::arg("requests"));

  m.def("opt_integral",
        [](const std::string& network_json, const std::vector<std::string>& request_jsons) {
          const auto net = net_of(network_json);
          const auto requests = parse_requests(net, request_jsons);
          std::vector<const Request*> active;
          for (const auto& r : requests) active.push_back(&r);
          return opt_integral_bruteforce(net, active);
        },
        py::arg("network"), py::arg("requests"));

  m.def("run_trace",
        [](const std::string& network_json, const std::string& trace_json, bool baseline,
           const std::string& retry_order, std::int64_t p_max, std::int64_t b_max,
           std::int64_t k) {
          const auto net = net_of(network_json);
          const auto trace = trace_from_json(njson::parse(trace_json), net);
          RunConfig config;
          config.baseline = baseline;
          config.retry_order = retry_order_of(retry_order);
          if (p_max > 0) config.p_max = p_max;
          if (b_max > 0) config.b_max = b_max;
          if (k > 0) config.k = k;
          const auto result = run(net, trace, config);
          njson out = summary_to_json(result);
          njson decisions = njson::array();
          for (const auto& entry : result.log) {
            const Request* req = nullptr;
            if (auto it = result.requests.find(entry.request); it != result.requests.end())
              req = &it->second;
            decisions.push_back(log_entry_to_json(entry, net, req));
          }
          out["decisions_log"] = std::move(decisions);
          njson series = njson::array();
          for (const auto& row : result.steps) {
            njson jr{{"t", row.t}, {"benefit", row.alg_benefit}};
            if (row.opt_fractional) jr["opt_fractional"] = *row.opt_fractional;
            series.push_back(std::move(jr));
          }
          out["steps"] = std::move(series);
          return out.dump();
        },
        py::arg("network"), py::arg("trace"), py::arg("baseline") = false,
        py::arg("retry_order") = "fifo", py::arg("p_max") = 0, py::arg("b_max") = 0,
        py::arg("k") = 0);

  m.def("gen_random",
        [](std::uint64_t seed, int max_nodes, int max_edges, std::int64_t max_k,
           std::int64_t b_max, int max_requests) {
          RandomInstanceParams params;
          params.max_nodes = max_nodes;
          params.max_edges = max_edges;
          params.max_k = max_k;
          params.b_max = b_max;
          params.max_requests = max_requests;
          const auto instance = gen_random_instance(params, seed);
          return std::make_pair(network_to_json(instance.network).dump(),
                                trace_to_json(instance.trace, instance.network).dump());
        },
        py::arg("seed"), py::arg("max_nodes") = 8, py::arg("max_edges") = 12,
        py::arg("max_k") = 3, py::arg("b_max") = 4, py::arg("max_requests") = 20);

  m.def("gen_lowerbound",
        [](int n, std::int64_t b_max, std::uint64_t quiet) {
          LowerBoundParams params;
          params.n = n;
          params.b_max = b_max;
          params.quiet = quiet;
          const auto instance = gen_lower_bound_trace(params);
          return std::make_pair(network_to_json(instance.network).dump(),
                                trace_to_json(instance.trace, instance.network).dump());
        },
        py::arg("n"), py::arg("b_max") = 0, py::arg("quiet") = 64);

  py::class_<Engine>(m, "Engine")
      .def(py::init<const std::string&, std::int64_t, std::int64_t, std::int64_t,
                    const std::string&>(),
           py::arg("network"), py::arg("p_max"), py::arg("b_max"), py::arg("k"),
           py::arg("retry_order") = "fifo")
      .def("arrive", &Engine::arrive, py::arg("t"), py::arg("request"))
      .def("depart", &Engine::depart, py::arg("t"), py::arg("request_id"))
      .def("benefit", &Engine::benefit)
      .def("standby_count", &Engine::standby_count)
      .def("decisions_jsonl", &Engine::decisions_jsonl)
      .def("flows", &Engine::flows);
}
