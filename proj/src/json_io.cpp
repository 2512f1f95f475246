#include "sdnadmit/json_io.hpp"

#include <fstream>
#include <set>

namespace sdnadmit {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(Errc::parse_error, what); }

const njson& need(const njson& j, const char* key, const char* where) {
  auto it = j.find(key);
  if (it == j.end()) fail(std::string(where) + " is missing key '" + key + "'");
  return *it;
}

std::int64_t need_int(const njson& j, const char* key, const char* where) {
  const auto& v = need(j, key, where);
  if (!v.is_number_integer()) fail(std::string(where) + " key '" + key + "' must be an integer");
  return v.get<std::int64_t>();
}

std::string need_str(const njson& j, const char* key, const char* where) {
  const auto& v = need(j, key, where);
  if (!v.is_string()) fail(std::string(where) + " key '" + key + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

njson network_to_json(const PhysicalNetwork& net) {
  njson j;
  j["nodes"] = njson::array();
  for (int i = 0; i < net.node_count(); ++i) {
    const auto& n = net.node(i);
    j["nodes"].push_back({{"id", n.id}, {"capacity", n.capacity}});
  }
  j["edges"] = njson::array();
  for (int i = 0; i < net.edge_count(); ++i) {
    const auto& e = net.edge(i);
    j["edges"].push_back({{"id", e.id},
                          {"u", net.node(e.u).id},
                          {"v", net.node(e.v).id},
                          {"capacity", e.capacity}});
  }
  return j;
}

PhysicalNetwork network_from_json(const njson& j) {
  std::vector<NodeDef> nodes;
  std::vector<EdgeDef> edges;
  for (const auto& n : need(j, "nodes", "network")) {
    nodes.push_back({need_str(n, "id", "node"), need_int(n, "capacity", "node")});
  }
  std::vector<std::string> node_ids;
  for (const auto& n : nodes) node_ids.push_back(n.id);
  auto index_of = [&](const std::string& id) -> NodeIdx {
    for (std::size_t i = 0; i < node_ids.size(); ++i)
      if (node_ids[i] == id) return static_cast<NodeIdx>(i);
    fail("edge endpoint '" + id + "' is not a node");
  };
  if (j.contains("edges"))
    for (const auto& e : j["edges"]) {
      edges.push_back({need_str(e, "id", "edge"), index_of(need_str(e, "u", "edge")),
                       index_of(need_str(e, "v", "edge")), need_int(e, "capacity", "edge")});
    }
  return PhysicalNetwork::build(std::move(nodes), std::move(edges));
}

njson request_to_json(const Request& req, const PhysicalNetwork& net) {
  njson j;
  j["id"] = req.id;
  j["benefit"] = req.benefit;
  j["vertices"] = njson::array();
  for (const auto& v : req.pr.vertices) {
    njson jv;
    jv["id"] = v.id;
    jv["role"] = v.role == PrRole::source ? "source" : v.role == PrRole::sink ? "sink" : "action";
    jv["demand"] = v.demand;
    jv["allowed_nodes"] = njson::array();
    for (NodeIdx n : v.allowed_nodes) jv["allowed_nodes"].push_back(net.node(n).id);
    j["vertices"].push_back(std::move(jv));
  }
  j["edges"] = njson::array();
  for (const auto& e : req.pr.edges) {
    njson je;
    je["id"] = e.id;
    je["tail"] = req.pr.vertices[static_cast<std::size_t>(e.tail)].id;
    je["head"] = req.pr.vertices[static_cast<std::size_t>(e.head)].id;
    je["demand"] = e.demand;
    if (!e.all_edges) {
      je["allowed_edges"] = njson::array();
      for (EdgeIdx x : e.allowed_edges) je["allowed_edges"].push_back(net.edge(x).id);
    }
    j["edges"].push_back(std::move(je));
  }
  return j;
}

Request request_from_json(const njson& j, const PhysicalNetwork& net) {
  Request req;
  req.id = need_str(j, "id", "request");
  req.benefit = need_int(j, "benefit", "request");

  for (const auto& jv : need(j, "vertices", "request")) {
    PrVertex v;
    v.id = need_str(jv, "id", "pr-vertex");
    const std::string role = need_str(jv, "role", "pr-vertex");
    if (role == "source")
      v.role = PrRole::source;
    else if (role == "sink")
      v.role = PrRole::sink;
    else if (role == "action")
      v.role = PrRole::action;
    else
      fail("pr-vertex role must be source, sink or action, got '" + role + "'");
    v.demand = need_int(jv, "demand", "pr-vertex");
    std::set<NodeIdx> nodes;
    for (const auto& id : need(jv, "allowed_nodes", "pr-vertex")) {
      if (!id.is_string()) fail("allowed_nodes entries must be node ids");
      auto idx = net.node_index(id.get<std::string>());
      if (!idx)
        throw Error(Errc::unknown_placement_target,
                    "node '" + id.get<std::string>() + "' in request " + req.id);
      nodes.insert(*idx);
    }
    v.allowed_nodes.assign(nodes.begin(), nodes.end());
    req.pr.vertices.push_back(std::move(v));
  }

  for (const auto& je : need(j, "edges", "request")) {
    PrEdge e;
    e.id = need_str(je, "id", "pr-edge");
    const std::string tail = need_str(je, "tail", "pr-edge");
    const std::string head = need_str(je, "head", "pr-edge");
    auto ti = req.pr.vertex_index(tail);
    auto hi = req.pr.vertex_index(head);
    if (!ti || !hi) fail("pr-edge " + e.id + " references an unknown pr-vertex");
    e.tail = *ti;
    e.head = *hi;
    e.demand = need_int(je, "demand", "pr-edge");
    if (je.contains("allowed_edges")) {
      std::set<EdgeIdx> links;
      for (const auto& id : je["allowed_edges"]) {
        if (!id.is_string()) fail("allowed_edges entries must be edge ids");
        auto idx = net.edge_index(id.get<std::string>());
        if (!idx)
          throw Error(Errc::unknown_placement_target,
                      "edge '" + id.get<std::string>() + "' in request " + req.id);
        links.insert(*idx);
      }
      e.allowed_edges.assign(links.begin(), links.end());
      e.all_edges = false;
    } else {
      // default: any link may realize this pr-edge
      e.allowed_edges.resize(static_cast<std::size_t>(net.edge_count()));
      for (int i = 0; i < net.edge_count(); ++i) e.allowed_edges[static_cast<std::size_t>(i)] = i;
      e.all_edges = true;
    }
    req.pr.edges.push_back(std::move(e));
  }

  if (auto err = req.pr.finalize()) throw *err;
  return req;
}

njson realization_to_json(const Realization& p, const PhysicalNetwork& net, const Request& req) {
  njson j;
  j["walk"] = njson::array();
  for (std::size_t i = 0; i < p.walk_nodes.size(); ++i) {
    j["walk"].push_back(net.node(p.walk_nodes[i]).id);
    if (i < p.walk_edges.size()) j["walk"].push_back(net.edge(p.walk_edges[i]).id);
  }
  j["segmentation"] = p.segmentation;
  njson pr_path;
  pr_path["vertices"] = njson::array();
  for (int x : p.pr_vertices)
    pr_path["vertices"].push_back(req.pr.vertices[static_cast<std::size_t>(x)].id);
  pr_path["edges"] = njson::array();
  for (int y : p.pr_edges) pr_path["edges"].push_back(req.pr.edges[static_cast<std::size_t>(y)].id);
  j["pr_path"] = std::move(pr_path);
  return j;
}

Realization realization_from_json(const njson& j, const PhysicalNetwork& net, const Request& req) {
  Realization p;
  const auto& walk = need(j, "walk", "realization");
  if (!walk.is_array() || walk.empty() || walk.size() % 2 == 0)
    fail("realization walk must alternate node and edge ids and end on a node");
  for (std::size_t i = 0; i < walk.size(); ++i) {
    const std::string id = walk[i].get<std::string>();
    if (i % 2 == 0) {
      auto n = net.node_index(id);
      if (!n) fail("walk node '" + id + "' unknown");
      p.walk_nodes.push_back(*n);
    } else {
      auto e = net.edge_index(id);
      if (!e) fail("walk edge '" + id + "' unknown");
      p.walk_edges.push_back(*e);
    }
  }
  for (const auto& s : need(j, "segmentation", "realization"))
    p.segmentation.push_back(s.get<int>());
  const auto& pr_path = need(j, "pr_path", "realization");
  for (const auto& id : need(pr_path, "vertices", "pr_path")) {
    auto x = req.pr.vertex_index(id.get<std::string>());
    if (!x) fail("pr-path vertex '" + id.get<std::string>() + "' unknown");
    p.pr_vertices.push_back(*x);
  }
  for (const auto& id : need(pr_path, "edges", "pr_path")) {
    auto y = req.pr.edge_index(id.get<std::string>());
    if (!y) fail("pr-path edge '" + id.get<std::string>() + "' unknown");
    p.pr_edges.push_back(*y);
  }
  return p;
}

njson trace_to_json(const Trace& trace, const PhysicalNetwork& net) {
  njson j;
  j["events"] = njson::array();
  for (const auto& ev : trace.events) {
    njson je;
    je["t"] = ev.t;
    je["kind"] = ev.kind == TraceEvent::Kind::arrival ? "arrival" : "departure";
    if (ev.kind == TraceEvent::Kind::arrival)
      je["request"] = request_to_json(ev.request, net);
    else
      je["request"] = ev.request_id;
    j["events"].push_back(std::move(je));
  }
  return j;
}

Trace trace_from_json(const njson& j, const PhysicalNetwork& net) {
  Trace trace;
  std::set<std::string> arrived, departed;
  std::uint64_t last_t = 0;
  for (const auto& je : need(j, "events", "trace")) {
    TraceEvent ev;
    const std::int64_t t = need_int(je, "t", "event");
    if (t < 0) fail("event timestamps must be natural numbers");
    ev.t = static_cast<std::uint64_t>(t);
    if (!trace.events.empty() && ev.t < last_t)
      throw Error(Errc::trace_order, "event timestamps must be nondecreasing");
    last_t = ev.t;
    const std::string kind = need_str(je, "kind", "event");
    if (kind == "arrival") {
      ev.kind = TraceEvent::Kind::arrival;
      ev.request = request_from_json(need(je, "request", "event"), net);
      ev.request.arrival = ev.t;
      ev.request_id = ev.request.id;
      if (!arrived.insert(ev.request_id).second)
        throw Error(Errc::duplicate_request, "request " + ev.request_id + " arrives twice");
    } else if (kind == "departure") {
      ev.kind = TraceEvent::Kind::departure;
      const auto& r = need(je, "request", "event");
      if (!r.is_string()) fail("departure events carry a request id");
      ev.request_id = r.get<std::string>();
      if (!arrived.count(ev.request_id) || departed.count(ev.request_id))
        throw Error(Errc::unknown_request,
                    "departure of " + ev.request_id + " without a matching active arrival");
      departed.insert(ev.request_id);
    } else {
      fail("event kind must be arrival or departure, got '" + kind + "'");
    }
    trace.events.push_back(std::move(ev));
  }
  return trace;
}

njson log_entry_to_json(const LogEntry& entry, const PhysicalNetwork& net, const Request* req) {
  njson j;
  j["t"] = entry.t;
  j["event"] = entry.event == LogEntry::Event::arrival     ? "arrival"
               : entry.event == LogEntry::Event::departure ? "departure"
                                                           : "retry";
  j["request"] = entry.request;
  j["decision"] = entry.decision == LogEntry::Decision::accept    ? "accept"
                  : entry.decision == LogEntry::Decision::standby ? "standby"
                                                                  : "depart";
  if (entry.realization) {
    if (req == nullptr)
      throw Error(Errc::unknown_request, "cannot serialize a realization without its request");
    j["realization"] = realization_to_json(*entry.realization, net, *req);
  }
  return j;
}

LogEntry log_entry_from_json(const njson& j, const PhysicalNetwork& net, const Request* req) {
  LogEntry entry;
  entry.t = static_cast<std::uint64_t>(need_int(j, "t", "log entry"));
  const std::string event = need_str(j, "event", "log entry");
  entry.event = event == "arrival"     ? LogEntry::Event::arrival
                : event == "departure" ? LogEntry::Event::departure
                                       : LogEntry::Event::retry;
  entry.request = need_str(j, "request", "log entry");
  const std::string decision = need_str(j, "decision", "log entry");
  entry.decision = decision == "accept"    ? LogEntry::Decision::accept
                   : decision == "standby" ? LogEntry::Decision::standby
                                           : LogEntry::Decision::depart;
  if (j.contains("realization")) {
    if (req == nullptr)
      throw Error(Errc::unknown_request, "cannot parse a realization without its request");
    entry.realization = realization_from_json(j["realization"], net, *req);
  }
  return entry;
}

njson product_to_json(const ProductNetwork& pn, const ProductRequest& pr) {
  const auto& net = *pn.net;
  const auto& req = *pn.req;
  njson j;
  j["vertices"] = njson::array();
  for (int pv = 0; pv < pn.vertex_count(); ++pv)
    j["vertices"].push_back({{"node", net.node(pn.node_of(pv)).id},
                             {"pr_edge", req.pr.edges[static_cast<std::size_t>(pn.layer_of(pv))].id}});
  j["arcs"] = njson::array();
  for (const auto& a : pn.arcs)
    j["arcs"].push_back({{"from", a.from},
                         {"to", a.to},
                         {"kind", a.processing ? "processing" : "routing"},
                         {"resource", net.resource_id(a.resource)},
                         {"component", a.processing
                                           ? req.pr.vertices[static_cast<std::size_t>(a.component)].id
                                           : req.pr.edges[static_cast<std::size_t>(a.component)].id},
                         {"weight", a.weight}});
  j["sources"] = pr.sources;
  j["sinks"] = pr.sinks;
  return j;
}

njson load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse_error, "cannot open " + path);
  try {
    return njson::parse(in);
  } catch (const std::exception& e) {
    throw Error(Errc::parse_error, path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::parse_error, "cannot write " + path);
  out << content;
}

}  // namespace sdnadmit
