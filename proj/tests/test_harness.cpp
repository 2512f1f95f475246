#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "sdnadmit/harness.hpp"

using namespace sdnadmit;

namespace {

njson single_edge_network_json() {
  return njson::parse(R"({
    "nodes": [{"id": "u", "capacity": 60}, {"id": "v", "capacity": 60}],
    "edges": [{"id": "uv", "u": "u", "v": "v", "capacity": 60}]
  })");
}

njson scenario_trace_json() {
  njson events = njson::array();
  for (int i = 1; i <= 5; ++i) {
    njson req;
    req["id"] = "r" + std::to_string(i);
    req["benefit"] = 1;
    req["vertices"] = njson::array();
    req["vertices"].push_back({{"id", "s"},
                               {"role", "source"},
                               {"demand", 1},
                               {"allowed_nodes", njson::array({"u"})}});
    req["vertices"].push_back(
        {{"id", "t"}, {"role", "sink"}, {"demand", 1}, {"allowed_nodes", njson::array({"v"})}});
    req["edges"] = njson::array();
    req["edges"].push_back({{"id", "e1"}, {"tail", "s"}, {"head", "t"}, {"demand", 10}});
    events.push_back({{"t", i}, {"kind", "arrival"}, {"request", req}});
  }
  events.push_back({{"t", 6}, {"kind", "departure"}, {"request", "r1"}});
  return njson{{"events", events}};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("network json round trip") {
  const auto j = single_edge_network_json();
  const auto net = network_from_json(j);
  CHECK(network_to_json(net) == j);
}

TEST_CASE("request and trace round trips") {
  const auto net = network_from_json(single_edge_network_json());
  const auto jt = scenario_trace_json();
  const auto trace = trace_from_json(jt, net);
  CHECK(trace_to_json(trace, net) == jt);
  CHECK(trace.events.size() == 6);
  CHECK(trace.events[0].request.arrival == 1);

  SUBCASE("omitted allowed_edges defaults to every link and stays omitted") {
    CHECK(trace.events[0].request.pr.edges[0].all_edges);
    CHECK(trace.events[0].request.pr.edges[0].allowed_edges.size() == 1);
  }
  SUBCASE("departures must reference active arrivals") {
    auto bad = jt;
    bad["events"][5]["request"] = "r9";
    CHECK_THROWS_AS(trace_from_json(bad, net), Error);
  }
  SUBCASE("timestamps must be nondecreasing") {
    auto bad = jt;
    bad["events"][5]["t"] = 0;
    CHECK_THROWS_AS(trace_from_json(bad, net), Error);
  }
  SUBCASE("duplicate arrivals are rejected") {
    auto bad = jt;
    bad["events"][1]["request"]["id"] = "r1";
    CHECK_THROWS_AS(trace_from_json(bad, net), Error);
  }
}

TEST_CASE("the worked single-link scenario replays exactly") {
  const auto net = network_from_json(single_edge_network_json());
  const auto trace = trace_from_json(scenario_trace_json(), net);
  RunConfig config;
  config.p_max = 1;  // realizations here use one resource; phi = log2(4) = 2
  const auto result = run(net, trace, config);

  CHECK(result.params.p_max == 1);
  CHECK(result.params.b_max == 1);
  CHECK(result.params.k == 1);
  CHECK(result.params.phi == 2.0);

  REQUIRE(result.log.size() == 7);
  for (int i = 0; i < 4; ++i) CHECK(result.log[i].decision == LogEntry::Decision::accept);
  CHECK(result.log[4].decision == LogEntry::Decision::standby);
  CHECK(result.log[5].decision == LogEntry::Decision::depart);
  CHECK(result.log[6].event == LogEntry::Event::retry);
  CHECK(result.log[6].request == "r5");
  CHECK(result.log[6].decision == LogEntry::Decision::accept);

  // benefit series: 0,1,2,3,4,4,4 across t=0..6
  REQUIRE(result.steps.size() == 7);
  const std::int64_t expected[] = {0, 1, 2, 3, 4, 4, 4};
  for (std::size_t i = 0; i < 7; ++i) CHECK(result.steps[i].alg_benefit == expected[i]);
  CHECK(result.total_benefit == 18);
}

TEST_CASE("benefit series reconstructed from the log matches the run") {
  const auto instance = gen_random_instance({}, 42);
  RunConfig config;
  const auto result = run(instance.network, instance.trace, config);

  std::map<std::string, std::int64_t> benefit_of;
  for (const auto& [id, req] : result.requests) benefit_of[id] = req.benefit;
  std::map<std::string, bool> served;
  std::int64_t current = 0;
  std::size_t next = 0;
  for (const auto& row : result.steps) {
    while (next < result.log.size() && result.log[next].t == row.t) {
      const auto& entry = result.log[next];
      if (entry.decision == LogEntry::Decision::accept) {
        served[entry.request] = true;
        current += benefit_of.at(entry.request);
      } else if (entry.decision == LogEntry::Decision::depart && served[entry.request]) {
        served[entry.request] = false;
        current -= benefit_of.at(entry.request);
      }
      ++next;
    }
    CHECK(row.alg_benefit == current);
  }
}

TEST_CASE("precondition policy") {
  const auto net = network_from_json(single_edge_network_json());
  auto jt = scenario_trace_json();
  jt["events"][0]["request"]["edges"][0]["demand"] = 11;  // bound is 10
  const auto trace = trace_from_json(jt, net);
  RunConfig config;
  config.p_max = 1;
  SUBCASE("default rejects the trace") {
    try {
      run(net, trace, config);
      FAIL("expected demand-too-large");
    } catch (const Error& err) {
      CHECK(err.code() == Errc::demand_too_large);
      CHECK(exit_code_for(err.code()) == 3);
    }
  }
  SUBCASE("warn mode keeps going") {
    config.precondition = RunConfig::OnPrecondition::warn;
    const auto result = run(net, trace, config);
    CHECK(result.steps.size() == 7);
  }
}

TEST_CASE("empty traces produce an empty run") {
  const auto net = network_from_json(single_edge_network_json());
  Trace empty;
  RunConfig config;
  config.baseline = true;
  const auto result = run(net, empty, config);
  CHECK(result.total_benefit == 0);
  CHECK(result.steps.empty());
  CHECK_FALSE(result.ratio.has_value());
}

TEST_CASE("generated instances are reproducible and valid") {
  RandomInstanceParams params;
  const auto a = gen_random_instance(params, 7);
  const auto b = gen_random_instance(params, 7);
  const auto c = gen_random_instance(params, 8);
  CHECK(network_to_json(a.network) == network_to_json(b.network));
  CHECK(trace_to_json(a.trace, a.network) == trace_to_json(b.trace, b.network));
  CHECK(trace_to_json(a.trace, a.network) != trace_to_json(c.trace, c.network));

  const auto wp = WeightParams::make(a.p_max, a.b_max, a.k);
  for (const auto& ev : a.trace.events) {
    if (ev.kind != TraceEvent::Kind::arrival) continue;
    CHECK_FALSE(validate(ev.request, a.network, wp).has_value());
    for (const auto& v : ev.request.pr.vertices) CHECK(check_small_demand(a.network, wp, v.demand));
    for (const auto& e : ev.request.pr.edges) CHECK(check_small_demand(a.network, wp, e.demand));
  }
}

TEST_CASE("runs are deterministic and outputs byte-identical") {
  const auto instance = gen_random_instance({}, 3);
  RunConfig config;
  config.baseline = true;
  const auto r1 = run(instance.network, instance.trace, config);
  const auto r2 = run(instance.network, instance.trace, config);
  CHECK(summary_to_json(r1) == summary_to_json(r2));

  namespace fs = std::filesystem;
  const auto dir1 = fs::temp_directory_path() / "sdnadmit_out1";
  const auto dir2 = fs::temp_directory_path() / "sdnadmit_out2";
  write_outputs(r1, instance.network, dir1.string());
  write_outputs(r2, instance.network, dir2.string());
  for (const char* name : {"decisions.jsonl", "benefit.csv", "baseline.csv", "summary.json"}) {
    CAPTURE(name);
    CHECK(read_file((dir1 / name).string()) == read_file((dir2 / name).string()));
    CHECK(!read_file((dir1 / name).string()).empty());
  }
  fs::remove_all(dir1);
  fs::remove_all(dir2);
}

TEST_CASE("decision log entries round trip through json") {
  const auto instance = gen_random_instance({}, 5);
  RunConfig config;
  const auto result = run(instance.network, instance.trace, config);
  REQUIRE(!result.log.empty());
  for (const auto& entry : result.log) {
    const Request* req = nullptr;
    if (auto it = result.requests.find(entry.request); it != result.requests.end())
      req = &it->second;
    const auto j = log_entry_to_json(entry, instance.network, req);
    const auto back = log_entry_from_json(j, instance.network, req);
    CHECK(log_entry_to_json(back, instance.network, req) == j);
  }
}

TEST_CASE("exit codes by error class") {
  CHECK(exit_code_for(Errc::parse_error) == 2);
  CHECK(exit_code_for(Errc::multiple_sources) == 2);
  CHECK(exit_code_for(Errc::demand_too_large) == 3);
  CHECK(exit_code_for(Errc::capacity_exceeded) == 4);
  CHECK(exit_code_for(Errc::contract_violation) == 4);
}
