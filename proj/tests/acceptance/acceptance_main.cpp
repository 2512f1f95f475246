/*
  Acceptance suite: drives the whole engine end to end and prints one
  PASS/FAIL line per criterion. Exit status is nonzero when anything fails.

  Criteria:
    1  per-step guarantee  3*phi*benefit_t >= opt_fractional(t) - 1e-6
    2  exact capacity safety and flow conservation after every event
    3  fold/expand bijection and weight preservation on 1000 product paths
    4  oracle agreement with brute-force enumeration on 100 tiny instances
    5  the worked single-link admission scenario, decision for decision
    6  service-model contract: immediate responses, no preemption, replays
    7  ratio trend on the adversarial family (reported as a curve)
    8  dominance chain  alg <= integral opt <= fractional opt
*/
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "sdnadmit/harness.hpp"

using namespace sdnadmit;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// ---------------------------------------------------------------- criterion 1
Outcome per_step_guarantee() {
  const int instances = 200;
  double worst_margin = std::numeric_limits<double>::infinity();
  std::size_t steps_checked = 0;
  for (std::uint64_t seed = 1; seed <= instances; ++seed) {
    const auto instance = gen_random_instance({}, seed);
    RunConfig config;
    config.baseline = true;
    const auto result = run(instance.network, instance.trace, config);
    for (const auto& row : result.steps) {
      const double lhs = 3.0 * result.params.phi * static_cast<double>(row.alg_benefit);
      const double rhs = row.opt_fractional.value_or(0.0);
      const double margin = lhs - rhs;
      worst_margin = std::min(worst_margin, margin);
      ++steps_checked;
      if (margin < -1e-6) {
        std::ostringstream ss;
        ss << "violated at seed " << seed << " t=" << row.t << ": 3*phi*" << row.alg_benefit
           << " = " << lhs << " < " << rhs;
        return {false, ss.str()};
      }
    }
  }
  std::ostringstream ss;
  ss << instances << " instances, " << steps_checked << " steps, worst margin " << worst_margin;
  return {true, ss.str()};
}

// ---------------------------------------------------------------- criterion 2
Outcome capacity_and_conservation() {
  std::size_t events_checked = 0;
  auto audit = [&](const PhysicalNetwork& net, const Trace& trace, const WeightParams& wp) {
    Scheduler sched(net, wp);
    std::map<std::string, Request> by_id;
    for (const auto& ev : trace.events)
      if (ev.kind == TraceEvent::Kind::arrival) by_id.emplace(ev.request.id, ev.request);

    // independent books: replay the log decisions and recompute all charges
    std::map<std::string, Realization> served;
    auto verify = [&] {
      std::vector<std::int64_t> expected(static_cast<std::size_t>(net.resource_count()), 0);
      for (const auto& [id, p] : served)
        for (const auto& [resource, amount] : realization_charges(net, by_id.at(id), p))
          expected[static_cast<std::size_t>(resource)] += amount;
      for (ResourceIdx r = 0; r < net.resource_count(); ++r) {
        if (expected[static_cast<std::size_t>(r)] != sched.load_state().flow(r))
          throw Error(Errc::contract_violation, "conservation audit failed");
        if (sched.load_state().flow(r) > net.capacity(r))
          throw Error(Errc::capacity_exceeded, "capacity audit failed");
      }
      ++events_checked;
    };

    std::size_t log_seen = 0;
    for (const auto& ev : trace.events) {
      if (ev.kind == TraceEvent::Kind::arrival)
        sched.on_arrival(ev.request, ev.t);
      else
        sched.on_departure(ev.request_id, ev.t);
      for (; log_seen < sched.log().size(); ++log_seen) {
        const auto& entry = sched.log()[log_seen];
        if (entry.decision == LogEntry::Decision::accept)
          served.emplace(entry.request, *entry.realization);
        else if (entry.decision == LogEntry::Decision::depart)
          served.erase(entry.request);
      }
      verify();
    }
  };

  for (std::uint64_t seed = 300; seed < 330; ++seed) {
    const auto instance = gen_random_instance({}, seed);
    audit(instance.network, instance.trace,
          WeightParams::make(instance.p_max, instance.b_max, instance.k));
  }
  for (int n : {4, 16}) {
    LowerBoundParams params;
    params.n = n;
    params.quiet = 8;
    const auto instance = gen_lower_bound_trace(params);
    audit(instance.network, instance.trace,
          WeightParams::make(instance.p_max, instance.b_max, instance.k));
  }
  return {true, std::to_string(events_checked) + " events audited, flows exact and within capacity"};
}

// ---------------------------------------------------------------- criterion 3
Outcome fold_expand_bijection() {
  std::mt19937_64 weight_rng(2026);
  std::size_t checked = 0;
  double worst = 0.0;
  ProductOptions options;
  options.capacity_filter = false;
  for (std::uint64_t seed = 1000; checked < 1000; ++seed) {
    RandomInstanceParams params;
    params.max_nodes = 6;
    params.max_edges = 9;
    params.max_requests = 5;
    const auto instance = gen_random_instance(params, seed);
    const auto& net = instance.network;
    std::vector<double> weights(static_cast<std::size_t>(net.resource_count()));
    for (auto& w : weights) w = std::uniform_real_distribution<double>(0.0, 2.0)(weight_rng);
    for (const auto& ev : instance.trace.events) {
      if (ev.kind != TraceEvent::Kind::arrival || checked >= 1000) continue;
      std::vector<EnumeratedRealization> paths;
      try {
        paths = enumerate_realizations(net, ev.request, weights,
                                       std::numeric_limits<double>::infinity(), options, 300);
      } catch (const Error& e) {
        if (e.code() == Errc::enumeration_explosion) continue;
        throw;
      }
      auto [pn, pr] = build_product(net, ev.request, weights, options);
      for (const auto& found : paths) {
        if (checked >= 1000) break;
        ++checked;
        const auto back = expand(pn, pr, found.realization);
        if (back.start != found.path.start || back.arcs != found.path.arcs)
          return {false, "expand(fold(p)) != p"};
        if (!(fold(pn, pr, back) == found.realization))
          return {false, "fold(expand(p)) != p"};
        const double rw = realization_weight(net, ev.request, found.realization, weights);
        const double gap = std::abs(rw - arc_weight_sum(pn, found.path));
        worst = std::max(worst, gap);
        if (gap > 1e-12) return {false, "weight drift " + std::to_string(gap)};
        for (const auto& [resource, count] :
             resource_multiplicities(net, ev.request, found.realization))
          if (count > instance.k) return {false, "multiplicity above k"};
      }
    }
  }
  std::ostringstream ss;
  ss << checked << " paths, max weight drift " << worst;
  return {true, ss.str()};
}

// ---------------------------------------------------------------- criterion 4
Outcome oracle_optimality() {
  int instances = 0;
  std::size_t comparisons = 0;
  for (std::uint64_t seed = 5000; instances < 100; ++seed) {
    RandomInstanceParams params;
    params.max_nodes = 5;
    params.max_edges = 7;
    params.max_requests = 6;
    const auto instance = gen_random_instance(params, seed);
    const auto& net = instance.network;
    const auto wp = WeightParams::make(instance.p_max, instance.b_max, instance.k);

    LoadState state(net);
    std::vector<const Request*> arrivals;
    for (const auto& ev : instance.trace.events)
      if (ev.kind == TraceEvent::Kind::arrival) arrivals.push_back(&ev.request);
    for (std::size_t i = 0; i + 1 < arrivals.size(); i += 2) allocate(*arrivals[i], state, wp);

    ProductOptions options;
    options.capacity_filter = true;
    options.params = wp;
    const auto weights = exp_load_all(state, wp);
    bool usable = true;
    for (const Request* r : arrivals) {
      std::vector<EnumeratedRealization> all;
      try {
        all = enumerate_realizations(net, *r, weights, static_cast<double>(r->benefit), options,
                                     5000);
      } catch (const Error& e) {
        if (e.code() == Errc::enumeration_explosion) {
          usable = false;
          break;
        }
        throw;
      }
      const auto found = find_realization(net, *r, state, wp);
      if (all.empty() != !found.has_value())
        return {false, "emptiness disagreement at seed " + std::to_string(seed)};
      if (found) {
        double min_weight = std::numeric_limits<double>::infinity();
        for (const auto& e : all) min_weight = std::min(min_weight, e.weight);
        const double got = realization_weight(net, *r, *found, weights);
        if (std::abs(got - min_weight) > 1e-9)
          return {false, "weight disagreement " + std::to_string(got) + " vs " +
                             std::to_string(min_weight)};
        ++comparisons;
      }
    }
    if (usable) ++instances;
  }
  return {true, "100 instances, " + std::to_string(comparisons) + " admissible minima matched"};
}

// ---------------------------------------------------------------- criterion 5
Outcome worked_scenario() {
  auto net = PhysicalNetwork::build({{"u", 60}, {"v", 60}}, {{"uv", 0, 1, 60}});
  Trace trace;
  for (int i = 1; i <= 5; ++i) {
    TraceEvent ev;
    ev.t = static_cast<std::uint64_t>(i);
    ev.kind = TraceEvent::Kind::arrival;
    ev.request = serial_chain("r" + std::to_string(i), net, {0}, {1}, {}, {10}, 1);
    ev.request_id = ev.request.id;
    trace.events.push_back(std::move(ev));
  }
  TraceEvent leave;
  leave.t = 6;
  leave.kind = TraceEvent::Kind::departure;
  leave.request_id = "r1";
  trace.events.push_back(leave);

  RunConfig config;
  config.p_max = 1;  // every realization here is a single link; phi = log2(4) = 2
  const auto result = run(net, trace, config);
  if (result.params.phi != 2.0) return {false, "phi should be exactly 2"};

  const char* expected[] = {"r1 accept", "r2 accept", "r3 accept", "r4 accept",
                            "r5 standby", "r1 depart", "r5 accept"};
  if (result.log.size() != 7) return {false, "expected 7 decisions"};
  for (std::size_t i = 0; i < 7; ++i) {
    const auto& entry = result.log[i];
    const std::string got =
        entry.request + (entry.decision == LogEntry::Decision::accept    ? " accept"
                         : entry.decision == LogEntry::Decision::standby ? " standby"
                                                                         : " depart");
    if (got != expected[i])
      return {false, "decision " + std::to_string(i) + " was '" + got + "', wanted '" +
                         expected[i] + "'"};
  }
  return {true, "requests 1-4 accepted, 5 standby, then accepted on the departure"};
}

// ---------------------------------------------------------------- criterion 6
Outcome service_contract() {
  for (std::uint64_t seed = 600; seed < 620; ++seed) {
    const auto instance = gen_random_instance({}, seed);
    RunConfig config;
    const auto a = run(instance.network, instance.trace, config);
    const auto b = run(instance.network, instance.trace, config);

    // byte-identical replay
    auto render = [&](const RunResult& r) {
      std::string text;
      for (const auto& entry : r.log) {
        const Request* req = nullptr;
        if (auto it = r.requests.find(entry.request); it != r.requests.end()) req = &it->second;
        text += log_entry_to_json(entry, instance.network, req).dump() + "\n";
      }
      return text;
    };
    if (render(a) != render(b)) return {false, "replay differs at seed " + std::to_string(seed)};

    // exactly one immediate response per arrival
    for (const auto& ev : instance.trace.events) {
      if (ev.kind != TraceEvent::Kind::arrival) continue;
      int responses = 0;
      for (const auto& entry : a.log)
        if (entry.event == LogEntry::Event::arrival && entry.request == ev.request_id) {
          ++responses;
          if (entry.t != ev.t) return {false, "response not immediate"};
          if (entry.decision == LogEntry::Decision::depart) return {false, "bad response"};
        }
      if (responses != 1)
        return {false, ev.request_id + " got " + std::to_string(responses) + " responses"};
    }

    // accepted at most once, never rerouted: one realization per request
    std::map<std::string, std::string> first_path;
    for (const auto& entry : a.log) {
      if (entry.decision != LogEntry::Decision::accept) continue;
      const auto key = entry.request;
      const auto serialized =
          log_entry_to_json(entry, instance.network, &a.requests.at(key)).dump();
      if (first_path.count(key)) return {false, key + " accepted twice"};
      first_path[key] = serialized;
    }
  }
  return {true, "20 traces: immediate responses, single acceptance, byte-identical replays"};
}

// ---------------------------------------------------------------- criterion 7
Outcome lower_bound_trend() {
  std::ostringstream curve;
  double ratio_small = 0.0, ratio_large = 0.0;
  for (int n : {4, 16, 64, 256}) {
    LowerBoundParams params;
    params.n = n;
    params.quiet = 64;
    const auto instance = gen_lower_bound_trace(params);
    RunConfig config;
    config.baseline = true;
    config.k = instance.k;
    config.b_max = instance.b_max;
    config.p_max = instance.p_max;
    const auto result = run(instance.network, instance.trace, config);
    if (!result.ratio) return {false, "no ratio at n=" + std::to_string(n)};
    curve << " n=" << n << ":" << *result.ratio;
    if (n == 4) ratio_small = *result.ratio;
    if (n == 256) ratio_large = *result.ratio;
  }
  if (!(ratio_large < ratio_small))
    return {false, "ratio did not shrink:" + curve.str()};
  return {true, "ratio curve" + curve.str()};
}

// ---------------------------------------------------------------- criterion 8
Outcome dominance_chain() {
  std::size_t steps_checked = 0;
  for (std::uint64_t seed = 900; seed < 925; ++seed) {
    RandomInstanceParams params;
    params.max_nodes = 4;
    params.max_edges = 6;
    params.max_requests = 8;
    const auto instance = gen_random_instance(params, seed);
    RunConfig config;
    config.baseline = true;
    config.integral = true;
    const auto result = run(instance.network, instance.trace, config);
    for (const auto& row : result.steps) {
      const double alg = static_cast<double>(row.alg_benefit);
      const double integral = row.opt_integral.value_or(0.0);
      const double fractional = row.opt_fractional.value_or(0.0);
      if (alg > integral + 1e-9)
        return {false, "alg above the integral optimum at seed " + std::to_string(seed)};
      if (integral > fractional + 1e-6)
        return {false, "integral above the fractional optimum at seed " + std::to_string(seed)};
      ++steps_checked;
    }
  }
  return {true, std::to_string(steps_checked) + " steps satisfy alg <= int-opt <= frac-opt"};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"per-step guarantee 3*phi*alg >= opt_f", per_step_guarantee},
      {"capacity safety and conservation", capacity_and_conservation},
      {"fold/expand bijection", fold_expand_bijection},
      {"oracle optimality", oracle_optimality},
      {"worked single-link scenario", worked_scenario},
      {"service-model contract", service_contract},
      {"lower-bound ratio trend", lower_bound_trend},
      {"dominance chain", dominance_chain},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, fn] : criteria) {
    ++index;
    Outcome outcome;
    try {
      outcome = fn();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s  criterion %d: %s — %s\n", outcome.pass ? "PASS" : "FAIL", index, name,
                outcome.detail.c_str());
    std::fflush(stdout);
    if (!outcome.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
