#pragma once

#include <optional>

#include "sdnadmit/baseline.hpp"
#include "sdnadmit/json_io.hpp"
#include "sdnadmit/scheduler.hpp"
#include "sdnadmit/trace.hpp"

namespace sdnadmit {

struct RunConfig {
  std::optional<std::int64_t> k;      // default: longest pr-path in the trace
  std::optional<std::int64_t> b_max;  // default: largest benefit in the trace
  std::optional<std::int64_t> p_max;  // default: |V| * k
  RetryOrder retry_order = RetryOrder::fifo;
  bool baseline = false;        // per-step fractional optimum
  bool integral = false;        // per-step brute-force optimum (tiny runs only)
  bool dump_product = false;    // emit the product network of every arrival
  enum class OnPrecondition { reject, warn } precondition = OnPrecondition::reject;
};

struct StepRow {
  std::uint64_t t = 0;
  std::int64_t alg_benefit = 0;
  std::optional<double> opt_fractional;
  std::optional<double> opt_integral;
};

struct RunResult {
  WeightParams params;
  std::vector<LogEntry> log;
  std::map<std::string, Request> requests;  // every request the trace carried
  std::vector<StepRow> steps;               // one row per time step 0..t_max
  std::int64_t total_benefit = 0;
  std::optional<double> total_opt_fractional;
  std::optional<double> ratio;  // total benefit / total fractional optimum
  std::vector<std::pair<std::string, std::string>> product_dumps;  // filename, content
};

// Replays the trace through the scheduler, step by step. Validates every
// arriving request up front; a small-demand violation either rejects the
// trace or downgrades to a warning, per config.
RunResult run(const PhysicalNetwork& net, const Trace& trace, const RunConfig& config);

// decisions.jsonl, benefit.csv, baseline.csv (with --baseline), summary.json
// and any product dumps, all byte-deterministic
void write_outputs(const RunResult& result, const PhysicalNetwork& net,
                   const std::string& out_dir);

njson summary_to_json(const RunResult& result);

struct RandomInstanceParams {
  int max_nodes = 8;
  int max_edges = 12;
  std::int64_t max_k = 3;
  std::int64_t b_max = 4;
  int max_requests = 20;
  std::uint64_t max_gap = 2;        // arrival spacing
  std::uint64_t max_duration = 12;  // lifetime of a request
};

// Seeded, reproducible instance: a connected multigraph plus a validated
// trace whose demands respect the small-demand bound.
GeneratedInstance gen_random_instance(const RandomInstanceParams& params, std::uint64_t seed);

}  // namespace sdnadmit
