/*
  sdnadmit — online admission control for routing+processing requests.

  Subcommands:
    run    replay a trace (optionally with the per-step fractional baseline)
    gen    emit a random or adversarial (network, trace) pair
    check  validate a network and trace without running them

  Exit codes: 0 ok, 2 validation error, 3 small-demand precondition violated,
  4 internal invariant violation.
*/
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "CLI11.hpp"
#include "sdnadmit/harness.hpp"

namespace {

int log_level() {
  const char* env = std::getenv("SDNADMIT_LOG");
  if (env == nullptr) return 1;
  const std::string v = env;
  if (v == "quiet" || v == "0") return 0;
  if (v == "info" || v == "2") return 2;
  if (v == "debug" || v == "3") return 3;
  return 1;
}

void info(const std::string& msg) {
  if (log_level() >= 2) std::fprintf(stderr, "[sdnadmit] %s\n", msg.c_str());
}

sdnadmit::RetryOrder parse_retry_order(const std::string& name) {
  if (name == "fifo") return sdnadmit::RetryOrder::fifo;
  if (name == "benefit") return sdnadmit::RetryOrder::benefit;
  if (name == "density") return sdnadmit::RetryOrder::density;
  throw CLI::ValidationError("--retry-order must be fifo, benefit or density");
}

// ratio-vs-n table for the adversarial family; the curve is the result
int run_plot_data(const std::string& out_dir, std::uint64_t quiet) {
  std::string csv = "n,alg_benefit,opt_fractional,ratio\n";
  for (int n = 4; n <= 256; n *= 2) {
    sdnadmit::LowerBoundParams params;
    params.n = n;
    params.quiet = quiet;
    const auto instance = sdnadmit::gen_lower_bound_trace(params);
    sdnadmit::RunConfig config;
    config.baseline = true;
    config.k = instance.k;
    config.b_max = instance.b_max;
    config.p_max = instance.p_max;
    const auto result = sdnadmit::run(instance.network, instance.trace, config);
    csv += std::to_string(n) + "," + std::to_string(result.total_benefit) + "," +
           std::to_string(result.total_opt_fractional.value_or(0.0)) + "," +
           (result.ratio ? std::to_string(*result.ratio) : std::string("")) + "\n";
    info("lower-bound family n=" + std::to_string(n) + " done");
  }
  std::filesystem::create_directories(out_dir);
  sdnadmit::write_text_file(out_dir + "/lowerbound_ratios.csv", csv);
  std::printf("%s", csv.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"online admission control and placement simulator"};
  app.require_subcommand(1);

  // run
  auto* run_cmd = app.add_subcommand("run", "replay a trace through the online algorithm");
  std::string network_path, trace_path, out_dir = ".", retry_order = "fifo";
  bool baseline = false, integral = false, dump_product = false, allow_precondition = false;
  bool plot_data = false;
  std::uint64_t quiet_steps = 64;
  std::int64_t opt_k = 0, opt_bmax = 0, opt_pmax = 0;
  run_cmd->add_option("--network", network_path, "network JSON file");
  run_cmd->add_option("--trace", trace_path, "trace JSON file");
  run_cmd->add_flag("--baseline", baseline, "compute the per-step fractional optimum");
  run_cmd->add_flag("--integral", integral, "also brute-force the integral optimum (tiny runs)");
  run_cmd->add_option("--retry-order", retry_order, "fifo|benefit|density")->capture_default_str();
  run_cmd->add_option("--out", out_dir, "output directory")->capture_default_str();
  run_cmd->add_option("--k", opt_k, "override the pr-path length bound");
  run_cmd->add_option("--bmax", opt_bmax, "override the benefit bound");
  run_cmd->add_option("--pmax", opt_pmax, "override the realization length bound");
  run_cmd->add_flag("--dump-product", dump_product, "dump each arrival's product network");
  run_cmd->add_flag("--allow-precondition-violation", allow_precondition,
                    "warn instead of rejecting traces that break the small-demand bound");
  run_cmd->add_flag("--plot-data", plot_data,
                    "ignore --network/--trace and emit the ratio-vs-n table of the "
                    "adversarial family");
  run_cmd->add_option("--quiet-steps", quiet_steps, "quiet period for --plot-data")
      ->capture_default_str();

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "generate a (network, trace) pair");
  std::string kind = "random", gen_out = ".";
  std::uint64_t seed = 1;
  int gen_n = 8;
  std::int64_t gen_bmax = 0;
  int gen_requests = 20, gen_edges = 12;
  std::int64_t gen_k = 3;
  std::uint64_t gen_quiet = 64;
  gen_cmd->add_option("--kind", kind, "random|lowerbound")->capture_default_str();
  gen_cmd->add_option("--n", gen_n, "network size")->capture_default_str();
  gen_cmd->add_option("--seed", seed, "random seed")->capture_default_str();
  gen_cmd->add_option("--bmax", gen_bmax, "benefit bound (lowerbound: top benefit)");
  gen_cmd->add_option("--requests", gen_requests, "request count bound")->capture_default_str();
  gen_cmd->add_option("--edges", gen_edges, "edge count bound")->capture_default_str();
  gen_cmd->add_option("--k", gen_k, "pr-path length bound")->capture_default_str();
  gen_cmd->add_option("--quiet", gen_quiet, "quiet steps before the mass departure")
      ->capture_default_str();
  gen_cmd->add_option("--out", gen_out, "output directory")->capture_default_str();

  // check
  auto* check_cmd = app.add_subcommand("check", "validate a network and trace");
  std::string check_network, check_trace;
  check_cmd->add_option("--network", check_network, "network JSON file")->required();
  check_cmd->add_option("--trace", check_trace, "trace JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      if (plot_data) return run_plot_data(out_dir, quiet_steps);
      if (network_path.empty() || trace_path.empty())
        throw sdnadmit::Error(sdnadmit::Errc::parse_error,
                              "run needs --network and --trace (or --plot-data)");
      const auto net = sdnadmit::network_from_json(sdnadmit::load_json_file(network_path));
      const auto trace = sdnadmit::trace_from_json(sdnadmit::load_json_file(trace_path), net);
      sdnadmit::RunConfig config;
      config.baseline = baseline;
      config.integral = integral;
      config.dump_product = dump_product;
      config.retry_order = parse_retry_order(retry_order);
      if (allow_precondition) config.precondition = sdnadmit::RunConfig::OnPrecondition::warn;
      if (opt_k > 0) config.k = opt_k;
      if (opt_bmax > 0) config.b_max = opt_bmax;
      if (opt_pmax > 0) config.p_max = opt_pmax;
      const auto result = sdnadmit::run(net, trace, config);
      sdnadmit::write_outputs(result, net, out_dir);
      std::printf("%s\n", sdnadmit::summary_to_json(result).dump(2).c_str());
      info("outputs written to " + out_dir);
      return 0;
    }

    if (gen_cmd->parsed()) {
      sdnadmit::GeneratedInstance instance;
      if (kind == "random") {
        sdnadmit::RandomInstanceParams params;
        params.max_nodes = gen_n;
        params.max_edges = gen_edges;
        params.max_k = gen_k;
        if (gen_bmax > 0) params.b_max = gen_bmax;
        params.max_requests = gen_requests;
        instance = sdnadmit::gen_random_instance(params, seed);
      } else if (kind == "lowerbound") {
        sdnadmit::LowerBoundParams params;
        params.n = gen_n;
        params.b_max = gen_bmax;
        params.quiet = gen_quiet;
        instance = sdnadmit::gen_lower_bound_trace(params);
      } else {
        throw sdnadmit::Error(sdnadmit::Errc::parse_error, "--kind must be random or lowerbound");
      }
      std::filesystem::create_directories(gen_out);
      sdnadmit::write_text_file(gen_out + "/network.json",
                                sdnadmit::network_to_json(instance.network).dump(2) + "\n");
      sdnadmit::write_text_file(
          gen_out + "/trace.json",
          sdnadmit::trace_to_json(instance.trace, instance.network).dump(2) + "\n");
      std::printf("wrote %s/network.json and %s/trace.json\n", gen_out.c_str(), gen_out.c_str());
      return 0;
    }

    if (check_cmd->parsed()) {
      const auto net = sdnadmit::network_from_json(sdnadmit::load_json_file(check_network));
      const auto trace = sdnadmit::trace_from_json(sdnadmit::load_json_file(check_trace), net);
      // validation only: derive parameters from the trace, then validate
      // every arrival and report each problem
      int worst = 0;
      std::int64_t k = 1, b_max = 1;
      for (const auto& ev : trace.events) {
        if (ev.kind != sdnadmit::TraceEvent::Kind::arrival) continue;
        sdnadmit::PrGraph g = ev.request.pr;
        if (auto err = g.finalize()) throw *err;
        k = std::max<std::int64_t>(k, g.longest_st_path_edges);
        b_max = std::max(b_max, ev.request.benefit);
      }
      const auto wp = sdnadmit::WeightParams::make(
          static_cast<std::int64_t>(net.node_count()) * k, b_max, k);
      for (const auto& ev : trace.events) {
        if (ev.kind != sdnadmit::TraceEvent::Kind::arrival) continue;
        if (auto err = sdnadmit::validate(ev.request, net, wp)) {
          std::fprintf(stderr, "%s\n", err->what());
          worst = std::max(worst, sdnadmit::exit_code_for(err->code()));
        }
      }
      if (worst == 0) std::printf("ok\n");
      return worst;
    }
  } catch (const sdnadmit::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return sdnadmit::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  }
  return 0;
}
