#include "sdnadmit/errors.hpp"

namespace sdnadmit {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::parse_error: return "parse-error";
    case Errc::multiple_sources: return "multiple-sources";
    case Errc::multiple_sinks: return "multiple-sinks";
    case Errc::no_source_sink: return "no-source-sink";
    case Errc::cyclic_pr_graph: return "cyclic-pr-graph";
    case Errc::component_off_path: return "component-off-path";
    case Errc::empty_placement: return "empty-placement";
    case Errc::unknown_placement_target: return "unknown-placement-target";
    case Errc::demand_too_large: return "demand-too-large";
    case Errc::benefit_too_large: return "benefit-too-large";
    case Errc::path_too_long: return "path-too-long";
    case Errc::length_mismatch: return "length-mismatch";
    case Errc::unsupported_expression: return "unsupported-expression";
    case Errc::duplicate_request: return "duplicate-request";
    case Errc::unknown_request: return "unknown-request";
    case Errc::unknown_resource: return "unknown-resource";
    case Errc::trace_order: return "trace-order";
    case Errc::negative_flow: return "negative-flow";
    case Errc::capacity_exceeded: return "capacity-exceeded";
    case Errc::contract_violation: return "contract-violation";
    case Errc::enumeration_explosion: return "enumeration-explosion";
    case Errc::solver_failure: return "solver-failure";
  }
  return "unknown-error";
}

bool errc_internal(Errc code) {
  switch (code) {
    case Errc::negative_flow:
    case Errc::capacity_exceeded:
    case Errc::contract_violation:
    case Errc::enumeration_explosion:
    case Errc::solver_failure:
      return true;
    default:
      return false;
  }
}

int exit_code_for(Errc code) {
  if (errc_internal(code)) return 4;
  if (code == Errc::demand_too_large) return 3;
  return 2;
}

}  // namespace sdnadmit
