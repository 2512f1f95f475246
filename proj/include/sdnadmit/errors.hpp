#pragma once

#include <stdexcept>
#include <string>

namespace sdnadmit {

// Error codes cover everything a file, a request, or an internal invariant can
// get wrong. Codes marked "internal" signal bugs (they must never fire on a
// correct run) and map to a distinct process exit code.
enum class Errc {
  // input / structure
  parse_error,
  multiple_sources,
  multiple_sinks,
  no_source_sink,
  cyclic_pr_graph,
  component_off_path,
  empty_placement,
  unknown_placement_target,
  demand_too_large,
  benefit_too_large,
  path_too_long,
  length_mismatch,
  unsupported_expression,
  duplicate_request,
  unknown_request,
  unknown_resource,
  trace_order,
  // internal invariants
  negative_flow,
  capacity_exceeded,
  contract_violation,
  enumeration_explosion,
  solver_failure,
};

const char* errc_name(Errc code);

// true for codes that indicate a bug in the engine rather than bad input
bool errc_internal(Errc code);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const { return code_; }

private:
  Errc code_;
};

// Process exit codes used by the CLI: 0 ok, 2 validation, 3 precondition, 4 internal.
int exit_code_for(Errc code);

}  // namespace sdnadmit
