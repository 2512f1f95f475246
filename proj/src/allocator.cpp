#include "sdnadmit/allocator.hpp"

namespace sdnadmit {

std::optional<Realization> allocate(const Request& req, LoadState& state,
                                    const WeightParams& params) {
  auto p = find_realization(state.net(), req, state, params);
  if (!p) return std::nullopt;
  for (const auto& [resource, amount] : realization_charges(state.net(), req, *p))
    state.add_flow(resource, amount);
  return p;
}

void free_realization(const Request& req, const Realization& p, LoadState& state) {
  for (const auto& [resource, amount] : realization_charges(state.net(), req, p))
    state.add_flow(resource, -amount);
}

}  // namespace sdnadmit
