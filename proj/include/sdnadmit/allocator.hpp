#pragma once

#include <optional>

#include "sdnadmit/oracle.hpp"

namespace sdnadmit {

// One admission attempt: weigh every resource by its exp-load, ask the oracle
// for a lightest realization within the benefit budget, and on success charge
// demand times multiplicity to every traversed link and every action
// placement. The state is untouched on failure. A post-update load above 1 is
// impossible under the small-demand condition and aborts the run.
std::optional<Realization> allocate(const Request& req, LoadState& state,
                                    const WeightParams& params);

// Returns exactly what allocate charged for this realization. Throws
// negative_flow when the books do not balance (double free, never allocated).
void free_realization(const Request& req, const Realization& p, LoadState& state);

}  // namespace sdnadmit
