#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sdnadmit/request.hpp"

namespace sdnadmit {

struct TraceEvent {
  enum class Kind { arrival, departure };
  std::uint64_t t = 0;
  Kind kind = Kind::arrival;
  Request request;         // arrival payload
  std::string request_id;  // departure payload (also set for arrivals)
};

// Ordered event stream: timestamps nondecreasing, every departure names a
// previously arrived, still active request. Enforced on parse.
struct Trace {
  std::vector<TraceEvent> events;
};

struct GeneratedInstance {
  PhysicalNetwork network;
  Trace trace;
  std::int64_t k = 1;
  std::int64_t b_max = 1;
  std::int64_t p_max = 1;
};

}  // namespace sdnadmit
