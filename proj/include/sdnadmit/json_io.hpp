#pragma once

#include <string>

#include "json.hpp"
#include "sdnadmit/product.hpp"
#include "sdnadmit/scheduler.hpp"
#include "sdnadmit/trace.hpp"

namespace sdnadmit {

// insertion-ordered JSON keeps serialized output byte-stable
using njson = nlohmann::ordered_json;

njson network_to_json(const PhysicalNetwork& net);
PhysicalNetwork network_from_json(const njson& j);

njson request_to_json(const Request& req, const PhysicalNetwork& net);
Request request_from_json(const njson& j, const PhysicalNetwork& net);

// realizations serialize as an alternating node/edge id walk plus the
// segmentation and the realized pr-path
njson realization_to_json(const Realization& p, const PhysicalNetwork& net, const Request& req);
Realization realization_from_json(const njson& j, const PhysicalNetwork& net, const Request& req);

njson trace_to_json(const Trace& trace, const PhysicalNetwork& net);
Trace trace_from_json(const njson& j, const PhysicalNetwork& net);

njson log_entry_to_json(const LogEntry& entry, const PhysicalNetwork& net, const Request* req);
LogEntry log_entry_from_json(const njson& j, const PhysicalNetwork& net, const Request* req);

njson product_to_json(const ProductNetwork& pn, const ProductRequest& pr);

njson load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace sdnadmit
