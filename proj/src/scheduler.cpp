#include "sdnadmit/scheduler.hpp"

#include <algorithm>

namespace sdnadmit {

std::uint64_t realization_digest(const Realization& p) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::int64_t value) {
    auto u = static_cast<std::uint64_t>(value);
    for (int i = 0; i < 8; ++i) {
      h ^= (u >> (8 * i)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(static_cast<std::int64_t>(p.walk_nodes.size()));
  for (int v : p.walk_nodes) mix(v);
  for (int e : p.walk_edges) mix(e);
  mix(static_cast<std::int64_t>(p.segmentation.size()));
  for (int s : p.segmentation) mix(s);
  for (int x : p.pr_vertices) mix(x);
  for (int y : p.pr_edges) mix(y);
  return h;
}

Scheduler::Scheduler(const PhysicalNetwork& net, const WeightParams& params,
                     RetryOrder retry_order)
    : net_(&net), params_(params), retry_order_(retry_order), state_(net) {}

bool Scheduler::try_route(const Request& req, std::size_t arrival_seq, std::uint64_t t,
                          LogEntry::Event event) {
  auto p = allocate(req, state_, params_);
  if (!p) return false;
  Served s;
  s.request = req;
  s.realization = *p;
  s.realization_digest = realization_digest(*p);
  s.arrival_seq = arrival_seq;
  served_.emplace(req.id, std::move(s));
  log_.push_back({t, event, req.id, LogEntry::Decision::accept, std::move(p)});
  return true;
}

const LogEntry& Scheduler::on_arrival(Request req, std::uint64_t t) {
  if (!seen_ids_.insert(req.id).second)
    throw Error(Errc::duplicate_request, "request id " + req.id + " already used");
  req.arrival = t;
  const std::size_t seq = next_seq_++;
  if (!try_route(req, seq, t, LogEntry::Event::arrival)) {
    log_.push_back({t, LogEntry::Event::arrival, req.id, LogEntry::Decision::standby, {}});
    standby_.push_back({std::move(req), seq});
  }
  ++version_;
  check_invariants();
  return log_.back();
}

std::vector<std::size_t> Scheduler::retry_positions() const {
  std::vector<std::size_t> order(standby_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto total_demand = [](const Request& r) {
    std::int64_t d = 0;
    for (const auto& v : r.pr.vertices) d += v.demand;
    for (const auto& e : r.pr.edges) d += e.demand;
    return d;
  };
  switch (retry_order_) {
    case RetryOrder::fifo:
      break;  // standby_ is already in arrival order
    case RetryOrder::benefit:
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return standby_[a].request.benefit > standby_[b].request.benefit;
      });
      break;
    case RetryOrder::density:
      // benefit per unit of total demand, compared exactly by cross products
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& ra = standby_[a].request;
        const auto& rb = standby_[b].request;
        return ra.benefit * total_demand(rb) > rb.benefit * total_demand(ra);
      });
      break;
  }
  return order;
}

std::vector<std::string> Scheduler::on_departure(const std::string& request_id, std::uint64_t t) {
  auto it = served_.find(request_id);
  if (it != served_.end()) {
    if (realization_digest(it->second.realization) != it->second.realization_digest)
      throw Error(Errc::contract_violation,
                  "realization of " + request_id + " changed while served");
    free_realization(it->second.request, it->second.realization, state_);
    served_.erase(it);
  } else {
    auto pos = std::find_if(standby_.begin(), standby_.end(),
                            [&](const Standby& s) { return s.request.id == request_id; });
    if (pos == standby_.end())
      throw Error(Errc::unknown_request, "departure of unknown or inactive request " + request_id);
    standby_.erase(pos);
  }
  log_.push_back({t, LogEntry::Event::departure, request_id, LogEntry::Decision::depart, {}});

  // one retry pass over the standby list; acceptances change the weights seen
  // by later candidates in the same pass
  std::vector<std::string> accepted;
  std::vector<std::string> retry_ids;
  for (std::size_t pos : retry_positions()) retry_ids.push_back(standby_[pos].request.id);
  for (const auto& id : retry_ids) {
    auto pos = std::find_if(standby_.begin(), standby_.end(),
                            [&](const Standby& s) { return s.request.id == id; });
    if (pos == standby_.end()) continue;
    if (try_route(pos->request, pos->arrival_seq, t, LogEntry::Event::retry)) {
      accepted.push_back(id);
      standby_.erase(pos);
    }
  }

  // standby completeness: nothing left on the list would be admitted against
  // the state this event ends with
  for (const auto& s : standby_)
    if (find_realization(*net_, s.request, state_, params_))
      throw Error(Errc::contract_violation,
                  "standby request " + s.request.id + " was admissible but left waiting");

  ++version_;
  check_invariants();
  return accepted;
}

std::int64_t Scheduler::benefit_now() const {
  std::int64_t total = 0;
  for (const auto& [id, s] : served_) total += s.request.benefit;
  return total;
}

std::vector<const Request*> Scheduler::active_requests() const {
  std::vector<std::pair<std::size_t, const Request*>> seq;
  for (const auto& [id, s] : served_) seq.emplace_back(s.arrival_seq, &s.request);
  for (const auto& s : standby_) seq.emplace_back(s.arrival_seq, &s.request);
  std::sort(seq.begin(), seq.end());
  std::vector<const Request*> out;
  out.reserve(seq.size());
  for (const auto& [unused, r] : seq) out.push_back(r);
  return out;
}

const Realization* Scheduler::realization_of(const std::string& request_id) const {
  auto it = served_.find(request_id);
  return it == served_.end() ? nullptr : &it->second.realization;
}

void Scheduler::check_invariants() const {
  // exact conservation: flows equal the sum of charges of served requests
  std::vector<std::int64_t> expected(static_cast<std::size_t>(net_->resource_count()), 0);
  for (const auto& [id, s] : served_) {
    if (realization_digest(s.realization) != s.realization_digest)
      throw Error(Errc::contract_violation, "realization of " + id + " changed while served");
    for (const auto& [resource, amount] : realization_charges(*net_, s.request, s.realization))
      expected[static_cast<std::size_t>(resource)] += amount;
  }
  for (ResourceIdx r = 0; r < net_->resource_count(); ++r) {
    if (expected[static_cast<std::size_t>(r)] != state_.flow(r))
      throw Error(Errc::contract_violation,
                  "flow on " + net_->resource_id(r) + " does not match the active set");
    if (state_.flow(r) < 0 || state_.flow(r) > net_->capacity(r))
      throw Error(Errc::capacity_exceeded, "load out of range on " + net_->resource_id(r));
  }
  for (const auto& s : standby_)
    if (served_.count(s.request.id))
      throw Error(Errc::contract_violation, s.request.id + " is both served and standby");
}

}  // namespace sdnadmit
