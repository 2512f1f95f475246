#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sdnadmit/allocator.hpp"

namespace sdnadmit {

enum class RetryOrder { fifo, benefit, density };

struct LogEntry {
  enum class Event { arrival, departure, retry };
  enum class Decision { accept, standby, depart };

  std::uint64_t t = 0;
  Event event = Event::arrival;
  std::string request;
  Decision decision = Decision::standby;
  std::optional<Realization> realization;
};

/*
  Scheduler — the online event loop.

  Every arrival gets an immediate accept (with a realization) or standby.
  A departure frees the realization of a served request, then walks the
  standby list once in the configured retry order; each retry that fits is
  promoted with a fresh realization. Accepted requests are never rerouted or
  preempted. All state checks run after every event: exact conservation of
  flow against the active set, capacities never exceeded, realizations
  unchanged since acceptance, and (after departures) no standby request the
  allocator would still take.
*/
class Scheduler {
public:
  Scheduler(const PhysicalNetwork& net, const WeightParams& params,
            RetryOrder retry_order = RetryOrder::fifo);

  const LogEntry& on_arrival(Request req, std::uint64_t t);
  std::vector<std::string> on_departure(const std::string& request_id, std::uint64_t t);

  std::int64_t benefit_now() const;

  const std::vector<LogEntry>& log() const { return log_; }
  const LoadState& load_state() const { return state_; }
  const WeightParams& params() const { return params_; }

  // active requests (served and standby) in arrival order
  std::vector<const Request*> active_requests() const;
  std::size_t served_count() const { return served_.size(); }
  std::size_t standby_count() const { return standby_.size(); }
  const Realization* realization_of(const std::string& request_id) const;

  // changes whenever the active set or any served realization changes
  std::uint64_t active_version() const { return version_; }

  void check_invariants() const;

private:
  struct Served {
    Request request;
    Realization realization;
    std::uint64_t realization_digest = 0;
    std::size_t arrival_seq = 0;
  };
  struct Standby {
    Request request;
    std::size_t arrival_seq = 0;
  };

  bool try_route(const Request& req, std::size_t arrival_seq, std::uint64_t t,
                 LogEntry::Event event);
  std::vector<std::size_t> retry_positions() const;

  const PhysicalNetwork* net_;
  WeightParams params_;
  RetryOrder retry_order_;
  LoadState state_;
  std::map<std::string, Served> served_;
  std::vector<Standby> standby_;
  std::set<std::string> seen_ids_;
  std::vector<LogEntry> log_;
  std::size_t next_seq_ = 0;
  std::uint64_t version_ = 0;
};

std::uint64_t realization_digest(const Realization& p);

}  // namespace sdnadmit
