#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sdnadmit/network.hpp"

namespace sdnadmit {

enum class PrRole { source, sink, action };

struct PrVertex {
  std::string id;
  PrRole role = PrRole::action;
  std::int64_t demand = 1;
  std::vector<NodeIdx> allowed_nodes;  // sorted, unique
};

struct PrEdge {
  std::string id;
  int tail = -1;
  int head = -1;
  std::int64_t demand = 1;
  std::vector<EdgeIdx> allowed_edges;  // sorted, unique; materialized even when defaulted
  bool all_edges = false;              // true when the edge set defaulted to "every link"
};

/*
  PrGraph — the abstract plan of a request: a DAG with one source, one sink,
  action vertices in between. Every source-to-sink path spells an admissible
  sequence of processing steps; routing happens along its edges.
*/
struct PrGraph {
  std::vector<PrVertex> vertices;
  std::vector<PrEdge> edges;
  int source = -1;
  int sink = -1;
  std::vector<std::vector<int>> out;  // edge indices by tail vertex
  std::vector<std::vector<int>> in;   // edge indices by head vertex
  int longest_st_path_edges = 0;

  std::optional<int> vertex_index(std::string_view id) const;
  std::optional<int> edge_index(std::string_view id) const;

  // Fills adjacency, locates source/sink, checks single-source/single-sink,
  // acyclicity and that every component lies on a source-sink path; computes
  // the longest path length. Returns the first violation, if any.
  std::optional<Error> finalize();
};

struct Request {
  std::string id;
  PrGraph pr;
  std::int64_t benefit = 1;
  std::uint64_t arrival = 0;
};

// Full request validation against a network and run parameters: structure,
// placement sets, benefit bound, path-length bound and the small-demand
// condition. Returns the first violation, if any.
std::optional<Error> validate(const Request& req, const PhysicalNetwork& net,
                              const WeightParams& params);

struct ActionSpec {
  std::string name;                 // used to derive the vertex id
  std::vector<NodeIdx> nodes;       // where this action may run
  std::int64_t demand = 1;          // processing demand
};

// Path-shaped request s -> a1 -> ... -> an -> t. edge_demands has one entry
// per pr-edge (actions.size() + 1); every pr-edge may use any physical link.
Request serial_chain(const std::string& id, const PhysicalNetwork& net,
                     std::vector<NodeIdx> source_nodes, std::vector<NodeIdx> sink_nodes,
                     const std::vector<ActionSpec>& actions,
                     const std::vector<std::int64_t>& edge_demands, std::int64_t benefit);

// Builds the position automaton of a star-free regular expression (symbols,
// concatenation with optional '.'/'·', alternation '|', parentheses) and
// turns it into a request. Each symbol occurrence becomes one action vertex
// named "<symbol><position>". Kleene star and other repetition operators are
// rejected. `demand` applies uniformly to every pr-vertex and pr-edge.
Request from_regex(const std::string& id, const PhysicalNetwork& net, const std::string& expr,
                   const std::map<char, std::vector<NodeIdx>>& action_nodes,
                   std::vector<NodeIdx> source_nodes, std::vector<NodeIdx> sink_nodes,
                   std::int64_t demand, std::int64_t benefit);

}  // namespace sdnadmit
