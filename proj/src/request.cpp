#include "sdnadmit/request.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <memory>
#include <set>

namespace sdnadmit {

std::optional<int> PrGraph::vertex_index(std::string_view id) const {
  for (int i = 0; i < static_cast<int>(vertices.size()); ++i)
    if (vertices[static_cast<std::size_t>(i)].id == id) return i;
  return std::nullopt;
}

std::optional<int> PrGraph::edge_index(std::string_view id) const {
  for (int i = 0; i < static_cast<int>(edges.size()); ++i)
    if (edges[static_cast<std::size_t>(i)].id == id) return i;
  return std::nullopt;
}

std::optional<Error> PrGraph::finalize() {
  const int n = static_cast<int>(vertices.size());
  const int m = static_cast<int>(edges.size());
  if (n < 2 || m < 1)
    return Error(Errc::no_source_sink, "pr-graph needs at least a source, a sink and one edge");

  {
    std::set<std::string> ids;
    for (const auto& v : vertices)
      if (v.id.empty() || !ids.insert(v.id).second)
        return Error(Errc::parse_error, "duplicate or empty pr-vertex id '" + v.id + "'");
    for (const auto& e : edges)
      if (e.id.empty() || !ids.insert(e.id).second)
        return Error(Errc::parse_error, "duplicate or empty pr-edge id '" + e.id + "'");
  }

  out.assign(static_cast<std::size_t>(n), {});
  in.assign(static_cast<std::size_t>(n), {});
  for (int i = 0; i < m; ++i) {
    const auto& e = edges[static_cast<std::size_t>(i)];
    if (e.tail < 0 || e.tail >= n || e.head < 0 || e.head >= n)
      return Error(Errc::parse_error, "pr-edge " + e.id + " references unknown vertex");
    out[static_cast<std::size_t>(e.tail)].push_back(i);
    in[static_cast<std::size_t>(e.head)].push_back(i);
  }

  std::vector<int> sources_found, sinks_found;
  for (int v = 0; v < n; ++v) {
    if (in[static_cast<std::size_t>(v)].empty()) sources_found.push_back(v);
    if (out[static_cast<std::size_t>(v)].empty()) sinks_found.push_back(v);
  }
  if (sources_found.size() > 1)
    return Error(Errc::multiple_sources, "pr-graph has " + std::to_string(sources_found.size()) +
                                             " vertices of in-degree zero");
  if (sinks_found.size() > 1)
    return Error(Errc::multiple_sinks, "pr-graph has " + std::to_string(sinks_found.size()) +
                                           " vertices of out-degree zero");
  if (sources_found.empty() || sinks_found.empty())
    return Error(Errc::cyclic_pr_graph, "pr-graph has no source or no sink vertex");
  source = sources_found.front();
  sink = sinks_found.front();
  if (source == sink) return Error(Errc::no_source_sink, "source and sink coincide");

  if (vertices[static_cast<std::size_t>(source)].role != PrRole::source)
    return Error(Errc::parse_error,
                 "vertex " + vertices[static_cast<std::size_t>(source)].id +
                     " has in-degree zero but is not declared as the source");
  if (vertices[static_cast<std::size_t>(sink)].role != PrRole::sink)
    return Error(Errc::parse_error, "vertex " + vertices[static_cast<std::size_t>(sink)].id +
                                        " has out-degree zero but is not declared as the sink");
  for (int v = 0; v < n; ++v) {
    const auto& vert = vertices[static_cast<std::size_t>(v)];
    if (v != source && vert.role == PrRole::source)
      return Error(Errc::parse_error, "vertex " + vert.id + " declared source but has in-edges");
    if (v != sink && vert.role == PrRole::sink)
      return Error(Errc::parse_error, "vertex " + vert.id + " declared sink but has out-edges");
  }

  // Kahn's algorithm: topological order or a cycle.
  std::vector<int> indeg(static_cast<std::size_t>(n), 0);
  for (const auto& e : edges) ++indeg[static_cast<std::size_t>(e.head)];
  std::deque<int> ready;
  for (int v = 0; v < n; ++v)
    if (indeg[static_cast<std::size_t>(v)] == 0) ready.push_back(v);
  std::vector<int> topo;
  while (!ready.empty()) {
    int v = ready.front();
    ready.pop_front();
    topo.push_back(v);
    for (int ei : out[static_cast<std::size_t>(v)]) {
      int h = edges[static_cast<std::size_t>(ei)].head;
      if (--indeg[static_cast<std::size_t>(h)] == 0) ready.push_back(h);
    }
  }
  if (static_cast<int>(topo.size()) != n)
    return Error(Errc::cyclic_pr_graph, "pr-graph contains a directed cycle");

  // every vertex and edge must lie on some source-sink path
  std::vector<char> fwd(static_cast<std::size_t>(n), 0), bwd(static_cast<std::size_t>(n), 0);
  fwd[static_cast<std::size_t>(source)] = 1;
  for (int v : topo)
    if (fwd[static_cast<std::size_t>(v)])
      for (int ei : out[static_cast<std::size_t>(v)])
        fwd[static_cast<std::size_t>(edges[static_cast<std::size_t>(ei)].head)] = 1;
  bwd[static_cast<std::size_t>(sink)] = 1;
  for (auto it = topo.rbegin(); it != topo.rend(); ++it)
    if (bwd[static_cast<std::size_t>(*it)])
      for (int ei : in[static_cast<std::size_t>(*it)])
        bwd[static_cast<std::size_t>(edges[static_cast<std::size_t>(ei)].tail)] = 1;
  for (int v = 0; v < n; ++v)
    if (!fwd[static_cast<std::size_t>(v)] || !bwd[static_cast<std::size_t>(v)])
      return Error(Errc::component_off_path, "pr-vertex " + vertices[static_cast<std::size_t>(v)].id +
                                                 " lies on no source-sink path");
  for (const auto& e : edges)
    if (!fwd[static_cast<std::size_t>(e.tail)] || !bwd[static_cast<std::size_t>(e.head)])
      return Error(Errc::component_off_path, "pr-edge " + e.id + " lies on no source-sink path");

  // longest source-sink path, counted in pr-edges
  std::vector<int> dist(static_cast<std::size_t>(n), 0);
  for (int v : topo)
    for (int ei : out[static_cast<std::size_t>(v)]) {
      int h = edges[static_cast<std::size_t>(ei)].head;
      dist[static_cast<std::size_t>(h)] =
          std::max(dist[static_cast<std::size_t>(h)], dist[static_cast<std::size_t>(v)] + 1);
    }
  longest_st_path_edges = dist[static_cast<std::size_t>(sink)];
  return std::nullopt;
}

namespace {

std::optional<Error> check_placements(const Request& req, const PhysicalNetwork& net) {
  for (const auto& v : req.pr.vertices) {
    if (v.allowed_nodes.empty())
      return Error(Errc::empty_placement, "pr-vertex " + v.id + " has an empty node set");
    for (NodeIdx n : v.allowed_nodes)
      if (n < 0 || n >= net.node_count())
        return Error(Errc::unknown_placement_target, "pr-vertex " + v.id);
  }
  for (const auto& e : req.pr.edges) {
    if (e.allowed_edges.empty())
      return Error(Errc::empty_placement, "pr-edge " + e.id + " has an empty edge set");
    for (EdgeIdx x : e.allowed_edges)
      if (x < 0 || x >= net.edge_count())
        return Error(Errc::unknown_placement_target, "pr-edge " + e.id);
  }
  return std::nullopt;
}

std::vector<EdgeIdx> all_edge_indices(const PhysicalNetwork& net) {
  std::vector<EdgeIdx> all(static_cast<std::size_t>(net.edge_count()));
  for (int i = 0; i < net.edge_count(); ++i) all[static_cast<std::size_t>(i)] = i;
  return all;
}

std::vector<NodeIdx> sorted_unique(std::vector<NodeIdx> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

std::optional<Error> validate(const Request& req, const PhysicalNetwork& net,
                              const WeightParams& params) {
  if (req.id.empty()) return Error(Errc::parse_error, "request id must be nonempty");

  PrGraph structure = req.pr;
  if (auto err = structure.finalize()) return err;

  if (auto err = check_placements(req, net)) return err;

  if (req.benefit < 1) return Error(Errc::parse_error, "benefit must be a positive integer");
  if (req.benefit > params.b_max)
    return Error(Errc::benefit_too_large, "request " + req.id + " pays " +
                                              std::to_string(req.benefit) + " > b_max " +
                                              std::to_string(params.b_max));
  if (structure.longest_st_path_edges > params.k)
    return Error(Errc::path_too_long,
                 "longest pr-path has " + std::to_string(structure.longest_st_path_edges) +
                     " edges > k = " + std::to_string(params.k));

  std::int64_t worst = 0;
  for (const auto& v : req.pr.vertices) {
    if (v.demand < 1) return Error(Errc::parse_error, "demand on " + v.id + " must be >= 1");
    worst = std::max(worst, v.demand);
  }
  for (const auto& e : req.pr.edges) {
    if (e.demand < 1) return Error(Errc::parse_error, "demand on " + e.id + " must be >= 1");
    worst = std::max(worst, e.demand);
  }
  if (!check_small_demand(net, params, worst))
    return Error(Errc::demand_too_large,
                 "request " + req.id + " demand " + std::to_string(worst) +
                     " exceeds min capacity / (3 k phi)");
  return std::nullopt;
}

Request serial_chain(const std::string& id, const PhysicalNetwork& net,
                     std::vector<NodeIdx> source_nodes, std::vector<NodeIdx> sink_nodes,
                     const std::vector<ActionSpec>& actions,
                     const std::vector<std::int64_t>& edge_demands, std::int64_t benefit) {
  if (actions.empty() && edge_demands.size() != 1)
    throw Error(Errc::length_mismatch, "need exactly one edge demand for a plain route");
  if (!actions.empty() && edge_demands.size() != actions.size() + 1)
    throw Error(Errc::length_mismatch,
                std::to_string(actions.size()) + " actions need " +
                    std::to_string(actions.size() + 1) + " edge demands, got " +
                    std::to_string(edge_demands.size()));

  Request req;
  req.id = id;
  req.benefit = benefit;

  auto& g = req.pr;
  g.vertices.push_back({"s", PrRole::source, 1, sorted_unique(std::move(source_nodes))});
  for (std::size_t i = 0; i < actions.size(); ++i) {
    std::string vid = actions[i].name.empty() ? "a" + std::to_string(i + 1) : actions[i].name;
    g.vertices.push_back({vid, PrRole::action, actions[i].demand, sorted_unique(actions[i].nodes)});
  }
  g.vertices.push_back({"t", PrRole::sink, 1, sorted_unique(std::move(sink_nodes))});

  const auto every_edge = all_edge_indices(net);
  for (std::size_t i = 0; i < edge_demands.size(); ++i) {
    PrEdge e;
    e.id = "e" + std::to_string(i + 1);
    e.tail = static_cast<int>(i);
    e.head = static_cast<int>(i + 1);
    e.demand = edge_demands[i];
    e.allowed_edges = every_edge;
    e.all_edges = true;
    g.edges.push_back(std::move(e));
  }
  if (auto err = g.finalize()) throw *err;
  return req;
}

namespace {

// Star-free regex AST: symbols, concatenation, alternation.
struct RegexNode {
  enum Kind { symbol, cat, alt } kind;
  char sym = 0;
  int pos = -1;  // 1-based position for symbol nodes
  std::unique_ptr<RegexNode> lhs, rhs;
};

class RegexParser {
public:
  explicit RegexParser(const std::string& text) : text_(text) {}

  std::unique_ptr<RegexNode> parse(std::vector<char>& symbols) {
    symbols_ = &symbols;
    auto node = parse_alt();
    skip_space();
    if (pos_ != text_.size())
      throw Error(Errc::parse_error, "unexpected character at offset " + std::to_string(pos_));
    return node;
  }

private:
  std::unique_ptr<RegexNode> parse_alt() {
    auto node = parse_cat();
    skip_space();
    while (peek() == '|') {
      ++pos_;
      auto rhs = parse_cat();
      auto alt = std::make_unique<RegexNode>();
      alt->kind = RegexNode::alt;
      alt->lhs = std::move(node);
      alt->rhs = std::move(rhs);
      node = std::move(alt);
      skip_space();
    }
    return node;
  }

  std::unique_ptr<RegexNode> parse_cat() {
    auto node = parse_factor();
    while (true) {
      skip_space();
      skip_concat_dot();
      skip_space();
      char c = peek();
      if (c == 0 || c == '|' || c == ')') break;
      auto rhs = parse_factor();
      auto cat = std::make_unique<RegexNode>();
      cat->kind = RegexNode::cat;
      cat->lhs = std::move(node);
      cat->rhs = std::move(rhs);
      node = std::move(cat);
    }
    return node;
  }

  std::unique_ptr<RegexNode> parse_factor() {
    skip_space();
    char c = peek();
    if (c == '*' || c == '+' || c == '?')
      throw Error(Errc::unsupported_expression,
                  std::string("repetition operator '") + c + "' is not supported");
    std::unique_ptr<RegexNode> node;
    if (c == '(') {
      ++pos_;
      node = parse_alt();
      skip_space();
      if (peek() != ')') throw Error(Errc::parse_error, "missing ')'");
      ++pos_;
    } else if (std::isalnum(static_cast<unsigned char>(c))) {
      node = std::make_unique<RegexNode>();
      node->kind = RegexNode::symbol;
      node->sym = c;
      symbols_->push_back(c);
      node->pos = static_cast<int>(symbols_->size());
      ++pos_;
    } else if (c == 0) {
      throw Error(Errc::parse_error, "empty expression");
    } else {
      throw Error(Errc::parse_error, std::string("unexpected character '") + c + "'");
    }
    skip_space();
    char n = peek();
    if (n == '*' || n == '+' || n == '?')
      throw Error(Errc::unsupported_expression,
                  std::string("repetition operator '") + n + "' is not supported");
    return node;
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : 0; }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void skip_concat_dot() {
    if (peek() == '.') {
      ++pos_;
    } else if (pos_ + 1 < text_.size() && static_cast<unsigned char>(text_[pos_]) == 0xC2 &&
               static_cast<unsigned char>(text_[pos_ + 1]) == 0xB7) {
      pos_ += 2;  // UTF-8 middle dot
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  std::vector<char>* symbols_ = nullptr;
};

struct PositionSets {
  std::set<int> first, last;
};

// Glushkov sets; no expression here is nullable (no star, no empty factor).
PositionSets glushkov(const RegexNode& node, std::vector<std::set<int>>& follow) {
  switch (node.kind) {
    case RegexNode::symbol:
      return {{node.pos}, {node.pos}};
    case RegexNode::alt: {
      auto l = glushkov(*node.lhs, follow);
      auto r = glushkov(*node.rhs, follow);
      l.first.insert(r.first.begin(), r.first.end());
      l.last.insert(r.last.begin(), r.last.end());
      return l;
    }
    case RegexNode::cat: {
      auto l = glushkov(*node.lhs, follow);
      auto r = glushkov(*node.rhs, follow);
      for (int p : l.last)
        follow[static_cast<std::size_t>(p)].insert(r.first.begin(), r.first.end());
      return {l.first, r.last};
    }
  }
  throw Error(Errc::parse_error, "malformed expression tree");
}

}  // namespace

Request from_regex(const std::string& id, const PhysicalNetwork& net, const std::string& expr,
                   const std::map<char, std::vector<NodeIdx>>& action_nodes,
                   std::vector<NodeIdx> source_nodes, std::vector<NodeIdx> sink_nodes,
                   std::int64_t demand, std::int64_t benefit) {
  std::vector<char> symbols;
  RegexParser parser(expr);
  auto root = parser.parse(symbols);

  std::vector<std::set<int>> follow(symbols.size() + 1);
  auto sets = glushkov(*root, follow);

  Request req;
  req.id = id;
  req.benefit = benefit;
  auto& g = req.pr;

  g.vertices.push_back({"s", PrRole::source, demand, sorted_unique(std::move(source_nodes))});
  for (std::size_t p = 0; p < symbols.size(); ++p) {
    char sym = symbols[p];
    auto it = action_nodes.find(sym);
    if (it == action_nodes.end() || it->second.empty())
      throw Error(Errc::empty_placement, std::string("no node set for action symbol '") + sym + "'");
    g.vertices.push_back({std::string(1, sym) + std::to_string(p + 1), PrRole::action, demand,
                          sorted_unique(it->second)});
  }
  g.vertices.push_back({"t", PrRole::sink, demand, sorted_unique(std::move(sink_nodes))});

  const int sink_vertex = static_cast<int>(symbols.size()) + 1;
  const auto every_edge = all_edge_indices(net);
  int edge_counter = 0;
  auto add_edge = [&](int tail, int head) {
    PrEdge e;
    e.id = "y" + std::to_string(++edge_counter);
    e.tail = tail;
    e.head = head;
    e.demand = demand;
    e.allowed_edges = every_edge;
    e.all_edges = true;
    g.edges.push_back(std::move(e));
  };
  for (int p : sets.first) add_edge(0, p);
  for (std::size_t p = 1; p <= symbols.size(); ++p)
    for (int q : follow[p]) add_edge(static_cast<int>(p), q);
  for (int p : sets.last) add_edge(p, sink_vertex);

  if (auto err = g.finalize()) throw *err;
  return req;
}

}  // namespace sdnadmit
