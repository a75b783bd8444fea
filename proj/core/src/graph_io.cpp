#include "obslab/graph_io.hpp"

#include <istream>
#include <iterator>
#include <sstream>

#include "obslab/error.hpp"

namespace obslab {

nlohmann::ordered_json graph_to_json(const Graph& g, const std::vector<std::string>& labels) {
  nlohmann::ordered_json j;
  j["n"] = g.order();
  auto edges = nlohmann::ordered_json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  j["edges"] = std::move(edges);
  if (!labels.empty()) j["labels"] = labels;
  return j;
}

LabelledGraph graph_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
      throw InvalidInput("graph JSON needs \"n\" and \"edges\"");
    if (!j.at("n").is_number_integer()) throw InvalidInput("\"n\" must be an integer");
    const int n = j.at("n").get<int>();
    if (n < 0) throw InvalidInput("negative vertex count");
    if (!j.at("edges").is_array()) throw InvalidInput("\"edges\" must be an array");
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
        throw InvalidInput("each edge must be a pair of integers");
      edges.push_back(make_edge(e[0].get<int>(), e[1].get<int>()));
    }
    LabelledGraph out{Graph(n, edges), {}};
    if (j.contains("labels")) {
      out.labels = j.at("labels").get<std::vector<std::string>>();
      if (static_cast<int>(out.labels.size()) != n) throw InvalidInput("label table size differs from n");
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed graph JSON: ") + e.what());
  }
}

std::string graph_to_edgelist(const Graph& g) {
  std::ostringstream out;
  out << g.order() << ' ' << g.size() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

Graph graph_from_edgelist(const std::string& text) {
  std::istringstream in(text);
  long long n = -1, m = -1;
  if (!(in >> n >> m) || n < 0 || m < 0 || n > 1'000'000) throw InvalidInput("edge list needs an \"n m\" header");
  std::vector<Edge> edges;
  for (long long i = 0; i < m; ++i) {
    int u, v;
    if (!(in >> u >> v)) throw InvalidInput("edge list ended after " + std::to_string(i) + " edges");
    edges.push_back(make_edge(u, v));
  }
  std::string extra;
  if (in >> extra) throw InvalidInput("trailing data after edge list");
  Graph g(static_cast<int>(n), edges);
  if (g.size() != m) throw InvalidInput("edge list contains repeated edges");
  return g;
}

LabelledGraph read_graph(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    auto j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw InvalidInput("malformed JSON");
    return graph_from_json(j);
  }
  return {graph_from_edgelist(text), {}};
}

nlohmann::ordered_json vertex_set_to_json(const VertexSet& s) { return s.to_vector(); }

VertexSet vertex_set_from_json(const Graph& g, const nlohmann::json& j) {
  if (!j.is_array()) throw InvalidInput("vertex set must be an array");
  std::vector<int> members;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw InvalidInput("vertex ids must be integers");
    members.push_back(v.get<int>());
  }
  return g.make_set(members);
}

}  // namespace obslab
