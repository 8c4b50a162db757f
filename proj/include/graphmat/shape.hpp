#pragma once

// Shape graphs H: the template whose embeddings into an input graph define
// the entries of a graph matrix. Vertices carry a dense index assigned in
// declaration order (U, then V, then W); that order is also the tie-break
// order used by the cover and separator routines.

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "graphmat/error.hpp"

namespace graphmat {

using ShapeVertex = std::size_t;
using ShapeEdge = std::pair<ShapeVertex, ShapeVertex>;

struct ShapeOptions {
  bool intersection_mode = false;
  // Every middle vertex must touch an edge. Disabled only for the auxiliary
  // shapes produced by decompose_shape, whose separator vertices may be bare.
  bool require_middle_degree = true;
  std::size_t max_vertices = 16;
};

class ShapeGraph {
 public:
  ShapeGraph() = default;

  static ShapeGraph create(const std::vector<std::string>& u_names, const std::vector<std::string>& v_names,
                           const std::vector<std::string>& w_names,
                           const std::vector<std::pair<std::string, std::string>>& edge_names,
                           ShapeOptions options = {}) {
    ShapeGraph h;
    h.options_ = options;
    auto add_name = [&](const std::string& name) -> ShapeVertex {
      require(!name.empty(), ErrorKind::invalid_shape, "vertex names must be nonempty");
      if (auto existing = h.find(name)) return *existing;
      h.names_.push_back(name);
      return h.names_.size() - 1;
    };
    for (const auto& name : u_names) {
      require(!h.find(name).has_value(), ErrorKind::invalid_shape, "duplicate vertex '" + name + "' in U");
      h.u_.push_back(add_name(name));
    }
    for (const auto& name : v_names) {
      const auto existing = h.find(name);
      if (existing) {
        const bool in_v = std::find(h.v_.begin(), h.v_.end(), *existing) != h.v_.end();
        require(!in_v, ErrorKind::invalid_shape, "duplicate vertex '" + name + "' in V");
        require(options.intersection_mode, ErrorKind::invalid_shape,
                "vertex '" + name + "' is in both U and V but intersection_mode is off");
      }
      h.v_.push_back(add_name(name));
    }
    for (const auto& name : w_names) {
      require(!h.find(name).has_value(), ErrorKind::invalid_shape,
              "middle vertex '" + name + "' duplicates another vertex");
      h.w_.push_back(add_name(name));
    }
    require(h.names_.size() <= options.max_vertices, ErrorKind::cap_exceeded,
            "shape has " + std::to_string(h.names_.size()) + " vertices, cap is " +
                std::to_string(options.max_vertices));

    h.adjacency_.assign(h.t(), {});
    for (const auto& [a_name, b_name] : edge_names) {
      const auto a = h.find(a_name);
      const auto b = h.find(b_name);
      require(a.has_value(), ErrorKind::invalid_shape, "edge references unknown vertex '" + a_name + "'");
      require(b.has_value(), ErrorKind::invalid_shape, "edge references unknown vertex '" + b_name + "'");
      require(*a != *b, ErrorKind::invalid_shape, "self-loop on '" + a_name + "'");
      ShapeEdge e{std::min(*a, *b), std::max(*a, *b)};
      require(std::find(h.edges_.begin(), h.edges_.end(), e) == h.edges_.end(), ErrorKind::invalid_shape,
              "duplicate edge " + a_name + "-" + b_name);
      h.edges_.push_back(e);
      h.adjacency_[e.first].push_back(e.second);
      h.adjacency_[e.second].push_back(e.first);
    }
    std::sort(h.edges_.begin(), h.edges_.end());
    for (auto& nbrs : h.adjacency_) std::sort(nbrs.begin(), nbrs.end());

    if (options.require_middle_degree) {
      for (ShapeVertex w : h.w_) {
        require(!h.adjacency_[w].empty(), ErrorKind::invalid_shape,
                "middle vertex '" + h.names_[w] + "' has degree 0");
      }
    }
    h.role_u_.assign(h.t(), -1);
    h.role_v_.assign(h.t(), -1);
    h.role_w_.assign(h.t(), -1);
    for (std::size_t i = 0; i < h.u_.size(); ++i) h.role_u_[h.u_[i]] = static_cast<int>(i);
    for (std::size_t j = 0; j < h.v_.size(); ++j) h.role_v_[h.v_[j]] = static_cast<int>(j);
    for (std::size_t k = 0; k < h.w_.size(); ++k) h.role_w_[h.w_[k]] = static_cast<int>(k);
    return h;
  }

  [[nodiscard]] std::size_t t() const noexcept { return names_.size(); }
  [[nodiscard]] std::size_t x() const noexcept { return u_.size(); }
  [[nodiscard]] std::size_t y() const noexcept { return v_.size(); }
  [[nodiscard]] std::size_t z() const noexcept { return w_.size(); }
  // |U ∩ V|
  [[nodiscard]] std::size_t r() const noexcept { return u_.size() + v_.size() + w_.size() - names_.size(); }

  [[nodiscard]] const std::vector<ShapeVertex>& U() const noexcept { return u_; }
  [[nodiscard]] const std::vector<ShapeVertex>& V() const noexcept { return v_; }
  [[nodiscard]] const std::vector<ShapeVertex>& W() const noexcept { return w_; }
  [[nodiscard]] const std::vector<ShapeEdge>& edges() const noexcept { return edges_; }
  [[nodiscard]] const std::vector<ShapeVertex>& neighbors(ShapeVertex v) const { return adjacency_.at(v); }
  [[nodiscard]] const std::string& name(ShapeVertex v) const { return names_.at(v); }
  [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }
  [[nodiscard]] const ShapeOptions& options() const noexcept { return options_; }
  [[nodiscard]] bool intersection_mode() const noexcept { return options_.intersection_mode; }

  // Position of v in U (resp. V, W), or -1.
  [[nodiscard]] int u_position(ShapeVertex v) const { return role_u_.at(v); }
  [[nodiscard]] int v_position(ShapeVertex v) const { return role_v_.at(v); }
  [[nodiscard]] int w_position(ShapeVertex v) const { return role_w_.at(v); }
  [[nodiscard]] bool in_U(ShapeVertex v) const { return role_u_.at(v) >= 0; }
  [[nodiscard]] bool in_V(ShapeVertex v) const { return role_v_.at(v) >= 0; }
  [[nodiscard]] bool in_W(ShapeVertex v) const { return role_w_.at(v) >= 0; }

  [[nodiscard]] bool adjacent(ShapeVertex a, ShapeVertex b) const {
    const auto& nbrs = adjacency_.at(a);
    return std::binary_search(nbrs.begin(), nbrs.end(), b);
  }

  [[nodiscard]] std::optional<ShapeVertex> find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    return std::nullopt;
  }

  // Bipartite with partite sets U and V: no middle vertices, U ∩ V empty and
  // every edge runs between U and V.
  [[nodiscard]] bool is_uv_bipartite() const {
    if (!w_.empty() || r() != 0) return false;
    return std::all_of(edges_.begin(), edges_.end(),
                       [&](const ShapeEdge& e) { return in_U(e.first) != in_U(e.second); });
  }

  // Same vertex indices with the roles of U and V exchanged; the graph matrix
  // of the result is the transpose.
  [[nodiscard]] ShapeGraph swapped() const {
    ShapeGraph h = *this;
    std::swap(h.u_, h.v_);
    std::swap(h.role_u_, h.role_v_);
    return h;
  }

  [[nodiscard]] nlohmann::json to_json() const {
    auto names_of = [&](const std::vector<ShapeVertex>& list) {
      nlohmann::json out = nlohmann::json::array();
      for (auto v : list) out.push_back(names_[v]);
      return out;
    };
    nlohmann::json doc;
    doc["U"] = names_of(u_);
    doc["V"] = names_of(v_);
    doc["W"] = names_of(w_);
    doc["edges"] = nlohmann::json::array();
    for (const auto& [a, b] : edges_) doc["edges"].push_back({names_[a], names_[b]});
    if (options_.intersection_mode) doc["intersection_mode"] = true;
    return doc;
  }

 private:
  ShapeOptions options_;
  std::vector<std::string> names_;
  std::vector<ShapeVertex> u_, v_, w_;
  std::vector<int> role_u_, role_v_, role_w_;
  std::vector<ShapeEdge> edges_;
  std::vector<std::vector<ShapeVertex>> adjacency_;
};

// Shape document: a JSON object with string arrays "U", "V", "W", an array
// "edges" of two-element name arrays, and an optional boolean
// "intersection_mode".
inline ShapeGraph parse_shape(std::string_view text, std::size_t max_vertices = 16) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::malformed_document, e.what());
  }
  require(doc.is_object(), ErrorKind::malformed_document, "shape document must be an object");
  for (const auto& [key, _] : doc.items()) {
    require(key == "U" || key == "V" || key == "W" || key == "edges" || key == "intersection_mode",
            ErrorKind::malformed_document, "unknown field '" + key + "'");
  }
  auto names = [&](const char* key) {
    std::vector<std::string> out;
    if (!doc.contains(key)) {
      require(std::string_view(key) == "W", ErrorKind::malformed_document,
              std::string("missing field '") + key + "'");
      return out;
    }
    const auto& arr = doc.at(key);
    require(arr.is_array(), ErrorKind::malformed_document, std::string("field '") + key + "' must be an array");
    for (const auto& item : arr) {
      require(item.is_string(), ErrorKind::malformed_document, std::string("entries of '") + key + "' must be strings");
      out.push_back(item.get<std::string>());
    }
    return out;
  };
  ShapeOptions options;
  options.max_vertices = max_vertices;
  if (doc.contains("intersection_mode")) {
    require(doc["intersection_mode"].is_boolean(), ErrorKind::malformed_document,
            "'intersection_mode' must be a boolean");
    options.intersection_mode = doc["intersection_mode"].get<bool>();
  }
  std::vector<std::pair<std::string, std::string>> edges;
  require(doc.contains("edges"), ErrorKind::malformed_document, "missing field 'edges'");
  require(doc["edges"].is_array(), ErrorKind::malformed_document, "'edges' must be an array");
  for (const auto& e : doc["edges"]) {
    require(e.is_array() && e.size() == 2 && e[0].is_string() && e[1].is_string(), ErrorKind::malformed_document,
            "each edge must be a pair of vertex names");
    edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return ShapeGraph::create(names("U"), names("V"), names("W"), edges, options);
}

inline ShapeGraph load_shape(const std::string& path, std::size_t max_vertices = 16) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorKind::io, "cannot open shape file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_shape(buffer.str(), max_vertices);
}

// Shapes that recur across the test and experiment suites.
namespace shapes {

inline ShapeGraph single_edge() { return ShapeGraph::create({"u1"}, {"v1"}, {}, {{"u1", "v1"}}); }

// u1 - w1 - v1
inline ShapeGraph path3() { return ShapeGraph::create({"u1"}, {"v1"}, {"w1"}, {{"u1", "w1"}, {"w1", "v1"}}); }

inline ShapeGraph figure_1a() {
  return ShapeGraph::create({"u1", "u2"}, {"v1", "v2", "v3"}, {"w1", "w2"},
                            {{"u1", "w1"}, {"u2", "w1"}, {"u2", "w2"}, {"u2", "v1"}, {"v1", "w1"}, {"v2", "w2"},
                             {"v3", "w2"}});
}

inline ShapeGraph figure_3a() {
  return ShapeGraph::create({"u1", "u2"}, {"v1", "v2", "v3"}, {},
                            {{"u1", "v1"}, {"u1", "v2"}, {"u2", "v1"}, {"u2", "v3"}});
}

inline ShapeGraph figure_4a() {
  return ShapeGraph::create({"u1", "u2"}, {"v1", "v2", "v3"}, {"w1", "w2", "w3"},
                            {{"u1", "v1"}, {"u1", "w2"}, {"u2", "w1"}, {"w1", "w2"}, {"w2", "w3"}, {"w2", "v2"},
                             {"w3", "v3"}});
}

// U = V = {s}, one middle vertex hanging off s. Entries live on the diagonal.
inline ShapeGraph shared_pendant() {
  ShapeOptions opts;
  opts.intersection_mode = true;
  return ShapeGraph::create({"s"}, {"s"}, {"w1"}, {{"s", "w1"}}, opts);
}

}  // namespace shapes

}  // namespace graphmat
