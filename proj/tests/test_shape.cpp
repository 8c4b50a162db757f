#include <gtest/gtest.h>

#include <random>

#include "graphmat/matching.hpp"
#include "graphmat/oracle/brute_force.hpp"
#include "graphmat/presets.hpp"
#include "graphmat/separator.hpp"
#include "graphmat/shape.hpp"

using namespace graphmat;

namespace {

std::vector<ShapeVertex> by_name(const ShapeGraph& h, std::initializer_list<const char*> names) {
  std::vector<ShapeVertex> out;
  for (auto n : names) out.push_back(*h.find(n));
  return out;
}

ErrorKind parse_error(const std::string& text) {
  try {
    parse_shape(text);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an error for " << text;
  return ErrorKind::io;
}

}  // namespace

TEST(ParseShape, SingleEdgeDocument) {
  const auto h = parse_shape(R"({"U":["u1"],"V":["v1"],"W":[],"edges":[["u1","v1"]]})");
  EXPECT_EQ(h.t(), 2u);
  EXPECT_EQ(h.x(), 1u);
  EXPECT_EQ(h.y(), 1u);
  EXPECT_EQ(h.z(), 0u);
  EXPECT_EQ(h.edges().size(), 1u);
  EXPECT_TRUE(h.is_uv_bipartite());
}

TEST(ParseShape, Figure1aCounts) {
  const auto h = shapes::figure_1a();
  EXPECT_EQ(h.t(), 7u);
  EXPECT_EQ(h.z(), 2u);
  EXPECT_EQ(h.edges().size(), 7u);
}

TEST(ParseShape, RoundTripThroughJson) {
  for (const auto& h : {shapes::figure_1a(), shapes::figure_4a(), shapes::shared_pendant()}) {
    const auto back = parse_shape(h.to_json().dump());
    EXPECT_EQ(back.names(), h.names());
    EXPECT_EQ(back.edges(), h.edges());
    EXPECT_EQ(back.r(), h.r());
  }
}

TEST(ParseShape, RejectsIsolatedMiddleVertex) {
  EXPECT_EQ(parse_error(R"({"U":["u1"],"V":["v1"],"W":["w1"],"edges":[["u1","v1"]]})"), ErrorKind::invalid_shape);
}

TEST(ParseShape, RejectsInvalidDocuments) {
  EXPECT_EQ(parse_error("not json"), ErrorKind::malformed_document);
  EXPECT_EQ(parse_error(R"({"U":["u1"],"V":["v1"],"W":[],"edges":[],"extra":1})"), ErrorKind::malformed_document);
  EXPECT_EQ(parse_error(R"({"U":["u1"],"V":["v1"],"W":[],"edges":[["u1","u1"]]})"), ErrorKind::invalid_shape);
  EXPECT_EQ(parse_error(R"({"U":["u1"],"V":["v1"],"W":[],"edges":[["u1","v1"],["v1","u1"]]})"),
            ErrorKind::invalid_shape);
  EXPECT_EQ(parse_error(R"({"U":["u1","u1"],"V":["v1"],"W":[],"edges":[]})"), ErrorKind::invalid_shape);
  EXPECT_EQ(parse_error(R"({"U":["s"],"V":["s"],"W":[],"edges":[]})"), ErrorKind::invalid_shape);
  EXPECT_EQ(parse_error(R"({"U":["u1"],"V":["v1"],"W":[],"edges":[["u1","x"]]})"), ErrorKind::invalid_shape);
}

TEST(ParseShape, IntersectionModeAllowsSharedNames) {
  const auto h = parse_shape(R"({"U":["s"],"V":["s"],"W":["w1"],"edges":[["s","w1"]],"intersection_mode":true})");
  EXPECT_EQ(h.r(), 1u);
  EXPECT_EQ(h.t(), 2u);
  EXPECT_TRUE(h.in_U(0) && h.in_V(0));
}

TEST(ParseShape, VertexCap) {
  std::string doc = R"({"U":[)";
  for (int i = 0; i < 17; ++i) doc += (i ? "," : "") + std::string("\"u") + std::to_string(i) + "\"";
  doc += R"(],"V":[],"W":[],"edges":[]})";
  EXPECT_THROW(parse_shape(doc), Error);
  EXPECT_NO_THROW(parse_shape(doc, 20));
}

TEST(VertexCover, SingleEdge) { EXPECT_EQ(min_vertex_cover(shapes::single_edge()).q, 1u); }

TEST(VertexCover, Figure3a) {
  const auto h = shapes::figure_3a();
  const auto vc = min_vertex_cover(h);
  EXPECT_EQ(vc.q, 2u);
  EXPECT_EQ(vc.cover, by_name(h, {"u1", "u2"}));
  EXPECT_EQ(oracle::brute_force_min_cover(h), 2u);
}

TEST(VertexCover, Edgeless) {
  const auto h = ShapeGraph::create({"u1", "u2"}, {"v1"}, {}, {});
  EXPECT_EQ(min_vertex_cover(h).q, 0u);
  EXPECT_TRUE(min_vertex_cover(h).cover.empty());
}

TEST(VertexCover, RejectsNonBipartite) {
  try {
    min_vertex_cover(shapes::path3());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_bipartite);
  }
}

TEST(VertexCover, KonigEqualityOnRandomShapes) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const auto h = random_shapes::bipartite(rng);
    const auto vc = min_vertex_cover(h);
    EXPECT_EQ(vc.q, vc.matching_size);
    EXPECT_EQ(vc.q, oracle::kuhn_matching_size(h));
    EXPECT_EQ(vc.q, oracle::brute_force_min_cover(h));
    // smallest separator equals smallest cover for bipartite shapes
    EXPECT_EQ(min_separator(h).q, vc.q);
  }
}

TEST(VertexCover, LexicographicallySmallest) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const auto h = random_shapes::bipartite(rng, 5);
    const auto vc = min_vertex_cover(h);
    // first covering subset of the minimum size in lexicographic order
    if (vc.q == 0) continue;
    Subset s(vc.q);
    for (std::size_t k = 0; k < vc.q; ++k) s[k] = k;
    std::vector<std::vector<ShapeVertex>> all;
    do {
      std::vector<bool> in(h.t(), false);
      for (auto v : s) in[v] = true;
      bool covers = true;
      for (const auto& [a, b] : h.edges()) covers = covers && (in[a] || in[b]);
      if (covers) all.emplace_back(s.begin(), s.end());
    } while (next_combination(s, h.t()));
    ASSERT_FALSE(all.empty());
    EXPECT_EQ(vc.cover, *std::min_element(all.begin(), all.end()));
  }
}

TEST(Separator, SingleEdge) {
  const auto h = shapes::single_edge();
  const auto sep = min_separator(h);
  EXPECT_EQ(sep.q, 1u);
  EXPECT_EQ(sep.separator, by_name(h, {"u1"}));
  ASSERT_EQ(sep.disjoint_paths.size(), 1u);
  EXPECT_EQ(sep.path_lengths, std::vector<std::size_t>{1});
}

TEST(Separator, Figure4a) {
  const auto h = shapes::figure_4a();
  const auto sep = min_separator(h);
  EXPECT_EQ(sep.q, 2u);
  EXPECT_EQ(sep.separator, by_name(h, {"u1", "u2"}));
  EXPECT_EQ(max_disjoint_paths(h).size(), 2u);
  // the alternative separator from the figure also works
  std::vector<bool> removed(h.t(), false);
  for (auto v : by_name(h, {"u1", "w2"})) removed[v] = true;
  EXPECT_TRUE(separates(h, removed));
  EXPECT_EQ(oracle::brute_force_min_separator(h), 2u);
}

TEST(Separator, NoPath) {
  const auto h = ShapeGraph::create({"u1"}, {"v1"}, {"w1"}, {{"u1", "w1"}});
  const auto sep = min_separator(h);
  EXPECT_EQ(sep.q, 0u);
  EXPECT_TRUE(sep.separator.empty());
  EXPECT_TRUE(max_disjoint_paths(h).empty());
}

TEST(Separator, CompleteBipartite) {
  const auto h = ShapeGraph::create({"u1", "u2"}, {"v1", "v2", "v3"}, {},
                                    {{"u1", "v1"}, {"u1", "v2"}, {"u1", "v3"}, {"u2", "v1"}, {"u2", "v2"}, {"u2", "v3"}});
  EXPECT_EQ(max_disjoint_paths(h).size(), 2u);
}

TEST(Separator, IntersectionVerticesForced) {
  const auto h = shapes::shared_pendant();
  const auto sep = min_separator(h);
  EXPECT_EQ(sep.q, 1u);
  EXPECT_EQ(sep.separator, by_name(h, {"s"}));
  ASSERT_EQ(sep.disjoint_paths.size(), 1u);
  EXPECT_EQ(sep.disjoint_paths[0].size(), 1u);
}

TEST(Separator, MengerOnRandomShapes) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    const bool intersection = i % 5 == 0;
    const auto h = random_shapes::general(rng, intersection);
    const auto sep = min_separator(h);
    std::vector<bool> removed(h.t(), false), used(h.t(), false);
    for (auto v : sep.separator) removed[v] = true;
    EXPECT_TRUE(separates(h, removed));
    EXPECT_EQ(sep.q, sep.disjoint_paths.size());
    EXPECT_EQ(sep.q, oracle::brute_force_min_separator(h));
    for (std::size_t v = 0; v < h.t(); ++v)
      if (h.in_U(v) && h.in_V(v)) {
        EXPECT_TRUE(removed[v]);
      }
    for (const auto& p : sep.disjoint_paths) {
      EXPECT_TRUE(presets::valid_path(h, p));
      for (std::size_t k = 1; k + 1 < p.size(); ++k) EXPECT_TRUE(h.in_W(p[k]));
      for (auto v : p) {
        EXPECT_FALSE(used[v]);
        used[v] = true;
      }
    }
  }
}

TEST(ShapeStats, DegreeAndConnectivityFlags) {
  const auto s = analyze(shapes::figure_1a());
  EXPECT_EQ(s.q, 2u);
  EXPECT_TRUE(s.middle_degree_ok);
  EXPECT_TRUE(s.connected_to_uv);
  // w1-w2 hang together but never reach U or V
  const auto h = ShapeGraph::create({"u1"}, {"v1"}, {"w1", "w2"}, {{"u1", "v1"}, {"w1", "w2"}});
  const auto t = analyze(h);
  EXPECT_TRUE(t.middle_degree_ok);
  EXPECT_FALSE(t.connected_to_uv);
}

TEST(ShapeGraph, SwappedExchangesRoles) {
  const auto h = shapes::figure_3a();
  const auto s = h.swapped();
  EXPECT_EQ(s.x(), 3u);
  EXPECT_EQ(s.y(), 2u);
  EXPECT_EQ(min_vertex_cover(s).q, 2u);
}
