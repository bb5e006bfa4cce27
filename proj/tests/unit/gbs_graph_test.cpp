#include <gtest/gtest.h>

#include <fstream>

#include "gbs/error.hpp"
#include "gbs/gbs_graph.hpp"

using namespace gbs;

namespace {

GBSGraph load(const std::string& name) {
  std::ifstream in(std::string(GBS_DATA_DIR) + "/graphs/" + name);
  return GBSGraph::parse(in);
}

GBSGraph loop(long p, long q) { return GBSGraph({"v"}, {{"e", "v", "v", p, q}}); }

}  // namespace

TEST(SpanningTree, Examples) {
  EXPECT_TRUE(spanning_tree(load("bs23.gbs")).empty());
  EXPECT_EQ(spanning_tree(load("torus_knot_2_3.gbs")), std::vector<std::string>{"e1"});
  EXPECT_EQ(spanning_tree(load("triangle.gbs")), (std::vector<std::string>{"e1", "e2"}));
}

TEST(SpanningTree, Disconnected) {
  EXPECT_THROW(GBSGraph({"u", "v"}, {}), Error);
  EXPECT_THROW(GBSGraph::parse_string("vertex u v\nedge e u u 1 2\n"), Error);
}

TEST(GraphFile, ParseErrorsNameTheLine) {
  try {
    GBSGraph::parse_string("vertex v\nedge e v v 2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(GBSGraph::parse_string("vertex v\nedge e v v 0 1\n"), ParseError);
  EXPECT_THROW(GBSGraph::parse_string("vertx v\n"), ParseError);
}

TEST(Presentation, FixtureGraphsAreByteExact) {
  const auto bs = load("bs23.gbs");
  EXPECT_EQ(fundamental_presentation(bs, spanning_tree(bs)).to_string(), "< a, t | t^-1 a^2 t = a^3 >");
  const auto knot = load("torus_knot_2_3.gbs");
  EXPECT_EQ(fundamental_presentation(knot, spanning_tree(knot)).to_string(), "< a, b | a^2 = b^3 >");
  const auto z2 = load("z2.gbs");
  EXPECT_EQ(fundamental_presentation(z2, spanning_tree(z2)).to_string(), "< a, t | t^-1 a t = a >");
}

TEST(Presentation, SingleLoopMatchesCanonicalBaumslagSolitar) {
  for (long m = 1; m <= 4; ++m)
    for (long n = 1; n <= 4; ++n) {
      const auto g = loop(m, n);
      EXPECT_EQ(fundamental_presentation(g, {}).to_string(), Presentation::baumslag_solitar(m, n).to_string());
    }
}

TEST(Presentation, RejectsNonSpanningTree) {
  const auto tri = load("triangle.gbs");
  EXPECT_THROW(fundamental_presentation(tri, {"e1"}), Error);
  EXPECT_NO_THROW(fundamental_presentation(tri, {"e2", "e3"}));
  const auto p = fundamental_presentation(tri, {"e1", "e2"});
  EXPECT_EQ(p.to_string(), "< a, b, c, t | a = b, a = c, t^-1 b t = c >");
}

TEST(Witness, LoopGivesBaumslagSolitar) {
  const auto w = weak_aperiodicity_witness(load("bs23.gbs"));
  EXPECT_EQ(w.kind, WitnessKind::BaumslagSolitar);
  EXPECT_EQ(w.describe(), "BS(2,3) x=a y=t");
  EXPECT_EQ(verify_witness(w), WPAnswer::equal);
}

TEST(Witness, TreeEdgeGivesTorusKnot) {
  const auto w = weak_aperiodicity_witness(load("torus_knot_2_3.gbs"));
  EXPECT_EQ(w.kind, WitnessKind::TorusKnot);
  EXPECT_EQ(w.p, 2);
  EXPECT_EQ(w.q, 3);
  EXPECT_EQ(verify_witness(w), WPAnswer::equal);
}

TEST(Witness, UnitLoopGivesZ2) {
  const auto w = weak_aperiodicity_witness(load("z2.gbs"));
  EXPECT_EQ(w.kind, WitnessKind::Z2);
  EXPECT_EQ(verify_witness(w), WPAnswer::equal);
}

TEST(Witness, OffTreeEdgeOverUnitTree) {
  // Both tree edges are +-1, the off-tree edge carries (2,3).
  const GBSGraph g({"u", "v", "w"}, {{"e1", "u", "v", 1, -1}, {"e2", "v", "w", 1, 1}, {"e3", "u", "w", 2, 3}});
  const auto w = weak_aperiodicity_witness(g, {"e1", "e2"});
  EXPECT_EQ(w.kind, WitnessKind::BaumslagSolitar);
  EXPECT_EQ(w.p, -2);
  EXPECT_EQ(w.q, 3);
  EXPECT_EQ(verify_witness(w), WPAnswer::equal);
  // The default tree keeps e3, whose labels survive the collapse: a knot group.
  const auto k = weak_aperiodicity_witness(g);
  EXPECT_EQ(k.kind, WitnessKind::TorusKnot);
  EXPECT_EQ(verify_witness(k), WPAnswer::equal);
}

TEST(Witness, TreesThatCollapseToZ) {
  EXPECT_EQ(weak_aperiodicity_witness(GBSGraph({"v"}, {})).kind, WitnessKind::IsZ);
  EXPECT_EQ(weak_aperiodicity_witness(GBSGraph({"u", "v"}, {{"e", "u", "v", 1, -1}})).kind, WitnessKind::IsZ);
  // a_u = a_v^3 and a_v^2 = a_w: the whole group is generated by a_v.
  const GBSGraph chain({"u", "v", "w"}, {{"e1", "u", "v", 1, 3}, {"e2", "v", "w", 2, 1}});
  EXPECT_EQ(weak_aperiodicity_witness(chain).kind, WitnessKind::IsZ);
  EXPECT_EQ(whyte_class(chain).cls, WhyteClass::Z);
}

TEST(Witness, CollapsedStarIsKnot) {
  // a_v^2 = a_u = a_w^3
  const GBSGraph star({"u", "v", "w"}, {{"e1", "u", "v", 1, 2}, {"e2", "u", "w", 1, 3}});
  const auto w = weak_aperiodicity_witness(star);
  EXPECT_EQ(w.kind, WitnessKind::TorusKnot);
  EXPECT_EQ(std::labs(w.p) * std::labs(w.q), 6);
  EXPECT_EQ(verify_witness(w), WPAnswer::equal);
}

TEST(Whyte, Examples) {
  EXPECT_EQ(whyte_class(loop(3, 3)).cls, WhyteClass::Unimodular);
  EXPECT_EQ(whyte_class(loop(1, 5)).to_string(), "BS1n(5)");
  EXPECT_EQ(whyte_class(loop(5, 1)).to_string(), "BS1n(5)");
  EXPECT_EQ(whyte_class(loop(2, 3)).cls, WhyteClass::QI_BS23);
  EXPECT_EQ(whyte_class(loop(1, 1)).cls, WhyteClass::Unimodular);
  EXPECT_EQ(whyte_class(loop(2, -2)).cls, WhyteClass::Unimodular);
  EXPECT_EQ(whyte_class(load("torus_knot_2_3.gbs")).cls, WhyteClass::Unimodular);
  EXPECT_EQ(whyte_class(GBSGraph({"v"}, {})).cls, WhyteClass::Z);
}

TEST(Whyte, TreeIndependentOnSmallGraphs) {
  const std::vector<GBSGraph> graphs{
      GBSGraph({"u", "v"}, {{"e1", "u", "v", 1, 2}, {"e2", "u", "v", 1, 1}}),
      GBSGraph({"u", "v"}, {{"e1", "u", "v", 2, 3}, {"e2", "u", "v", 2, 3}}),
      GBSGraph({"u", "v", "w"}, {{"e1", "u", "v", 1, 1}, {"e2", "v", "w", 2, 1}, {"e3", "u", "w", 1, 1}}),
      GBSGraph({"u", "v", "w"}, {{"e1", "u", "v", 2, 2}, {"e2", "v", "w", 3, 3}, {"e3", "u", "w", 1, -1},
                                  {"e4", "w", "w", 1, 1}}),
      GBSGraph({"u", "v", "w", "x"}, {{"e1", "u", "v", 1, 1}, {"e2", "v", "w", 1, 2}, {"e3", "w", "x", 1, 1},
                                       {"e4", "x", "u", 1, 1}, {"e5", "u", "w", 3, 2}}),
      load("triangle.gbs"),
  };
  for (const auto& g : graphs) {
    const auto trees = all_spanning_trees(g);
    ASSERT_FALSE(trees.empty());
    const auto expected = whyte_class(g, trees.front()).to_string();
    for (const auto& t : trees) EXPECT_EQ(whyte_class(g, t).to_string(), expected);
  }
  EXPECT_EQ(whyte_class(graphs[0]).to_string(), "BS1n(2)");
}

TEST(Artin, Reductions) {
  EXPECT_EQ(artin_dihedral_reduce(2).group, "BS(1,1)");
  EXPECT_EQ(artin_dihedral_reduce(4).group, "BS(2,2)");
  EXPECT_EQ(artin_dihedral_reduce(5).group, "Lambda(2,5)");
  EXPECT_THROW(artin_dihedral_reduce(1), Error);
}

TEST(Artin, SubstitutedRelationHolds) {
  for (int n = 2; n <= 5; ++n) {
    const auto r = artin_dihedral_reduce(n);
    EXPECT_EQ(bounded_equal(r.artin, r.relation.lhs, r.relation.rhs, {4 * n + 4, 400000}), WPAnswer::equal) << n;
  }
}
