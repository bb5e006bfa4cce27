#include <gtest/gtest.h>

#include <map>
#include <regex>

#include "gbs/height.hpp"
#include "gbs/render.hpp"

using namespace gbs;

namespace {

std::string attr(const std::string& tag, const std::string& name) {
  const std::regex re(name + "=\"([^\"]*)\"");
  std::smatch m;
  return std::regex_search(tag, m, re) ? m[1].str() : std::string();
}

std::vector<std::string> tags(const std::string& doc, const std::string& start) {
  std::vector<std::string> out;
  for (std::size_t pos = doc.find(start); pos != std::string::npos; pos = doc.find(start, pos + 1))
    out.push_back(doc.substr(pos, doc.find('>', pos) - pos + 1));
  return out;
}

// DOT edges "nI -> nJ [class=\"K\", label=\"L\"]" as (from, to, class, label).
struct DotEdge {
  int from, to;
  std::string cls, label;
};
std::vector<DotEdge> dot_edges(const std::string& dot) {
  std::vector<DotEdge> out;
  const std::regex re("n(\\d+) -> n(\\d+) \\[class=\"(\\w+)\".*label=\"([^\"]*)\"");
  for (auto it = std::sregex_iterator(dot.begin(), dot.end(), re); it != std::sregex_iterator(); ++it)
    out.push_back({std::stoi((*it)[1]), std::stoi((*it)[2]), (*it)[3], (*it)[4]});
  return out;
}

}  // namespace

TEST(Render, FreeFlowArrowsFollowTheLetters) {
  const FreeGroup F2(2);
  const auto p = flow_patch_from_word(F2.alphabet().parse("bab"), 2, F2);
  const auto svg = scene_to_svg(flow_scene(p));
  const auto arrows = tags(svg, "<line class=\"arrow\"");
  ASSERT_EQ(arrows.size(), p.size());
  EXPECT_EQ(tags(svg, "<circle").size(), p.size());
  for (const auto& a : arrows) {
    const auto cell = F2.parse_key(attr(a, "data-cell"));
    const std::string letter = attr(a, "data-letter");
    ASSERT_NE(p.at(cell), nullptr);
    EXPECT_EQ(letter, std::string(1, F2.alphabet().symbol(*p.at(cell))));
    const double dx = std::stod(attr(a, "x2")) - std::stod(attr(a, "x1"));
    const double dy = std::stod(attr(a, "y2")) - std::stod(attr(a, "y1"));
    // a right, A left, b up, B down (screen coordinates grow downward).
    if (letter == "a") EXPECT_TRUE(dx > 0 && std::abs(dy) < 1e-6) << a;
    if (letter == "A") EXPECT_TRUE(dx < 0 && std::abs(dy) < 1e-6) << a;
    if (letter == "b") EXPECT_TRUE(dy < 0 && std::abs(dx) < 1e-6) << a;
    if (letter == "B") EXPECT_TRUE(dy > 0 && std::abs(dx) < 1e-6) << a;
  }
  // The identity points along b, then b along a.
  EXPECT_NE(svg.find("data-cell=\"1\" data-letter=\"b\""), std::string::npos);
  EXPECT_NE(svg.find("data-cell=\"b\" data-letter=\"a\""), std::string::npos);
}

TEST(Render, EmptyPatchGivesEmptyDocuments) {
  const auto p = empty_patch<FreeGroup, Letter>(FreeGroup(2));
  const auto svg = scene_to_svg(flow_scene(p));
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_EQ(svg.find("<circle"), std::string::npos);
  EXPECT_EQ(scene_to_dot(flow_scene(p)), "digraph patch {\n}\n");
  Z2Tileset ts;
  EXPECT_NE(render_z2_svg(ts, Z2Patch{}).find("</svg>"), std::string::npos);
}

TEST(Render, BSDotHasCayleyDegreesAndTwoThreeBranching) {
  const BaumslagSolitar B(2, 3);
  const int R = 4;
  const auto p = flow_patch_from_word(parse_bs_word(B, "tatatatat"), R, B);
  const auto dot = scene_to_dot(flow_scene(p));
  const auto edges = dot_edges(dot);
  const auto ball = enumerate_ball(B, R);
  std::map<int, std::map<std::string, int>> out, in;
  for (const auto& e : edges)
    if (e.cls == "cayley") {
      ++out[e.from][e.label];
      ++in[e.to][e.label];
    }
  std::size_t interior = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto li = ball.support->find(p.element(i));
    ASSERT_TRUE(li);
    if (ball.lengths[*li] >= R) continue;
    ++interior;
    EXPECT_EQ(out[static_cast<int>(i)]["a"], 1);
    EXPECT_EQ(in[static_cast<int>(i)]["a"], 1);
    EXPECT_EQ(out[static_cast<int>(i)]["t"], 1);
    EXPECT_EQ(in[static_cast<int>(i)]["t"], 1);
  }
  EXPECT_GT(interior, 10u);

  // Walk the emitted graph: a a t and t a a a end at the same node, so do a a a T and T a a.
  auto step = [&](int from, const std::string& gen) {
    for (const auto& e : edges)
      if (e.cls == "cayley" && e.from == from && e.label == gen) return e.to;
    return -1;
  };
  auto back = [&](int to, const std::string& gen) {
    for (const auto& e : edges)
      if (e.cls == "cayley" && e.to == to && e.label == gen) return e.from;
    return -1;
  };
  const int id = static_cast<int>(*p.find(B.identity()));
  EXPECT_EQ(step(step(step(id, "a"), "a"), "t"), step(step(step(step(id, "t"), "a"), "a"), "a"));
  EXPECT_EQ(back(step(step(step(id, "a"), "a"), "a"), "t"), step(step(back(id, "t"), "a"), "a"));
  EXPECT_NE(step(step(id, "a"), "t"), step(step(step(id, "t"), "a"), "a"));

  // Flow edges that stay inside match the labels.
  std::size_t flow_edges = 0;
  for (const auto& e : edges)
    if (e.cls == "flow") {
      EXPECT_EQ(e.label, B.letter_string(p.labels[static_cast<std::size_t>(e.from)]));
      EXPECT_EQ(p.element(static_cast<std::size_t>(e.to)), B.multiply(p.element(static_cast<std::size_t>(e.from)), p.labels[static_cast<std::size_t>(e.from)]));
      ++flow_edges;
    }
  EXPECT_GT(flow_edges, 0u);
}

TEST(Render, BSSheetsStackByHeight) {
  const BaumslagSolitar B(2, 3);
  const auto p = flow_patch_from_word(parse_bs_word(B, "tataT"), 3, B);
  const auto s = flow_scene(p);
  const HeightContext h(BSFlow(B, parse_bs_word(B, "tataT")));
  for (std::size_t i = 0; i < s.nodes.size(); ++i)
    EXPECT_DOUBLE_EQ(s.nodes[i].y, -60.0 * static_cast<double>(h.beta_y(p.element(i))));
}

TEST(Render, Z2SvgCells) {
  const auto ts = parse_tileset_string("palette: p q\ntile: p p q q\ntile: q q p p\n");
  Z2Patch z(0, 2, 0, 1);
  z.set(0, 0, 0);
  z.set(1, 1, 1);
  const auto svg = render_z2_svg(ts, z);
  const auto cells = tags(svg, "<g data-cell");
  EXPECT_EQ(cells.size(), 6u);
  EXPECT_NE(svg.find("data-cell=\"1,1\" data-tile=\"1\""), std::string::npos);
  EXPECT_NE(svg.find("data-cell=\"2,0\" data-tile=\"-1\""), std::string::npos);
  EXPECT_EQ(tags(svg, "<polygon").size(), 8u);
  const auto dot = render_z2_dot(ts, z);
  EXPECT_EQ(dot_edges(dot).size(), 0u);  // the two known cells are not adjacent
}

TEST(Render, Deterministic) {
  const FreeTimesZ G(2);
  const auto p = flow_patch_from_word(G.alphabet().parse("abab"), 3, G);
  EXPECT_EQ(scene_to_svg(flow_scene(p)), scene_to_svg(flow_scene(p)));
  EXPECT_EQ(scene_to_dot(flow_scene(p)), scene_to_dot(flow_scene(p)));
}
