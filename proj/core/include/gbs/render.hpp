#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gbs/flow.hpp"
#include "gbs/folding.hpp"
#include "gbs/locked.hpp"
#include "gbs/wang.hpp"

namespace gbs {

/// Layout-independent drawing: cells with positions, Cayley edges and flow arrows.
struct Scene {
  struct Node {
    std::string key;
    std::string label;
    double x = 0, y = 0;
  };
  struct Edge {
    std::size_t from = 0, to = 0;
    std::string gen;
  };
  struct Arrow {
    std::size_t from = 0;
    std::string letter;
    double x2 = 0, y2 = 0;  ///< target position, which may lie outside the patch
    std::optional<std::size_t> to;
  };
  std::string title;
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  std::vector<Arrow> arrows;
};

/// Nodes by key, `->` edges per positive generator (class cayley) and flow arrows (class flow).
std::string scene_to_dot(const Scene& s);
/// Circles carry data-cell/data-label; arrows are `<line class="arrow" data-cell data-letter>`.
std::string scene_to_svg(const Scene& s);

/// Generic scene. `arrow` returns the flow letter (as text) and its target element, if any.
template <class G, class L>
Scene make_scene(const Patch<G, L>& p, const std::function<std::string(const L&)>& label,
                 const std::function<std::pair<double, double>(const typename G::Element&)>& layout,
                 const std::function<std::optional<std::pair<std::string, typename G::Element>>(
                     const typename G::Element&, const L&)>& arrow = {}) {
  Scene s;
  s.title = "patch over " + p.group.name();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto [x, y] = layout(p.element(i));
    s.nodes.push_back({p.group.key(p.element(i)), label(p.labels[i]), x, y});
  }
  const auto& alpha = p.group.alphabet();
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (int gen = 0; gen < alpha.rank(); ++gen) {
      const Letter s_{gen, 1};
      if (const auto j = p.find(p.group.multiply(p.element(i), s_))) s.edges.push_back({i, *j, std::string(1, alpha.symbol(s_))});
    }
    if (arrow)
      if (const auto a = arrow(p.element(i), p.labels[i])) {
        const auto [x, y] = layout(a->second);
        s.arrows.push_back({i, a->first, x, y, p.find(a->second)});
      }
  }
  return s;
}

/// Cayley-tree embedding: a to the right, b up, further generators at evenly spread angles; each level
/// shrinks the step.
std::pair<double, double> free_layout(int rank, std::span<const Letter> w);

/// Default positions without a flow: the tree embedding, sheets by the t-exponent, (alpha, beta) for BS.
std::pair<double, double> layout_of(const FreeGroup& g, const Word& w);
std::pair<double, double> layout_of(const FreeTimesZ& g, const FnZElem& e);
std::pair<double, double> layout_of(const BaumslagSolitar& g, const BSNormalForm& e);

Scene flow_scene(const FreeFlowPatch& p);
/// t-cosets drawn as sheets stacked by the t-exponent.
Scene flow_scene(const FnZFlowPatch& p);
/// x from alpha, sheets stacked by beta_y of the patch's own flow (beta when the patch has no flow word).
Scene flow_scene(const BSFlowPatch& p);
Scene bs_config_scene(const BSConfigPatch& p);
Scene folded_scene(const FoldedPatch& p);
template <class G>
Scene locked_scene(const Patch<G, int>& p, const std::function<std::pair<double, double>(const typename G::Element&)>& layout) {
  return make_scene<G, int>(p, [](const int& r) { return std::to_string(r); }, layout);
}

/// Z^2 patch as coloured Wang squares; each cell is a `<g data-cell="i,j" data-tile="k">`.
std::string render_z2_svg(const Z2Tileset& ts, const Z2Patch& p);
std::string render_z2_dot(const Z2Tileset& ts, const Z2Patch& p);

}  // namespace gbs
