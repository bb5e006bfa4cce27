#include "gbs/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "gbs/height.hpp"

namespace gbs {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", std::abs(v) < 0.005 ? 0.0 : v);
  return buf;
}

std::string escape(std::string_view s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

// Muted palette indexed by colour id.
std::string palette_color(int c) {
  static const char* colors[] = {"#e6b0aa", "#a9cce3", "#a3e4d7", "#f9e79f", "#d7bde2",
                                 "#f5cba7", "#aed6f1", "#abebc6", "#fad7a0", "#d5dbdb"};
  if (c < 0) return "#ffffff";
  return colors[static_cast<std::size_t>(c) % (sizeof colors / sizeof *colors)];
}

}  // namespace

std::string scene_to_dot(const Scene& s) {
  std::string out = "digraph patch {\n";
  if (s.nodes.empty()) return out + "}\n";
  out += "  label=" + dot_quote(s.title) + ";\n  node [shape=circle, fontsize=9];\n";
  for (std::size_t i = 0; i < s.nodes.size(); ++i) {
    const auto& n = s.nodes[i];
    out += "  n" + std::to_string(i) + " [label=" + dot_quote(n.key + "\\n" + n.label) + ", pos=\"" + num(n.x / 72) +
           "," + num(-n.y / 72) + "!\"];\n";
  }
  for (const auto& e : s.edges)
    out += "  n" + std::to_string(e.from) + " -> n" + std::to_string(e.to) + " [class=\"cayley\", label=" +
           dot_quote(e.gen) + "];\n";
  // Arrows leaving the patch only show in the node label.
  for (const auto& a : s.arrows)
    if (a.to)
      out += "  n" + std::to_string(a.from) + " -> n" + std::to_string(*a.to) + " [class=\"flow\", color=red, label=" +
             dot_quote(a.letter) + "];\n";
  return out + "}\n";
}

std::string scene_to_svg(const Scene& s) {
  const std::string head = "<svg xmlns=\"http://www.w3.org/2000/svg\"";
  if (s.nodes.empty()) return head + " width=\"0\" height=\"0\" viewBox=\"0 0 0 0\"></svg>\n";
  double x0 = s.nodes[0].x, x1 = x0, y0 = s.nodes[0].y, y1 = y0;
  for (const auto& n : s.nodes) {
    x0 = std::min(x0, n.x), x1 = std::max(x1, n.x);
    y0 = std::min(y0, n.y), y1 = std::max(y1, n.y);
  }
  const double pad = 30;
  std::string out = head + " width=\"" + num(x1 - x0 + 2 * pad) + "\" height=\"" + num(y1 - y0 + 2 * pad) +
                    "\" viewBox=\"" + num(x0 - pad) + " " + num(y0 - pad) + " " + num(x1 - x0 + 2 * pad) + " " +
                    num(y1 - y0 + 2 * pad) + "\">\n";
  out += "<title>" + escape(s.title) + "</title>\n";
  out += "<defs><marker id=\"head\" markerWidth=\"6\" markerHeight=\"6\" refX=\"5\" refY=\"3\" orient=\"auto\">"
         "<path d=\"M0,0 L6,3 L0,6 z\" fill=\"#c0392b\"/></marker></defs>\n";
  out += "<g class=\"edges\" stroke=\"#bbbbbb\" stroke-width=\"1\">\n";
  for (const auto& e : s.edges) {
    const auto &a = s.nodes[e.from], &b = s.nodes[e.to];
    out += "<line class=\"cayley\" data-gen=\"" + escape(e.gen) + "\" x1=\"" + num(a.x) + "\" y1=\"" + num(a.y) +
           "\" x2=\"" + num(b.x) + "\" y2=\"" + num(b.y) + "\"/>\n";
  }
  out += "</g>\n<g class=\"arrows\" stroke=\"#c0392b\" stroke-width=\"1.5\">\n";
  for (const auto& a : s.arrows) {
    const auto& n = s.nodes[a.from];
    // Stop short of the target so heads stay visible.
    const double x2 = n.x + 0.6 * (a.x2 - n.x), y2 = n.y + 0.6 * (a.y2 - n.y);
    out += "<line class=\"arrow\" data-cell=\"" + escape(n.key) + "\" data-letter=\"" + escape(a.letter) + "\" x1=\"" +
           num(n.x) + "\" y1=\"" + num(n.y) + "\" x2=\"" + num(x2) + "\" y2=\"" + num(y2) +
           "\" marker-end=\"url(#head)\"/>\n";
  }
  out += "</g>\n<g class=\"cells\" font-size=\"6\" text-anchor=\"middle\">\n";
  for (const auto& n : s.nodes)
    out += "<g data-cell=\"" + escape(n.key) + "\" data-label=\"" + escape(n.label) + "\"><circle cx=\"" + num(n.x) +
           "\" cy=\"" + num(n.y) + "\" r=\"2.5\" fill=\"#34495e\"/><title>" + escape(n.key + " " + n.label) +
           "</title></g>\n";
  return out + "</g>\n</svg>\n";
}

std::pair<double, double> free_layout(int rank, std::span<const Letter> w) {
  const double ratio = rank <= 2 ? 0.48 : 0.9 / rank;
  double x = 0, y = 0, step = 200;
  for (const auto& l : w) {
    const double angle = std::numbers::pi * l.gen / rank;
    const double dir = l.sign > 0 ? 1.0 : -1.0;
    // SVG y grows downward; b points up.
    x += dir * step * std::cos(angle);
    y -= dir * step * std::sin(angle);
    step *= ratio;
  }
  return {x, y};
}

Scene flow_scene(const FreeFlowPatch& p) {
  const int rank = p.group.rank();
  return make_scene<FreeGroup, Letter>(
      p, [&](const Letter& l) { return std::string(1, p.group.alphabet().symbol(l)); },
      [&](const Word& w) { return free_layout(rank, w); },
      [&](const Word& g, const Letter& l) {
        return std::optional{std::pair{std::string(1, p.group.alphabet().symbol(l)), p.group.multiply(g, l)}};
      });
}

namespace {

std::pair<double, double> fnz_layout(int rank, const FnZElem& e) {
  const auto [x, y] = free_layout(rank, e.w);
  return {x + 60.0 * static_cast<double>(e.k), y + 450.0 * static_cast<double>(e.k)};
}

}  // namespace

std::pair<double, double> layout_of(const FreeGroup& g, const Word& w) { return free_layout(g.rank(), w); }
std::pair<double, double> layout_of(const FreeTimesZ& g, const FnZElem& e) { return fnz_layout(g.rank(), e); }
std::pair<double, double> layout_of(const BaumslagSolitar& g, const BSNormalForm& e) {
  return {60.0 * alpha(g, e).to_double(), -60.0 * static_cast<double>(beta(e))};
}

Scene flow_scene(const FnZFlowPatch& p) {
  const int rank = p.group.rank();
  return make_scene<FreeTimesZ, Letter>(
      p, [&](const Letter& l) { return std::string(1, p.group.alphabet().symbol(l)); },
      [&](const FnZElem& e) { return fnz_layout(rank, e); },
      [&](const FnZElem& g, const Letter& l) {
        return std::optional{std::pair{std::string(1, p.group.alphabet().symbol(l)), p.group.multiply(g, l)}};
      });
}

namespace {

std::function<std::pair<double, double>(const BSNormalForm&)> bs_layout(const BSFlowPatch& flow_layer) {
  std::shared_ptr<HeightContext> heights;
  const auto& group = flow_layer.group;
  try {
    const BSWord W = word_of_patch(flow_layer);
    if (!W.empty()) heights = std::make_shared<HeightContext>(BSFlow(group, W));
  } catch (const Error&) {
    // no usable flow word: fall back to the t-exponent
  }
  return [group, heights](const BSNormalForm& g) {
    const double x = 60.0 * alpha(group, g).to_double();
    const long h = heights ? heights->beta_y(g) : beta(g);
    return std::pair{x, -60.0 * static_cast<double>(h)};
  };
}

}  // namespace

Scene flow_scene(const BSFlowPatch& p) {
  const auto layout = bs_layout(p);
  return make_scene<BaumslagSolitar, BSLetter>(
      p, [&](const BSLetter& l) { return p.group.letter_string(l); }, layout,
      [&](const BSNormalForm& g, const BSLetter& l) {
        return std::optional{std::pair{p.group.letter_string(l), p.group.multiply(g, l)}};
      });
}

Scene bs_config_scene(const BSConfigPatch& p) {
  std::vector<BSLetter> flow;
  for (const auto& c : p.labels) flow.push_back(c.flow);
  const auto layout = bs_layout(BSFlowPatch{p.group, p.support, flow, p.radius});
  return make_scene<BaumslagSolitar, BSCell>(
      p, [](const BSCell& c) { return c.tile.to_string(); }, layout,
      [&](const BSNormalForm& g, const BSCell& c) {
        return std::optional{std::pair{p.group.letter_string(c.flow), p.group.multiply(g, c.flow)}};
      });
}

Scene folded_scene(const FoldedPatch& p) {
  const int rank = p.group.rank();
  return make_scene<FreeTimesZ, FoldCell>(
      p, [](const FoldCell& c) { return std::to_string(c.tile); }, [&](const FnZElem& e) { return fnz_layout(rank, e); },
      [&](const FnZElem& g, const FoldCell& c) {
        return std::optional{std::pair{std::string(1, p.group.alphabet().symbol(c.flow)), p.group.multiply(g, c.flow)}};
      });
}

std::string render_z2_svg(const Z2Tileset& ts, const Z2Patch& p) {
  const std::string head = "<svg xmlns=\"http://www.w3.org/2000/svg\"";
  if (p.cells.empty()) return head + " width=\"0\" height=\"0\" viewBox=\"0 0 0 0\"></svg>\n";
  const int size = 24;
  const int w = p.width() * size, h = p.height() * size;
  std::string out = head + " width=\"" + std::to_string(w) + "\" height=\"" + std::to_string(h) + "\" viewBox=\"0 0 " +
                    std::to_string(w) + " " + std::to_string(h) + "\">\n<title>" + escape(ts.name) + "</title>\n";
  for (int j = p.j1; j >= p.j0; --j)
    for (int i = p.i0; i <= p.i1; ++i) {
      const int x = (i - p.i0) * size, y = (p.j1 - j) * size, c = size / 2;
      const int t = p.at(i, j);
      out += "<g data-cell=\"" + std::to_string(i) + "," + std::to_string(j) + "\" data-tile=\"" + std::to_string(t) + "\">";
      if (t < 0 || t >= static_cast<int>(ts.tiles.size())) {
        out += "<rect x=\"" + std::to_string(x) + "\" y=\"" + std::to_string(y) + "\" width=\"" + std::to_string(size) +
               "\" height=\"" + std::to_string(size) + "\" fill=\"#ffffff\" stroke=\"#999999\"/></g>\n";
        continue;
      }
      const auto& tile = ts.tiles[static_cast<std::size_t>(t)];
      const std::string X0 = std::to_string(x), X1 = std::to_string(x + size), XC = std::to_string(x + c);
      const std::string Y0 = std::to_string(y), Y1 = std::to_string(y + size), YC = std::to_string(y + c);
      auto tri = [&](const std::string& side, int color, const std::string& pts) {
        out += "<polygon data-side=\"" + side + "\" data-color=\"" + escape(ts.color(color)) + "\" points=\"" + pts +
               "\" fill=\"" + palette_color(color) + "\" stroke=\"#555555\" stroke-width=\"0.3\"/>";
      };
      tri("N", tile.north, X0 + "," + Y0 + " " + X1 + "," + Y0 + " " + XC + "," + YC);
      tri("E", tile.east, X1 + "," + Y0 + " " + X1 + "," + Y1 + " " + XC + "," + YC);
      tri("S", tile.south, X1 + "," + Y1 + " " + X0 + "," + Y1 + " " + XC + "," + YC);
      tri("W", tile.west, X0 + "," + Y1 + " " + X0 + "," + Y0 + " " + XC + "," + YC);
      out += "</g>\n";
    }
  return out + "</svg>\n";
}

std::string render_z2_dot(const Z2Tileset& ts, const Z2Patch& p) {
  Scene s;
  s.title = ts.name;
  std::vector<long> index(p.cells.size(), -1);
  for (int j = p.j0; j <= p.j1; ++j)
    for (int i = p.i0; i <= p.i1; ++i) {
      const int t = p.at(i, j);
      if (t < 0) continue;
      index[static_cast<std::size_t>((j - p.j0) * p.width() + (i - p.i0))] = static_cast<long>(s.nodes.size());
      s.nodes.push_back({std::to_string(i) + "," + std::to_string(j), std::to_string(t), 40.0 * i, -40.0 * j});
    }
  auto id = [&](int i, int j) { return p.contains(i, j) ? index[static_cast<std::size_t>((j - p.j0) * p.width() + (i - p.i0))] : -1; };
  for (int j = p.j0; j <= p.j1; ++j)
    for (int i = p.i0; i <= p.i1; ++i) {
      const long here = id(i, j);
      if (here < 0) continue;
      if (const long e = id(i + 1, j); e >= 0) s.edges.push_back({static_cast<std::size_t>(here), static_cast<std::size_t>(e), "a"});
      if (const long n = id(i, j + 1); n >= 0) s.edges.push_back({static_cast<std::size_t>(here), static_cast<std::size_t>(n), "t"});
    }
  return scene_to_dot(s);
}

}  // namespace gbs
