#include "gbs/folding.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace gbs {

int Z2Tileset::color_index(std::string_view name) const {
  const auto it = std::find(palette.begin(), palette.end(), name);
  return it == palette.end() ? -1 : static_cast<int>(it - palette.begin());
}

namespace {

std::vector<std::string> split_ws(std::string_view s) {
  std::istringstream is{std::string(s)};
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

std::string strip_comment(const std::string& line) {
  const auto h = line.find('#');
  return h == std::string::npos ? line : line.substr(0, h);
}

}  // namespace

Z2Tileset parse_tileset(std::istream& in) {
  Z2Tileset ts;
  bool have_palette = false;
  std::string raw;
  for (std::size_t ln = 1; std::getline(in, raw); ++ln) {
    const std::string line = strip_comment(raw);
    const auto words = split_ws(line);
    if (words.empty()) continue;
    if (words[0] == "name:") {
      ts.name = line.substr(line.find("name:") + 5);
      ts.name.erase(0, ts.name.find_first_not_of(" \t"));
      ts.name.erase(ts.name.find_last_not_of(" \t\r") + 1);
    } else if (words[0] == "palette:") {
      if (have_palette) throw ParseError("second palette line", ln);
      for (std::size_t i = 1; i < words.size(); ++i) {
        if (ts.color_index(words[i]) >= 0) throw ParseError("duplicate color '" + words[i] + "'", ln);
        ts.palette.push_back(words[i]);
      }
      if (ts.palette.empty()) throw ParseError("empty palette", ln);
      have_palette = true;
    } else if (words[0] == "tile:") {
      if (!have_palette) throw ParseError("tile before palette", ln);
      if (words.size() != 5) throw ParseError("tile needs 4 colors N E S W", ln);
      int c[4];
      for (int k = 0; k < 4; ++k) {
        c[k] = ts.color_index(words[static_cast<std::size_t>(k + 1)]);
        if (c[k] < 0) throw ParseError("color '" + words[static_cast<std::size_t>(k + 1)] + "' not in palette", ln);
      }
      const WangTile4 t{c[0], c[1], c[2], c[3]};
      if (std::find(ts.tiles.begin(), ts.tiles.end(), t) != ts.tiles.end()) throw ParseError("duplicate tile", ln);
      ts.tiles.push_back(t);
    } else {
      throw ParseError("unknown directive '" + words[0] + "'", ln);
    }
  }
  if (ts.tiles.empty()) throw ParseError("tileset has no tiles");
  return ts;
}

Z2Tileset parse_tileset_string(std::string_view text) {
  std::istringstream is{std::string(text)};
  return parse_tileset(is);
}

Z2Tileset load_tileset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open tileset " + path);
  return parse_tileset(in);
}

std::string format_tileset(const Z2Tileset& ts) {
  std::ostringstream os;
  if (!ts.name.empty()) os << "name: " << ts.name << '\n';
  os << "palette:";
  for (const auto& c : ts.palette) os << ' ' << c;
  os << '\n';
  for (const auto& t : ts.tiles)
    os << "tile: " << ts.color(t.north) << ' ' << ts.color(t.east) << ' ' << ts.color(t.south) << ' '
       << ts.color(t.west) << '\n';
  return os.str();
}

Z2Tileset rotate_tileset(const Z2Tileset& ts) {
  Z2Tileset out = ts;
  if (!out.name.empty()) out.name += " (rotated)";
  for (auto& t : out.tiles) t = WangTile4{t.west, t.north, t.east, t.south};
  return out;
}

Z2Patch::Z2Patch(int i0_, int i1_, int j0_, int j1_, int fill) : i0(i0_), i1(i1_), j0(j0_), j1(j1_) {
  if (i1 < i0 || j1 < j0) throw Error("empty window");
  cells.assign(static_cast<std::size_t>(width()) * static_cast<std::size_t>(height()), fill);
}

int Z2Patch::at(int i, int j) const {
  if (!contains(i, j)) return -1;
  return cells[static_cast<std::size_t>((j - j0) * width() + (i - i0))];
}

void Z2Patch::set(int i, int j, int tile) {
  if (!contains(i, j)) throw Error("cell outside the window");
  cells[static_cast<std::size_t>((j - j0) * width() + (i - i0))] = tile;
}

std::vector<Violation> validate_z2(const Z2Tileset& ts, const Z2Patch& p) {
  std::vector<Violation> out;
  const int nt = static_cast<int>(ts.tiles.size());
  auto cell = [](int i, int j) { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; };
  for (int j = p.j0; j <= p.j1; ++j)
    for (int i = p.i0; i <= p.i1; ++i) {
      const int a = p.at(i, j);
      if (a < -1 || a >= nt) out.push_back({cell(i, j), "tile-range", "tile id " + std::to_string(a)});
    }
  if (!out.empty()) return out;
  for (int j = p.j0; j <= p.j1; ++j)
    for (int i = p.i0; i <= p.i1; ++i) {
      const int a = p.at(i, j);
      if (a < 0) continue;
      const auto& A = ts.tiles[static_cast<std::size_t>(a)];
      if (const int b = p.at(i + 1, j); b >= 0 && A.east != ts.tiles[static_cast<std::size_t>(b)].west)
        out.push_back({cell(i, j), "east-west", ts.color(A.east) + " vs " + ts.color(ts.tiles[static_cast<std::size_t>(b)].west)});
      if (const int b = p.at(i, j + 1); b >= 0 && A.north != ts.tiles[static_cast<std::size_t>(b)].south)
        out.push_back({cell(i, j), "north-south", ts.color(A.north) + " vs " + ts.color(ts.tiles[static_cast<std::size_t>(b)].south)});
    }
  return out;
}

Z2Patch parse_z2_patch(std::istream& in) {
  std::string raw;
  std::size_t ln = 0;
  std::vector<std::string> head;
  while (head.empty() && std::getline(in, raw)) {
    ++ln;
    head = split_ws(strip_comment(raw));
  }
  if (head.size() != 5 || head[0] != "window:") throw ParseError("expected 'window: i0 i1 j0 j1'", ln);
  int w[4];
  for (int k = 0; k < 4; ++k) {
    try {
      w[k] = std::stoi(head[static_cast<std::size_t>(k + 1)]);
    } catch (const std::exception&) {
      throw ParseError("bad window bound '" + head[static_cast<std::size_t>(k + 1)] + "'", ln);
    }
  }
  if (w[1] < w[0] || w[3] < w[2]) throw ParseError("empty window", ln);
  Z2Patch p(w[0], w[1], w[2], w[3]);
  int j = p.j1;
  while (std::getline(in, raw)) {
    ++ln;
    const auto row = split_ws(strip_comment(raw));
    if (row.empty()) continue;
    if (j < p.j0) throw ParseError("more rows than the window height", ln);
    if (static_cast<int>(row.size()) != p.width()) throw ParseError("row width differs from the window", ln);
    for (int i = 0; i < p.width(); ++i) {
      const auto& tok = row[static_cast<std::size_t>(i)];
      if (tok == ".") continue;
      try {
        std::size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
        p.set(p.i0 + i, j, v);
      } catch (const std::exception&) {
        throw ParseError("bad tile id '" + tok + "'", ln);
      }
    }
    --j;
  }
  if (j >= p.j0) throw ParseError("fewer rows than the window height", ln);
  return p;
}

Z2Patch parse_z2_patch_string(std::string_view text) {
  std::istringstream is{std::string(text)};
  return parse_z2_patch(is);
}

std::string format_z2_patch(const Z2Patch& p) {
  std::ostringstream os;
  os << "window: " << p.i0 << ' ' << p.i1 << ' ' << p.j0 << ' ' << p.j1 << '\n';
  for (int j = p.j1; j >= p.j0; --j) {
    for (int i = p.i0; i <= p.i1; ++i) {
      if (i > p.i0) os << ' ';
      const int v = p.at(i, j);
      if (v < 0)
        os << '.';
      else
        os << v;
    }
    os << '\n';
  }
  return os.str();
}

Z2Patch rotate_patch(const Z2Patch& p) {
  Z2Patch out(p.j0, p.j1, -p.i1, -p.i0);
  for (int j = p.j0; j <= p.j1; ++j)
    for (int i = p.i0; i <= p.i1; ++i) out.set(j, -i, p.at(i, j));
  return out;
}

namespace {

// Fills cells row by row; `order(k)` yields the tile order to try at cell k.
template <class Order, class Visit>
void fill_window(const Z2Tileset& ts, Z2Patch& p, Order order, Visit visit, std::size_t node_cap) {
  const int n = p.width() * p.height();
  std::size_t nodes = 0;
  bool stop = false;
  auto fits = [&](int k, int tile) {
    const int i = p.i0 + k % p.width(), j = p.j0 + k / p.width();
    const auto& T = ts.tiles[static_cast<std::size_t>(tile)];
    if (const int w = p.at(i - 1, j); w >= 0 && i - 1 >= p.i0 && ts.tiles[static_cast<std::size_t>(w)].east != T.west)
      return false;
    if (const int s = p.at(i, j - 1); s >= 0 && j - 1 >= p.j0 && ts.tiles[static_cast<std::size_t>(s)].north != T.south)
      return false;
    return true;
  };
  auto rec = [&](auto&& self, int k) -> void {
    if (stop) return;
    if (++nodes > node_cap) throw Error("tiling search exceeded its node budget");
    if (k == n) {
      if (!visit(p)) stop = true;
      return;
    }
    for (const int tile : order(k)) {
      if (!fits(k, tile)) continue;
      p.cells[static_cast<std::size_t>(k)] = tile;
      self(self, k + 1);
      if (stop) return;
    }
    p.cells[static_cast<std::size_t>(k)] = -1;
  };
  rec(rec, 0);
}

}  // namespace

Z2Patch random_valid_patch(const Z2Tileset& ts, int i0, int i1, int j0, int j1, std::mt19937& rng,
                           std::size_t node_cap) {
  Z2Patch p(i0, i1, j0, j1);
  std::vector<int> base(ts.tiles.size());
  std::iota(base.begin(), base.end(), 0);
  std::optional<Z2Patch> found;
  fill_window(
      ts, p,
      [&](int) {
        auto o = base;
        std::shuffle(o.begin(), o.end(), rng);
        return o;
      },
      [&](const Z2Patch& q) {
        found = q;
        return false;
      },
      node_cap);
  if (!found) throw Error("tileset " + ts.name + " admits no valid patch on this window");
  return *found;
}

std::vector<Z2Patch> all_valid_patches(const Z2Tileset& ts, int width, int height) {
  Z2Patch p(0, width - 1, 0, height - 1);
  std::vector<int> base(ts.tiles.size());
  std::iota(base.begin(), base.end(), 0);
  std::vector<Z2Patch> out;
  fill_window(
      ts, p, [&](int) { return base; },
      [&](const Z2Patch& q) {
        out.push_back(q);
        return true;
      },
      static_cast<std::size_t>(-1));
  return out;
}

BlockTileset higher_block(const Z2Tileset& ts, int m, int n) {
  if (m < 1 || n < 1) throw Error("block size must be at least 1x1");
  BlockTileset bt;
  bt.m = m;
  bt.n = n;
  bt.tileset.name = ts.name + " " + std::to_string(m) + "x" + std::to_string(n) + " blocks";
  std::map<std::string, int> colors;
  auto intern = [&](const std::string& c) {
    const auto [it, fresh] = colors.try_emplace(c, static_cast<int>(bt.tileset.palette.size()));
    if (fresh) bt.tileset.palette.push_back(c);
    return it->second;
  };
  auto tuple = [&](auto side, const Z2Patch& b, bool horizontal, int fixed) {
    std::string s;
    const int len = horizontal ? m : n;
    for (int k = 0; k < len; ++k) {
      const int tile = horizontal ? b.at(k, fixed) : b.at(fixed, k);
      if (k) s += '+';
      s += ts.color(side(ts.tiles[static_cast<std::size_t>(tile)]));
    }
    return s;
  };
  for (auto& b : all_valid_patches(ts, m, n)) {
    WangTile4 t;
    t.north = intern(tuple([](const WangTile4& x) { return x.north; }, b, true, n - 1));
    t.east = intern(tuple([](const WangTile4& x) { return x.east; }, b, false, m - 1));
    t.south = intern(tuple([](const WangTile4& x) { return x.south; }, b, true, 0));
    t.west = intern(tuple([](const WangTile4& x) { return x.west; }, b, false, 0));
    bt.tileset.tiles.push_back(t);
    bt.blocks.push_back(std::move(b));
  }
  if (bt.tileset.tiles.empty()) throw Error("no valid " + std::to_string(m) + "x" + std::to_string(n) + " block");
  return bt;
}

Z2Patch expand_blocks(const BlockTileset& bt, const Z2Patch& p) {
  Z2Patch out(p.i0 * bt.m, (p.i1 + 1) * bt.m - 1, p.j0 * bt.n, (p.j1 + 1) * bt.n - 1);
  for (int j = p.j0; j <= p.j1; ++j)
    for (int i = p.i0; i <= p.i1; ++i) {
      const int b = p.at(i, j);
      if (b < 0) continue;
      if (b >= static_cast<int>(bt.blocks.size())) throw Error("block id out of range");
      const auto& blk = bt.blocks[static_cast<std::size_t>(b)];
      for (int y = 0; y < bt.n; ++y)
        for (int x = 0; x < bt.m; ++x) out.set(i * bt.m + x, j * bt.n + y, blk.at(x, y));
    }
  return out;
}

// ---- folding

long fold_height(const FreeFlow& flow, std::span<const Letter> w) {
  return 2 * static_cast<long>(flow.common_prefix(w)) - static_cast<long>(w.size());
}

Word rho(const FreeFlow& flow, long j) {
  Word out;
  if (j >= 0) {
    for (long k = 0; k < j; ++k) out.push_back(flow.letter(static_cast<std::size_t>(k)));
  } else {
    out.assign(static_cast<std::size_t>(-j), flow.letter(0).inverse());
  }
  return out;
}

FoldedPatch fold(const Z2Tileset& ts, const Z2Patch& x, const Word& W, int radius, int rank) {
  if (radius < 0) throw Error("radius must be non-negative");
  if (W.empty() || static_cast<int>(W.size()) < radius)
    throw Error("flow word of length " + std::to_string(W.size()) + " is too short for radius " + std::to_string(radius));
  const FreeFlow flow(rank, W);
  const FreeTimesZ group(rank);
  const auto ball = enumerate_ball(group, radius);
  std::vector<FoldCell> cells;
  cells.reserve(ball.size());
  for (const auto& e : *ball.support) {
    const long j = fold_height(flow, e.w);
    const int tile = x.at(static_cast<int>(e.k), static_cast<int>(j));
    if (tile < 0)
      throw Error("window does not cover cell (" + std::to_string(e.k) + "," + std::to_string(j) + ")");
    if (tile >= static_cast<int>(ts.tiles.size())) throw Error("tile id out of range in the planar patch");
    cells.push_back({tile, flow.label(e.w)});
  }
  return make_patch(ball, std::move(cells));
}

std::vector<Violation> validate_folded(const Z2Tileset& ts, const FoldedPatch& p) {
  std::vector<Violation> out;
  if (p.empty()) return out;
  const auto& G = p.group;
  const int nt = static_cast<int>(ts.tiles.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p.labels[i].tile < 0 || p.labels[i].tile >= nt)
      out.push_back({G.key(p.element(i)), "tile-range", "tile id " + std::to_string(p.labels[i].tile)});
  if (!out.empty()) return out;
  std::vector<Letter> flow;
  for (const auto& c : p.labels) flow.push_back(c.flow);
  out = validate_flow_patch(FnZFlowPatch{G, p.support, flow, p.radius});
  auto tile = [&](std::size_t i) -> const WangTile4& { return ts.tiles[static_cast<std::size_t>(p.labels[i].tile)]; };
  const auto letters = G.free_factor().generators();
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& g = p.element(i);
    if (const auto j = p.find(G.multiply(g, Letter{G.t_gen(), 1}))) {
      if (tile(i).east != tile(*j).west) out.push_back({G.key(g), "P-horizontal", "east/west colors differ"});
      if (p.labels[i].flow != p.labels[*j].flow) out.push_back({G.key(g), "P-flow", "flow letter changes along t"});
    }
    for (const auto& s : letters) {
      const auto j = p.find(G.multiply(g, s));
      if (!j) continue;
      const bool up = p.labels[i].flow == s;
      const bool ok = up ? tile(i).north == tile(*j).south : tile(i).south == tile(*j).north;
      if (!ok)
        out.push_back({G.key(g), "Q-vertical",
                       std::string(up ? "north" : "south") + " side mismatch toward " + G.key(G.multiply(g, s))});
    }
  }
  return out;
}

Z2Patch unfold(const Z2Tileset& ts, const FoldedPatch& p) {
  if (!p.find(p.group.identity())) throw Error("patch has no identity cell");
  const auto v = validate_folded(ts, p);
  if (!v.empty()) throw Error("cannot unfold an invalid patch: " + v.front().rule + " at " + v.front().cell);
  std::vector<Letter> flow_labels;
  for (const auto& c : p.labels) flow_labels.push_back(c.flow);
  const Word W = word_of_patch(FnZFlowPatch{p.group, p.support, flow_labels, p.radius});
  const FreeFlow flow(p.group.rank(), W);
  long R = 0;
  for (const auto& e : *p.support) R = std::max(R, static_cast<long>(e.w.size()) + std::abs(e.k));
  const int r = static_cast<int>(R);
  Z2Patch x(-r, r, -r, r);
  for (int j = -r; j <= r; ++j) {
    if (j > 0 && static_cast<std::size_t>(j) > W.size()) continue;
    const Word base = rho(flow, j);
    for (int i = -r; i <= r; ++i)
      if (const auto* c = p.at(FnZElem{base, i})) x.set(i, j, c->tile);
  }
  return x;
}

}  // namespace gbs
