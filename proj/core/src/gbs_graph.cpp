#include "gbs/gbs_graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "gbs/error.hpp"

namespace gbs {

namespace {

constexpr std::string_view kVertexSymbols = "abcdefghijklmnopqrs";
constexpr std::string_view kEdgeSymbols = "tuvwxyz";

// Orders "e2" before "e10".
bool natural_less(const std::string& x, const std::string& y) {
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    const bool dx = std::isdigit(static_cast<unsigned char>(x[i])), dy = std::isdigit(static_cast<unsigned char>(y[j]));
    if (dx && dy) {
      std::size_t ie = i, je = j;
      while (ie < x.size() && std::isdigit(static_cast<unsigned char>(x[ie]))) ++ie;
      while (je < y.size() && std::isdigit(static_cast<unsigned char>(y[je]))) ++je;
      const std::string nx = x.substr(i, ie - i), ny = y.substr(j, je - j);
      const auto tx = nx.find_first_not_of('0'), ty = ny.find_first_not_of('0');
      const std::string sx = tx == std::string::npos ? "" : nx.substr(tx);
      const std::string sy = ty == std::string::npos ? "" : ny.substr(ty);
      if (sx.size() != sy.size()) return sx.size() < sy.size();
      if (sx != sy) return sx < sy;
      i = ie;
      j = je;
    } else {
      if (x[i] != y[j]) return x[i] < y[j];
      ++i;
      ++j;
    }
  }
  return x.size() - i < y.size() - j;
}

std::vector<std::string> sorted_names(std::vector<std::string> v) {
  std::sort(v.begin(), v.end(), natural_less);
  return v;
}

std::vector<const GBSEdge*> sorted_edges(const GBSGraph& g) {
  std::vector<const GBSEdge*> out;
  for (const auto& e : g.edges()) out.push_back(&e);
  std::sort(out.begin(), out.end(), [](auto* a, auto* b) { return natural_less(a->id, b->id); });
  return out;
}

long parse_label(const std::string& s, std::size_t line) {
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || *end != '\0') throw ParseError("edge label '" + s + "' is not an integer", line);
  if (v == 0) throw ParseError("edge label must be non-zero", line);
  return v;
}

// Tree vertices merged along edges carrying a +-1 label: a_v = a_rep^k.
struct Collapse {
  std::map<std::string, std::string> rep;
  std::map<std::string, long> k;
  std::vector<const GBSEdge*> remaining_tree;  // tree edges joining distinct classes
};

Collapse collapse_tree(const GBSGraph& g, const std::set<std::string>& tree) {
  Collapse c;
  for (const auto& v : g.vertices()) {
    c.rep[v] = v;
    c.k[v] = 1;
  }
  const auto edges = sorted_edges(g);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto* e : edges) {
      if (!tree.count(e->id)) continue;
      const std::string U = c.rep[e->src], W = c.rep[e->dst];
      if (U == W) continue;
      const long P = e->alpha_src * c.k[e->src], Q = e->alpha_dst * c.k[e->dst];
      // a_U^P = a_W^Q
      std::string from, to;
      long factor = 0;
      if (P == 1 || P == -1) {
        from = U, to = W, factor = Q * P;
      } else if (Q == 1 || Q == -1) {
        from = W, to = U, factor = P * Q;
      } else {
        continue;
      }
      for (auto& [v, r] : c.rep)
        if (r == from) {
          r = to;
          c.k[v] *= factor;
        }
      changed = true;
    }
  }
  for (const auto* e : edges)
    if (tree.count(e->id) && c.rep[e->src] != c.rep[e->dst]) c.remaining_tree.push_back(e);
  return c;
}

Word power(const Word& x, long e) {
  Word out;
  const Word base = e >= 0 ? x : gbs::inverse(x);
  for (long i = 0; i < std::labs(e); ++i) out.insert(out.end(), base.begin(), base.end());
  return out;
}

std::map<std::string, char> edge_symbols(const GBSGraph& g, const std::set<std::string>& tree) {
  std::map<std::string, char> out;
  std::size_t next = 0;
  for (const auto* e : sorted_edges(g)) {
    if (tree.count(e->id)) continue;
    if (next >= kEdgeSymbols.size()) throw Error("more than 7 non-tree edges are not supported");
    out[e->id] = kEdgeSymbols[next++];
  }
  return out;
}

std::set<std::string> check_tree(const GBSGraph& g, const std::vector<std::string>& tree) {
  std::set<std::string> ids(tree.begin(), tree.end());
  if (ids.size() != tree.size()) throw Error("spanning tree lists an edge twice");
  if (ids.size() + 1 != g.vertices().size()) throw Error("edge set is not a spanning tree: wrong edge count");
  std::map<std::string, std::string> parent;
  for (const auto& v : g.vertices()) parent[v] = v;
  auto find = [&](std::string v) {
    while (parent[v] != v) v = parent[v];
    return v;
  };
  for (const auto& id : ids) {
    const auto& e = g.edge(id);
    const auto a = find(e.src), b = find(e.dst);
    if (a == b) throw Error("edge set is not a spanning tree: edge " + id + " closes a cycle");
    parent[a] = b;
  }
  return ids;
}

}  // namespace

GBSGraph::GBSGraph(std::vector<std::string> vertices, std::vector<GBSEdge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  if (vertices_.empty()) throw Error("graph has no vertices");
  if (vertices_.size() > kVertexSymbols.size()) throw Error("more than 19 vertices are not supported");
  std::set<std::string> vs(vertices_.begin(), vertices_.end());
  if (vs.size() != vertices_.size()) throw Error("duplicate vertex name");
  std::set<std::string> ids;
  for (const auto& e : edges_) {
    if (!ids.insert(e.id).second) throw Error("duplicate edge id '" + e.id + "'");
    if (!vs.count(e.src) || !vs.count(e.dst)) throw Error("edge '" + e.id + "' references an unknown vertex");
    if (e.alpha_src == 0 || e.alpha_dst == 0) throw Error("edge '" + e.id + "' has a zero label");
  }
  // Connectivity.
  std::set<std::string> seen{vertices_.front()};
  std::deque<std::string> queue{vertices_.front()};
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (const auto& e : edges_) {
      for (const auto& [a, b] : {std::pair{e.src, e.dst}, std::pair{e.dst, e.src}})
        if (a == v && seen.insert(b).second) queue.push_back(b);
    }
  }
  if (seen.size() != vertices_.size()) throw Error("graph is disconnected");
}

GBSGraph GBSGraph::parse(std::istream& in) {
  std::vector<std::string> vertices;
  std::vector<GBSEdge> edges;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::string kw;
    if (!(ls >> kw)) continue;
    if (kw == "vertex" || kw == "vertices" || kw == "vertices:") {
      std::string name;
      bool any = false;
      while (ls >> name) {
        vertices.push_back(name);
        any = true;
      }
      if (!any) throw ParseError("vertex line without names", line);
    } else if (kw == "edge") {
      std::vector<std::string> f;
      std::string tok;
      while (ls >> tok) f.push_back(tok);
      if (f.size() != 5) throw ParseError("edge line needs: id src dst alpha_src alpha_dst", line);
      edges.push_back({f[0], f[1], f[2], parse_label(f[3], line), parse_label(f[4], line)});
    } else {
      throw ParseError("unknown keyword '" + kw + "'", line);
    }
  }
  if (vertices.empty()) throw ParseError("graph file declares no vertices");
  return GBSGraph(std::move(vertices), std::move(edges));
}

GBSGraph GBSGraph::parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse(in);
}

const GBSEdge& GBSGraph::edge(const std::string& id) const {
  for (const auto& e : edges_)
    if (e.id == id) return e;
  throw Error("unknown edge '" + id + "'");
}

int GBSGraph::vertex_index(const std::string& name) const {
  const auto sorted = sorted_names(vertices_);
  const auto it = std::find(sorted.begin(), sorted.end(), name);
  if (it == sorted.end()) throw Error("unknown vertex '" + name + "'");
  return static_cast<int>(it - sorted.begin());
}

char GBSGraph::vertex_symbol(const std::string& vertex) const {
  return kVertexSymbols[static_cast<std::size_t>(vertex_index(vertex))];
}

std::vector<std::string> spanning_tree(const GBSGraph& g) {
  const auto vs = sorted_names(g.vertices());
  const auto edges = sorted_edges(g);
  std::set<std::string> seen{vs.front()};
  std::deque<std::string> queue{vs.front()};
  std::vector<std::string> tree;
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    for (const auto* e : edges) {
      if (e->is_loop()) continue;
      std::string other;
      if (e->src == v)
        other = e->dst;
      else if (e->dst == v)
        other = e->src;
      else
        continue;
      if (seen.insert(other).second) {
        tree.push_back(e->id);
        queue.push_back(other);
      }
    }
  }
  if (seen.size() != vs.size()) throw Error("graph is disconnected");
  return tree;
}

std::vector<std::vector<std::string>> all_spanning_trees(const GBSGraph& g) {
  const auto edges = sorted_edges(g);
  if (edges.size() > 20) throw Error("too many edges to enumerate spanning trees");
  const std::size_t need = g.vertices().size() - 1;
  std::vector<std::vector<std::string>> out;
  for (unsigned mask = 0; mask < (1u << edges.size()); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != need) continue;
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (mask & (1u << i)) ids.push_back(edges[i]->id);
    try {
      check_tree(g, ids);
      out.push_back(ids);
    } catch (const Error&) {
    }
  }
  return out;
}

Presentation fundamental_presentation(const GBSGraph& g, const std::vector<std::string>& tree) {
  const auto ids = check_tree(g, tree);
  const auto esym = edge_symbols(g, ids);
  std::string symbols;
  const auto vs = sorted_names(g.vertices());
  for (std::size_t i = 0; i < vs.size(); ++i) symbols.push_back(kVertexSymbols[i]);
  for (const auto& [id, c] : esym) symbols.push_back(c);
  std::sort(symbols.begin() + static_cast<long>(vs.size()), symbols.end());
  Presentation p{Alphabet(symbols), {}};
  for (const auto* e : sorted_edges(g)) {
    const Letter a_src = p.alphabet.letter(g.vertex_symbol(e->src));
    const Letter a_dst = p.alphabet.letter(g.vertex_symbol(e->dst));
    Word lhs = power({a_src}, e->alpha_src);
    const Word rhs = power({a_dst}, e->alpha_dst);
    if (!ids.count(e->id)) {
      const Letter t = p.alphabet.letter(esym.at(e->id));
      lhs.insert(lhs.begin(), t.inverse());
      lhs.push_back(t);
    }
    p.relations.push_back({lhs, rhs});
  }
  return p;
}

std::string to_string(WitnessKind k) {
  switch (k) {
    case WitnessKind::BaumslagSolitar: return "BS";
    case WitnessKind::TorusKnot: return "TorusKnot";
    case WitnessKind::Z2: return "Z2";
    case WitnessKind::IsZ: return "IsZ";
  }
  return "?";
}

Relation SubgroupWitness::relation() const {
  switch (kind) {
    case WitnessKind::BaumslagSolitar:
    case WitnessKind::Z2: {
      Word lhs = gbs::inverse(y);
      const Word xp = power(x, p);
      lhs.insert(lhs.end(), xp.begin(), xp.end());
      lhs.insert(lhs.end(), y.begin(), y.end());
      return {lhs, power(x, q)};
    }
    case WitnessKind::TorusKnot: return {power(x, p), power(y, q)};
    case WitnessKind::IsZ: break;
  }
  return {};
}

std::string SubgroupWitness::describe() const {
  const auto& al = presentation.alphabet;
  switch (kind) {
    case WitnessKind::BaumslagSolitar:
      return "BS(" + std::to_string(p) + "," + std::to_string(q) + ") x=" + al.format(x) + " y=" + al.format(y);
    case WitnessKind::TorusKnot:
      return "TorusKnot(" + std::to_string(p) + "," + std::to_string(q) + ") x=" + al.format(x) + " y=" + al.format(y);
    case WitnessKind::Z2:
      return "Z2 x=" + al.format(x) + " y=" + al.format(y);
    case WitnessKind::IsZ: return "IsZ";
  }
  return "?";
}

SubgroupWitness weak_aperiodicity_witness(const GBSGraph& g) { return weak_aperiodicity_witness(g, spanning_tree(g)); }

SubgroupWitness weak_aperiodicity_witness(const GBSGraph& g, const std::vector<std::string>& tree) {
  const auto ids = check_tree(g, tree);
  SubgroupWitness w;
  w.presentation = fundamental_presentation(g, tree);
  const auto esym = edge_symbols(g, ids);
  const auto& al = w.presentation.alphabet;
  auto vletter = [&](const std::string& v) { return Word{al.letter(g.vertex_symbol(v))}; };
  auto eletter = [&](const GBSEdge& e) { return Word{al.letter(esym.at(e.id))}; };
  auto is_unit = [](long v) { return v == 1 || v == -1; };
  const auto edges = sorted_edges(g);

  // A loop with a non-unit label spans a Baumslag-Solitar subgroup directly.
  for (const auto* e : edges)
    if (e->is_loop() && !(is_unit(e->alpha_src) && is_unit(e->alpha_dst))) {
      w.kind = WitnessKind::BaumslagSolitar;
      w.p = e->alpha_src;
      w.q = e->alpha_dst;
      w.x = vletter(e->src);
      w.y = eletter(*e);
      return w;
    }

  const Collapse c = collapse_tree(g, ids);
  // A tree edge surviving the collapse has both labels of size >= 2: a torus knot group.
  if (!c.remaining_tree.empty()) {
    const auto* e = c.remaining_tree.front();
    w.kind = WitnessKind::TorusKnot;
    w.p = e->alpha_src * c.k.at(e->src);
    w.q = e->alpha_dst * c.k.at(e->dst);
    w.x = vletter(c.rep.at(e->src));
    w.y = vletter(c.rep.at(e->dst));
    return w;
  }

  // Everything sits over one vertex group; every non-tree edge is an HNN letter over it.
  const GBSEdge* unit_edge = nullptr;
  for (const auto* e : edges) {
    if (ids.count(e->id)) continue;
    const long P = e->alpha_src * c.k.at(e->src), Q = e->alpha_dst * c.k.at(e->dst);
    if (is_unit(P) && is_unit(Q)) {
      if (!unit_edge) unit_edge = e;
      continue;
    }
    w.kind = WitnessKind::BaumslagSolitar;
    w.p = P;
    w.q = Q;
    w.x = vletter(c.rep.at(e->src));
    w.y = eletter(*e);
    return w;
  }
  if (unit_edge) {
    const long P = unit_edge->alpha_src * c.k.at(unit_edge->src);
    const long Q = unit_edge->alpha_dst * c.k.at(unit_edge->dst);
    w.kind = P == Q ? WitnessKind::Z2 : WitnessKind::BaumslagSolitar;
    w.p = P;
    w.q = Q;
    w.x = vletter(c.rep.at(unit_edge->src));
    w.y = eletter(*unit_edge);
    return w;
  }
  w.kind = WitnessKind::IsZ;
  return w;
}

WPAnswer verify_witness(const SubgroupWitness& w, int bound, std::size_t node_cap) {
  if (w.kind == WitnessKind::IsZ) return WPAnswer::equal;
  const Relation r = w.relation();
  return bounded_equal(w.presentation, r.lhs, r.rhs, {bound, node_cap});
}

std::vector<Rational> modular_values(const GBSGraph& g, const std::vector<std::string>& tree) {
  const auto ids = check_tree(g, tree);
  const auto vs = sorted_names(g.vertices());
  // scale[v]: a_v behaves like a_root^scale[v].
  std::map<std::string, Rational> scale{{vs.front(), Rational(1)}};
  bool grown = true;
  while (grown) {
    grown = false;
    for (const auto& e : g.edges()) {
      if (!ids.count(e.id)) continue;
      // a_src^p = a_dst^q  =>  scale[src] p = scale[dst] q
      if (scale.count(e.src) && !scale.count(e.dst)) {
        scale.emplace(e.dst, scale.at(e.src) * Rational(e.alpha_src) / Rational(e.alpha_dst));
        grown = true;
      } else if (scale.count(e.dst) && !scale.count(e.src)) {
        scale.emplace(e.src, scale.at(e.dst) * Rational(e.alpha_dst) / Rational(e.alpha_src));
        grown = true;
      }
    }
  }
  std::vector<Rational> out;
  for (const auto* e : sorted_edges(g)) {
    if (ids.count(e->id)) continue;
    out.push_back(scale.at(e->dst) * Rational(e->alpha_dst) / (scale.at(e->src) * Rational(e->alpha_src)));
  }
  return out;
}

std::string WhyteResult::to_string() const {
  switch (cls) {
    case WhyteClass::Z: return "Z";
    case WhyteClass::Unimodular: return "Unimodular";
    case WhyteClass::BS1n: return "BS1n(" + std::to_string(n) + ")";
    case WhyteClass::QI_BS23: return "QI_BS23";
  }
  return "?";
}

WhyteResult whyte_class(const GBSGraph& g) { return whyte_class(g, spanning_tree(g)); }

WhyteResult whyte_class(const GBSGraph& g, const std::vector<std::string>& tree) {
  if (weak_aperiodicity_witness(g, tree).kind == WitnessKind::IsZ) return {WhyteClass::Z, 0};
  const auto mods = modular_values(g, tree);
  if (std::all_of(mods.begin(), mods.end(), [](const Rational& r) { return r == 1 || r == -1; }))
    return {WhyteClass::Unimodular, 0};
  const auto ids = check_tree(g, tree);
  const Collapse c = collapse_tree(g, ids);
  std::vector<const GBSEdge*> hnn;
  for (const auto& e : g.edges())
    if (!ids.count(e.id)) hnn.push_back(&e);
  if (c.remaining_tree.empty() && hnn.size() == 1) {
    const auto* e = hnn.front();
    const long P = std::labs(e->alpha_src * c.k.at(e->src)), Q = std::labs(e->alpha_dst * c.k.at(e->dst));
    if (std::min(P, Q) == 1 && std::max(P, Q) > 1) return {WhyteClass::BS1n, std::max(P, Q)};
  }
  return {WhyteClass::QI_BS23, 0};
}

ArtinReduction artin_dihedral_reduce(int n) {
  if (n < 2) throw Error("dihedral Artin label must be at least 2");
  ArtinReduction r;
  r.n = n;
  const Alphabet ab("ab");
  const Letter a{0, 1}, b{1, 1};
  Word lhs, rhs;
  for (int i = 0; i < n; ++i) {
    lhs.push_back(i % 2 ? b : a);
    rhs.push_back(i % 2 ? a : b);
  }
  r.artin = Presentation{ab, {{lhs, rhs}}};
  const int k = n / 2;
  const Word c{a, b};
  if (n % 2 == 0) {
    r.group = "BS(" + std::to_string(k) + "," + std::to_string(k) + ")";
    r.p = r.q = k;
    r.x = c;
    r.y = Word{b};
    Word l = gbs::inverse(r.y);
    const Word ck = power(c, k);
    l.insert(l.end(), ck.begin(), ck.end());
    l.insert(l.end(), r.y.begin(), r.y.end());
    r.relation = {l, ck};
    r.substitution = "c = ab; t = b, a = c";
  } else {
    r.group = "Lambda(2," + std::to_string(n) + ")";
    r.p = 2;
    r.q = n;
    r.x = power(c, k);
    r.x.push_back(a);
    r.y = c;
    r.relation = {power(r.x, 2), power(r.y, n)};
    r.substitution = "x = (ab)^" + std::to_string(k) + " a, y = ab";
  }
  return r;
}

}  // namespace gbs
