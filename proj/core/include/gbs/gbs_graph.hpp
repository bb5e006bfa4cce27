#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "gbs/word_problem.hpp"

namespace gbs {

/// Edge between two Z vertex groups carrying the relation a_src^alpha_src · e = e · a_dst^alpha_dst.
struct GBSEdge {
  std::string id;
  std::string src;
  std::string dst;
  long alpha_src = 1;
  long alpha_dst = 1;
  bool is_loop() const { return src == dst; }
};

/// Graph of Z's. Vertices and edges keep their declaration order; algorithms sort as documented.
class GBSGraph {
 public:
  GBSGraph(std::vector<std::string> vertices, std::vector<GBSEdge> edges);

  /// Text form: `vertex <name>...` and `edge <id> <src> <dst> <alpha_src> <alpha_dst>` lines, `#` comments.
  static GBSGraph parse(std::istream& in);
  static GBSGraph parse_string(const std::string& text);

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<GBSEdge>& edges() const { return edges_; }
  const GBSEdge& edge(const std::string& id) const;
  int vertex_index(const std::string& name) const;

  /// Vertex generator symbol: a, b, c, ... in sorted vertex order, skipping t..z.
  char vertex_symbol(const std::string& vertex) const;

 private:
  std::vector<std::string> vertices_;
  std::vector<GBSEdge> edges_;
};

/// BFS from the smallest vertex name, scanning incident edges in id order. Throws when disconnected.
std::vector<std::string> spanning_tree(const GBSGraph& g);
/// Every spanning tree (as sorted id lists); meant for small graphs.
std::vector<std::vector<std::string>> all_spanning_trees(const GBSGraph& g);

/// One generator per vertex and per non-tree edge (t if there is one such edge, else t, u, v, ...).
/// Tree edges give a_src^p = a_dst^q; other edges give e^-1 a_src^p e = a_dst^q.
Presentation fundamental_presentation(const GBSGraph& g, const std::vector<std::string>& tree);

enum class WitnessKind { BaumslagSolitar, TorusKnot, Z2, IsZ };
std::string to_string(WitnessKind k);

/// Subgroup found inside the fundamental group, with the words generating it.
///
/// BaumslagSolitar / Z2: y^-1 x^p y = x^q. TorusKnot: x^p = y^q.
struct SubgroupWitness {
  WitnessKind kind = WitnessKind::IsZ;
  long p = 0;
  long q = 0;
  Word x;
  Word y;
  Presentation presentation;  ///< ambient presentation the words live in
  std::string describe() const;
  Relation relation() const;
};

SubgroupWitness weak_aperiodicity_witness(const GBSGraph& g);
SubgroupWitness weak_aperiodicity_witness(const GBSGraph& g, const std::vector<std::string>& tree);

/// Checks the witness relation with the bounded search in the ambient presentation.
WPAnswer verify_witness(const SubgroupWitness& w, int bound = 12, std::size_t node_cap = 400000);

enum class WhyteClass { Z, Unimodular, BS1n, QI_BS23 };
struct WhyteResult {
  WhyteClass cls = WhyteClass::Z;
  long n = 0;  ///< set for BS1n
  std::string to_string() const;
};

/// Modular character of every non-tree edge: the ratio by which conjugation scales the vertex groups.
std::vector<Rational> modular_values(const GBSGraph& g, const std::vector<std::string>& tree);

WhyteResult whyte_class(const GBSGraph& g);
WhyteResult whyte_class(const GBSGraph& g, const std::vector<std::string>& tree);

/// Dihedral Artin group <a, b | aba... = bab...> (n letters each side) rewritten as a GBS group.
struct ArtinReduction {
  int n = 0;
  std::string group;  ///< "BS(k,k)" or "Lambda(2,2k+1)" with numbers filled in
  long p = 0;
  long q = 0;
  Presentation artin;  ///< presentation over {a, b}
  Word x;              ///< words in a, b generating the target
  Word y;
  Relation relation;   ///< the target relation in x and y, expanded over {a, b}
  std::string substitution;
};
ArtinReduction artin_dihedral_reduce(int n);

}  // namespace gbs
