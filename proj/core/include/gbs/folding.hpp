#pragma once

#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "gbs/flow.hpp"
#include "gbs/wang.hpp"

namespace gbs {

/// Four-sided Wang tile; entries index the tileset palette.
struct WangTile4 {
  int north = 0, east = 0, south = 0, west = 0;
  friend bool operator==(const WangTile4&, const WangTile4&) = default;
  friend auto operator<=>(const WangTile4&, const WangTile4&) = default;
};

struct Z2Tileset {
  std::string name;
  std::vector<std::string> palette;
  std::vector<WangTile4> tiles;

  const std::string& color(int c) const { return palette.at(static_cast<std::size_t>(c)); }
  int color_index(std::string_view name) const;  ///< -1 when absent
};

/// Lines `name: ...`, `palette: c1 c2 ...`, `tile: N E S W` (palette names); `#` starts a comment.
Z2Tileset parse_tileset(std::istream& in);
Z2Tileset parse_tileset_string(std::string_view text);
Z2Tileset load_tileset(const std::string& path);
std::string format_tileset(const Z2Tileset& ts);

/// Quarter turn: (N, E, S, W) -> (W, N, E, S).
Z2Tileset rotate_tileset(const Z2Tileset& ts);

/// Rectangular window [i0, i1] x [j0, j1]; i grows east, j grows north. Cells hold tile indices, -1 if unknown.
struct Z2Patch {
  int i0 = 0, i1 = -1, j0 = 0, j1 = -1;
  std::vector<int> cells;  // row-major from j0, then i0

  Z2Patch() = default;
  Z2Patch(int i0_, int i1_, int j0_, int j1_, int fill = -1);
  int width() const { return i1 - i0 + 1; }
  int height() const { return j1 - j0 + 1; }
  bool contains(int i, int j) const { return i0 <= i && i <= i1 && j0 <= j && j <= j1; }
  int at(int i, int j) const;  ///< -1 outside or unknown
  void set(int i, int j, int tile);
  friend bool operator==(const Z2Patch&, const Z2Patch&) = default;
};

/// Mismatched edges between known neighbouring cells, plus out-of-range tile ids.
std::vector<Violation> validate_z2(const Z2Tileset& ts, const Z2Patch& p);

/// `window: i0 i1 j0 j1` then one row per j from j1 down to j0; `.` marks an unknown cell.
Z2Patch parse_z2_patch(std::istream& in);
Z2Patch parse_z2_patch_string(std::string_view text);
std::string format_z2_patch(const Z2Patch& p);

/// Same patch seen after the quarter turn of `rotate_tileset`: (i, j) -> (j, -i).
Z2Patch rotate_patch(const Z2Patch& p);

/// Backtracking fill of the window with tiles tried in a random order. Throws when nothing fits.
Z2Patch random_valid_patch(const Z2Tileset& ts, int i0, int i1, int j0, int j1, std::mt19937& rng,
                           std::size_t node_cap = 2000000);
/// Every valid patch on a width x height window, in lexicographic tile order.
std::vector<Z2Patch> all_valid_patches(const Z2Tileset& ts, int width, int height);

/// Non-overlapping m x n blocks (m columns, n rows). Block edge colors are the tuples of the
/// underlying edge colors, so adjacent blocks match iff all their boundary tiles do.
struct BlockTileset {
  Z2Tileset tileset;
  int m = 1, n = 1;
  std::vector<Z2Patch> blocks;  ///< block tile k is blocks[k], window [0, m-1] x [0, n-1]
};
BlockTileset higher_block(const Z2Tileset& ts, int m, int n);
/// Expands a patch of block tiles back to the base tileset.
Z2Patch expand_blocks(const BlockTileset& bt, const Z2Patch& p);

// ---- folding onto F_n x Z

struct FoldCell {
  int tile = 0;
  Letter flow;
  friend bool operator==(const FoldCell&, const FoldCell&) = default;
};
using FoldedPatch = Patch<FreeTimesZ, FoldCell>;

/// j = 2 |lcp(w, W)| - |w|.
long fold_height(const FreeFlow& flow, std::span<const Letter> w);
/// rho_W(j) = W_0 ... W_{j-1} for j >= 0 and (W_0^-1)^{|j|} for j < 0.
Word rho(const FreeFlow& flow, long j);

/// Cell w t^i gets (x_{(i, j(w))}, y_w). Needs the window to cover [-radius, radius]^2.
FoldedPatch fold(const Z2Tileset& ts, const Z2Patch& x, const Word& W, int radius, int rank);

/// P rules on {1, t}: horizontal match and equal flow letters. Q rules on {1, s}: vertical match,
/// north when s = y_g, south otherwise. Flow rules via the flow shift.
std::vector<Violation> validate_folded(const Z2Tileset& ts, const FoldedPatch& p);

/// x_{(i,j)} = tile at rho_W(j) t^i, W read from the flow layer. Throws on an invalid patch.
Z2Patch unfold(const Z2Tileset& ts, const FoldedPatch& p);

}  // namespace gbs
