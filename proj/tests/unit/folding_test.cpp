#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "gbs/folding.hpp"

using namespace gbs;

namespace {

Z2Tileset data_tileset(const std::string& name) { return load_tileset(std::string(GBS_DATA_DIR) + "/tilesets/" + name); }

const char* kThree = R"(name: three
palette: 0 1
tile: 0 1 0 1
tile: 1 0 1 0
tile: 0 0 1 1
)";

Z2Tileset random_tileset(std::mt19937& rng, int tiles, int colors) {
  Z2Tileset ts;
  ts.name = "random";
  for (int c = 0; c < colors; ++c) ts.palette.push_back(std::to_string(c));
  while (static_cast<int>(ts.tiles.size()) < tiles) {
    const auto c = [&] { return static_cast<int>(rng() % static_cast<unsigned>(colors)); };
    const WangTile4 t{c(), c(), c(), c()};
    if (std::find(ts.tiles.begin(), ts.tiles.end(), t) == ts.tiles.end()) ts.tiles.push_back(t);
  }
  return ts;
}

Word random_flow_word(std::mt19937& rng, std::size_t len) {
  const auto letters = FreeGroup(2).generators();
  Word w;
  while (w.size() < len) {
    const Letter l = letters[rng() % letters.size()];
    if (w.empty() || l != w.back().inverse()) w.push_back(l);
  }
  return w;
}

}  // namespace

TEST(Tileset, ShippedFiles) {
  EXPECT_EQ(data_tileset("jeandel_rao.tiles").tiles.size(), 11u);
  EXPECT_EQ(data_tileset("jeandel_rao.tiles").palette.size(), 5u);
  EXPECT_EQ(data_tileset("one_tile.tiles").tiles.size(), 1u);
  EXPECT_EQ(data_tileset("checkerboard.tiles").tiles.size(), 2u);
}

TEST(Tileset, ParseErrors) {
  try {
    parse_tileset_string("palette: a b\ntile: a b a\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(parse_tileset_string("palette: a\n"), ParseError);
  EXPECT_THROW(parse_tileset_string("tile: a a a a\n"), ParseError);
  EXPECT_THROW(parse_tileset_string("palette: a\ntile: a a a z\n"), ParseError);
  EXPECT_THROW(parse_tileset_string("palette: a\nbogus\n"), ParseError);
  const auto ts = parse_tileset_string(kThree);
  EXPECT_EQ(parse_tileset_string(format_tileset(ts)).tiles, ts.tiles);
}

TEST(Tileset, Rotation) {
  const auto ts = parse_tileset_string("palette: n e s w\ntile: n e s w\n");
  const auto r = rotate_tileset(ts);
  EXPECT_EQ(r.tiles[0], (WangTile4{3, 0, 1, 2}));
  auto jr = data_tileset("jeandel_rao.tiles");
  EXPECT_EQ(rotate_tileset(rotate_tileset(rotate_tileset(rotate_tileset(jr)))).tiles, jr.tiles);
}

TEST(Tileset, RotationPreservesValidPatches) {
  std::mt19937 rng(5);
  std::vector<Z2Tileset> sets{parse_tileset_string(kThree)};
  for (int k = 0; k < 4; ++k) sets.push_back(random_tileset(rng, 2 + k % 3, 2));
  for (const auto& ts : sets) {
    const auto rot = rotate_tileset(ts);
    for (int m = 1; m <= 3; ++m)
      for (int n = 1; n <= 3; ++n) {
        const auto src = all_valid_patches(ts, m, n);
        for (const auto& p : src) EXPECT_TRUE(validate_z2(rot, rotate_patch(p)).empty());
        EXPECT_EQ(src.size(), all_valid_patches(rot, n, m).size());
      }
  }
}

TEST(Tileset, HigherBlocks) {
  const auto ts = parse_tileset_string(kThree);
  const auto one = higher_block(ts, 1, 1);
  ASSERT_EQ(one.tileset.tiles.size(), ts.tiles.size());
  for (std::size_t a = 0; a < ts.tiles.size(); ++a)
    for (std::size_t b = 0; b < ts.tiles.size(); ++b) {
      EXPECT_EQ(ts.tiles[a].east == ts.tiles[b].west, one.tileset.tiles[a].east == one.tileset.tiles[b].west);
      EXPECT_EQ(ts.tiles[a].north == ts.tiles[b].south, one.tileset.tiles[a].north == one.tileset.tiles[b].south);
    }
  for (const auto& base : {data_tileset("checkerboard.tiles"), ts, data_tileset("jeandel_rao.tiles")}) {
    std::size_t dominoes = 0;
    for (const auto& a : base.tiles)
      for (const auto& b : base.tiles) dominoes += a.east == b.west;
    EXPECT_EQ(higher_block(base, 2, 1).tileset.tiles.size(), dominoes);
  }
  EXPECT_THROW(higher_block(ts, 0, 1), Error);
}

TEST(Tileset, BlockPatchesExpandToValidPatches) {
  std::mt19937 rng(17);
  const auto base = data_tileset("jeandel_rao.tiles");
  const auto bt = higher_block(base, 2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_valid_patch(bt.tileset, 0, 3, 0, 3, rng);
    ASSERT_TRUE(validate_z2(bt.tileset, p).empty());
    const auto q = expand_blocks(bt, p);
    EXPECT_EQ(q.width(), 8);
    EXPECT_TRUE(validate_z2(base, q).empty());
  }
}

TEST(Z2PatchIO, RoundTripAndErrors) {
  Z2Patch p(-1, 1, 0, 1);
  p.set(-1, 0, 2);
  p.set(1, 1, 0);
  const auto text = format_z2_patch(p);
  EXPECT_EQ(text, "window: -1 1 0 1\n. . 0\n2 . .\n");
  EXPECT_EQ(parse_z2_patch_string(text), p);
  EXPECT_THROW(parse_z2_patch_string("window: 0 1 0 0\n1\n"), ParseError);
  EXPECT_THROW(parse_z2_patch_string("window: 0 0 0 1\n1\n"), ParseError);
  EXPECT_THROW(parse_z2_patch_string("rows\n"), ParseError);
  const auto ts = parse_tileset_string(kThree);
  Z2Patch bad(0, 1, 0, 0);
  bad.set(0, 0, 0);
  bad.set(1, 0, 1);
  ASSERT_EQ(validate_z2(ts, bad).size(), 1u);
  EXPECT_EQ(validate_z2(ts, bad).front().rule, "east-west");
}

TEST(Folding, HeightFormula) {
  const FreeGroup F(2);
  const auto& al = F.alphabet();
  const FreeFlow flow(2, al.parse("abab"));
  EXPECT_EQ(fold_height(flow, Word{}), 0);
  EXPECT_EQ(fold_height(flow, al.parse("a")), 1);
  EXPECT_EQ(fold_height(flow, al.parse("ab")), 2);
  EXPECT_EQ(fold_height(flow, al.parse("aB")), 0);
  EXPECT_EQ(fold_height(flow, al.parse("b")), -1);
  EXPECT_EQ(al.format(rho(flow, 3)), "aba");
  EXPECT_EQ(al.format(rho(flow, -2)), "AA");
  EXPECT_EQ(fold_height(flow, rho(flow, -2)), -2);
}

TEST(Folding, HeightStepsFollowTheFlow) {
  const FreeGroup F(2);
  std::mt19937 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const FreeFlow flow(2, random_flow_word(rng, 6));
    const auto ball = enumerate_ball(F, 5);
    for (const auto& w : *ball.support)
      for (const auto& s : F.generators()) {
        const Word ws = F.multiply(w, s);
        const long d = fold_height(flow, ws) - fold_height(flow, w);
        ASSERT_EQ(d, flow.label(w) == s ? 1 : -1);
      }
  }
}

TEST(Folding, FoldValidatesAndUnfolds) {
  std::mt19937 rng(29);
  const std::vector<Z2Tileset> sets{data_tileset("jeandel_rao.tiles"), data_tileset("checkerboard.tiles"),
                                    parse_tileset_string(kThree), data_tileset("one_tile.tiles")};
  for (int trial = 0; trial < 100; ++trial) {
    const auto& ts = sets[static_cast<std::size_t>(trial) % sets.size()];
    const auto x = random_valid_patch(ts, -5, 5, -5, 5, rng);
    const Word W = random_flow_word(rng, 5 + trial % 3);
    const auto p = fold(ts, x, W, 5, 2);
    const auto v = validate_folded(ts, p);
    ASSERT_TRUE(v.empty()) << v.front().rule << " at " << v.front().cell;
    const auto back = unfold(ts, p);
    std::size_t known = 0;
    for (int j = -5; j <= 5; ++j)
      for (int i = -5; i <= 5; ++i)
        if (const int t = back.at(i, j); t >= 0) {
          ++known;
          ASSERT_EQ(t, x.at(i, j));
        }
    EXPECT_EQ(known, 61u);  // |i| + |j| <= 5
  }
}

TEST(Folding, MutationsAreCaught) {
  std::mt19937 rng(31);
  const auto ts = data_tileset("jeandel_rao.tiles");
  const auto x = random_valid_patch(ts, -3, 3, -3, 3, rng);
  const auto p = fold(ts, x, FreeGroup(2).alphabet().parse("abba"), 3, 2);
  std::size_t mutated = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (int t = 0; t < static_cast<int>(ts.tiles.size()); ++t) {
      if (p.element(i).w.size() + static_cast<std::size_t>(std::abs(p.element(i).k)) >= 3) continue;  // all four sides inside
      const auto& old = ts.tiles[static_cast<std::size_t>(p.labels[i].tile)];
      const auto& neu = ts.tiles[static_cast<std::size_t>(t)];
      if (old == neu) continue;
      auto q = p;
      q.labels[i].tile = t;
      ASSERT_FALSE(validate_folded(ts, q).empty());
      ++mutated;
    }
  EXPECT_GT(mutated, 0u);
  EXPECT_TRUE(validate_folded(ts, empty_patch<FreeTimesZ, FoldCell>(FreeTimesZ(2))).empty());
  auto q = p;
  q.labels[0].tile = 99;
  EXPECT_EQ(validate_folded(ts, q).front().rule, "tile-range");
  EXPECT_THROW(unfold(ts, q), Error);
}

TEST(Folding, SingleColumn) {
  const auto ts = data_tileset("checkerboard.tiles");
  std::mt19937 rng(2);
  const auto x = random_valid_patch(ts, 0, 0, 0, 0, rng);
  const auto p = fold(ts, x, FreeGroup(2).alphabet().parse("a"), 0, 2);
  ASSERT_EQ(p.size(), 1u);
  const auto back = unfold(ts, p);
  EXPECT_EQ(back.width(), 1);
  EXPECT_EQ(back.at(0, 0), x.at(0, 0));
}

TEST(Folding, WindowAndWordPreconditions) {
  const auto ts = data_tileset("one_tile.tiles");
  const Z2Patch small(-1, 1, -1, 1, 0);
  EXPECT_THROW(fold(ts, small, FreeGroup(2).alphabet().parse("aaa"), 3, 2), Error);
  EXPECT_THROW(fold(ts, Z2Patch(-3, 3, -3, 3, 0), FreeGroup(2).alphabet().parse("a"), 3, 2), Error);
}

TEST(Folding, PeriodScanner) {
  std::mt19937 rng(37);
  const auto jr = data_tileset("jeandel_rao.tiles");
  for (int trial = 0; trial < 3; ++trial) {
    const auto p = fold(jr, random_valid_patch(jr, -5, 5, -5, 5, rng), random_flow_word(rng, 6), 5, 2);
    const auto s = scan_periods(p, 2, 10);
    EXPECT_TRUE(s.survivors.empty());
    EXPECT_GT(s.conclusive, 0u);
  }
  const auto one = data_tileset("one_tile.tiles");
  const auto p = fold(one, Z2Patch(-5, 5, -5, 5, 0), FreeGroup(2).alphabet().parse("aaaaa"), 5, 2);
  const auto s = scan_periods(p, 2, 10);
  EXPECT_NE(std::find(s.survivors.begin(), s.survivors.end(), "1|t^1"), s.survivors.end());
  EXPECT_EQ(std::find(s.survivors.begin(), s.survivors.end(), "1|t^0"), s.survivors.end());
}
