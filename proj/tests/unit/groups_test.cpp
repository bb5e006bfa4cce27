#include <gtest/gtest.h>

#include <random>

#include "gbs/ball.hpp"
#include "gbs/groups.hpp"
#include "gbs/word_problem.hpp"

using namespace gbs;

namespace {

const Alphabet kAT("at");

Word w(std::string_view s) { return kAT.parse(s); }

std::string nf(const BaumslagSolitar& g, std::string_view word) { return g.key(g.evaluate(w(word))); }

}  // namespace

TEST(FreeReduce, CancelsAdjacentPairs) {
  Alphabet ab("ab");
  EXPECT_TRUE(free_reduce(ab.parse("aA")).empty());
  EXPECT_EQ(ab.format(free_reduce(ab.parse("baAb"))), "bb");
  EXPECT_EQ(ab.format(free_reduce(ab.parse("bab"))), "bab");
  EXPECT_EQ(ab.format(free_reduce(ab.parse("abBA"))), "1");
}

TEST(FreeReduce, UnknownSymbolIsParseError) {
  Alphabet ab("ab");
  EXPECT_THROW(ab.parse("abc"), ParseError);
}

TEST(FreeReduce, ConfluentUnderRandomOrder) {
  // Reducing the halves first and then the concatenation gives the same word.
  std::mt19937 rng(7);
  Alphabet ab("ab");
  const auto letters = ab.letters();
  for (int trial = 0; trial < 500; ++trial) {
    Word x;
    for (int i = 0; i < 16; ++i) x.push_back(letters[rng() % letters.size()]);
    const std::size_t cut = rng() % x.size();
    Word left(x.begin(), x.begin() + static_cast<long>(cut)), right(x.begin() + static_cast<long>(cut), x.end());
    EXPECT_EQ(free_reduce(concat(free_reduce(left), free_reduce(right))), free_reduce(x));
  }
}

TEST(BSNormalize, RewritesThroughT) {
  BaumslagSolitar g(2, 3);
  EXPECT_EQ(nf(g, "aat"), "t|a^3");
  EXPECT_EQ(nf(g, "aaaT"), "T|a^2");
  EXPECT_EQ(nf(g, "Taat"), "1|a^3");
  EXPECT_EQ(nf(g, "tT"), "1|a^0");
  EXPECT_EQ(nf(g, "1"), "1|a^0");
  EXPECT_EQ(nf(g, "aTaat"), "1|a^4");
  EXPECT_EQ(nf(g, "aTat"), "aTat|a^0");
}

TEST(BSNormalize, FreeFunctionMatchesGroup) {
  const auto x = bs_normalize(w("aaat"), 2, 3);
  EXPECT_EQ(BaumslagSolitar(2, 3).key(x), "at|a^3");
}

TEST(BSMultiply, Examples) {
  BaumslagSolitar g(2, 3);
  EXPECT_EQ(g.key(bs_multiply(g, g.evaluate(w("t")), g.evaluate(w("T")))), "1|a^0");
  EXPECT_EQ(g.key(bs_multiply(g, g.evaluate(w("a")), g.evaluate(w("at")))), "t|a^3");
  EXPECT_EQ(g.key(bs_multiply(g, g.evaluate(w("at")), g.evaluate(w("a")))), "at|a^1");
  // The last example is confirmed by the independent search.
  EXPECT_EQ(wp_oracle(w("ata"), g.word_of(g.parse_key("at|a^1")), 2, 3, 8), WPAnswer::equal);
}

TEST(BSMultiply, ParameterMismatchThrows) {
  BaumslagSolitar g(2, 3);
  BSNormalForm bad{{{2, 1}}, 0};  // a^2 t is not a letter of BS(2,3)
  EXPECT_THROW(bs_multiply(g, bad, g.identity()), Error);
}

TEST(BSMultiply, GroupLawsOnRandomElements) {
  BaumslagSolitar g(2, 3);
  std::mt19937 rng(11);
  const auto letters = g.generators();
  auto random_elem = [&] {
    Word x;
    const int len = static_cast<int>(rng() % 12);
    for (int i = 0; i < len; ++i) x.push_back(letters[rng() % letters.size()]);
    return g.evaluate(x);
  };
  for (int trial = 0; trial < 300; ++trial) {
    const auto x = random_elem(), y = random_elem(), z = random_elem();
    EXPECT_EQ(g.multiply(g.multiply(x, y), z), g.multiply(x, g.multiply(y, z)));
    EXPECT_EQ(g.multiply(x, g.inverse(x)), g.identity());
    EXPECT_EQ(g.multiply(g.inverse(x), x), g.identity());
  }
}

TEST(BSNormalize, IdempotentOnRandomWords) {
  BaumslagSolitar g(2, 3);
  std::mt19937 rng(3);
  const auto letters = g.generators();
  for (int trial = 0; trial < 10000; ++trial) {
    Word x;
    const int len = static_cast<int>(rng() % 21);
    for (int i = 0; i < len; ++i) x.push_back(letters[rng() % letters.size()]);
    const auto n1 = g.evaluate(x);
    ASSERT_EQ(g.evaluate(g.word_of(n1)), n1);
    ASSERT_EQ(g.parse_key(g.key(n1)), n1);
  }
}

TEST(BSNormalize, GeneralParameters) {
  for (auto [m, n] : {std::pair{1, 1}, {1, 2}, {3, 2}, {2, 5}, {4, 4}}) {
    BaumslagSolitar g(m, n);
    // t^-1 a^m t = a^n
    Word rel{{1, -1}};
    for (int i = 0; i < m; ++i) rel.push_back({0, 1});
    rel.push_back({1, 1});
    EXPECT_EQ(g.evaluate(rel), g.evaluate(letter_power(0, n))) << g.name();
  }
}

TEST(AffineShadow, IsAHomomorphism) {
  BaumslagSolitar g(2, 3);
  std::mt19937 rng(5);
  const auto letters = g.generators();
  auto random_word = [&] {
    Word x;
    const int len = static_cast<int>(rng() % 10);
    for (int i = 0; i < len; ++i) x.push_back(letters[rng() % letters.size()]);
    return x;
  };
  for (int trial = 0; trial < 1000; ++trial) {
    const Word u = random_word(), v = random_word();
    const auto prod = g.multiply(g.evaluate(u), g.evaluate(v));
    const auto fu = affine_shadow(u, 2, 3), fv = affine_shadow(v, 2, 3);
    const auto fp = affine_shadow(g.word_of(prod), 2, 3);
    // composition x -> fu(fv(x))
    EXPECT_EQ(fp.slope, fu.slope * fv.slope);
    EXPECT_EQ(fp.offset, fu(fv.offset));
  }
}

TEST(WordProblemOracle, Examples) {
  EXPECT_EQ(wp_oracle(w("Taat"), w("aaa"), 2, 3, 8), WPAnswer::equal);
  EXPECT_EQ(wp_oracle(w("a"), w("aa"), 2, 3, 8), WPAnswer::unequal);
  EXPECT_EQ(wp_oracle(w("1"), w("1"), 2, 3, 0), WPAnswer::equal);
}

TEST(WordProblemOracle, ShadowCannotSeparateCommutator) {
  // [a, t a t^-1] is nontrivial but invisible to the shadow; the bounded search cannot prove it trivial.
  const Word c = w("atATAtaT");
  EXPECT_EQ(affine_shadow(c, 2, 3), AffineMap{});
  EXPECT_NE(BaumslagSolitar(2, 3).evaluate(c), BaumslagSolitar(2, 3).identity());
  EXPECT_EQ(wp_oracle(c, w("1"), 2, 3, 10, 20000), WPAnswer::unknown);
}

TEST(Presentation, CanonicalBaumslagSolitarString) {
  EXPECT_EQ(Presentation::baumslag_solitar(2, 3).to_string(), "< a, t | t^-1 a^2 t = a^3 >");
  EXPECT_EQ(Presentation::baumslag_solitar(1, 1).to_string(), "< a, t | t^-1 a t = a >");
}

TEST(MoveComponents, ConnectsRelatorEquivalentWords) {
  MoveComponents comp(Presentation::baumslag_solitar(2, 3), 8);
  EXPECT_TRUE(comp.connected(w("aat"), w("taaa")));
  EXPECT_TRUE(comp.connected(w("Taat"), w("aaa")));
  EXPECT_FALSE(comp.connected(w("a"), w("aa")));
}

TEST(Ball, SmallSizes) {
  EXPECT_EQ(enumerate_ball(FreeGroup(2), 0).size(), 1u);
  EXPECT_EQ(enumerate_ball(FreeGroup(2), 1).size(), 5u);
  EXPECT_EQ(enumerate_ball(FreeTimesZ(2), 1).size(), 7u);
  EXPECT_EQ(enumerate_ball(FreeTimesZ(2), 5).size(), 959u);
}

TEST(Ball, FreeGroupSphereContents) {
  FreeGroup f(2);
  const auto b = enumerate_ball(f, 1);
  std::vector<std::string> keys;
  for (const auto& e : *b.support) keys.push_back(f.key(e));
  EXPECT_EQ(keys, (std::vector<std::string>{"1", "A", "B", "a", "b"}));
}

TEST(Ball, BaumslagSolitarRadiusTwoMatchesOracle) {
  // Independent count: classes of all words of length <= 2 under the bounded search.
  BaumslagSolitar g(2, 3);
  std::vector<Word> words{{}};
  for (int len = 1; len <= 2; ++len) {
    std::vector<Word> grown;
    for (const auto& x : words)
      if (static_cast<int>(x.size()) == len - 1)
        for (const auto& l : g.generators()) {
          Word y = x;
          y.push_back(l);
          grown.push_back(y);
        }
    words.insert(words.end(), grown.begin(), grown.end());
  }
  std::vector<Word> reps;
  for (const auto& x : words) {
    bool found = false;
    for (const auto& r : reps) {
      const auto ans = wp_oracle(x, r, 2, 3, 10);
      ASSERT_NE(ans, WPAnswer::unknown);
      if (ans == WPAnswer::equal) {
        found = true;
        break;
      }
    }
    if (!found) reps.push_back(x);
  }
  EXPECT_EQ(enumerate_ball(g, 2).size(), reps.size());
}

TEST(Ball, NestedAndTranslationConsistent) {
  BaumslagSolitar g(2, 3);
  const auto b3 = enumerate_ball(g, 3), b4 = enumerate_ball(g, 4);
  for (const auto& e : *b3.support) {
    EXPECT_TRUE(b4.contains(e));
    for (const auto& s : g.generators()) {
      Word sw{s};
      EXPECT_TRUE(b4.contains(g.multiply(g.evaluate(sw), e)));
    }
  }
}

TEST(Ball, CapExceededThrows) {
  EXPECT_THROW(enumerate_ball(FreeGroup(2), 6, 100), CapExceeded);
}

TEST(Ball, EnvironmentCap) {
  setenv("GBS_BALL_CAP", "10", 1);
  EXPECT_EQ(default_ball_cap(), 10u);
  EXPECT_THROW(enumerate_ball(FreeGroup(2), 3), CapExceeded);
  unsetenv("GBS_BALL_CAP");
  EXPECT_EQ(default_ball_cap(), 1000000u);
}

TEST(Keys, RoundTrip) {
  FreeTimesZ fz(2);
  const auto e = fz.evaluate(Alphabet("abt").parse("aBtt"));
  EXPECT_EQ(fz.key(e), "aB|t^2");
  EXPECT_EQ(fz.parse_key("aB|t^2"), e);
  EXPECT_EQ(fz.key(fz.identity()), "1|t^0");
  EXPECT_THROW(fz.parse_key("aA|t^0"), ParseError);
  BaumslagSolitar g(2, 3);
  EXPECT_THROW(g.parse_key("tT|a^0"), ParseError);
  EXPECT_THROW(g.parse_key("aat|a^0"), ParseError);
  EXPECT_THROW(g.parse_key("ta|a^0"), ParseError);
}
