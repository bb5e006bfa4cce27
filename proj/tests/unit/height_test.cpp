#include <gtest/gtest.h>

#include <random>

#include "gbs/height.hpp"
#include "gbs/word_problem.hpp"

using namespace gbs;

namespace {

const BaumslagSolitar B(2, 3);

Word w(const char* s) { return B.alphabet().parse(s); }

Word random_word(std::mt19937& rng, std::size_t len) {
  const auto letters = B.generators();
  Word out;
  for (std::size_t i = 0; i < len; ++i) out.push_back(letters[rng() % letters.size()]);
  return out;
}

// One random relator insertion (cyclic conjugate of r or r^-1) or free expansion x x^-1.
Word rewrite(std::mt19937& rng, Word word) {
  const Word rel = Presentation::baumslag_solitar(2, 3).relators().front();
  Word ins;
  if (rng() % 3 == 0) {
    const Letter x = B.generators()[rng() % 4];
    ins = {x, x.inverse()};
  } else {
    Word r = rng() % 2 ? rel : inverse(rel);
    std::rotate(r.begin(), r.begin() + static_cast<long>(rng() % r.size()), r.end());
    ins = r;
  }
  const auto pos = static_cast<long>(rng() % (word.size() + 1));
  word.insert(word.begin() + pos, ins.begin(), ins.end());
  return word;
}

// beta_y by the letter recursion over the normal-form prefix.
long beta_y_recursive(const BSFlow& flow, const BSNormalForm& g) {
  BSNormalForm cur;
  long b = 0;
  for (const auto& u : g.prefix) {
    b += flow.label(cur) == u ? 1 : -1;
    cur = B.multiply(cur, u);
  }
  return b;
}

}  // namespace

TEST(Height, Beta) {
  EXPECT_EQ(beta(w("t")), 1);
  EXPECT_EQ(beta(w("Taat")), 0);
  EXPECT_EQ(beta(w("aaa")), 0);
  EXPECT_EQ(beta(w("atatT")), 1);
  EXPECT_EQ(beta(B.evaluate(w("atatT"))), 1);
}

TEST(Height, Alpha) {
  EXPECT_EQ(alpha(w("a")), Rational(1));
  EXPECT_EQ(alpha(w("ta")), Rational(2, 3));
  EXPECT_EQ(alpha(w("Taat")), Rational(3));
  EXPECT_EQ(alpha(w("aaa")), Rational(3));
  EXPECT_EQ(alpha(B, B.evaluate(w("Taat"))), Rational(3));
}

TEST(Height, LambdaExamples) {
  EXPECT_EQ(lambda(B, B.identity()), Rational(0));
  EXPECT_EQ(lambda(w("aa")), Rational(1));
  EXPECT_EQ(lambda(w("a")), Rational(1, 2));
  EXPECT_EQ(lambda(w("ta")), Rational(1, 2));
}

TEST(Height, LambdaIdentitiesOnBall5) {
  const auto ball = enumerate_ball(B, 5);
  for (const auto& g : *ball.support) {
    const Rational lg = lambda(B, g);
    EXPECT_TRUE(denominator_is_6_smooth(lg));
    BSNormalForm ga = g;
    ga.k += 1;
    EXPECT_EQ(lambda(B, ga), lg + Rational(1, 2));
    ga.k += 1;
    EXPECT_EQ(lambda(B, ga), lg + 1);
    for (int i = 0; i <= 2; ++i) {
      BSNormalForm h = B.multiply(g, Letter{BaumslagSolitar::kT, 1});
      h.k += i;
      EXPECT_EQ(beta(h), beta(g) + 1);
      EXPECT_EQ(lambda(B, h), Rational(3, 2) * lg + Rational(i, 2));
    }
  }
}

TEST(Height, BetaYExamples) {
  const BSWord W = parse_bs_word(B, "atataTT");
  const HeightContext ctx(BSFlow(B, W));
  EXPECT_EQ(ctx.beta_y(B.evaluate(w("at"))), 1);
  EXPECT_EQ(ctx.beta_y(B.evaluate(w("atat"))), 2);
  EXPECT_EQ(ctx.beta_y(w("atat")), 2);
  EXPECT_EQ(ctx.beta_y(w("aaaaa")), 0);
  EXPECT_EQ(ctx.beta_y(w("T")), -1);
  EXPECT_EQ(ctx.beta_y(w("t")), -1);
}

TEST(Height, BetaYMatchesRecursionOnBall) {
  std::mt19937 rng(2);
  const auto letters = B.normal_letters();
  const auto ball = enumerate_ball(B, 4);
  for (int trial = 0; trial < 10; ++trial) {
    BSWord W;
    while (W.size() < 6) {
      const auto l = letters[rng() % letters.size()];
      if (W.empty() || B.may_follow(W.back(), l)) W.push_back(l);
    }
    const HeightContext ctx(BSFlow(B, W));
    for (const auto& g : *ball.support) {
      ASSERT_EQ(ctx.beta_y(g), beta_y_recursive(ctx.flow(), g));
      ASSERT_EQ(ctx.beta_y(B.word_of(g)), ctx.beta_y(g));
      BSNormalForm ga = g;
      ga.k += 2;
      EXPECT_EQ(ctx.beta_y(ga), ctx.beta_y(g));
    }
  }
}

TEST(Height, RepresentationIndependence) {
  std::mt19937 rng(4);
  const HeightContext ctx(BSFlow(B, parse_bs_word(B, "taTataaT")));
  for (int trial = 0; trial < 1000; ++trial) {
    const Word u = random_word(rng, 1 + rng() % 8);
    Word v = u;
    const int k = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < k; ++i) v = rewrite(rng, v);
    ASSERT_EQ(B.evaluate(u), B.evaluate(v));
    EXPECT_EQ(ctx.beta_y(u), ctx.beta_y(v));
    EXPECT_EQ(alpha(u), alpha(v));
    EXPECT_EQ(lambda(u), lambda(v));
    EXPECT_EQ(ctx.lambda(B.evaluate(v)), lambda(v));
  }
}
