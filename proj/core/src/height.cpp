#include "gbs/height.hpp"

namespace gbs {

long beta(std::span<const Letter> w) {
  long b = 0;
  for (const auto& l : w)
    if (l.gen == BaumslagSolitar::kT) b += l.sign;
  return b;
}

long beta(const BSNormalForm& g) {
  long b = 0;
  for (const auto& l : g.prefix) b += l.e;
  return b;
}

Rational alpha(std::span<const Letter> w, int m, int n) {
  const Rational ratio(m, n);
  Rational a;
  long b = 0;
  for (const auto& l : w) {
    if (l.gen == BaumslagSolitar::kT)
      b += l.sign;
    else if (l.sign > 0)
      a += ratio.pow(b);
    else
      a -= ratio.pow(b);
  }
  return a;
}

Rational alpha(const BaumslagSolitar& group, const BSNormalForm& g) {
  return alpha(group.word_of(g), group.m(), group.n());
}

Rational lambda(std::span<const Letter> w, int m, int n) {
  return Rational(1, m) * Rational(n, m).pow(beta(w)) * alpha(w, m, n);
}

Rational lambda(const BaumslagSolitar& group, const BSNormalForm& g) {
  return lambda(group.word_of(g), group.m(), group.n());
}

HeightContext::HeightContext(BSFlow flow) : flow_(std::move(flow)) {
  if (flow_.word().empty()) throw Error("flow word is empty");
}

const HeightContext::Entry& HeightContext::entry(const BSNormalForm& g) const {
  std::lock_guard lock(mutex_);
  if (const auto it = memo_.find(g); it != memo_.end()) return it->second;
  const long c = static_cast<long>(flow_.common_prefix(g.prefix));
  Entry e{2 * c - static_cast<long>(g.prefix.size()), gbs::lambda(group(), g)};
  return memo_.emplace(g, std::move(e)).first->second;
}

long HeightContext::beta_y(const BSNormalForm& g) const { return entry(g).beta_y; }

long HeightContext::beta_y(std::span<const Letter> w) const {
  const auto& G = group();
  BSNormalForm cur = G.identity();
  long b = 0;
  for (const auto& l : w) {
    const BSNormalForm next = G.multiply(cur, l);
    if (l.gen == BaumslagSolitar::kT) {
      const BSNormalForm target = G.multiply(cur, flow_.label(cur));
      b += next.prefix == target.prefix ? 1 : -1;
    }
    cur = next;
  }
  return b;
}

Rational HeightContext::lambda(const BSNormalForm& g) const { return entry(g).lambda; }

}  // namespace gbs
