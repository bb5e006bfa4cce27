#pragma once

#include <mutex>
#include <span>
#include <unordered_map>

#include "gbs/flow.hpp"
#include "gbs/rational.hpp"

namespace gbs {

/// t-exponent sum of a word over {a, t}.
long beta(std::span<const Letter> w);
long beta(const BSNormalForm& g);

/// alpha(w.a^{+-1}) = alpha(w) +- (m/n)^beta(w), unchanged by t. For BS(2,3) the ratio is 2/3.
Rational alpha(std::span<const Letter> w, int m = 2, int n = 3);
Rational alpha(const BaumslagSolitar& group, const BSNormalForm& g);

/// lambda(g) = (1/m) (n/m)^beta(g) alpha(g); for BS(2,3) this is 1/2 (3/2)^beta alpha.
Rational lambda(std::span<const Letter> w, int m = 2, int n = 3);
Rational lambda(const BaumslagSolitar& group, const BSNormalForm& g);

/// Heights driven by a flow word. Values are memoized by normal form; the cache is guarded so
/// concurrent readers are fine.
class HeightContext {
 public:
  explicit HeightContext(BSFlow flow);

  const BSFlow& flow() const { return flow_; }
  const BaumslagSolitar& group() const { return flow_.group(); }

  /// 2c - |prefix| where c is the common prefix with the flow word.
  long beta_y(const BSNormalForm& g) const;
  /// Walks the word: each t^{+-1} step scores +1 when it enters the coset the flow points to, else -1.
  long beta_y(std::span<const Letter> w) const;
  Rational lambda(const BSNormalForm& g) const;

 private:
  struct Entry {
    long beta_y;
    Rational lambda;
  };
  const Entry& entry(const BSNormalForm& g) const;

  BSFlow flow_;
  mutable std::mutex mutex_;
  mutable std::unordered_map<BSNormalForm, Entry, BaumslagSolitar::Hash> memo_;
};

}  // namespace gbs
