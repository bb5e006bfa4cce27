#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gbs/rational.hpp"
#include "gbs/words.hpp"

namespace gbs {

/// A defining relation lhs = rhs.
struct Relation {
  Word lhs;
  Word rhs;
  Word relator() const;  ///< lhs · rhs^-1, freely reduced
};

/// Finite presentation < gens | relations >.
struct Presentation {
  Alphabet alphabet{""};
  std::vector<Relation> relations;

  std::vector<Word> relators() const;
  /// `< a, t | t^-1 a^2 t = a^3 >`; a presentation without relations prints `< a, b | >`.
  std::string to_string() const;

  static Presentation baumslag_solitar(int m, int n);
};

/// Syllable notation: `t^-1 a^2 t`, the empty word is `1`.
std::string format_syllables(const Alphabet& alphabet, std::span<const Letter> word);

enum class WPAnswer { equal, unequal, unknown };
std::string to_string(WPAnswer a);

struct SearchLimits {
  int bound = 8;                 ///< longest intermediate word
  std::size_t node_cap = 200000;  ///< visited-word budget
};

/// Bounded search for a derivation of u = v: moves insert a cyclic conjugate of a relator (or of its
/// inverse) anywhere and freely reduce, keeping words of length <= bound. Never answers `unequal`.
WPAnswer bounded_equal(const Presentation& p, std::span<const Letter> u, std::span<const Letter> v,
                       const SearchLimits& limits);

/// Affine action of BS(m,n): a acts as x -> x + 1, t as x -> (m/n) x, composed left to right.
struct AffineMap {
  Rational slope{1};
  Rational offset{0};
  Rational operator()(const Rational& x) const { return slope * x + offset; }
  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};
AffineMap affine_shadow(std::span<const Letter> word, int m, int n);

/// Word problem in BS(m,n) over {a, t}: `equal` from the bounded search, `unequal` when the affine
/// shadows differ, otherwise `unknown`.
WPAnswer wp_oracle(std::span<const Letter> u, std::span<const Letter> v, int m, int n, int bound,
                   std::size_t node_cap = 200000);

/// Connected components of the relator-move graph on freely reduced words of length <= bound.
/// Used to decide many equalities at once.
class MoveComponents {
 public:
  MoveComponents(const Presentation& p, int bound);

  int bound() const { return bound_; }
  std::size_t word_count() const { return parent_.size(); }
  /// True when both (freely reduced) words are connected; false when not connected or out of range.
  bool connected(std::span<const Letter> u, std::span<const Letter> v) const;
  /// Component id of the reduced word, -1 when it is longer than the bound.
  long component(std::span<const Letter> u) const;

 private:
  std::uint64_t encode(std::span<const Letter> w) const;
  long index_of(std::uint64_t code) const;
  std::size_t find(std::size_t i) const;

  int bound_;
  int rank_;
  std::vector<std::uint64_t> codes_;  // sorted
  mutable std::vector<std::uint32_t> parent_;
};

}  // namespace gbs
