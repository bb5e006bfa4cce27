#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gbs {

/// A generator or its inverse: `gen` indexes the group's generating set, `sign` is +1 or -1.
struct Letter {
  int gen = 0;
  int sign = 1;

  Letter inverse() const { return {gen, -sign}; }
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

/// Cancels adjacent letter/inverse pairs until none remain. The result is unique.
Word free_reduce(std::span<const Letter> word);

Word inverse(std::span<const Letter> word);
Word concat(std::span<const Letter> a, std::span<const Letter> b);
bool is_freely_reduced(std::span<const Letter> word);

/// Powers of a single letter, e.g. power({0,1}, -3) = A A A.
Word letter_power(int gen, long exponent);

/// Exponent sum of generator `gen` in `word`.
long exponent_sum(std::span<const Letter> word, int gen);

/// Single-character generator names; lowercase is the generator, uppercase its inverse.
///
/// The empty word is written `1`.
class Alphabet {
 public:
  explicit Alphabet(std::string symbols);

  int rank() const { return static_cast<int>(symbols_.size()); }
  const std::string& symbols() const { return symbols_; }
  char symbol(Letter l) const;
  /// Throws ParseError for a character outside the alphabet.
  Letter letter(char c) const;
  int index_of(char lower) const;

  /// All letters in canonical order: s1, S1, s2, S2, ...
  std::vector<Letter> letters() const;

  Word parse(std::string_view text) const;
  std::string format(std::span<const Letter> word) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::string symbols_;
};

/// Lowercase-first letter order used for deterministic enumeration (a < A < b < B ...).
inline int letter_rank(Letter l) { return 2 * l.gen + (l.sign > 0 ? 0 : 1); }

struct WordHash {
  std::size_t operator()(std::span<const Letter> w) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (const auto& l : w) h = (h ^ static_cast<std::size_t>(letter_rank(l) + 1)) * 1099511628211ull;
    return h;
  }
  std::size_t operator()(const Word& w) const noexcept { return (*this)(std::span<const Letter>(w)); }
};

}  // namespace gbs
