#pragma once

#include <compare>
#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gbs/words.hpp"

namespace gbs {

/// Floor-mod with a non-negative result for positive `m`.
inline long floor_mod(long a, long m) {
  const long r = a % m;
  return r < 0 ? r + m : r;
}

/// Free group F_n on generators a, b, c, ... Elements are freely reduced words.
class FreeGroup {
 public:
  using Element = Word;
  using Hash = WordHash;

  explicit FreeGroup(int rank);

  int rank() const { return rank_; }
  const Alphabet& alphabet() const { return alphabet_; }
  std::string name() const { return "F" + std::to_string(rank_); }

  Element identity() const { return {}; }
  std::vector<Letter> generators() const { return alphabet_.letters(); }
  Element multiply(Element x, Letter l) const;
  Element multiply(const Element& x, const Element& y) const;
  Element inverse(const Element& x) const { return gbs::inverse(x); }
  Element evaluate(std::span<const Letter> word) const { return free_reduce(word); }
  Word word_of(const Element& x) const { return x; }

  std::string key(const Element& x) const { return alphabet_.format(x); }
  Element parse_key(std::string_view key) const;

  friend bool operator==(const FreeGroup&, const FreeGroup&) = default;

 private:
  int rank_;
  Alphabet alphabet_;
};

/// Element w·t^k of F_n × Z.
struct FnZElem {
  Word w;
  long k = 0;
  friend auto operator<=>(const FnZElem&, const FnZElem&) = default;
};

/// F_n × Z = <s_1..s_n, t | [s_i, t]>. The letter for t has generator index n.
class FreeTimesZ {
 public:
  using Element = FnZElem;
  struct Hash {
    std::size_t operator()(const FnZElem& e) const noexcept {
      return WordHash{}(e.w) * 1000003u ^ std::hash<long>{}(e.k);
    }
  };

  explicit FreeTimesZ(int rank);

  int rank() const { return rank_; }
  int t_gen() const { return rank_; }
  const Alphabet& alphabet() const { return alphabet_; }
  FreeGroup free_factor() const { return FreeGroup(rank_); }
  std::string name() const { return "F" + std::to_string(rank_) + "xZ"; }

  Element identity() const { return {}; }
  std::vector<Letter> generators() const { return alphabet_.letters(); }
  Element multiply(Element x, Letter l) const;
  Element multiply(const Element& x, const Element& y) const;
  Element inverse(const Element& x) const { return {gbs::inverse(x.w), -x.k}; }
  Element evaluate(std::span<const Letter> word) const;
  Word word_of(const Element& x) const;

  /// `<free-word>|t^<k>`, e.g. `aB|t^-2`; the free part of the identity is `1`.
  std::string key(const Element& x) const;
  Element parse_key(std::string_view key) const;

  friend bool operator==(const FreeTimesZ&, const FreeTimesZ&) = default;

 private:
  int rank_;
  Alphabet alphabet_;
};

/// Normal-form letter a^r t^e of BS(m,n): 0 <= r < m when e = +1, 0 <= r < n when e = -1.
struct BSLetter {
  int r = 0;
  int e = 1;
  bool up() const { return e > 0; }
  friend auto operator<=>(const BSLetter&, const BSLetter&) = default;
};

/// Britton normal form: g = prefix · a^k with a reduced prefix (no t a^0 t^-1 or t^-1 a^0 t).
struct BSNormalForm {
  std::vector<BSLetter> prefix;
  long k = 0;
  friend auto operator<=>(const BSNormalForm&, const BSNormalForm&) = default;
};

/// BS(m,n) = <a, t | t^-1 a^m t = a^n>, m, n >= 1. Generator a has index 0, t index 1.
class BaumslagSolitar {
 public:
  using Element = BSNormalForm;
  struct Hash {
    std::size_t operator()(const BSNormalForm& g) const noexcept {
      std::size_t h = std::hash<long>{}(g.k);
      for (const auto& l : g.prefix) h = (h * 31u) ^ static_cast<std::size_t>(l.r * 2 + (l.e > 0 ? 0 : 1) + 1);
      return h;
    }
  };
  static constexpr int kA = 0;
  static constexpr int kT = 1;

  BaumslagSolitar(int m, int n);

  int m() const { return m_; }
  int n() const { return n_; }
  const Alphabet& alphabet() const { return alphabet_; }
  std::string name() const { return "BS(" + std::to_string(m_) + "," + std::to_string(n_) + ")"; }

  Element identity() const { return {}; }
  std::vector<Letter> generators() const { return alphabet_.letters(); }
  Element multiply(Element x, Letter l) const;
  Element multiply(const Element& x, const Element& y) const;
  Element multiply(const Element& x, BSLetter l) const;
  Element inverse(const Element& x) const;
  Element evaluate(std::span<const Letter> word) const;
  Word word_of(const Element& x) const;

  /// Normal-form letters in canonical order: t, at, ..., a^{m-1}t, T, aT, ..., a^{n-1}T.
  std::vector<BSLetter> normal_letters() const;
  bool valid_letter(BSLetter l) const;
  Word word_of(BSLetter l) const;
  std::string letter_string(BSLetter l) const;
  BSLetter parse_letter(std::string_view text) const;
  /// True when `next` may follow `prev` in a reduced prefix.
  bool may_follow(BSLetter prev, BSLetter next) const;

  /// `<prefix>|a^<k>`, e.g. `taT|a^-2`; an empty prefix is written `1`.
  std::string key(const Element& x) const;
  Element parse_key(std::string_view key) const;

  friend bool operator==(const BaumslagSolitar&, const BaumslagSolitar&) = default;

 private:
  int m_;
  int n_;
  Alphabet alphabet_;
};

/// Canonical form of a word over {a, t} in BS(m,n).
BSNormalForm bs_normalize(std::span<const Letter> word, int m, int n);
BSNormalForm bs_multiply(const BaumslagSolitar& group, const BSNormalForm& x, const BSNormalForm& y);

/// Shared surface of the three group types.
template <class G>
concept GroupLike = requires(const G& g, const typename G::Element& e, Letter l, std::string_view s) {
  { g.identity() } -> std::same_as<typename G::Element>;
  { g.generators() } -> std::same_as<std::vector<Letter>>;
  { g.multiply(e, l) } -> std::same_as<typename G::Element>;
  { g.multiply(e, e) } -> std::same_as<typename G::Element>;
  { g.inverse(e) } -> std::same_as<typename G::Element>;
  { g.word_of(e) } -> std::same_as<Word>;
  { g.key(e) } -> std::same_as<std::string>;
  { g.parse_key(s) } -> std::same_as<typename G::Element>;
  { g.name() } -> std::same_as<std::string>;
};

/// Defining relators: none for F_n, [s_i, t] for F_n x Z, t^-1 a^m t a^-n for BS(m,n).
std::vector<Word> defining_relators(const FreeGroup& g);
std::vector<Word> defining_relators(const FreeTimesZ& g);
std::vector<Word> defining_relators(const BaumslagSolitar& g);

using AnyGroup = std::variant<FreeGroup, FreeTimesZ, BaumslagSolitar>;
/// `F2`, `F3xZ`, `Z2` (= F1xZ), `BS(2,3)`.
AnyGroup parse_group_spec(std::string_view spec);

/// Multiplies `x` on the right by every letter of `word`.
template <GroupLike G>
typename G::Element apply_word(const G& group, typename G::Element x, std::span<const Letter> word) {
  for (const auto& l : word) x = group.multiply(std::move(x), l);
  return x;
}

}  // namespace gbs
