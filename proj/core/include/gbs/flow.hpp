#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "gbs/patch.hpp"

namespace gbs {

using FreeFlowPatch = Patch<FreeGroup, Letter>;
using FnZFlowPatch = Patch<FreeTimesZ, Letter>;
using BSWord = std::vector<BSLetter>;
using BSFlowPatch = Patch<BaumslagSolitar, BSLetter>;

/// Flow word over S u S^-1 read lazily; past its end the last letter repeats.
class FreeFlow {
 public:
  /// Throws when a letter is outside the rank or two consecutive letters cancel.
  FreeFlow(int rank, Word word);

  const Word& word() const { return word_; }
  Letter letter(std::size_t i) const;
  /// Length of the longest common prefix of `w` and the (extended) flow word.
  std::size_t common_prefix(std::span<const Letter> w) const;
  /// Label of cell w: the next flow letter on the path, otherwise the arrow back toward it.
  Letter label(std::span<const Letter> w) const;

 private:
  int rank_;
  Word word_;
};

FreeFlowPatch flow_patch_from_word(const Word& W, int radius, const FreeGroup& group);
/// Same flow on every t-coset.
FnZFlowPatch flow_patch_from_word(const Word& W, int radius, const FreeTimesZ& group);

std::vector<Violation> validate_flow_patch(const FreeFlowPatch& p);
std::vector<Violation> validate_flow_patch(const FnZFlowPatch& p);

/// Follows the arrows from the identity: W_0 = y_1, W_{k+1} = y_{W_0...W_k}, while cells exist.
Word word_of_patch(const FreeFlowPatch& p);
Word word_of_patch(const FnZFlowPatch& p);

/// Backtracking over all labelings of `ball` passing the flow rules, in lexicographic letter order.
/// `fixed` pins labels by cell index. `visit` returns false to stop. Returns the number visited.
std::size_t enumerate_flow_patches(const Ball<FreeGroup>& ball, const std::map<std::size_t, Letter>& fixed,
                                   const std::function<bool(const std::vector<Letter>&)>& visit);

// ---- BS(m,n)

/// Flow word over the normal-form letters of BS(m,n), read lazily with the last letter repeating.
class BSFlow {
 public:
  /// Throws when consecutive letters form a pinch (up then T, down then t).
  BSFlow(BaumslagSolitar group, BSWord word);

  const BaumslagSolitar& group() const { return group_; }
  const BSWord& word() const { return word_; }
  BSLetter letter(std::size_t i) const;
  std::size_t common_prefix(std::span<const BSLetter> prefix) const;
  /// Letter u with g·u in the coset the flow leaves g's coset through.
  BSLetter label(const BSNormalForm& g) const;

 private:
  BaumslagSolitar group_;
  BSWord word_;
};

/// a^r t^e -> a^{r-1 mod M} t^e: the label of g·a given the label of g.
BSLetter coset_shift(const BaumslagSolitar& group, BSLetter l);
/// Label a cell in the target coset of `u` must not carry (it would point straight back).
BSLetter back_letter(BSLetter u);

BSWord parse_bs_word(const BaumslagSolitar& group, std::string_view text);
std::string format_bs_word(const BaumslagSolitar& group, std::span<const BSLetter> w);

BSFlowPatch flow_patch_from_word(const BSWord& W, int radius, const BaumslagSolitar& group);
std::vector<Violation> validate_flow_patch(const BSFlowPatch& p);
BSWord word_of_patch(const BSFlowPatch& p);

std::size_t enumerate_flow_patches(const Ball<BaumslagSolitar>& ball, const std::map<std::size_t, BSLetter>& fixed,
                                   const std::function<bool(const std::vector<BSLetter>&)>& visit);

// ---- periods and minimality

struct PeriodWordReport {
  std::size_t valid_patches = 0;
  std::size_t invariant_patches = 0;
  std::size_t prefix_length = 0;        ///< letters compared
  std::vector<std::string> expected;    ///< allowed word prefixes
  std::vector<std::string> observed;    ///< distinct prefixes of invariant patches
  std::vector<std::string> exceptions;  ///< invariant patches whose prefix is not allowed
  bool holds() const { return exceptions.empty(); }
};

/// Enumerates every valid flow patch on Ball(radius), keeps the ones invariant under translation by g
/// on the overlap, and checks that their flow word starts like g^N or g^-N (freely reduced).
/// Throws for g = 1 or radius < 2|g|.
PeriodWordReport period_forces_word(const Word& g, int radius, const FreeGroup& group);
/// BS(m,n) variant: allowed prefixes are those of w^N and (w^-1)^N in normal form, g^-1 = w a^k.
PeriodWordReport period_forces_word(const BSNormalForm& g, int radius, const BaumslagSolitar& group);

struct ApproachStep {
  int n = 0;
  Word g;           ///< g_n = (W_0 ... W_n e_n)^-1
  Letter error;     ///< e_n
  Word translated;  ///< word read off the translated start configuration
  Word expected;    ///< W_0 ... W_n e_n W'
  bool matches = false;
};

/// Translates the configuration of `start` (W') toward the one of `target` (W). The padding letter e_n
/// is s_i if W'_0 = s_i and s_i^-1 otherwise, for the first generator s_i with e_n != W_n^-1.
/// Needs |target| >= steps. Each translated word is compared on |expected| + `tail` letters.
std::vector<ApproachStep> approach_sequence(const Word& start, const Word& target, int steps, int rank,
                                            std::size_t tail = 4);

/// `period` repeated to `length` letters.
Word periodic_word(std::span<const Letter> period, std::size_t length);

}  // namespace gbs
