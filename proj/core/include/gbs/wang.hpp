#pragma once

#include <map>
#include <string>
#include <vector>

#include "gbs/height.hpp"

namespace gbs {

struct PLBranch {
  Rational lo;  ///< inclusive
  Rational hi;  ///< exclusive
  Rational slope;
};

/// Piecewise-linear bijection of the circle [lo, hi) (hi identified with lo), x -> slope * x per branch.
class PLMap {
 public:
  /// Checks that branches and their images both partition the circle, slopes are positive and none
  /// equals 2/3 or 3/2.
  PLMap(Rational lo, Rational hi, std::vector<PLBranch> branches);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  const std::vector<PLBranch>& branches() const { return branches_; }

  /// Representative of x in [lo, hi) modulo hi - lo.
  Rational reduce(const Rational& x) const;
  const PLBranch& branch_at(const Rational& x) const;  ///< x already reduced
  Rational slope_at(const Rational& x) const { return branch_at(reduce(x)).slope; }
  Rational operator()(const Rational& x) const;
  PLMap inverse() const;

 private:
  Rational lo_, hi_;
  std::vector<PLBranch> branches_;
};

/// T: [1/10,1) -> 5x/2, [1,5/2) -> x/10 on the circle [1/10, 5/2).
const PLMap& circle_map_T();
const PLMap& circle_map_T_inverse();

Rational pl_eval(const PLMap& f, const Rational& x);
/// k-fold iterate of T (negative k iterates the inverse).
Rational orbit(const Rational& x, long k);
Rational orbit(const PLMap& f, const Rational& x, long k);

enum class FTag { T, TInv };
std::string to_string(FTag f);
FTag parse_ftag(std::string_view s);
const PLMap& map_of(FTag f);

struct WangTile7 {
  long t1 = 0, t2 = 0;
  Rational l;
  long b1 = 0, b2 = 0, b3 = 0;
  Rational r;
  FTag f = FTag::T;

  long b(int i) const { return i == 1 ? b1 : (i == 2 ? b2 : b3); }
  /// `t1 t2 | l | b1 b2 b3 | r | f_tag`
  std::string to_string() const;
  static WangTile7 parse(std::string_view line);
  friend bool operator==(const WangTile7&, const WangTile7&) = default;
};

/// Colors of the tile placed with value x at height lambda. l and r apply the slope of the branch of
/// f active at x.
WangTile7 tile_colors(FTag f, const Rational& x, const Rational& lambda);
WangTile7 tile_colors(FTag f, const Rational& x, const BaumslagSolitar& group, const BSNormalForm& g);

/// c (t1+t2)/2 + l == (b1+b2+b3)/3 + r, with c a branch slope of the tile's map.
bool tile_computes(const WangTile7& tile, const Rational& slope);
bool tile_computes_some_branch(const WangTile7& tile);

struct BSCell {
  BSLetter flow;
  WangTile7 tile;
  friend bool operator==(const BSCell&, const BSCell&) = default;
};
using BSConfigPatch = Patch<BaumslagSolitar, BSCell>;

/// Cell g gets tile(f, T^{beta_y(g)}(x), g) with f = T iff y_g = t. Needs |W| >= radius, x in the circle.
BSConfigPatch build_bs_config(const BaumslagSolitar& group, const BSWord& W, const Rational& x, int radius);

struct BSValidation {
  std::vector<Violation> violations;
  std::size_t right_left = 0;   ///< r(g) = l(g a^2) instances checked
  std::size_t bottom_t1 = 0;    ///< b_i(g) = t1(g t a^{i-1})
  std::size_t bottom_t2 = 0;    ///< b_i(g) = t2(g t a^{i-2})
  bool ok() const { return violations.empty(); }
};
BSValidation validate_bs_patch(const BSConfigPatch& p);

/// Distinct tiles in patch order.
std::vector<WangTile7> distinct_tiles(const BSConfigPatch& p);

struct PeriodScan {
  std::vector<std::string> survivors;     ///< keys of g whose translate agrees on the overlap
  std::vector<std::string> inconclusive;  ///< overlap smaller than the threshold
  std::size_t conclusive = 0;
};

/// Every non-identity g with |g| <= max_len is compared with the patch on the overlap of p and g·p.
template <class G, class L>
PeriodScan scan_periods(const Patch<G, L>& p, int max_len, std::size_t min_overlap) {
  if (min_overlap < 1) throw Error("min_overlap must be at least 1");
  PeriodScan out;
  const auto cands = enumerate_ball(p.group, max_len);
  for (std::size_t c = 1; c < cands.size(); ++c) {
    const auto& g = (*cands.support)[c];
    const auto overlap = translation_overlap(p, g);
    if (overlap.size() < min_overlap) {
      out.inconclusive.push_back(p.group.key(g));
      continue;
    }
    ++out.conclusive;
    bool same = true;
    for (const auto& [i, j] : overlap)
      if (!(p.labels[i] == p.labels[j])) {
        same = false;
        break;
      }
    if (same) out.survivors.push_back(p.group.key(g));
  }
  return out;
}

}  // namespace gbs
