#include "gbs/wang.hpp"

#include <algorithm>
#include <sstream>

namespace gbs {

PLMap::PLMap(Rational lo, Rational hi, std::vector<PLBranch> branches)
    : lo_(std::move(lo)), hi_(std::move(hi)), branches_(std::move(branches)) {
  if (!(lo_ < hi_)) throw Error("empty circle");
  std::sort(branches_.begin(), branches_.end(), [](const PLBranch& a, const PLBranch& b) { return a.lo < b.lo; });
  Rational at = lo_;
  std::vector<std::pair<Rational, Rational>> images;
  for (const auto& b : branches_) {
    if (b.lo != at || !(b.lo < b.hi)) throw Error("branches do not partition the circle");
    if (b.slope.sign() <= 0) throw Error("branch slope must be positive");
    if (b.slope == Rational(2, 3) || b.slope == Rational(3, 2)) throw Error("branch slope 2/3 or 3/2 is not allowed");
    images.emplace_back(b.slope * b.lo, b.slope * b.hi);
    at = b.hi;
  }
  if (at != hi_) throw Error("branches do not cover the circle");
  std::sort(images.begin(), images.end());
  at = lo_;
  for (const auto& [a, b] : images) {
    if (a != at) throw Error("branch images do not partition the circle");
    at = b;
  }
  if (at != hi_) throw Error("branch images do not cover the circle");
}

Rational PLMap::reduce(const Rational& x) const {
  if (lo_ <= x && x < hi_) return x;
  const Rational len = hi_ - lo_;
  const Rational k = ((x - lo_) / len).floor();
  return x - k * len;
}

const PLBranch& PLMap::branch_at(const Rational& x) const {
  for (const auto& b : branches_)
    if (b.lo <= x && x < b.hi) return b;
  throw Error("point " + x.to_string() + " is outside the circle");
}

Rational PLMap::operator()(const Rational& x) const {
  const Rational y = reduce(x);
  return reduce(branch_at(y).slope * y);
}

PLMap PLMap::inverse() const {
  std::vector<PLBranch> inv;
  for (const auto& b : branches_)
    inv.push_back({b.slope * b.lo, b.slope * b.hi, Rational(1) / b.slope});
  return PLMap(lo_, hi_, std::move(inv));
}

const PLMap& circle_map_T() {
  static const PLMap T(Rational(1, 10), Rational(5, 2),
                       {{Rational(1, 10), Rational(1), Rational(5, 2)}, {Rational(1), Rational(5, 2), Rational(1, 10)}});
  return T;
}

const PLMap& circle_map_T_inverse() {
  static const PLMap Ti = circle_map_T().inverse();
  return Ti;
}

Rational pl_eval(const PLMap& f, const Rational& x) { return f(x); }

Rational orbit(const PLMap& f, const Rational& x, long k) {
  Rational y = f.reduce(x);
  if (k >= 0) {
    for (long i = 0; i < k; ++i) y = f(y);
  } else {
    const PLMap inv = f.inverse();
    for (long i = 0; i < -k; ++i) y = inv(y);
  }
  return y;
}

Rational orbit(const Rational& x, long k) {
  const PLMap& f = k >= 0 ? circle_map_T() : circle_map_T_inverse();
  Rational y = f.reduce(x);
  for (long i = 0; i < (k >= 0 ? k : -k); ++i) y = f(y);
  return y;
}

std::string to_string(FTag f) { return f == FTag::T ? "T" : "Tinv"; }

FTag parse_ftag(std::string_view s) {
  if (s == "T") return FTag::T;
  if (s == "Tinv" || s == "T^-1") return FTag::TInv;
  throw ParseError("unknown f_tag '" + std::string(s) + "'");
}

const PLMap& map_of(FTag f) { return f == FTag::T ? circle_map_T() : circle_map_T_inverse(); }

std::string WangTile7::to_string() const {
  std::ostringstream os;
  os << t1 << ' ' << t2 << " | " << l << " | " << b1 << ' ' << b2 << ' ' << b3 << " | " << r << " | "
     << gbs::to_string(f);
  return os.str();
}

WangTile7 WangTile7::parse(std::string_view line) {
  std::vector<std::string> parts;
  std::string cur;
  for (const char c : line) {
    if (c == '|') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.size() != 5) throw ParseError("tile needs 5 '|'-separated fields: " + std::string(line));
  auto trimmed = [](const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> out;
    for (std::string w; is >> w;) out.push_back(w);
    return out;
  };
  auto to_long = [](const std::string& s) {
    try {
      std::size_t used = 0;
      const long v = std::stol(s, &used);
      if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw ParseError("bad integer color '" + s + "'");
  };
  const auto top = trimmed(parts[0]), left = trimmed(parts[1]), bottom = trimmed(parts[2]),
             right = trimmed(parts[3]), tag = trimmed(parts[4]);
  if (top.size() != 2 || left.size() != 1 || bottom.size() != 3 || right.size() != 1 || tag.size() != 1)
    throw ParseError("malformed tile: " + std::string(line));
  WangTile7 t;
  t.t1 = to_long(top[0]);
  t.t2 = to_long(top[1]);
  t.l = Rational::parse(left[0]);
  t.b1 = to_long(bottom[0]);
  t.b2 = to_long(bottom[1]);
  t.b3 = to_long(bottom[2]);
  t.r = Rational::parse(right[0]);
  t.f = parse_ftag(tag[0]);
  return t;
}

namespace {
long floor_long(const Rational& q) { return q.floor().to_long(); }
}  // namespace

WangTile7 tile_colors(FTag f, const Rational& x, const Rational& lam) {
  const PLMap& map = map_of(f);
  const Rational xr = map.reduce(x);
  const Rational c = map.branch_at(xr).slope;
  const Rational fx = c * xr;  // f on x's branch, before circle reduction
  const Rational two = 2 * lam, three = 3 * lam;
  WangTile7 t;
  t.f = f;
  t.t1 = floor_long((two + 1) * xr) - floor_long(two * xr);
  t.t2 = floor_long((two + 2) * xr) - floor_long((two + 1) * xr);
  t.b1 = floor_long((three + 1) * fx) - floor_long(three * fx);
  t.b2 = floor_long((three + 2) * fx) - floor_long((three + 1) * fx);
  t.b3 = floor_long((three + 3) * fx) - floor_long((three + 2) * fx);
  t.l = c / 2 * (two * xr).floor() - (three * fx).floor() / 3;
  t.r = c / 2 * ((two + 2) * xr).floor() - ((three + 3) * fx).floor() / 3;
  return t;
}

WangTile7 tile_colors(FTag f, const Rational& x, const BaumslagSolitar& group, const BSNormalForm& g) {
  return tile_colors(f, x, lambda(group, g));
}

bool tile_computes(const WangTile7& t, const Rational& slope) {
  return slope * Rational(t.t1 + t.t2, 2) + t.l == Rational(t.b1 + t.b2 + t.b3, 3) + t.r;
}

bool tile_computes_some_branch(const WangTile7& t) {
  for (const auto& b : map_of(t.f).branches())
    if (tile_computes(t, b.slope)) return true;
  return false;
}

BSConfigPatch build_bs_config(const BaumslagSolitar& group, const BSWord& W, const Rational& x, int radius) {
  if (radius < 0) throw Error("radius must be non-negative");
  if (W.empty() || static_cast<int>(W.size()) < radius)
    throw Error("flow word of length " + std::to_string(W.size()) + " is too short for radius " + std::to_string(radius));
  const PLMap& T = circle_map_T();
  if (!(T.lo() <= x && x < T.hi())) throw Error("x = " + x.to_string() + " is outside the circle [1/10, 5/2)");
  const HeightContext ctx(BSFlow(group, W));
  const auto ball = enumerate_ball(group, radius);
  std::vector<BSCell> cells;
  cells.reserve(ball.size());
  const BSLetter t{0, 1};
  for (const auto& g : *ball.support) {
    const BSLetter y = ctx.flow().label(g);
    const FTag f = y == t ? FTag::T : FTag::TInv;
    cells.push_back({y, tile_colors(f, orbit(x, ctx.beta_y(g)), ctx.lambda(g))});
  }
  return make_patch(ball, std::move(cells));
}

BSValidation validate_bs_patch(const BSConfigPatch& p) {
  BSValidation out;
  if (p.empty()) return out;
  const auto& G = p.group;
  std::vector<BSLetter> flow;
  for (const auto& c : p.labels) flow.push_back(c.flow);
  out.violations = validate_flow_patch(BSFlowPatch{G, p.support, flow, p.radius});
  const BSLetter t{0, 1};
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& g = p.element(i);
    const auto& tile = p.labels[i].tile;
    const std::string key = G.key(g);
    if ((tile.f == FTag::T) != (p.labels[i].flow == t))
      out.violations.push_back({key, "f-tag", "flow " + G.letter_string(p.labels[i].flow) + " with f=" + to_string(tile.f)});
    if (!tile_computes_some_branch(tile)) out.violations.push_back({key, "computes", "tile " + tile.to_string()});
    BSNormalForm h = g;
    h.k += 2;
    if (const auto j = p.find(h)) {
      ++out.right_left;
      if (tile.r != p.labels[*j].tile.l)
        out.violations.push_back({key, "right-left", "r=" + tile.r.to_string() + " l=" + p.labels[*j].tile.l.to_string()});
    }
    const BSNormalForm gt = G.multiply(g, Letter{BaumslagSolitar::kT, 1});
    for (int b = 1; b <= 3; ++b) {
      BSNormalForm h1 = gt;
      h1.k += b - 1;
      if (const auto j = p.find(h1)) {
        ++out.bottom_t1;
        if (tile.b(b) != p.labels[*j].tile.t1)
          out.violations.push_back({key, "bottom-t1", "b" + std::to_string(b) + " vs t1 of " + G.key(h1)});
      }
      BSNormalForm h2 = gt;
      h2.k += b - 2;
      if (const auto j = p.find(h2)) {
        ++out.bottom_t2;
        if (tile.b(b) != p.labels[*j].tile.t2)
          out.violations.push_back({key, "bottom-t2", "b" + std::to_string(b) + " vs t2 of " + G.key(h2)});
      }
    }
  }
  return out;
}

std::vector<WangTile7> distinct_tiles(const BSConfigPatch& p) {
  std::vector<WangTile7> out;
  for (const auto& c : p.labels)
    if (std::find(out.begin(), out.end(), c.tile) == out.end()) out.push_back(c.tile);
  return out;
}

}  // namespace gbs
