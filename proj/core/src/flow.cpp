#include "gbs/flow.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

namespace gbs {

namespace {

enum class Rule : std::uint8_t { FreeStep, TShift, CosetShift, PeriodicUp, PeriodicDown, Move };

// Rule instance anchored at `from`, constraining the label at `to`.
struct Arc {
  std::uint32_t from;
  std::uint32_t to;
  Rule rule;
  int param;  // free letter index or normal-letter index
};

std::vector<Arc> free_arcs(const FreeGroup& g, const Support<FreeGroup>& s) {
  std::vector<Arc> arcs;
  const auto letters = g.generators();
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t x = 0; x < letters.size(); ++x)
      if (const auto j = s.find(g.multiply(s[i], letters[x])))
        arcs.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(*j), Rule::FreeStep, static_cast<int>(x)});
  return arcs;
}

std::vector<Arc> fnz_arcs(const FreeTimesZ& g, const Support<FreeTimesZ>& s) {
  std::vector<Arc> arcs;
  const auto letters = g.free_factor().generators();
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t x = 0; x < letters.size(); ++x)
      if (const auto j = s.find(g.multiply(s[i], letters[x])))
        arcs.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(*j), Rule::FreeStep, static_cast<int>(x)});
    if (const auto j = s.find(g.multiply(s[i], Letter{g.t_gen(), 1})))
      arcs.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(*j), Rule::TShift, 0});
  }
  return arcs;
}

std::vector<Arc> bs_arcs(const BaumslagSolitar& g, const Support<BaumslagSolitar>& s) {
  std::vector<Arc> arcs;
  const auto letters = g.normal_letters();
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto u = static_cast<std::uint32_t>(i);
    auto add = [&](const BSNormalForm& e, Rule r, int param) {
      if (const auto j = s.find(e)) arcs.push_back({u, static_cast<std::uint32_t>(*j), r, param});
    };
    BSNormalForm e = s[i];
    e.k += 1;
    add(e, Rule::CosetShift, 0);
    e.k = s[i].k + g.m();
    add(e, Rule::PeriodicUp, 0);
    e.k = s[i].k + g.n();
    add(e, Rule::PeriodicDown, 0);
    for (std::size_t v = 0; v < letters.size(); ++v) add(g.multiply(s[i], letters[v]), Rule::Move, static_cast<int>(v));
  }
  return arcs;
}

// Returns the broken rule's name, or nullptr.
const char* check_free_arc(const Arc& a, Letter from, Letter to, const std::vector<Letter>& letters) {
  if (a.rule == Rule::TShift) return to == from ? nullptr : "t-invariant";
  const Letter x = letters[static_cast<std::size_t>(a.param)];
  if (from == x) return to == x.inverse() ? "no-backtrack" : nullptr;
  return to == x.inverse() ? nullptr : "incoming";
}

struct BSRuleNames {
  std::string up, down;
};

const char* check_bs_arc(const BaumslagSolitar& g, const Arc& a, BSLetter from, BSLetter to,
                         const std::vector<BSLetter>& letters, const BSRuleNames& names) {
  switch (a.rule) {
    case Rule::CosetShift: return to == coset_shift(g, from) ? nullptr : "coset-shift";
    case Rule::PeriodicUp: return (!from.up() || to == from) ? nullptr : names.up.c_str();
    case Rule::PeriodicDown: return (from.up() || to == from) ? nullptr : names.down.c_str();
    case Rule::Move: {
      const BSLetter v = letters[static_cast<std::size_t>(a.param)];
      if (from == v) return to == back_letter(v) ? "no-backtrack" : nullptr;
      return to == back_letter(v) ? nullptr : "incoming";
    }
    default: return nullptr;
  }
}

BSRuleNames bs_rule_names(const BaumslagSolitar& g) {
  return {"a" + std::to_string(g.m()) + "-periodic", "a" + std::to_string(g.n()) + "-periodic"};
}

// Depth-first search assigning cells in index order; each arc is checked once both ends are set.
template <class L, class Check>
std::size_t backtrack(std::size_t cells, const std::vector<Arc>& arcs, const std::vector<L>& domain,
                      const std::map<std::size_t, L>& fixed, Check check,
                      const std::function<bool(const std::vector<L>&)>& visit) {
  std::vector<std::vector<const Arc*>> closing(cells);
  for (const auto& a : arcs) closing[std::max(a.from, a.to)].push_back(&a);
  std::vector<L> labels(cells);
  std::size_t count = 0;
  bool stop = false;
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (stop) return;
    if (i == cells) {
      ++count;
      if (!visit(labels)) stop = true;
      return;
    }
    const auto fit = fixed.find(i);
    for (const auto& l : domain) {
      if (fit != fixed.end() && !(fit->second == l)) continue;
      labels[i] = l;
      bool ok = true;
      for (const Arc* a : closing[i])
        if (check(*a, labels[a->from], labels[a->to])) {
          ok = false;
          break;
        }
      if (ok) self(self, i + 1);
      if (stop) return;
    }
  };
  rec(rec, 0);
  return count;
}

template <class G>
std::string key_of(const G& g, const typename G::Element& e) {
  return g.key(e);
}

}  // namespace

// ---- free flows

FreeFlow::FreeFlow(int rank, Word word) : rank_(rank), word_(std::move(word)) {
  for (std::size_t i = 0; i < word_.size(); ++i) {
    if (word_[i].gen < 0 || word_[i].gen >= rank_) throw Error("flow letter outside the free alphabet");
    if (i && word_[i] == word_[i - 1].inverse()) throw Error("flow word cancels at position " + std::to_string(i));
  }
}

Letter FreeFlow::letter(std::size_t i) const {
  if (word_.empty()) throw Error("flow word is empty");
  return i < word_.size() ? word_[i] : word_.back();
}

std::size_t FreeFlow::common_prefix(std::span<const Letter> w) const {
  std::size_t c = 0;
  while (c < w.size() && w[c] == letter(c)) ++c;
  return c;
}

Letter FreeFlow::label(std::span<const Letter> w) const {
  const std::size_t c = common_prefix(w);
  if (c == w.size()) return letter(w.size());
  return w.back().inverse();
}

namespace {

void check_word_covers(std::size_t word_size, int radius) {
  if (radius < 0) throw Error("radius must be non-negative");
  if (word_size == 0) throw Error("flow word is empty");
  if (static_cast<int>(word_size) < radius)
    throw Error("flow word of length " + std::to_string(word_size) + " is too short for radius " + std::to_string(radius));
}

}  // namespace

FreeFlowPatch flow_patch_from_word(const Word& W, int radius, const FreeGroup& group) {
  check_word_covers(W.size(), radius);
  const FreeFlow flow(group.rank(), W);
  const auto ball = enumerate_ball(group, radius);
  std::vector<Letter> labels;
  labels.reserve(ball.size());
  for (const auto& e : *ball.support) labels.push_back(flow.label(e));
  return make_patch(ball, std::move(labels));
}

FnZFlowPatch flow_patch_from_word(const Word& W, int radius, const FreeTimesZ& group) {
  check_word_covers(W.size(), radius);
  const FreeFlow flow(group.rank(), W);
  const auto ball = enumerate_ball(group, radius);
  std::vector<Letter> labels;
  labels.reserve(ball.size());
  for (const auto& e : *ball.support) labels.push_back(flow.label(e.w));
  return make_patch(ball, std::move(labels));
}

std::vector<Violation> validate_flow_patch(const FreeFlowPatch& p) {
  std::vector<Violation> out;
  if (p.empty()) return out;
  const auto letters = p.group.generators();
  const auto& al = p.group.alphabet();
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p.labels[i].gen < 0 || p.labels[i].gen >= p.group.rank())
      out.push_back({p.group.key(p.element(i)), "alphabet", "label outside S u S^-1"});
  if (!out.empty()) return out;
  for (const auto& a : free_arcs(p.group, *p.support))
    if (const char* rule = check_free_arc(a, p.labels[a.from], p.labels[a.to], letters))
      out.push_back({p.group.key(p.element(a.from)), rule,
                     "y=" + std::string(1, al.symbol(p.labels[a.from])) + " step " +
                         std::string(1, al.symbol(letters[static_cast<std::size_t>(a.param)])) + " lands on " +
                         std::string(1, al.symbol(p.labels[a.to]))});
  return out;
}

std::vector<Violation> validate_flow_patch(const FnZFlowPatch& p) {
  std::vector<Violation> out;
  if (p.empty()) return out;
  const auto letters = p.group.free_factor().generators();
  const auto& al = p.group.alphabet();
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p.labels[i].gen < 0 || p.labels[i].gen >= p.group.rank())
      out.push_back({p.group.key(p.element(i)), "alphabet", "label outside S u S^-1"});
  if (!out.empty()) return out;
  for (const auto& a : fnz_arcs(p.group, *p.support))
    if (const char* rule = check_free_arc(a, p.labels[a.from], p.labels[a.to], letters))
      out.push_back({p.group.key(p.element(a.from)), rule,
                     "y=" + std::string(1, al.symbol(p.labels[a.from])) + ", neighbour has " +
                         std::string(1, al.symbol(p.labels[a.to]))});
  return out;
}

namespace {

template <class G, class L, class Step>
std::vector<L> follow_arrows(const Patch<G, L>& p, const typename G::Element& start, Step step) {
  std::vector<L> out;
  auto cur = start;
  for (std::size_t n = 0; n <= p.size(); ++n) {
    const L* l = p.at(cur);
    if (!l) break;
    out.push_back(*l);
    cur = step(cur, *l);
  }
  return out;
}

template <class P>
void require_valid_with_identity(const P& p) {
  if (!p.find(p.group.identity())) throw Error("patch does not contain the identity");
  const auto v = validate_flow_patch(p);
  if (!v.empty()) throw Error("patch violates " + v.front().rule + " at " + v.front().cell);
}

}  // namespace

Word word_of_patch(const FreeFlowPatch& p) {
  require_valid_with_identity(p);
  return follow_arrows(p, p.group.identity(), [&](const Word& e, Letter l) { return p.group.multiply(e, l); });
}

Word word_of_patch(const FnZFlowPatch& p) {
  require_valid_with_identity(p);
  return follow_arrows(p, p.group.identity(), [&](const FnZElem& e, Letter l) { return p.group.multiply(e, l); });
}

std::size_t enumerate_flow_patches(const Ball<FreeGroup>& ball, const std::map<std::size_t, Letter>& fixed,
                                   const std::function<bool(const std::vector<Letter>&)>& visit) {
  const auto letters = ball.group.generators();
  const auto arcs = free_arcs(ball.group, *ball.support);
  return backtrack<Letter>(ball.size(), arcs, letters, fixed,
                           [&](const Arc& a, Letter f, Letter t) { return check_free_arc(a, f, t, letters); }, visit);
}

// ---- BS flows

BSLetter coset_shift(const BaumslagSolitar& group, BSLetter l) {
  const int M = l.up() ? group.m() : group.n();
  return {static_cast<int>(floor_mod(l.r - 1, M)), l.e};
}

BSLetter back_letter(BSLetter u) { return {0, -u.e}; }

BSFlow::BSFlow(BaumslagSolitar group, BSWord word) : group_(std::move(group)), word_(std::move(word)) {
  for (std::size_t i = 0; i < word_.size(); ++i) {
    if (!group_.valid_letter(word_[i])) throw Error("flow letter outside the normal-form alphabet");
    if (i && !group_.may_follow(word_[i - 1], word_[i]))
      throw Error("flow word pinches at position " + std::to_string(i));
  }
}

BSLetter BSFlow::letter(std::size_t i) const {
  if (word_.empty()) throw Error("flow word is empty");
  return i < word_.size() ? word_[i] : word_.back();
}

std::size_t BSFlow::common_prefix(std::span<const BSLetter> prefix) const {
  std::size_t c = 0;
  while (c < prefix.size() && prefix[c] == letter(c)) ++c;
  return c;
}

BSLetter BSFlow::label(const BSNormalForm& g) const {
  const std::size_t c = common_prefix(g.prefix);
  if (c == g.prefix.size()) {
    const BSLetter L = letter(c);
    const int M = L.up() ? group_.m() : group_.n();
    return {static_cast<int>(floor_mod(L.r - g.k, M)), L.e};
  }
  if (g.prefix.back().up()) return {static_cast<int>(floor_mod(-g.k, group_.n())), -1};
  return {static_cast<int>(floor_mod(-g.k, group_.m())), 1};
}

BSWord parse_bs_word(const BaumslagSolitar& group, std::string_view text) {
  BSWord w;
  if (text == "1" || text.empty()) return w;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == 't' || text[i] == 'T') {
      w.push_back(group.parse_letter(text.substr(start, i - start + 1)));
      start = i + 1;
    } else if (text[i] != 'a') {
      throw ParseError("unexpected character '" + std::string(1, text[i]) + "' in flow word");
    }
  }
  if (start != text.size()) throw ParseError("flow word '" + std::string(text) + "' ends inside a letter");
  return w;
}

std::string format_bs_word(const BaumslagSolitar& group, std::span<const BSLetter> w) {
  if (w.empty()) return "1";
  std::string s;
  for (const auto& l : w) s += group.letter_string(l);
  return s;
}

BSFlowPatch flow_patch_from_word(const BSWord& W, int radius, const BaumslagSolitar& group) {
  check_word_covers(W.size(), radius);
  const BSFlow flow(group, W);
  const auto ball = enumerate_ball(group, radius);
  std::vector<BSLetter> labels;
  labels.reserve(ball.size());
  for (const auto& e : *ball.support) labels.push_back(flow.label(e));
  return make_patch(ball, std::move(labels));
}

std::vector<Violation> validate_flow_patch(const BSFlowPatch& p) {
  std::vector<Violation> out;
  if (p.empty()) return out;
  const auto& g = p.group;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!g.valid_letter(p.labels[i])) out.push_back({g.key(p.element(i)), "alphabet", "label outside the flow alphabet"});
  if (!out.empty()) return out;
  const auto letters = g.normal_letters();
  const auto names = bs_rule_names(g);
  for (const auto& a : bs_arcs(g, *p.support))
    if (const char* rule = check_bs_arc(g, a, p.labels[a.from], p.labels[a.to], letters, names))
      out.push_back({g.key(p.element(a.from)), rule,
                     "y=" + g.letter_string(p.labels[a.from]) + ", neighbour " + g.key(p.element(a.to)) + " has " +
                         g.letter_string(p.labels[a.to])});
  return out;
}

BSWord word_of_patch(const BSFlowPatch& p) {
  require_valid_with_identity(p);
  return follow_arrows(p, p.group.identity(),
                       [&](const BSNormalForm& e, BSLetter l) { return p.group.multiply(e, l); });
}

std::size_t enumerate_flow_patches(const Ball<BaumslagSolitar>& ball, const std::map<std::size_t, BSLetter>& fixed,
                                   const std::function<bool(const std::vector<BSLetter>&)>& visit) {
  const auto& g = ball.group;
  const auto letters = g.normal_letters();
  const auto arcs = bs_arcs(g, *ball.support);
  const auto names = bs_rule_names(g);
  return backtrack<BSLetter>(
      ball.size(), arcs, letters, fixed,
      [&](const Arc& a, BSLetter f, BSLetter t) { return check_bs_arc(g, a, f, t, letters, names); }, visit);
}

// ---- periods

Word periodic_word(std::span<const Letter> period, std::size_t length) {
  if (period.empty()) throw Error("empty period");
  Word out;
  for (std::size_t i = 0; i < length; ++i) out.push_back(period[i % period.size()]);
  return out;
}

namespace {

template <class G, class L, class Prefix>
PeriodWordReport scan_invariant(const Ball<G>& ball, const typename G::Element& g, std::size_t prefix_len,
                                std::vector<std::string> expected, Prefix prefix_of,
                                std::size_t (*enumerate)(const Ball<G>&, const std::map<std::size_t, L>&,
                                                         const std::function<bool(const std::vector<L>&)>&)) {
  PeriodWordReport rep;
  rep.prefix_length = prefix_len;
  rep.expected = std::move(expected);
  const Patch<G, L> shape{ball.group, ball.support, std::vector<L>(ball.size()), ball.radius};
  const auto overlap = translation_overlap(shape, g);
  std::set<std::string> observed, exceptions;
  rep.valid_patches = enumerate(ball, {}, [&](const std::vector<L>& labels) {
    for (const auto& [i, j] : overlap)
      if (!(labels[i] == labels[j])) return true;
    ++rep.invariant_patches;
    const std::string pre = prefix_of(labels);
    observed.insert(pre);
    if (std::find(rep.expected.begin(), rep.expected.end(), pre) == rep.expected.end()) exceptions.insert(pre);
    return true;
  });
  rep.observed.assign(observed.begin(), observed.end());
  rep.exceptions.assign(exceptions.begin(), exceptions.end());
  return rep;
}

}  // namespace

PeriodWordReport period_forces_word(const Word& g, int radius, const FreeGroup& group) {
  const Word gr = free_reduce(g);
  if (gr.empty()) throw Error("period must not be the identity");
  if (radius < 2 * static_cast<int>(gr.size()))
    throw Error("radius " + std::to_string(radius) + " is inconclusive for a period of length " +
                std::to_string(gr.size()) + " (need at least " + std::to_string(2 * gr.size()) + ")");
  const auto ball = enumerate_ball(group, radius);
  const std::size_t L = static_cast<std::size_t>(radius);
  const auto& al = group.alphabet();
  auto power_prefix = [&](const Word& x) {
    Word p;
    for (std::size_t n = 0; p.size() < L + 1; ++n) p = free_reduce(concat(p, x));
    return al.format(std::span<const Letter>(p).first(L));
  };
  std::vector<std::string> expected{power_prefix(gr), power_prefix(gbs::inverse(gr))};
  auto prefix_of = [&](const std::vector<Letter>& labels) {
    const FreeFlowPatch p{group, ball.support, labels, radius};
    Word w = follow_arrows(p, group.identity(), [&](const Word& e, Letter l) { return group.multiply(e, l); });
    w.resize(std::min(w.size(), L));
    return al.format(w);
  };
  return scan_invariant<FreeGroup, Letter>(ball, gr, L, expected, prefix_of, &enumerate_flow_patches);
}

PeriodWordReport period_forces_word(const BSNormalForm& g, int radius, const BaumslagSolitar& group) {
  if (g == group.identity()) throw Error("period must not be the identity");
  const int len = static_cast<int>(group.word_of(g).size());
  if (radius < 2 * len)
    throw Error("radius " + std::to_string(radius) + " is inconclusive for a period of length " + std::to_string(len));
  const auto ball = enumerate_ball(group, radius);
  const std::size_t L = static_cast<std::size_t>(radius);
  BSNormalForm w = group.inverse(g);
  w.k = 0;
  auto power_prefix = [&](const BSNormalForm& x) {
    if (x.prefix.empty()) return std::string("1");
    BSNormalForm p;
    while (p.prefix.size() < L + 1) p = group.multiply(p, x);
    return format_bs_word(group, std::span<const BSLetter>(p.prefix).first(L));
  };
  std::vector<std::string> expected{power_prefix(w), power_prefix(group.inverse(w))};
  auto prefix_of = [&](const std::vector<BSLetter>& labels) {
    const BSFlowPatch p{group, ball.support, labels, radius};
    BSWord word = follow_arrows(p, group.identity(), [&](const BSNormalForm& e, BSLetter l) { return group.multiply(e, l); });
    word.resize(std::min(word.size(), L));
    return format_bs_word(group, word);
  };
  return scan_invariant<BaumslagSolitar, BSLetter>(ball, g, L, expected, prefix_of, &enumerate_flow_patches);
}

std::vector<ApproachStep> approach_sequence(const Word& start, const Word& target, int steps, int rank,
                                            std::size_t tail) {
  if (steps < 0) throw Error("steps must be non-negative");
  const FreeFlow from(rank, start);
  const FreeFlow to(rank, target);
  if (start.empty()) throw Error("start word is empty");
  if (static_cast<int>(target.size()) < steps)
    throw Error("target word has " + std::to_string(target.size()) + " letters, " + std::to_string(steps) + " steps requested");
  const FreeGroup group(rank);
  std::vector<ApproachStep> out;
  for (int n = 0; n < steps; ++n) {
    ApproachStep st;
    st.n = n;
    const Letter Wn = target[static_cast<std::size_t>(n)];
    bool found = false;
    for (int i = 0; i < rank && !found; ++i) {
      const Letter s{i, 1};
      const Letter e = start.front() == s ? s : s.inverse();
      if (e != Wn.inverse()) {
        st.error = e;
        found = true;
      }
    }
    if (!found) throw Error("no padding letter avoids cancellation (rank too small)");
    Word prefix(target.begin(), target.begin() + n + 1);
    prefix.push_back(st.error);
    st.g = gbs::inverse(prefix);
    st.expected = prefix;
    for (std::size_t k = 0; k < start.size() + tail; ++k) st.expected.push_back(from.letter(k));
    // Word of the translate: V_0 = y'_{g}, V_{k+1} = y'_{g V_0 ... V_k}.
    Word cur = st.g;
    while (st.translated.size() < st.expected.size()) {
      const Letter v = from.label(cur);
      st.translated.push_back(v);
      cur = group.multiply(cur, v);
    }
    st.matches = st.translated == st.expected;
    out.push_back(std::move(st));
  }
  return out;
}

}  // namespace gbs
