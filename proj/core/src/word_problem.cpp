#include "gbs/word_problem.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <unordered_set>

#include "gbs/error.hpp"

namespace gbs {

Word Relation::relator() const { return free_reduce(concat(lhs, gbs::inverse(rhs))); }

std::vector<Word> Presentation::relators() const {
  std::vector<Word> out;
  for (const auto& r : relations) out.push_back(r.relator());
  return out;
}

std::string format_syllables(const Alphabet& alphabet, std::span<const Letter> word) {
  if (word.empty()) return "1";
  std::string out;
  std::size_t i = 0;
  while (i < word.size()) {
    std::size_t j = i;
    while (j < word.size() && word[j] == word[i]) ++j;
    const long e = static_cast<long>(j - i) * word[i].sign;
    if (!out.empty()) out += ' ';
    out += alphabet.symbol({word[i].gen, 1});
    if (e != 1) out += "^" + std::to_string(e);
    i = j;
  }
  return out;
}

std::string Presentation::to_string() const {
  std::string s = "< ";
  for (int g = 0; g < alphabet.rank(); ++g) {
    if (g) s += ", ";
    s += alphabet.symbols()[static_cast<std::size_t>(g)];
  }
  s += " |";
  for (std::size_t i = 0; i < relations.size(); ++i) {
    s += i ? ", " : " ";
    s += format_syllables(alphabet, relations[i].lhs) + " = " + format_syllables(alphabet, relations[i].rhs);
  }
  return s + " >";
}

Presentation Presentation::baumslag_solitar(int m, int n) {
  Alphabet alph("at");
  Word lhs{{1, -1}};
  const auto am = letter_power(0, m);
  lhs.insert(lhs.end(), am.begin(), am.end());
  lhs.push_back({1, 1});
  return {alph, {{lhs, letter_power(0, n)}}};
}

std::string to_string(WPAnswer a) {
  switch (a) {
    case WPAnswer::equal: return "equal";
    case WPAnswer::unequal: return "unequal";
    case WPAnswer::unknown: return "unknown";
  }
  return "unknown";
}

namespace {

// Cyclic conjugates of every relator and its inverse, deduplicated.
std::vector<Word> insertion_words(const Presentation& p) {
  std::vector<Word> out;
  for (const auto& r : p.relators()) {
    if (r.empty()) continue;
    for (const Word& base : {r, gbs::inverse(r)}) {
      for (std::size_t s = 0; s < base.size(); ++s) {
        Word c(base.begin() + static_cast<long>(s), base.end());
        c.insert(c.end(), base.begin(), base.begin() + static_cast<long>(s));
        if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
      }
    }
  }
  return out;
}

// Appends `l` to a reduced stack.
inline void push_reduced(Word& stack, Letter l) {
  if (!stack.empty() && stack.back() == l.inverse())
    stack.pop_back();
  else
    stack.push_back(l);
}

Word insert_reduced(std::span<const Letter> w, std::size_t pos, std::span<const Letter> c) {
  Word out;
  out.reserve(w.size() + c.size());
  for (std::size_t i = 0; i < pos; ++i) out.push_back(w[i]);
  for (const auto& l : c) push_reduced(out, l);
  for (std::size_t i = pos; i < w.size(); ++i) push_reduced(out, w[i]);
  return out;
}

void check_letters(const Presentation& p, std::span<const Letter> w) {
  for (const auto& l : w)
    if (l.gen < 0 || l.gen >= p.alphabet.rank()) throw Error("word uses a generator outside the presentation");
}

}  // namespace

WPAnswer bounded_equal(const Presentation& p, std::span<const Letter> u, std::span<const Letter> v,
                       const SearchLimits& limits) {
  check_letters(p, u);
  check_letters(p, v);
  const Word start = free_reduce(concat(u, gbs::inverse(v)));
  if (start.empty()) return WPAnswer::equal;
  if (static_cast<int>(start.size()) > limits.bound) return WPAnswer::unknown;
  const auto inserts = insertion_words(p);

  // Best-first on word length; ties broken by discovery order.
  using Item = std::pair<std::pair<std::size_t, std::size_t>, Word>;
  auto cmp = [](const Item& x, const Item& y) { return x.first > y.first; };
  std::priority_queue<Item, std::vector<Item>, decltype(cmp)> frontier(cmp);
  std::unordered_set<Word, WordHash> seen;
  std::size_t counter = 0;
  frontier.push({{start.size(), counter++}, start});
  seen.insert(start);
  while (!frontier.empty()) {
    Word w = frontier.top().second;
    frontier.pop();
    for (const auto& c : inserts) {
      for (std::size_t pos = 0; pos <= w.size(); ++pos) {
        Word next = insert_reduced(w, pos, c);
        if (static_cast<int>(next.size()) > limits.bound) continue;
        if (next.empty()) return WPAnswer::equal;
        if (!seen.insert(next).second) continue;
        if (seen.size() > limits.node_cap) return WPAnswer::unknown;
        frontier.push({{next.size(), counter++}, std::move(next)});
      }
    }
  }
  return WPAnswer::unknown;
}

AffineMap affine_shadow(std::span<const Letter> word, int m, int n) {
  // phi(w s) = phi(w) o phi(s): compose on the right.
  AffineMap f;
  const Rational q(m, n);
  const Rational qinv(n, m);
  for (const auto& l : word) {
    if (l.gen == 0) {
      f.offset += f.slope * Rational(l.sign);
    } else if (l.gen == 1) {
      f.slope *= l.sign > 0 ? q : qinv;
    } else {
      throw Error("affine shadow is defined on words over {a, t}");
    }
  }
  return f;
}

WPAnswer wp_oracle(std::span<const Letter> u, std::span<const Letter> v, int m, int n, int bound,
                   std::size_t node_cap) {
  if (bound < 0) throw Error("search bound must be non-negative");
  if (affine_shadow(u, m, n) != affine_shadow(v, m, n)) return WPAnswer::unequal;
  return bounded_equal(Presentation::baumslag_solitar(m, n), u, v, {bound, node_cap});
}

// ---- batch components

MoveComponents::MoveComponents(const Presentation& p, int bound) : bound_(bound), rank_(p.alphabet.rank()) {
  if (bound < 0) throw Error("search bound must be non-negative");
  const int base = 2 * rank_ + 1;
  double capacity = 1;
  for (int i = 0; i < bound; ++i) capacity *= base;
  if (capacity > 1.8e19) throw Error("move-graph bound too large to encode");

  // All freely reduced words up to `bound`, depth first.
  std::vector<Letter> letters = p.alphabet.letters();
  Word w;
  std::vector<std::uint64_t> codes;
  auto rec = [&](auto&& self) -> void {
    codes.push_back(encode(w));
    if (static_cast<int>(w.size()) == bound) return;
    for (const auto& l : letters) {
      if (!w.empty() && w.back() == l.inverse()) continue;
      w.push_back(l);
      self(self);
      w.pop_back();
    }
  };
  rec(rec);
  std::sort(codes.begin(), codes.end());
  codes_ = std::move(codes);
  parent_.resize(codes_.size());
  std::iota(parent_.begin(), parent_.end(), 0u);

  const auto inserts = insertion_words(p);
  Word cur;
  auto visit = [&](auto&& self, std::size_t idx) -> void {
    for (const auto& c : inserts) {
      for (std::size_t pos = 0; pos <= cur.size(); ++pos) {
        // Quick reject: cancellation is bounded by the letters on either side.
        const std::size_t max_cancel = 2 * std::min(c.size(), cur.size());
        if (cur.size() + c.size() > static_cast<std::size_t>(bound) + max_cancel) continue;
        const Word next = insert_reduced(cur, pos, c);
        if (static_cast<int>(next.size()) > bound) continue;
        const long j = index_of(encode(next));
        const std::size_t a = find(idx), b = find(static_cast<std::size_t>(j));
        if (a != b) parent_[std::max(a, b)] = static_cast<std::uint32_t>(std::min(a, b));
      }
    }
    if (static_cast<int>(cur.size()) == bound) return;
    for (const auto& l : letters) {
      if (!cur.empty() && cur.back() == l.inverse()) continue;
      cur.push_back(l);
      self(self, static_cast<std::size_t>(index_of(encode(cur))));
      cur.pop_back();
    }
  };
  visit(visit, static_cast<std::size_t>(index_of(encode(cur))));
}

std::uint64_t MoveComponents::encode(std::span<const Letter> w) const {
  const std::uint64_t base = static_cast<std::uint64_t>(2 * rank_ + 1);
  std::uint64_t code = 0;
  for (const auto& l : w) code = code * base + static_cast<std::uint64_t>(letter_rank(l) + 1);
  return code;
}

long MoveComponents::index_of(std::uint64_t code) const {
  auto it = std::lower_bound(codes_.begin(), codes_.end(), code);
  if (it == codes_.end() || *it != code) return -1;
  return it - codes_.begin();
}

std::size_t MoveComponents::find(std::size_t i) const {
  while (parent_[i] != i) {
    parent_[i] = parent_[parent_[i]];
    i = parent_[i];
  }
  return i;
}

bool MoveComponents::connected(std::span<const Letter> u, std::span<const Letter> v) const {
  const Word ru = free_reduce(u), rv = free_reduce(v);
  if (static_cast<int>(ru.size()) > bound_ || static_cast<int>(rv.size()) > bound_) return false;
  const long i = index_of(encode(ru)), j = index_of(encode(rv));
  if (i < 0 || j < 0) return false;
  return find(static_cast<std::size_t>(i)) == find(static_cast<std::size_t>(j));
}

}  // namespace gbs

namespace gbs {

long MoveComponents::component(std::span<const Letter> u) const {
  const Word r = free_reduce(u);
  if (static_cast<int>(r.size()) > bound_) return -1;
  const long i = index_of(encode(r));
  return i < 0 ? -1 : static_cast<long>(find(static_cast<std::size_t>(i)));
}

}  // namespace gbs
