#include "gbs/groups.hpp"

#include <charconv>

#include "gbs/error.hpp"

namespace gbs {

namespace {

std::string alphabet_symbols(int rank, bool with_t) {
  if (rank < 0 || rank > 19) throw Error("free rank must lie in 0..19");
  std::string s;
  for (char c = 'a'; static_cast<int>(s.size()) < rank; ++c)
    if (c != 't') s.push_back(c);
  if (with_t) s.push_back('t');
  return s;
}

long parse_long(std::string_view text, std::string_view what) {
  long v = 0;
  const char* b = text.data();
  const char* e = b + text.size();
  if (!text.empty() && text[0] == '+') ++b;
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || ptr != e || b == e) throw ParseError("malformed " + std::string(what) + " '" + std::string(text) + "'");
  return v;
}

// Splits "<left>|<sym>^<int>" and returns (left, exponent).
std::pair<std::string_view, long> split_key(std::string_view key, char sym) {
  const auto bar = key.find('|');
  if (bar == std::string_view::npos) throw ParseError("key '" + std::string(key) + "' lacks '|'");
  const auto tail = key.substr(bar + 1);
  if (tail.size() < 3 || tail[0] != sym || tail[1] != '^')
    throw ParseError("key '" + std::string(key) + "' must end in |" + sym + "^<int>");
  return {key.substr(0, bar), parse_long(tail.substr(2), "exponent")};
}

}  // namespace

// ---- F_n

FreeGroup::FreeGroup(int rank) : rank_(rank), alphabet_(alphabet_symbols(rank, false)) {}

FreeGroup::Element FreeGroup::multiply(Element x, Letter l) const {
  if (l.gen < 0 || l.gen >= rank_) throw Error("letter outside " + name());
  if (!x.empty() && x.back() == l.inverse())
    x.pop_back();
  else
    x.push_back(l);
  return x;
}

FreeGroup::Element FreeGroup::multiply(const Element& x, const Element& y) const {
  return free_reduce(concat(x, y));
}

FreeGroup::Element FreeGroup::parse_key(std::string_view key) const {
  auto w = alphabet_.parse(key);
  if (!is_freely_reduced(w)) throw ParseError("key '" + std::string(key) + "' is not freely reduced");
  return w;
}

// ---- F_n x Z

FreeTimesZ::FreeTimesZ(int rank) : rank_(rank), alphabet_(alphabet_symbols(rank, true)) {}

FreeTimesZ::Element FreeTimesZ::multiply(Element x, Letter l) const {
  if (l.gen == rank_) {
    x.k += l.sign;
    return x;
  }
  if (l.gen < 0 || l.gen > rank_) throw Error("letter outside " + name());
  if (!x.w.empty() && x.w.back() == l.inverse())
    x.w.pop_back();
  else
    x.w.push_back(l);
  return x;
}

FreeTimesZ::Element FreeTimesZ::multiply(const Element& x, const Element& y) const {
  return {free_reduce(concat(x.w, y.w)), x.k + y.k};
}

FreeTimesZ::Element FreeTimesZ::evaluate(std::span<const Letter> word) const {
  Element e;
  for (const auto& l : word) e = multiply(std::move(e), l);
  return e;
}

Word FreeTimesZ::word_of(const Element& x) const { return concat(x.w, letter_power(rank_, x.k)); }

std::string FreeTimesZ::key(const Element& x) const {
  return alphabet_.format(x.w) + "|t^" + std::to_string(x.k);
}

FreeTimesZ::Element FreeTimesZ::parse_key(std::string_view key) const {
  auto [left, k] = split_key(key, 't');
  Element e{alphabet_.parse(left), k};
  for (const auto& l : e.w)
    if (l.gen == rank_) throw ParseError("key '" + std::string(key) + "': t inside the free part");
  if (!is_freely_reduced(e.w)) throw ParseError("key '" + std::string(key) + "' is not freely reduced");
  return e;
}

// ---- BS(m,n)

BaumslagSolitar::BaumslagSolitar(int m, int n) : m_(m), n_(n), alphabet_("at") {
  if (m < 1 || n < 1) throw Error("BS(m,n) needs m, n >= 1");
}

BaumslagSolitar::Element BaumslagSolitar::multiply(Element x, Letter l) const {
  if (l.gen == kA) {
    x.k += l.sign;
    return x;
  }
  if (l.gen != kT) throw Error("letter outside " + name());
  if (l.sign > 0) {
    const long r = floor_mod(x.k, m_);
    const long d = (x.k - r) / m_;
    if (r == 0 && !x.prefix.empty() && !x.prefix.back().up()) {
      x.k = x.prefix.back().r + n_ * d;
      x.prefix.pop_back();
    } else {
      x.prefix.push_back({static_cast<int>(r), 1});
      x.k = n_ * d;
    }
  } else {
    const long r = floor_mod(x.k, n_);
    const long d = (x.k - r) / n_;
    if (r == 0 && !x.prefix.empty() && x.prefix.back().up()) {
      x.k = x.prefix.back().r + m_ * d;
      x.prefix.pop_back();
    } else {
      x.prefix.push_back({static_cast<int>(r), -1});
      x.k = m_ * d;
    }
  }
  return x;
}

BaumslagSolitar::Element BaumslagSolitar::multiply(const Element& x, BSLetter l) const {
  Element y = x;
  y.k += l.r;
  return multiply(std::move(y), Letter{kT, l.e});
}

BaumslagSolitar::Element BaumslagSolitar::multiply(const Element& x, const Element& y) const {
  Element z = x;
  for (const auto& l : y.prefix) z = multiply(z, l);
  z.k += y.k;
  return z;
}

BaumslagSolitar::Element BaumslagSolitar::inverse(const Element& x) const {
  const Word w = word_of(x);
  return evaluate(gbs::inverse(w));
}

BaumslagSolitar::Element BaumslagSolitar::evaluate(std::span<const Letter> word) const {
  Element e;
  for (const auto& l : word) e = multiply(std::move(e), l);
  return e;
}

Word BaumslagSolitar::word_of(BSLetter l) const {
  Word w = letter_power(kA, l.r);
  w.push_back({kT, l.e});
  return w;
}

Word BaumslagSolitar::word_of(const Element& x) const {
  Word w;
  for (const auto& l : x.prefix) {
    const auto lw = word_of(l);
    w.insert(w.end(), lw.begin(), lw.end());
  }
  const auto tail = letter_power(kA, x.k);
  w.insert(w.end(), tail.begin(), tail.end());
  return w;
}

std::vector<BSLetter> BaumslagSolitar::normal_letters() const {
  std::vector<BSLetter> out;
  for (int r = 0; r < m_; ++r) out.push_back({r, 1});
  for (int r = 0; r < n_; ++r) out.push_back({r, -1});
  return out;
}

bool BaumslagSolitar::valid_letter(BSLetter l) const {
  if (l.e == 1) return l.r >= 0 && l.r < m_;
  if (l.e == -1) return l.r >= 0 && l.r < n_;
  return false;
}

bool BaumslagSolitar::may_follow(BSLetter prev, BSLetter next) const {
  return !(next.r == 0 && prev.e == -next.e);
}

std::string BaumslagSolitar::letter_string(BSLetter l) const {
  return std::string(static_cast<std::size_t>(l.r), 'a') + (l.up() ? 't' : 'T');
}

BSLetter BaumslagSolitar::parse_letter(std::string_view text) const {
  if (text.empty()) throw ParseError("empty BS letter");
  const char last = text.back();
  if (last != 't' && last != 'T') throw ParseError("BS letter '" + std::string(text) + "' must end in t or T");
  for (std::size_t i = 0; i + 1 < text.size(); ++i)
    if (text[i] != 'a') throw ParseError("BS letter '" + std::string(text) + "' must be a^r t^(+-1)");
  BSLetter l{static_cast<int>(text.size() - 1), last == 't' ? 1 : -1};
  if (!valid_letter(l)) throw ParseError("BS letter '" + std::string(text) + "' out of range for " + name());
  return l;
}

std::string BaumslagSolitar::key(const Element& x) const {
  std::string s;
  for (const auto& l : x.prefix) s += letter_string(l);
  if (s.empty()) s = "1";
  return s + "|a^" + std::to_string(x.k);
}

BaumslagSolitar::Element BaumslagSolitar::parse_key(std::string_view key) const {
  auto [left, k] = split_key(key, 'a');
  Element e;
  e.k = k;
  if (left != "1") {
    std::size_t start = 0;
    for (std::size_t i = 0; i < left.size(); ++i) {
      if (left[i] == 't' || left[i] == 'T') {
        const BSLetter l = parse_letter(left.substr(start, i - start + 1));
        if (!e.prefix.empty() && !may_follow(e.prefix.back(), l))
          throw ParseError("key '" + std::string(key) + "' is not in normal form");
        e.prefix.push_back(l);
        start = i + 1;
      }
    }
    if (start != left.size() || left.empty()) throw ParseError("key '" + std::string(key) + "' has a dangling a-power in its prefix");
  }
  return e;
}

BSNormalForm bs_normalize(std::span<const Letter> word, int m, int n) {
  return BaumslagSolitar(m, n).evaluate(word);
}

BSNormalForm bs_multiply(const BaumslagSolitar& group, const BSNormalForm& x, const BSNormalForm& y) {
  for (const auto* e : {&x, &y})
    for (const auto& l : e->prefix)
      if (!group.valid_letter(l)) throw Error("normal form does not belong to " + group.name());
  return group.multiply(x, y);
}

std::vector<Word> defining_relators(const FreeGroup&) { return {}; }

std::vector<Word> defining_relators(const FreeTimesZ& g) {
  std::vector<Word> out;
  const Letter t{g.t_gen(), 1};
  for (int i = 0; i < g.rank(); ++i) {
    const Letter s{i, 1};
    out.push_back({s, t, s.inverse(), t.inverse()});
  }
  return out;
}

std::vector<Word> defining_relators(const BaumslagSolitar& g) {
  Word r{{BaumslagSolitar::kT, -1}};
  r.insert(r.end(), static_cast<std::size_t>(g.m()), Letter{BaumslagSolitar::kA, 1});
  r.push_back({BaumslagSolitar::kT, 1});
  r.insert(r.end(), static_cast<std::size_t>(g.n()), Letter{BaumslagSolitar::kA, -1});
  return {r};
}

AnyGroup parse_group_spec(std::string_view spec) {
  auto number = [&](std::string_view digits) {
    if (digits.empty() || digits.size() > 3) throw ParseError("bad group spec '" + std::string(spec) + "'");
    int v = 0;
    for (const char c : digits) {
      if (c < '0' || c > '9') throw ParseError("bad group spec '" + std::string(spec) + "'");
      v = v * 10 + (c - '0');
    }
    return v;
  };
  if (spec == "Z2" || spec == "Z^2") return FreeTimesZ(1);
  if (spec.starts_with("BS(") && spec.ends_with(")")) {
    const auto inner = spec.substr(3, spec.size() - 4);
    const auto comma = inner.find(',');
    if (comma == std::string_view::npos) throw ParseError("bad group spec '" + std::string(spec) + "'");
    return BaumslagSolitar(number(inner.substr(0, comma)), number(inner.substr(comma + 1)));
  }
  if (spec.starts_with("F")) {
    if (spec.ends_with("xZ")) return FreeTimesZ(number(spec.substr(1, spec.size() - 3)));
    return FreeGroup(number(spec.substr(1)));
  }
  throw ParseError("unknown group '" + std::string(spec) + "' (use F<n>, F<n>xZ, Z2 or BS(m,n))");
}

}  // namespace gbs
