#include "gbs/words.hpp"

#include <algorithm>
#include <cctype>

#include "gbs/error.hpp"

namespace gbs {

Word free_reduce(std::span<const Letter> word) {
  Word out;
  out.reserve(word.size());
  for (const auto& l : word) {
    if (l.sign != 1 && l.sign != -1) throw Error("letter exponent must be +1 or -1");
    if (!out.empty() && out.back() == l.inverse())
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word inverse(std::span<const Letter> word) {
  Word out;
  out.reserve(word.size());
  for (auto it = word.rbegin(); it != word.rend(); ++it) out.push_back(it->inverse());
  return out;
}

Word concat(std::span<const Letter> a, std::span<const Letter> b) {
  Word out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

bool is_freely_reduced(std::span<const Letter> word) {
  for (std::size_t i = 1; i < word.size(); ++i)
    if (word[i] == word[i - 1].inverse()) return false;
  return true;
}

Word letter_power(int gen, long exponent) {
  const Letter l{gen, exponent >= 0 ? 1 : -1};
  return Word(static_cast<std::size_t>(exponent >= 0 ? exponent : -exponent), l);
}

long exponent_sum(std::span<const Letter> word, int gen) {
  long s = 0;
  for (const auto& l : word)
    if (l.gen == gen) s += l.sign;
  return s;
}

Alphabet::Alphabet(std::string symbols) : symbols_(std::move(symbols)) {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    const char c = symbols_[i];
    if (!std::islower(static_cast<unsigned char>(c)))
      throw Error(std::string("generator symbol must be a lowercase letter: '") + c + "'");
    if (symbols_.find(c, i + 1) != std::string::npos)
      throw Error(std::string("duplicate generator symbol '") + c + "'");
  }
}

char Alphabet::symbol(Letter l) const {
  if (l.gen < 0 || l.gen >= rank()) throw Error("letter outside alphabet");
  const char c = symbols_[static_cast<std::size_t>(l.gen)];
  return l.sign > 0 ? c : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
}

int Alphabet::index_of(char lower) const {
  const auto pos = symbols_.find(lower);
  return pos == std::string::npos ? -1 : static_cast<int>(pos);
}

Letter Alphabet::letter(char c) const {
  const bool upper = std::isupper(static_cast<unsigned char>(c));
  const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  const int idx = index_of(lower);
  if (idx < 0) throw ParseError(std::string("unknown generator symbol '") + c + "'");
  return {idx, upper ? -1 : 1};
}

std::vector<Letter> Alphabet::letters() const {
  std::vector<Letter> out;
  for (int g = 0; g < rank(); ++g) {
    out.push_back({g, 1});
    out.push_back({g, -1});
  }
  return out;
}

Word Alphabet::parse(std::string_view text) const {
  Word w;
  if (text == "1") return w;
  for (const char c : text) w.push_back(letter(c));
  return w;
}

std::string Alphabet::format(std::span<const Letter> word) const {
  if (word.empty()) return "1";
  std::string s;
  s.reserve(word.size());
  for (const auto& l : word) s.push_back(symbol(l));
  return s;
}

}  // namespace gbs
