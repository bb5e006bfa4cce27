#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gbs/patch.hpp"

namespace gbs {

/// Finite group given by its multiplication table (entries are element indices).
struct FiniteTable {
  std::vector<std::string> names;
  std::vector<std::vector<int>> mul;
  int identity = 0;
  std::vector<int> inverse;

  std::size_t order() const { return mul.size(); }
  int operator()(int x, int y) const { return mul[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]; }
};

/// Checks closure, associativity, identity and inverses. Names default to 0, 1, ...
FiniteTable make_table(std::vector<std::vector<int>> mul, std::vector<std::string> names = {});
/// Z/n1 x Z/n2 x ..., element index in mixed radix with the first factor fastest.
FiniteTable cyclic_product_table(const std::vector<int>& orders);

/// Homomorphism onto a finite group, fixed by the images of the generators. N is its kernel, R the
/// section of shortlex-least words (identity first).
template <GroupLike G>
class FiniteQuotient {
 public:
  using Element = typename G::Element;

  FiniteQuotient(G group, FiniteTable table, std::vector<int> generator_images)
      : group_(std::move(group)), table_(std::move(table)), images_(std::move(generator_images)) {
    const int rank = group_.alphabet().rank();
    if (static_cast<int>(images_.size()) != rank) throw Error("need one image per generator");
    for (const int x : images_)
      if (x < 0 || x >= static_cast<int>(table_.order())) throw Error("generator image outside the table");
    for (const auto& r : defining_relators(group_))
      if (phi(r) != table_.identity)
        throw Error("map is not a homomorphism: relator " + group_.alphabet().format(r) + " maps to " +
                    table_.names[static_cast<std::size_t>(phi(r))]);
    build_section();
  }

  const G& group() const { return group_; }
  const FiniteTable& table() const { return table_; }
  const std::vector<int>& generator_images() const { return images_; }

  int phi(Letter l) const {
    const int x = images_[static_cast<std::size_t>(l.gen)];
    return l.sign > 0 ? x : table_.inverse[static_cast<std::size_t>(x)];
  }
  int phi(std::span<const Letter> w) const {
    int x = table_.identity;
    for (const auto& l : w) x = table_(x, phi(l));
    return x;
  }
  int phi_element(const Element& g) const { return phi(group_.word_of(g)); }
  bool in_kernel(const Element& g) const { return phi_element(g) == table_.identity; }

  std::size_t index() const { return section_.size(); }
  const std::vector<Element>& section() const { return section_; }
  const std::vector<Word>& section_words() const { return section_words_; }
  /// Index in R of the representative of N g.
  int coset(const Element& g) const { return coset_of_image_.at(phi_element(g)); }

  /// r s (rep of r s)^-1 over r in R and positive generators s; these generate N.
  std::vector<Word> schreier_generators() const {
    std::vector<Word> out;
    for (std::size_t r = 0; r < section_.size(); ++r)
      for (int gen = 0; gen < group_.alphabet().rank(); ++gen) {
        const Letter s{gen, 1};
        Word w = section_words_[r];
        w.push_back(s);
        const int img = phi(w);
        const Word& rep = section_words_[static_cast<std::size_t>(coset_of_image_.at(img))];
        const Word inv = gbs::inverse(rep);
        w.insert(w.end(), inv.begin(), inv.end());
        w = free_reduce(w);
        if (!w.empty() && std::find(out.begin(), out.end(), w) == out.end()) out.push_back(w);
      }
    return out;
  }

 private:
  void build_section() {
    // Breadth-first over words in shortlex order; the first word reaching an image is its representative.
    std::map<int, int> seen;
    std::deque<Word> queue{Word{}};
    seen[table_.identity] = 0;
    section_words_.push_back({});
    const auto letters = group_.alphabet().letters();
    while (!queue.empty()) {
      const Word w = queue.front();
      queue.pop_front();
      for (const auto& l : letters) {
        if (!w.empty() && w.back() == l.inverse()) continue;
        Word v = w;
        v.push_back(l);
        const int img = phi(v);
        if (seen.count(img)) continue;
        seen[img] = static_cast<int>(section_words_.size());
        section_words_.push_back(v);
        queue.push_back(std::move(v));
      }
    }
    coset_of_image_ = seen;
    for (const auto& w : section_words_) section_.push_back(group_.evaluate(w));
  }

  G group_;
  FiniteTable table_;
  std::vector<int> images_;
  std::vector<Word> section_words_;
  std::vector<Element> section_;
  std::map<int, int> coset_of_image_;
};

/// Forbidden pattern {1 -> from, offset -> to}, from != to.
struct FixRule {
  Word offset;
  int from = 0, to = 0;
};
/// Forbidden: p(1) = p(offset).
struct SigmaRule {
  Word offset;
};
struct LockedRules {
  std::vector<Word> n_generators;
  std::vector<FixRule> fix;
  std::vector<SigmaRule> sigma;
};

template <GroupLike G>
LockedRules locked_rules(const FiniteQuotient<G>& q, const std::vector<Word>& n_generators) {
  LockedRules rules;
  rules.n_generators = n_generators;
  const int R = static_cast<int>(q.index());
  for (const auto& h : n_generators) {
    if (q.phi(h) != q.table().identity)
      throw Error("N-generator " + q.group().alphabet().format(h) + " is not in the kernel");
    for (int a = 0; a < R; ++a)
      for (int b = 0; b < R; ++b)
        if (a != b) rules.fix.push_back({h, a, b});
  }
  for (std::size_t r = 1; r < q.index(); ++r) rules.sigma.push_back({q.section_words()[r]});
  return rules;
}

using LockedPatchOf = int;

/// Cell g carries the index in R of its coset representative.
template <GroupLike G>
Patch<G, int> canonical_locked_patch(const FiniteQuotient<G>& q, int radius) {
  const auto ball = enumerate_ball(q.group(), radius);
  std::vector<int> labels;
  labels.reserve(ball.size());
  for (const auto& g : *ball.support) labels.push_back(q.coset(g));
  return make_patch(ball, std::move(labels));
}

template <GroupLike G>
std::vector<Violation> validate_locked(const FiniteQuotient<G>& q, const LockedRules& rules, const Patch<G, int>& p) {
  std::vector<Violation> out;
  const auto& G_ = p.group;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p.labels[i] < 0 || p.labels[i] >= static_cast<int>(q.index()))
      out.push_back({G_.key(p.element(i)), "alphabet", "label " + std::to_string(p.labels[i]) + " outside R"});
  if (!out.empty()) return out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& g = p.element(i);
    for (const auto& rule : rules.fix) {
      if (p.labels[i] != rule.from) continue;
      if (const int* l = p.at(apply_word(G_, g, rule.offset)); l && *l == rule.to)
        out.push_back({G_.key(g), "fix", "differs across N-generator " + G_.alphabet().format(rule.offset)});
    }
    for (const auto& rule : rules.sigma)
      if (const int* l = p.at(apply_word(G_, g, rule.offset)); l && *l == p.labels[i])
        out.push_back({G_.key(g), "sigma", "equal across representative " + G_.alphabet().format(rule.offset)});
  }
  return out;
}

enum class Stabilizer { moves, fixes };

/// Compares p with its translate by g on the overlap. Throws when the overlap is empty.
template <class G, class L>
Stabilizer stabilizer_check(const Patch<G, L>& p, const typename G::Element& g) {
  const auto overlap = translation_overlap(p, g);
  if (overlap.empty()) throw Error("translate does not overlap the patch");
  for (const auto& [i, j] : overlap)
    if (!(p.labels[i] == p.labels[j])) return Stabilizer::moves;
  return Stabilizer::fixes;
}

/// Patch on `ball` with g = h r labeled f(h), h in N, r in R.
template <GroupLike G, class A>
Patch<G, A> lift_to_cosets(const FiniteQuotient<G>& q, const Ball<G>& ball,
                           const std::function<A(const typename G::Element&)>& f) {
  std::vector<A> labels;
  labels.reserve(ball.size());
  const auto& G_ = q.group();
  for (const auto& g : *ball.support)
    labels.push_back(f(G_.multiply(g, G_.inverse(q.section()[static_cast<std::size_t>(q.coset(g))]))));
  return make_patch(ball, std::move(labels));
}

/// Pairs the layers. Throws when supports differ or xhat is not constant on each hR.
template <GroupLike G, class A>
Patch<G, std::pair<A, int>> product_lift(const FiniteQuotient<G>& q, const Patch<G, A>& xhat,
                                         const Patch<G, int>& locked) {
  if (xhat.size() != locked.size()) throw Error("layers have different supports");
  for (std::size_t i = 0; i < xhat.size(); ++i)
    if (!(xhat.element(i) == locked.element(i))) throw Error("layers have different supports");
  const auto& G_ = q.group();
  std::map<std::string, std::size_t> first;
  std::vector<std::pair<A, int>> labels;
  for (std::size_t i = 0; i < xhat.size(); ++i) {
    const auto& g = xhat.element(i);
    const auto h = G_.multiply(g, G_.inverse(q.section()[static_cast<std::size_t>(q.coset(g))]));
    const auto [it, fresh] = first.try_emplace(G_.key(h), i);
    if (!fresh && !(xhat.labels[it->second] == xhat.labels[i]))
      throw Error("first layer is not constant on the coset of " + G_.key(h));
    labels.emplace_back(xhat.labels[i], locked.labels[i]);
  }
  return Patch<G, std::pair<A, int>>{locked.group, locked.support, std::move(labels), locked.radius};
}

/// Text form of a quotient:
///   group: F2xZ
///   elements: e x
///   table:
///   e x
///   x e
///   phi: a=x b=e t=e
///   ngens: b t aa abA        (optional)
struct QuotientSpec {
  std::string group;
  FiniteTable table;
  std::map<char, int> images;  ///< generator symbol -> element index
  std::vector<std::string> n_generators;
};
QuotientSpec parse_quotient(std::istream& in);
QuotientSpec parse_quotient_string(std::string_view text);
QuotientSpec load_quotient(const std::string& path);

template <GroupLike G>
FiniteQuotient<G> make_quotient(const G& group, const QuotientSpec& spec) {
  std::vector<int> images;
  for (int gen = 0; gen < group.alphabet().rank(); ++gen) {
    const char s = group.alphabet().symbol(Letter{gen, 1});
    const auto it = spec.images.find(s);
    if (it == spec.images.end()) throw Error(std::string("no image for generator ") + s);
    images.push_back(it->second);
  }
  if (spec.images.size() != images.size()) throw Error("image given for a symbol that is not a generator");
  return FiniteQuotient<G>(group, spec.table, std::move(images));
}

template <GroupLike G>
std::vector<Word> quotient_n_generators(const FiniteQuotient<G>& q, const QuotientSpec& spec) {
  if (spec.n_generators.empty()) return q.schreier_generators();
  std::vector<Word> out;
  for (const auto& s : spec.n_generators) out.push_back(q.group().alphabet().parse(s));
  return out;
}

}  // namespace gbs
