#pragma once

#include <algorithm>
#include <cstdlib>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gbs/error.hpp"
#include "gbs/groups.hpp"

namespace gbs {

/// Element cap for ball enumeration: GBS_BALL_CAP if set, else 10^6.
inline std::size_t default_ball_cap() {
  if (const char* env = std::getenv("GBS_BALL_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    throw Error(std::string("GBS_BALL_CAP must be a positive integer, got '") + env + "'");
  }
  return 1000000;
}

/// Indexed finite set of group elements, in insertion order.
template <class G>
class Support {
 public:
  using Element = typename G::Element;

  Support() = default;
  explicit Support(std::vector<Element> elems) {
    for (auto& e : elems) insert(std::move(e));
  }

  /// Returns the index of `e`, inserting it when new.
  std::size_t insert(Element e) {
    auto [it, fresh] = index_.try_emplace(e, elements_.size());
    if (fresh) elements_.push_back(std::move(e));
    return it->second;
  }
  std::optional<std::size_t> find(const Element& e) const {
    auto it = index_.find(e);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool contains(const Element& e) const { return index_.count(e) != 0; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  const Element& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<Element>& elements() const { return elements_; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

 private:
  std::vector<Element> elements_;
  std::unordered_map<Element, std::size_t, typename G::Hash> index_;
};

/// Cayley ball: elements in BFS order (sphere by sphere, each sphere sorted by key).
template <class G>
struct Ball {
  G group;
  int radius = 0;
  std::shared_ptr<const Support<G>> support;
  std::vector<int> lengths;  ///< word length of each element

  std::size_t size() const { return support->size(); }
  bool contains(const typename G::Element& e) const { return support->contains(e); }
  std::optional<std::size_t> find(const typename G::Element& e) const { return support->find(e); }
  const typename G::Element& operator[](std::size_t i) const { return (*support)[i]; }
};

template <GroupLike G>
Ball<G> enumerate_ball(const G& group, int radius, std::size_t cap = default_ball_cap()) {
  if (radius < 0) throw Error("ball radius must be non-negative");
  auto support = std::make_shared<Support<G>>();
  std::vector<int> lengths;
  support->insert(group.identity());
  lengths.push_back(0);
  std::size_t layer_begin = 0;
  const auto gens = group.generators();
  for (int r = 1; r <= radius; ++r) {
    const std::size_t layer_end = support->size();
    std::vector<std::pair<std::string, typename G::Element>> next;
    Support<G> seen;
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (const auto& s : gens) {
        auto e = group.multiply((*support)[i], s);
        if (support->contains(e) || seen.contains(e)) continue;
        seen.insert(e);
        if (support->size() + seen.size() > cap)
          throw CapExceeded("ball of radius " + std::to_string(radius) + " in " + group.name() +
                            " exceeds the cap of " + std::to_string(cap) + " elements");
        next.emplace_back(group.key(e), std::move(e));
      }
    }
    std::sort(next.begin(), next.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& [k, e] : next) {
      support->insert(std::move(e));
      lengths.push_back(r);
    }
    layer_begin = layer_end;
  }
  return Ball<G>{group, radius, std::move(support), std::move(lengths)};
}

}  // namespace gbs
