#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gbs/ball.hpp"

namespace gbs {

/// A broken rule instance. `cell` is the key of the cell the rule is anchored at.
struct Violation {
  std::string cell;
  std::string rule;
  std::string detail;
};

/// Finite labeling of a support. Labels are stored parallel to the support elements.
template <class G, class L>
struct Patch {
  G group;
  std::shared_ptr<const Support<G>> support;
  std::vector<L> labels;
  int radius = -1;  ///< ball radius when the support is a ball, else -1

  std::size_t size() const { return labels.size(); }
  bool empty() const { return labels.empty(); }
  const typename G::Element& element(std::size_t i) const { return (*support)[i]; }
  std::optional<std::size_t> find(const typename G::Element& e) const { return support->find(e); }
  const L* at(const typename G::Element& e) const {
    const auto i = support->find(e);
    return i ? &labels[*i] : nullptr;
  }
};

template <class G, class L>
Patch<G, L> make_patch(const Ball<G>& ball, std::vector<L> labels) {
  if (labels.size() != ball.size()) throw Error("label count does not match the support");
  return Patch<G, L>{ball.group, ball.support, std::move(labels), ball.radius};
}

template <class G, class L>
Patch<G, L> empty_patch(const G& group) {
  return Patch<G, L>{group, std::make_shared<Support<G>>(), {}, -1};
}

/// Restriction of a patch to the elements of `ball` (all of which must be in the patch).
template <class G, class L>
Patch<G, L> restrict_patch(const Patch<G, L>& p, const Ball<G>& ball) {
  std::vector<L> labels;
  labels.reserve(ball.size());
  for (const auto& e : *ball.support) {
    const L* l = p.at(e);
    if (!l) throw Error("restriction target is not inside the patch support");
    labels.push_back(*l);
  }
  return make_patch(ball, std::move(labels));
}

/// Indices of `patch` elements h with g^-1 h also in the support (the overlap of p and its g-translate).
template <class G, class L>
std::vector<std::pair<std::size_t, std::size_t>> translation_overlap(const Patch<G, L>& p,
                                                                     const typename G::Element& g) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const auto ginv = p.group.inverse(g);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto j = p.find(p.group.multiply(ginv, p.element(i)));
    if (j) out.emplace_back(i, *j);
  }
  return out;
}

}  // namespace gbs
