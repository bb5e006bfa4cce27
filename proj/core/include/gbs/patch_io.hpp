#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "gbs/flow.hpp"
#include "gbs/folding.hpp"
#include "gbs/wang.hpp"

namespace gbs {

/// Flat patch file:
///   patch <kind> <group> [key=value ...]
///   <cell-key> <label fields...>
/// `#` starts a comment. Kinds: flow, bs-config, folded, locked.
struct PatchFile {
  std::string kind;
  std::string group;
  std::map<std::string, std::string> attrs;
  struct Record {
    std::string key;
    std::string value;  ///< rest of the line, trimmed
    int line = 0;
  };
  std::vector<Record> records;

  std::string attr(const std::string& k, const std::string& fallback = "") const {
    const auto it = attrs.find(k);
    return it == attrs.end() ? fallback : it->second;
  }
};

PatchFile parse_patch_file(std::istream& in);
PatchFile parse_patch_file_string(std::string_view text);
PatchFile load_patch_file(const std::string& path);
std::string format_patch_file(const PatchFile& f);
/// Writes through a temporary file and renames it into place.
void write_file_atomic(const std::string& path, const std::string& contents);

template <class G, class L>
PatchFile to_patch_file(std::string kind, const Patch<G, L>& p, const std::function<std::string(const L&)>& label,
                        std::map<std::string, std::string> attrs = {}) {
  PatchFile f{std::move(kind), p.group.name(), std::move(attrs), {}};
  if (p.radius >= 0) f.attrs.emplace("radius", std::to_string(p.radius));
  for (std::size_t i = 0; i < p.size(); ++i) f.records.push_back({p.group.key(p.element(i)), label(p.labels[i]), 0});
  return f;
}

/// Rebuilds the support from the keys. The radius is kept only when the keys are exactly that ball.
template <class G, class L>
Patch<G, L> from_patch_file(const G& group, const PatchFile& f, const std::function<L(const std::string&)>& label) {
  if (f.group != group.name()) throw ParseError("patch is over " + f.group + ", expected " + group.name());
  auto support = std::make_shared<Support<G>>();
  std::vector<L> labels;
  for (const auto& r : f.records) {
    typename G::Element e;
    try {
      e = group.parse_key(r.key);
    } catch (const Error& ex) {
      throw ParseError(ex.what(), r.line);
    }
    if (group.key(e) != r.key) throw ParseError("key '" + r.key + "' is not in normal form", r.line);
    if (support->contains(e)) throw ParseError("duplicate cell " + r.key, r.line);
    try {
      labels.push_back(label(r.value));
    } catch (const ParseError& ex) {
      throw ParseError(ex.what(), r.line);
    } catch (const Error& ex) {
      throw ParseError(ex.what(), r.line);
    }
    support->insert(std::move(e));
  }
  Patch<G, L> p{group, support, std::move(labels), -1};
  if (const auto r = f.attr("radius"); !r.empty()) {
    const int radius = std::stoi(r);
    const auto ball = enumerate_ball(group, radius);
    bool same = ball.size() == support->size();
    for (std::size_t i = 0; same && i < ball.size(); ++i) same = support->contains((*ball.support)[i]);
    if (same) p.radius = radius;
  }
  return p;
}

PatchFile flow_patch_file(const FreeFlowPatch& p);
PatchFile flow_patch_file(const FnZFlowPatch& p);
PatchFile flow_patch_file(const BSFlowPatch& p);
FreeFlowPatch read_free_flow(const PatchFile& f);
FnZFlowPatch read_fnz_flow(const PatchFile& f);
BSFlowPatch read_bs_flow(const PatchFile& f);

/// Records `<key> <flow-letter> <tile-line>`.
PatchFile bs_config_file(const BSConfigPatch& p, std::map<std::string, std::string> attrs = {});
BSConfigPatch read_bs_config(const PatchFile& f);

/// Records `<fnz-key> <tile-id> <flow-letter>`; attr `tileset` names the tileset file.
PatchFile folded_file(const FoldedPatch& p, std::map<std::string, std::string> attrs = {});
FoldedPatch read_folded(const PatchFile& f);

/// Records `<key> <representative index>`; attr `quotient` names the quotient file.
template <class G>
PatchFile locked_file(const Patch<G, int>& p, std::map<std::string, std::string> attrs = {}) {
  return to_patch_file<G, int>("locked", p, [](const int& r) { return std::to_string(r); }, std::move(attrs));
}
template <class G>
Patch<G, int> read_locked(const G& group, const PatchFile& f) {
  if (f.kind != "locked") throw ParseError("expected a locked patch, got '" + f.kind + "'");
  return from_patch_file<G, int>(group, f, [](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      throw ParseError("bad representative index '" + s + "'");
    }
    if (used != s.size()) throw ParseError("bad representative index '" + s + "'");
    return v;
  });
}

/// Letter of BS(m,n) written as its word, e.g. `aat`, `T`.
std::string format_bs_letter(const BaumslagSolitar& group, BSLetter l);
BSLetter parse_bs_letter(const BaumslagSolitar& group, std::string_view text);

}  // namespace gbs
