#include "gbs/patch_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace gbs {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

Letter parse_single_letter(const Alphabet& a, const std::string& s) {
  if (s.size() != 1) throw ParseError("expected one flow letter, got '" + s + "'");
  return a.letter(s[0]);
}

template <class G>
G group_as(const std::string& spec) {
  auto any = parse_group_spec(spec);
  if (auto* g = std::get_if<G>(&any)) return *g;
  throw ParseError("patch group " + spec + " does not fit this patch kind");
}

void expect_kind(const PatchFile& f, const char* kind) {
  if (f.kind != kind) throw ParseError("expected a " + std::string(kind) + " patch, got '" + f.kind + "'");
}

}  // namespace

PatchFile parse_patch_file(std::istream& in) {
  PatchFile f;
  bool header = false;
  int lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    std::istringstream ls(line);
    if (!header) {
      std::string magic;
      ls >> magic >> f.kind >> f.group;
      if (magic != "patch" || f.group.empty()) throw ParseError("expected 'patch <kind> <group>' header", lineno);
      for (std::string tok; ls >> tok;) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos || eq == 0) throw ParseError("expected key=value, got '" + tok + "'", lineno);
        f.attrs[tok.substr(0, eq)] = tok.substr(eq + 1);
      }
      header = true;
      continue;
    }
    PatchFile::Record r;
    ls >> r.key;
    std::string rest;
    std::getline(ls, rest);
    r.value = trim(rest);
    r.line = lineno;
    if (r.value.empty()) throw ParseError("cell " + r.key + " has no label", lineno);
    f.records.push_back(std::move(r));
  }
  if (!header) throw ParseError("empty patch file");
  return f;
}

PatchFile parse_patch_file_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_patch_file(in);
}

PatchFile load_patch_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return parse_patch_file(in);
}

std::string format_patch_file(const PatchFile& f) {
  std::string s = "patch " + f.kind + " " + f.group;
  for (const auto& [k, v] : f.attrs) s += " " + k + "=" + v;
  s += "\n";
  for (const auto& r : f.records) s += r.key + " " + r.value + "\n";
  return s;
}

void write_file_atomic(const std::string& path, const std::string& contents) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp);
    out << contents;
    if (!out.flush()) throw Error("cannot write " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error("cannot move " + tmp + " to " + path);
  }
}

std::string format_bs_letter(const BaumslagSolitar& group, BSLetter l) { return group.letter_string(l); }

BSLetter parse_bs_letter(const BaumslagSolitar& group, std::string_view text) {
  const auto w = parse_bs_word(group, text);
  if (w.size() != 1) throw ParseError("expected one BS letter, got '" + std::string(text) + "'");
  return w[0];
}

PatchFile flow_patch_file(const FreeFlowPatch& p) {
  return to_patch_file<FreeGroup, Letter>("flow", p, [&](const Letter& l) { return std::string(1, p.group.alphabet().symbol(l)); });
}
PatchFile flow_patch_file(const FnZFlowPatch& p) {
  return to_patch_file<FreeTimesZ, Letter>("flow", p, [&](const Letter& l) { return std::string(1, p.group.alphabet().symbol(l)); });
}
PatchFile flow_patch_file(const BSFlowPatch& p) {
  return to_patch_file<BaumslagSolitar, BSLetter>("flow", p, [&](const BSLetter& l) { return format_bs_letter(p.group, l); });
}

FreeFlowPatch read_free_flow(const PatchFile& f) {
  expect_kind(f, "flow");
  const auto g = group_as<FreeGroup>(f.group);
  return from_patch_file<FreeGroup, Letter>(g, f, [&](const std::string& s) { return parse_single_letter(g.alphabet(), s); });
}
FnZFlowPatch read_fnz_flow(const PatchFile& f) {
  expect_kind(f, "flow");
  const auto g = group_as<FreeTimesZ>(f.group);
  return from_patch_file<FreeTimesZ, Letter>(g, f, [&](const std::string& s) { return parse_single_letter(g.alphabet(), s); });
}
BSFlowPatch read_bs_flow(const PatchFile& f) {
  expect_kind(f, "flow");
  const auto g = group_as<BaumslagSolitar>(f.group);
  return from_patch_file<BaumslagSolitar, BSLetter>(g, f, [&](const std::string& s) { return parse_bs_letter(g, s); });
}

PatchFile bs_config_file(const BSConfigPatch& p, std::map<std::string, std::string> attrs) {
  return to_patch_file<BaumslagSolitar, BSCell>(
      "bs-config", p, [&](const BSCell& c) { return format_bs_letter(p.group, c.flow) + " " + c.tile.to_string(); },
      std::move(attrs));
}

BSConfigPatch read_bs_config(const PatchFile& f) {
  expect_kind(f, "bs-config");
  const auto g = group_as<BaumslagSolitar>(f.group);
  return from_patch_file<BaumslagSolitar, BSCell>(g, f, [&](const std::string& s) {
    const auto sp = s.find(' ');
    if (sp == std::string::npos) throw ParseError("expected '<flow-letter> <tile>'");
    return BSCell{parse_bs_letter(g, s.substr(0, sp)), WangTile7::parse(trim(std::string_view(s).substr(sp + 1)))};
  });
}

PatchFile folded_file(const FoldedPatch& p, std::map<std::string, std::string> attrs) {
  return to_patch_file<FreeTimesZ, FoldCell>(
      "folded", p,
      [&](const FoldCell& c) { return std::to_string(c.tile) + " " + std::string(1, p.group.alphabet().symbol(c.flow)); },
      std::move(attrs));
}

FoldedPatch read_folded(const PatchFile& f) {
  expect_kind(f, "folded");
  const auto g = group_as<FreeTimesZ>(f.group);
  return from_patch_file<FreeTimesZ, FoldCell>(g, f, [&](const std::string& s) {
    std::istringstream in(s);
    int tile = 0;
    std::string letter, extra;
    if (!(in >> tile >> letter) || (in >> extra)) throw ParseError("expected '<tile-id> <flow-letter>'");
    return FoldCell{tile, parse_single_letter(g.alphabet(), letter)};
  });
}

}  // namespace gbs
