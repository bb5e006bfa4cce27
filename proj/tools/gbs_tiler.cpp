// gbs-tiler: command-line front end for the gbs core library.
//
// Exit status: 0 on success, 1 when a validator (or verify-paper) finds a failure,
// 2 on usage, parse and input errors.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "gbs/ball.hpp"
#include "gbs/flow.hpp"
#include "gbs/folding.hpp"
#include "gbs/gbs_graph.hpp"
#include "gbs/height.hpp"
#include "gbs/locked.hpp"
#include "gbs/patch_io.hpp"
#include "gbs/render.hpp"
#include "gbs/verify.hpp"
#include "gbs/wang.hpp"

#ifndef GBS_DEFAULT_DATA_DIR
#define GBS_DEFAULT_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace gbs;

namespace {

template <class... F>
struct overloaded : F... {
  using F::operator()...;
};
template <class... F>
overloaded(F...) -> overloaded<F...>;

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty())
    std::cout << text;
  else
    write_file_atomic(out, text);
}

// The flow word is read with its last letter repeating, so padding it up to the radius changes nothing.
template <class W>
W pad_to(W w, int radius) {
  if (w.empty()) throw Error("flow word is empty");
  while (static_cast<int>(w.size()) < radius) w.push_back(w.back());
  return w;
}

int infer_rank(const Word& w, int at_least) {
  int r = at_least;
  for (const auto& l : w) r = std::max(r, l.gen + 1);
  return r;
}

// Resolves a file named inside a patch header: as given, then next to the patch.
std::string resolve_near(const std::string& name, const std::string& patch_path) {
  if (name.empty() || fs::exists(name)) return name;
  const auto near = fs::path(patch_path).parent_path() / name;
  return fs::exists(near) ? near.string() : name;
}

int report(const std::vector<Violation>& v, std::size_t cells, const std::string& what) {
  for (const auto& x : v) std::cout << "violation " << x.cell << " " << x.rule << (x.detail.empty() ? "" : " " + x.detail) << "\n";
  if (v.empty()) {
    std::cout << "ok " << what << " " << cells << " cells\n";
    return 0;
  }
  std::cout << "invalid " << what << " " << v.size() << " violations\n";
  return 1;
}

Word parse_free_word(const AnyGroup& g, const std::string& text) {
  return std::visit(overloaded{[&](const FreeGroup& G) { return G.alphabet().parse(text); },
                               [&](const FreeTimesZ& G) { return G.free_factor().alphabet().parse(text); },
                               [&](const BaumslagSolitar&) -> Word { throw Error("not a free group"); }},
                    g);
}

// ---- patch loading by kind

std::string data_dir_default() {
  if (const char* env = std::getenv("GBS_DATA_DIR")) return env;
  return GBS_DEFAULT_DATA_DIR;
}

Z2Tileset tileset_for(const PatchFile& f, const std::string& flag, const std::string& patch_path) {
  const std::string name = flag.empty() ? resolve_near(f.attr("tileset"), patch_path) : flag;
  if (name.empty()) throw Error("folded patch names no tileset; pass --tileset");
  return load_tileset(name);
}

QuotientSpec quotient_for(const PatchFile& f, const std::string& flag, const std::string& patch_path) {
  const std::string name = flag.empty() ? resolve_near(f.attr("quotient"), patch_path) : flag;
  if (name.empty()) throw Error("locked patch names no quotient; pass --quotient");
  return load_quotient(name);
}

/// Calls `fn(patch)` with the typed patch stored in `f`.
template <class Fn>
auto with_patch(const PatchFile& f, Fn&& fn) {
  if (f.kind == "flow") {
    return std::visit(overloaded{[&](const FreeGroup&) { return fn(read_free_flow(f)); },
                                 [&](const FreeTimesZ&) { return fn(read_fnz_flow(f)); },
                                 [&](const BaumslagSolitar&) { return fn(read_bs_flow(f)); }},
                      parse_group_spec(f.group));
  }
  if (f.kind == "bs-config") return fn(read_bs_config(f));
  if (f.kind == "folded") return fn(read_folded(f));
  if (f.kind == "locked")
    return std::visit([&](const auto& G) { return fn(read_locked(G, f)); }, parse_group_spec(f.group));
  throw ParseError("unknown patch kind '" + f.kind + "'");
}

bool is_z2_patch_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto s = line.find_first_not_of(" \t");
    if (s == std::string::npos || line[s] == '#') continue;
    return line.compare(s, 7, "window:") == 0;
  }
  return false;
}

// ---- commands

struct Opts {
  std::string group = "F2", bs_group = "BS(2,3)", word, out, file, tileset, quotient, format = "dot", start, target, flow, f = "T", x = "1/2",
              element, lam, tree, report = "verify-report.json", data_dir, patch, stabilizer;
  std::vector<std::string> words;
  std::vector<int> only;
  int radius = 2, max_len = 2, steps = 3, rank = 0, m = 2, n = 3, bm = 2, bn = 2;
  std::size_t min_overlap = 1, tail = 4;
  std::uint64_t seed = 1;
  bool list = false, verify = false, tiles = false;
};

int cmd_normalize(const Opts& o) {
  const auto g = parse_group_spec(o.group);
  for (const auto& w : o.words)
    std::visit([&](const auto& G) { std::cout << G.key(G.evaluate(G.alphabet().parse(w))) << "\n"; }, g);
  return 0;
}

int cmd_ball(const Opts& o) {
  return std::visit(
      [&](const auto& G) {
        const auto ball = enumerate_ball(G, o.radius);
        std::cout << "group " << G.name() << "\nradius " << o.radius << "\nsize " << ball.size() << "\n";
        std::vector<std::size_t> sphere(static_cast<std::size_t>(o.radius) + 1, 0);
        for (const int l : ball.lengths) ++sphere[static_cast<std::size_t>(l)];
        for (std::size_t r = 0; r < sphere.size(); ++r) std::cout << "sphere " << r << " " << sphere[r] << "\n";
        if (o.list)
          for (std::size_t i = 0; i < ball.size(); ++i) std::cout << ball.lengths[i] << " " << G.key(ball[i]) << "\n";
        return 0;
      },
      parse_group_spec(o.group));
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

GBSGraph load_graph(const std::string& path) { return GBSGraph::parse_string(read_text(path)); }

int cmd_presentation(const Opts& o) {
  const auto g = load_graph(o.file);
  auto tree = o.tree.empty() ? spanning_tree(g) : split_csv(o.tree);
  std::sort(tree.begin(), tree.end());
  emit(fundamental_presentation(g, tree).to_string() + "\n", o.out);
  return 0;
}

int cmd_witness(const Opts& o) {
  const auto g = load_graph(o.file);
  const auto w = o.tree.empty() ? weak_aperiodicity_witness(g) : weak_aperiodicity_witness(g, split_csv(o.tree));
  std::cout << "kind " << to_string(w.kind) << "\n" << w.describe() << "\n";
  if (!o.verify) return 0;
  const auto a = verify_witness(w);
  std::cout << "verified " << to_string(a) << "\n";
  return a == WPAnswer::equal ? 0 : 1;
}

int cmd_classify(const Opts& o) {
  const auto g = load_graph(o.file);
  const auto tree = spanning_tree(g);
  std::cout << "class " << whyte_class(g, tree).to_string() << "\n";
  const auto mods = modular_values(g, tree);
  std::cout << "modular";
  for (const auto& q : mods) std::cout << " " << q.to_string();
  std::cout << "\n";
  return 0;
}

int cmd_flow_build(const Opts& o) {
  const auto g = parse_group_spec(o.group);
  const std::string text = std::visit(
      overloaded{[&](const BaumslagSolitar& G) {
                   return format_patch_file(flow_patch_file(flow_patch_from_word(pad_to(parse_bs_word(G, o.word), o.radius), o.radius, G)));
                 },
                 [&](const auto& G) {
                   return format_patch_file(flow_patch_file(flow_patch_from_word(pad_to(parse_free_word(g, o.word), o.radius), o.radius, G)));
                 }},
      g);
  emit(text, o.out);
  return 0;
}

int validate_any(const PatchFile& f, const Opts& o);

int cmd_flow_validate(const Opts& o) {
  const auto f = load_patch_file(o.file);
  if (f.kind != "flow") throw ParseError("expected a flow patch, got '" + f.kind + "'");
  return validate_any(f, o);
}

int cmd_validate(const Opts& o) {
  const std::string text = read_text(o.file);
  if (is_z2_patch_text(text)) {
    if (o.tileset.empty()) throw Error("a planar patch needs --tileset");
    const auto p = parse_z2_patch_string(text);
    std::size_t known = 0;
    for (const int c : p.cells) known += c >= 0;
    return report(validate_z2(load_tileset(o.tileset), p), known, "planar");
  }
  return validate_any(parse_patch_file_string(text), o);
}

int validate_any(const PatchFile& f, const Opts& o) {
  if (f.kind == "flow")
    return with_patch(f, [](const auto& p) {
      if constexpr (std::is_same_v<std::decay_t<decltype(p.labels[0])>, Letter> ||
                    std::is_same_v<std::decay_t<decltype(p.labels[0])>, BSLetter>)
        return report(validate_flow_patch(p), p.size(), "flow");
      else
        return 2;
    });
  if (f.kind == "bs-config") {
    const auto p = read_bs_config(f);
    const auto v = validate_bs_patch(p);
    std::cout << "checked right-left " << v.right_left << " bottom-t1 " << v.bottom_t1 << " bottom-t2 " << v.bottom_t2 << "\n";
    std::cout << "distinct-tiles " << distinct_tiles(p).size() << "\n";
    return report(v.violations, p.size(), "bs-config");
  }
  if (f.kind == "folded") {
    const auto ts = tileset_for(f, o.tileset, o.file);
    const auto p = read_folded(f);
    return report(validate_folded(ts, p), p.size(), "folded");
  }
  if (f.kind == "locked") {
    const auto spec = quotient_for(f, o.quotient, o.file);
    return std::visit(
        [&](const auto& G) {
          const auto q = make_quotient(G, spec);
          const auto rules = locked_rules(q, quotient_n_generators(q, spec));
          const auto p = read_locked(G, f);
          std::cout << "rules fix " << rules.fix.size() << " sigma " << rules.sigma.size() << "\n";
          const int rc = report(validate_locked(q, rules, p), p.size(), "locked");
          if (!o.stabilizer.empty()) {
            const auto g = G.parse_key(o.stabilizer);
            std::cout << "stabilizer " << o.stabilizer << " "
                      << (stabilizer_check(p, g) == Stabilizer::fixes ? "fixes" : "moves") << " kernel "
                      << (q.in_kernel(g) ? "yes" : "no") << "\n";
          }
          return rc;
        },
        parse_group_spec(spec.group));
  }
  throw ParseError("unknown patch kind '" + f.kind + "'");
}

int cmd_approach(const Opts& o) {
  const FreeGroup probe(19);
  const Word start = probe.alphabet().parse(o.start);
  const Word target = probe.alphabet().parse(o.target);
  const int rank = o.rank ? o.rank : infer_rank(start, infer_rank(target, 2));
  const FreeGroup F(rank);
  const auto& al = F.alphabet();
  const auto seq = approach_sequence(al.parse(o.start), al.parse(o.target), o.steps, rank, o.tail);
  bool ok = true;
  for (const auto& s : seq) {
    std::cout << "n " << s.n << " e " << al.symbol(s.error) << " g " << al.format(s.g) << " word " << al.format(s.translated)
              << (s.matches ? " ok" : " MISMATCH") << "\n";
    ok = ok && s.matches;
  }
  return ok ? 0 : 1;
}

int cmd_lambda(const Opts& o) {
  const BaumslagSolitar G(o.m, o.n);
  const Word w = G.alphabet().parse(o.word);
  const auto g = G.evaluate(w);
  std::cout << "element " << G.key(g) << "\nbeta " << beta(w) << "\nalpha " << alpha(w, o.m, o.n).to_string()
            << "\nlambda " << lambda(w, o.m, o.n).to_string() << "\n";
  if (!o.flow.empty()) {
    const HeightContext h(BSFlow(G, parse_bs_word(G, o.flow)));
    std::cout << "beta_y " << h.beta_y(g) << "\n";
  }
  return 0;
}

int cmd_tile(const Opts& o) {
  const FTag f = parse_ftag(o.f);
  const Rational x = Rational::parse(o.x);
  WangTile7 t;
  if (!o.lam.empty()) {
    t = tile_colors(f, x, Rational::parse(o.lam));
  } else {
    const BaumslagSolitar G(2, 3);
    t = tile_colors(f, x, G, G.evaluate(G.alphabet().parse(o.element.empty() ? "1" : o.element)));
  }
  const bool ok = tile_computes(t, map_of(f).slope_at(x));
  std::cout << t.to_string() << "\ncomputes " << (ok ? "yes" : "no") << "\n";
  return ok ? 0 : 1;
}

int cmd_build_bs(const Opts& o) {
  const auto g = parse_group_spec(o.bs_group);
  const auto* G = std::get_if<BaumslagSolitar>(&g);
  if (!G) throw Error("build-bs needs a Baumslag-Solitar group");
  const auto p = build_bs_config(*G, pad_to(parse_bs_word(*G, o.word), o.radius), Rational::parse(o.x), o.radius);
  emit(format_patch_file(bs_config_file(p, {{"word", o.word}, {"x", Rational::parse(o.x).to_string()}})), o.out);
  const auto tiles = distinct_tiles(p);
  std::cerr << "cells " << p.size() << " distinct-tiles " << tiles.size() << "\n";
  if (o.tiles)
    for (const auto& t : tiles) std::cerr << t.to_string() << "\n";
  return 0;
}

int cmd_scan(const Opts& o) {
  const auto f = load_patch_file(o.file);
  const auto s = with_patch(f, [&](const auto& p) { return scan_periods(p, o.max_len, o.min_overlap); });
  std::cout << "conclusive " << s.conclusive << "\ninconclusive " << s.inconclusive.size() << "\nsurvivors "
            << s.survivors.size() << "\n";
  for (const auto& k : s.survivors) std::cout << "survivor " << k << "\n";
  if (o.list)
    for (const auto& k : s.inconclusive) std::cout << "inconclusive " << k << "\n";
  return 0;
}

int cmd_fold(const Opts& o) {
  const auto ts = load_tileset(o.tileset);
  const FreeGroup probe(19);
  const Word raw = probe.alphabet().parse(o.word);
  const int rank = o.rank ? o.rank : infer_rank(raw, 2);
  const Word W = pad_to(FreeGroup(rank).alphabet().parse(o.word), o.radius);
  Z2Patch x;
  if (!o.patch.empty()) {
    x = parse_z2_patch_string(read_text(o.patch));
  } else {
    std::mt19937 rng(static_cast<std::mt19937::result_type>(o.seed));
    x = random_valid_patch(ts, -o.radius, o.radius, -o.radius, o.radius, rng);
  }
  const auto p = fold(ts, x, W, o.radius, rank);
  emit(format_patch_file(folded_file(p, {{"tileset", o.tileset}, {"word", o.word}})), o.out);
  std::cerr << "cells " << p.size() << "\n";
  return 0;
}

int cmd_unfold(const Opts& o) {
  const auto f = load_patch_file(o.file);
  const auto ts = tileset_for(f, o.tileset, o.file);
  emit(format_z2_patch(unfold(ts, read_folded(f))), o.out);
  return 0;
}

int cmd_rotate(const Opts& o) {
  const auto ts = load_tileset(o.file);
  if (!o.patch.empty()) {
    emit(format_z2_patch(rotate_patch(parse_z2_patch_string(read_text(o.patch)))), o.out);
    return 0;
  }
  emit(format_tileset(rotate_tileset(ts)), o.out);
  return 0;
}

int cmd_higher_block(const Opts& o) {
  const auto bt = higher_block(load_tileset(o.file), o.bm, o.bn);
  emit(format_tileset(bt.tileset), o.out);
  std::cerr << "blocks " << bt.blocks.size() << "\n";
  return 0;
}

int cmd_locked_build(const Opts& o) {
  const auto spec = load_quotient(o.quotient);
  return std::visit(
      [&](const auto& G) {
        const auto q = make_quotient(G, spec);
        emit(format_patch_file(locked_file(canonical_locked_patch(q, o.radius), {{"quotient", o.quotient}})), o.out);
        std::cerr << "index " << q.index() << "\n";
        return 0;
      },
      parse_group_spec(spec.group));
}

int cmd_locked_validate(const Opts& o) {
  const auto f = load_patch_file(o.file);
  if (f.kind != "locked") throw ParseError("expected a locked patch, got '" + f.kind + "'");
  return validate_any(f, o);
}

int cmd_render(const Opts& o) {
  if (o.format != "dot" && o.format != "svg") throw Error("unsupported format '" + o.format + "'");
  const bool svg = o.format == "svg";
  const std::string text = read_text(o.file);
  if (is_z2_patch_text(text)) {
    if (o.tileset.empty()) throw Error("a planar patch needs --tileset");
    const auto ts = load_tileset(o.tileset);
    const auto p = parse_z2_patch_string(text);
    emit(svg ? render_z2_svg(ts, p) : render_z2_dot(ts, p), o.out);
    return 0;
  }
  const auto f = parse_patch_file_string(text);
  Scene s;
  if (f.kind == "flow")
    s = with_patch(f, [](const auto& p) {
      if constexpr (std::is_same_v<std::decay_t<decltype(p.labels[0])>, Letter> ||
                    std::is_same_v<std::decay_t<decltype(p.labels[0])>, BSLetter>)
        return flow_scene(p);
      else
        return Scene{};
    });
  else if (f.kind == "bs-config")
    s = bs_config_scene(read_bs_config(f));
  else if (f.kind == "folded")
    s = folded_scene(read_folded(f));
  else if (f.kind == "locked")
    s = std::visit(
        [&](const auto& G) {
          using Gt = std::decay_t<decltype(G)>;
          return locked_scene<Gt>(read_locked(G, f), [&](const typename Gt::Element& e) { return layout_of(G, e); });
        },
        parse_group_spec(f.group));
  else
    throw ParseError("unknown patch kind '" + f.kind + "'");
  emit(svg ? scene_to_svg(s) : scene_to_dot(s), o.out);
  return 0;
}

int cmd_verify(const Opts& o) {
  VerifyOptions v;
  v.seed = o.seed;
  v.data_dir = o.data_dir.empty() ? data_dir_default() : o.data_dir;
  v.only = o.only;
  const auto results = run_acceptance(v);
  bool ok = true;
  for (const auto& r : results) {
    std::cout << format_result_line(r) << "\n";
    ok = ok && r.pass;
  }
  if (!o.report.empty()) write_file_atomic(o.report, acceptance_report_json(results, v));
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tilings and subshifts on generalized Baumslag-Solitar groups", "gbs-tiler"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");
  Opts o;
  std::function<int(const Opts&)> run;
  auto sub = [&](const char* name, const char* desc, int (*fn)(const Opts&)) {
    auto* c = app.add_subcommand(name, desc);
    c->callback([&run, fn] { run = fn; });
    return c;
  };
  auto group_opt = [&](CLI::App* c) {
    c->add_option("-g,--group", o.group, "F<n>, F<n>xZ, Z2 or BS(m,n)")->capture_default_str();
  };
  auto out_opt = [&](CLI::App* c) { c->add_option("-o,--out", o.out, "output file (default stdout)"); };

  auto* c = sub("normalize", "print normal-form keys of words", cmd_normalize);
  group_opt(c);
  c->add_option("words", o.words, "words over the generators")->required();

  c = sub("ball", "enumerate a Cayley ball", cmd_ball);
  group_opt(c);
  c->add_option("-r,--radius", o.radius)->required()->check(CLI::NonNegativeNumber);
  c->add_flag("--list", o.list, "print every element");

  c = sub("presentation", "fundamental group of a graph of Z's", cmd_presentation);
  c->add_option("graph", o.file)->required()->check(CLI::ExistingFile);
  c->add_option("--tree", o.tree, "comma-separated spanning tree edge ids");
  out_opt(c);

  c = sub("witness", "subgroup witnessing weak aperiodicity", cmd_witness);
  c->add_option("graph", o.file)->required()->check(CLI::ExistingFile);
  c->add_option("--tree", o.tree, "comma-separated spanning tree edge ids");
  c->add_flag("--verify", o.verify, "prove the relation with the bounded search");

  c = sub("classify", "quasi-isometry class of the graph's group", cmd_classify);
  c->add_option("graph", o.file)->required()->check(CLI::ExistingFile);

  c = sub("flow-build", "flow patch on a ball from a flow word", cmd_flow_build);
  group_opt(c);
  c->add_option("-w,--word", o.word)->required();
  c->add_option("-r,--radius", o.radius)->required()->check(CLI::NonNegativeNumber);
  out_opt(c);

  c = sub("flow-validate", "check a flow patch against the flow rules", cmd_flow_validate);
  c->add_option("patch", o.file)->required()->check(CLI::ExistingFile);

  c = sub("approach", "translate one flow configuration toward another", cmd_approach);
  c->add_option("--start", o.start, "word of the configuration being moved")->required();
  c->add_option("--target", o.target, "word approached")->required();
  c->add_option("--steps", o.steps)->capture_default_str()->check(CLI::NonNegativeNumber);
  c->add_option("--rank", o.rank, "free rank (default: from the words, at least 2)");
  c->add_option("--tail", o.tail, "extra letters compared per step")->capture_default_str();

  c = sub("lambda", "beta, alpha and lambda of a word over {a, t}", cmd_lambda);
  c->add_option("word", o.word)->required();
  c->add_option("-m", o.m)->capture_default_str()->check(CLI::PositiveNumber);
  c->add_option("-n", o.n)->capture_default_str()->check(CLI::PositiveNumber);
  c->add_option("--flow", o.flow, "flow word; adds beta_y");

  c = sub("tile", "tile colors for (f, x, g) and the computing identity", cmd_tile);
  c->add_option("--f", o.f, "T or T^-1")->capture_default_str();
  c->add_option("--x", o.x, "point of the circle, NUM/DEN")->capture_default_str();
  auto* el = c->add_option("--element", o.element, "word over {a, t} in BS(2,3)");
  c->add_option("--lambda", o.lam, "height value instead of an element")->excludes(el);

  c = sub("build-bs", "BS configuration patch from a flow word and a point", cmd_build_bs);
  c->add_option("-g,--group", o.bs_group, "BS(m,n)")->capture_default_str();
  c->add_option("-w,--word", o.word)->required();
  c->add_option("--x", o.x, "NUM/DEN")->required();
  c->add_option("-r,--radius", o.radius)->required()->check(CLI::NonNegativeNumber);
  c->add_flag("--tiles", o.tiles, "dump the distinct tiles to stderr");
  out_opt(c);

  auto validator_opts = [&](CLI::App* c) {
    c->add_option("patch", o.file)->required()->check(CLI::ExistingFile);
    c->add_option("--tileset", o.tileset, "tileset for folded patches (default: header)");
    c->add_option("--quotient", o.quotient, "quotient for locked patches (default: header)");
    c->add_option("--stabilizer", o.stabilizer, "locked patches: report whether this element fixes the patch");
  };
  validator_opts(sub("validate", "validate any patch file", cmd_validate));
  validator_opts(sub("validate-folded", "validate a folded patch", cmd_validate));

  c = sub("scan-periods", "look for translations preserving a patch", cmd_scan);
  c->add_option("patch", o.file)->required()->check(CLI::ExistingFile);
  c->add_option("--max-len", o.max_len)->capture_default_str()->check(CLI::PositiveNumber);
  c->add_option("--min-overlap", o.min_overlap)->capture_default_str()->check(CLI::PositiveNumber);
  c->add_flag("--list", o.list, "also list inconclusive candidates");

  c = sub("fold", "fold a planar tiling onto F_n x Z", cmd_fold);
  c->add_option("--tileset", o.tileset)->required()->check(CLI::ExistingFile);
  c->add_option("-w,--word", o.word)->required();
  c->add_option("-r,--radius", o.radius)->required()->check(CLI::NonNegativeNumber);
  c->add_option("--patch", o.patch, "planar patch (default: random valid patch)")->check(CLI::ExistingFile);
  c->add_option("--rank", o.rank, "free rank (default: from the word, at least 2)");
  c->add_option("--seed", o.seed)->capture_default_str();
  out_opt(c);

  c = sub("unfold", "recover the planar patch from a folded patch", cmd_unfold);
  c->add_option("patch", o.file)->required()->check(CLI::ExistingFile);
  c->add_option("--tileset", o.tileset);
  out_opt(c);

  c = sub("rotate-tileset", "quarter turn of a tileset (or of a planar patch)", cmd_rotate);
  c->add_option("tileset", o.file)->required()->check(CLI::ExistingFile);
  c->add_option("--patch", o.patch, "rotate this planar patch instead")->check(CLI::ExistingFile);
  out_opt(c);

  c = sub("higher-block", "tileset of valid m x n blocks", cmd_higher_block);
  c->add_option("tileset", o.file)->required()->check(CLI::ExistingFile);
  c->add_option("-m", o.bm)->capture_default_str()->check(CLI::PositiveNumber);
  c->add_option("-n", o.bn)->capture_default_str()->check(CLI::PositiveNumber);
  out_opt(c);

  c = sub("locked-build", "canonical locked patch for a finite quotient", cmd_locked_build);
  c->add_option("--quotient", o.quotient)->required()->check(CLI::ExistingFile);
  c->add_option("-r,--radius", o.radius)->required()->check(CLI::NonNegativeNumber);
  out_opt(c);

  c = sub("locked-validate", "check a locked patch", cmd_locked_validate);
  validator_opts(c);

  c = sub("render", "draw a patch as DOT or SVG", cmd_render);
  c->add_option("patch", o.file)->required()->check(CLI::ExistingFile);
  c->add_option("-f,--format", o.format, "dot or svg")->capture_default_str();
  c->add_option("--tileset", o.tileset, "needed for planar patches");
  out_opt(c);

  c = sub("verify-paper", "run the acceptance suite", cmd_verify);
  c->add_option("--seed", o.seed)->capture_default_str();
  c->add_option("--report", o.report, "JSON report path (empty to skip)")->capture_default_str();
  c->add_option("--only", o.only, "criterion ids")->check(CLI::Range(1, 12));
  c->add_option("--data-dir", o.data_dir, "directory with graphs/, tilesets/, quotients/");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    return run(o);
  } catch (const CapExceeded& e) {
    std::cerr << "gbs-tiler: " << e.what() << " (raise GBS_BALL_CAP)\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "gbs-tiler: " << e.what() << "\n";
    return 2;
  }
}
