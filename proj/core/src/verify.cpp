#include "gbs/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iterator>
#include <cstdio>
#include <random>
#include <set>
#include <unordered_map>

#include "gbs/flow.hpp"
#include "gbs/folding.hpp"
#include "gbs/gbs_graph.hpp"
#include "gbs/height.hpp"
#include "gbs/locked.hpp"
#include "gbs/wang.hpp"
#include "gbs/word_problem.hpp"
#include "json.hpp"

namespace gbs {

namespace {

using Rng = std::mt19937_64;

const BaumslagSolitar kBS(2, 3);

std::size_t pick(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

Rational random_point(Rng& rng) {
  for (;;) {
    const long den = 1 + static_cast<long>(pick(rng, 97));
    const long num = static_cast<long>(pick(rng, 5 * static_cast<std::size_t>(den)));
    const Rational x(num, 2 * den);
    if (Rational(1, 10) <= x && x < Rational(5, 2)) return x;
  }
}

BSWord random_bs_word(Rng& rng, std::size_t len) {
  const auto letters = kBS.normal_letters();
  BSWord w;
  while (w.size() < len) {
    const auto l = letters[pick(rng, letters.size())];
    if (w.empty() || kBS.may_follow(w.back(), l)) w.push_back(l);
  }
  return w;
}

Word random_reduced_word(Rng& rng, int rank, std::size_t len) {
  const auto letters = FreeGroup(rank).generators();
  Word w;
  while (w.size() < len) {
    const Letter l = letters[pick(rng, letters.size())];
    if (w.empty() || l != w.back().inverse()) w.push_back(l);
  }
  return w;
}

Word random_bs_group_word(Rng& rng, std::size_t len) {
  const auto letters = kBS.generators();
  Word w;
  for (std::size_t i = 0; i < len; ++i) w.push_back(letters[pick(rng, letters.size())]);
  return w;
}

// Relator conjugate (of r or r^-1) or a cancelling pair, inserted anywhere.
Word rewrite(Rng& rng, Word word) {
  const Word rel = Presentation::baumslag_solitar(2, 3).relators().front();
  Word ins;
  if (pick(rng, 3) == 0) {
    const Letter x = kBS.generators()[pick(rng, 4)];
    ins = {x, x.inverse()};
  } else {
    Word r = pick(rng, 2) ? rel : inverse(rel);
    std::rotate(r.begin(), r.begin() + static_cast<long>(pick(rng, r.size())), r.end());
    ins = r;
  }
  const auto pos = static_cast<long>(pick(rng, word.size() + 1));
  word.insert(word.begin() + pos, ins.begin(), ins.end());
  return word;
}

std::string data_path(const VerifyOptions& opt, const std::string& rel) { return opt.data_dir + "/" + rel; }

struct Check {
  explicit Check(CriterionResult& result) : r(result) {}
  CriterionResult& r;
  long long failures = 0;
  std::string first;
  void fail(const std::string& what) {
    if (failures++ == 0) first = what;
  }
};

void c1_tile_identity(CriterionResult& r, Rng& rng) {
  Check c{r};
  const auto ball = enumerate_ball(kBS, 6);
  const int samples = 1000;
  for (int s = 0; s < samples; ++s) {
    const auto& g = (*ball.support)[pick(rng, ball.size())];
    const Rational x = random_point(rng);
    const FTag f = pick(rng, 2) ? FTag::T : FTag::TInv;
    const auto tile = tile_colors(f, x, kBS, g);
    // f is linear on the branch of x, so f((t1+t2)/2) = slope * (t1+t2)/2 when evaluated branchwise.
    const Rational lhs = map_of(f).slope_at(x) * Rational(tile.t1 + tile.t2, 2) + tile.l;
    const Rational rhs = Rational(tile.b1 + tile.b2 + tile.b3, 3) + tile.r;
    if (lhs != rhs) c.fail("x=" + x.to_string() + " g=" + kBS.key(g));
  }
  r.counts["samples"] = samples;
  r.counts["mismatches"] = c.failures;
  r.pass = c.failures == 0;
  r.detail = c.failures ? "first mismatch " + c.first : "exact equality on all samples";
}

void c2_bs_config(CriterionResult& r, Rng& rng) {
  long long rl = 0, b1 = 0, b2 = 0, violations = 0, patches = 0;
  std::string first;
  for (int w = 0; w < 20; ++w) {
    const BSWord W = random_bs_word(rng, 6);
    for (const auto& x : {Rational(1, 2), Rational(7, 5), Rational(11, 10)}) {
      const auto v = validate_bs_patch(build_bs_config(kBS, W, x, 4));
      ++patches;
      if (!v.ok() && first.empty()) first = v.violations.front().rule + " at " + v.violations.front().cell;
      violations += static_cast<long long>(v.violations.size());
      rl += static_cast<long long>(v.right_left);
      b1 += static_cast<long long>(v.bottom_t1);
      b2 += static_cast<long long>(v.bottom_t2);
    }
  }
  r.counts = {{"patches", patches}, {"violations", violations}, {"right_left", rl}, {"bottom_t1", b1}, {"bottom_t2", b2}};
  r.pass = violations == 0 && rl >= 1000 && b1 >= 1000 && b2 >= 1000;
  r.detail = violations ? "violation: " + first
                        : "0 violations; rule instances " + std::to_string(rl) + "/" + std::to_string(b1) + "/" +
                              std::to_string(b2);
}

void c3_lambda(CriterionResult& r) {
  Check c{r};
  const auto ball = enumerate_ball(kBS, 5);
  long long checks = 0;
  for (const auto& g : *ball.support) {
    const Rational lg = lambda(kBS, g);
    for (int i = 0; i <= 2; ++i) {
      BSNormalForm h = kBS.multiply(g, Letter{BaumslagSolitar::kT, 1});
      for (int k = 0; k < i; ++k) h = kBS.multiply(h, Letter{BaumslagSolitar::kA, 1});
      ++checks;
      if (beta(h) != beta(g) + 1) c.fail("beta at " + kBS.key(g));
      if (lambda(kBS, h) != Rational(3, 2) * lg + Rational(i, 2)) c.fail("lambda at " + kBS.key(g));
    }
  }
  r.counts = {{"elements", static_cast<long long>(ball.size())}, {"checks", checks}, {"failures", c.failures}};
  r.pass = c.failures == 0;
  r.detail = c.failures ? "first failure " + c.first : "both identities exact on Ball(5)";
}

void c4_beta_y(CriterionResult& r, Rng& rng) {
  Check c{r};
  const HeightContext ctx(BSFlow(kBS, random_bs_word(rng, 10)));
  for (int trial = 0; trial < 1000; ++trial) {
    const Word u = random_bs_group_word(rng, 1 + pick(rng, 8));
    Word v = u;
    const int k = 1 + static_cast<int>(pick(rng, 3));
    for (int i = 0; i < k; ++i) v = rewrite(rng, v);
    const std::string at = kBS.alphabet().format(u) + " ~ " + kBS.alphabet().format(v);
    if (kBS.evaluate(u) != kBS.evaluate(v)) c.fail("rewrite changed the element: " + at);
    if (ctx.beta_y(u) != ctx.beta_y(v)) c.fail("beta_y differs: " + at);
    if (alpha(u) != alpha(v)) c.fail("alpha differs: " + at);
    if (lambda(u) != lambda(v)) c.fail("lambda differs: " + at);
  }
  r.counts = {{"words", 1000}, {"failures", c.failures}};
  r.pass = c.failures == 0;
  r.detail = c.failures ? c.first : "beta_y, alpha, lambda unchanged by every rewrite";
}

void c5_circle(CriterionResult& r, Rng& rng) {
  Check c{r};
  for (int s = 0; s < 50; ++s) {
    const Rational x = random_point(rng);
    Rational y = x;
    for (int k = 1; k <= 40; ++k) {
      y = pl_eval(circle_map_T(), y);
      if (y == x) c.fail("T^" + std::to_string(k) + " fixes " + x.to_string());
    }
  }
  for (int s = 0; s < 1000; ++s) {
    const Rational x = random_point(rng);
    if (pl_eval(circle_map_T(), pl_eval(circle_map_T_inverse(), x)) != x) c.fail("T T^-1 moves " + x.to_string());
  }
  r.counts = {{"orbit_points", 50}, {"inverse_samples", 1000}, {"failures", c.failures}};
  r.pass = c.failures == 0;
  r.detail = c.failures ? c.first : "no period up to 40; T T^-1 = id";
}

void c6_normal_form(CriterionResult& r) {
  const int bound = 10;
  const MoveComponents comp(Presentation::baumslag_solitar(2, 3), bound);
  const auto letters = kBS.generators();
  std::vector<Word> words{{}};
  for (std::size_t start = 0; start < words.size(); ++start)
    if (words[start].size() < 6)
      for (const auto& l : letters) {
        Word w = words[start];
        w.push_back(l);
        words.push_back(std::move(w));
      }
  std::unordered_map<long, std::string> nf_of_component;
  std::unordered_map<std::string, AffineMap> shadow_of_nf;
  std::map<long, long long> comp_size;
  std::map<std::pair<std::string, std::string>, long long> shadow_size;
  long long disagreements = 0;
  std::string first;
  for (const auto& w : words) {
    const std::string nf = kBS.key(kBS.evaluate(w));
    const AffineMap sh = affine_shadow(w, 2, 3);
    if (const long c = comp.component(w); c >= 0) {
      ++comp_size[c];
      const auto [it, fresh] = nf_of_component.try_emplace(c, nf);
      if (!fresh && it->second != nf) {
        if (!disagreements) first = "oracle proves " + kBS.alphabet().format(w) + " equal to a word with normal form " + it->second;
        ++disagreements;
      }
    }
    const auto [it, fresh] = shadow_of_nf.try_emplace(nf, sh);
    if (!fresh && !(it->second == sh)) {
      if (!disagreements) first = "oracle separates words sharing normal form " + nf;
      ++disagreements;
    }
    ++shadow_size[{sh.slope.to_string(), sh.offset.to_string()}];
  }
  const long long n = static_cast<long long>(words.size());
  const long long total = n * (n - 1) / 2;
  long long equal_pairs = 0, same_shadow = 0;
  for (const auto& [c, k] : comp_size) equal_pairs += k * (k - 1) / 2;
  for (const auto& [s, k] : shadow_size) same_shadow += k * (k - 1) / 2;
  const long long unequal_pairs = total - same_shadow;
  r.counts = {{"words", n},
              {"pairs", total},
              {"decided_equal", equal_pairs},
              {"decided_unequal", unequal_pairs},
              {"undecided", total - equal_pairs - unequal_pairs},
              {"disagreements", disagreements}};
  r.pass = disagreements == 0;
  r.detail = disagreements ? first
                           : std::to_string(equal_pairs + unequal_pairs) + " decided pairs, 0 disagreements (move bound " +
                                 std::to_string(bound) + ")";
}

void c7_flow_periods(CriterionResult& r) {
  const FreeGroup F2(2);
  long long gs = 0, invariant = 0, exceptions = 0;
  std::string first;
  const auto ball = enumerate_ball(F2, 2);
  for (const auto& g : *ball.support) {
    if (g.empty()) continue;
    const auto rep = period_forces_word(g, 4, F2);
    ++gs;
    invariant += static_cast<long long>(rep.invariant_patches);
    exceptions += static_cast<long long>(rep.exceptions.size());
    if (!rep.holds() && first.empty()) first = F2.key(g) + ": " + rep.exceptions.front();
  }
  r.counts = {{"periods", gs}, {"invariant_patches", invariant}, {"exceptions", exceptions}};
  r.pass = exceptions == 0 && gs == 16;
  r.detail = exceptions ? "exception for " + first : "every invariant patch reads a power of g or g^-1";
}

void c8_fold(CriterionResult& r, Rng& rng, const VerifyOptions& opt) {
  Check c{r};
  const std::vector<Z2Tileset> sets{load_tileset(data_path(opt, "tilesets/jeandel_rao.tiles")),
                                    load_tileset(data_path(opt, "tilesets/checkerboard.tiles")),
                                    load_tileset(data_path(opt, "tilesets/one_tile.tiles"))};
  std::mt19937 srng(static_cast<std::mt19937::result_type>(rng()));
  long long cells = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto& ts = sets[static_cast<std::size_t>(trial) % sets.size()];
    const auto x = random_valid_patch(ts, -5, 5, -5, 5, srng);
    const Word W = random_reduced_word(rng, 2, 5 + pick(rng, 3));
    const auto p = fold(ts, x, W, 5, 2);
    const auto v = validate_folded(ts, p);
    if (!v.empty()) c.fail(ts.name + ": " + v.front().rule + " at " + v.front().cell);
    const auto back = unfold(ts, p);
    for (int j = -5; j <= 5; ++j)
      for (int i = -5; i <= 5; ++i) {
        const bool in_window = std::abs(i) + std::abs(j) <= 5;
        const int t = back.at(i, j);
        if (in_window && t != x.at(i, j)) c.fail(ts.name + ": cell " + std::to_string(i) + "," + std::to_string(j));
        if (in_window) ++cells;
      }
  }
  r.counts = {{"triples", 100}, {"recovered_cells", cells}, {"failures", c.failures}};
  r.pass = c.failures == 0;
  r.detail = c.failures ? c.first : "every diamond |i|+|j|<=5 recovered; P/Q rules clean";
}

void c9_scanners(CriterionResult& r, Rng& rng, const VerifyOptions& opt) {
  Check c{r};
  long long conclusive = 0, inconclusive = 0;
  const std::size_t min_overlap = 10;
  const auto jr = load_tileset(data_path(opt, "tilesets/jeandel_rao.tiles"));
  std::mt19937 srng(static_cast<std::mt19937::result_type>(rng()));
  for (int trial = 0; trial < 3; ++trial) {
    const auto p = fold(jr, random_valid_patch(jr, -5, 5, -5, 5, srng), random_reduced_word(rng, 2, 6), 5, 2);
    const auto s = scan_periods(p, 2, min_overlap);
    conclusive += static_cast<long long>(s.conclusive);
    inconclusive += static_cast<long long>(s.inconclusive.size());
    if (!s.survivors.empty()) c.fail("folded patch keeps period " + s.survivors.front());
  }
  for (int trial = 0; trial < 3; ++trial) {
    const auto p = build_bs_config(kBS, random_bs_word(rng, 6), Rational(1, 2), 5);
    const auto s = scan_periods(p, 2, min_overlap);
    conclusive += static_cast<long long>(s.conclusive);
    inconclusive += static_cast<long long>(s.inconclusive.size());
    if (!s.survivors.empty()) c.fail("BS patch keeps period " + s.survivors.front());
  }
  // Positive controls must report survivors.
  long long controls = 0;
  const auto one = load_tileset(data_path(opt, "tilesets/one_tile.tiles"));
  const auto constant = fold(one, Z2Patch(-5, 5, -5, 5, 0), FreeGroup(2).alphabet().parse("aaaaa"), 5, 2);
  if (scan_periods(constant, 2, min_overlap).survivors.empty()) c.fail("constant tileset control found no period");
  else ++controls;
  const auto trivial = make_quotient(FreeGroup(2), load_quotient(data_path(opt, "quotients/trivial.quot")));
  if (scan_periods(canonical_locked_patch(trivial, 5), 2, min_overlap).survivors.empty())
    c.fail("trivial quotient control found no period");
  else ++controls;
  const auto bball = enumerate_ball(kBS, 5);
  const auto tile = tile_colors(FTag::T, Rational(1, 2), Rational(0));
  if (scan_periods(make_patch(bball, std::vector<WangTile7>(bball.size(), tile)), 2, min_overlap).survivors.empty())
    c.fail("constant BS tile control found no period");
  else ++controls;
  r.counts = {{"conclusive", conclusive}, {"inconclusive", inconclusive}, {"controls_detected", controls}, {"failures", c.failures}};
  r.pass = c.failures == 0 && conclusive > 0;
  r.detail = c.failures ? c.first : "no surviving period; all 3 controls detected";
}

void c10_locked(CriterionResult& r, const VerifyOptions& opt) {
  Check c{r};
  long long elements = 0, patches = 0;
  for (const std::string name : {"f2z_mod2", "z2_mod2x2", "bs23_mod2", "f2_s3"}) {
    const auto spec = load_quotient(data_path(opt, "quotients/" + name + ".quot"));
    std::visit(
        [&](const auto& group) {
          const auto q = make_quotient(group, spec);
          const auto rules = locked_rules(q, quotient_n_generators(q, spec));
          for (int radius = 0; radius <= 6; ++radius) {
            ++patches;
            if (!validate_locked(q, rules, canonical_locked_patch(q, radius)).empty())
              c.fail(name + ": canonical patch invalid at radius " + std::to_string(radius));
          }
          const auto p = canonical_locked_patch(q, 3);
          const auto ball = enumerate_ball(group, 3);
          for (const auto& g : *ball.support) {
            ++elements;
            // Kernel membership straight from the table, applied letter by letter.
            int img = q.table().identity;
            for (const auto& l : group.word_of(g)) img = q.table()(img, q.phi(l));
            const bool in_n = img == q.table().identity;
            if ((stabilizer_check(p, g) == Stabilizer::fixes) != in_n) c.fail(name + ": " + group.key(g));
          }
        },
        parse_group_spec(spec.group));
  }
  r.counts = {{"quotients", 4}, {"elements", elements}, {"patches", patches}, {"failures", c.failures}};
  r.pass = c.failures == 0;
  r.detail = c.failures ? c.first : "stabilizer agrees with the kernel on Ball(3); canonical patches valid to radius 6";
}

void c11_approach(CriterionResult& r, Rng& rng) {
  Check c{r};
  const FreeGroup F(2);
  const auto& al = F.alphabet();
  const auto worked = approach_sequence(periodic_word(al.parse("ba"), 8), periodic_word(al.parse("BA"), 8), 3, 2);
  for (const auto& s : worked) {
    if (al.symbol(s.error) != 'A') c.fail("worked instance error letter " + std::string(1, al.symbol(s.error)));
    if (!s.matches) c.fail("worked instance step " + std::to_string(s.n));
  }
  long long steps = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const Word start = random_reduced_word(rng, 2, 10);
    const Word target = random_reduced_word(rng, 2, 25);
    const auto seq = approach_sequence(start, target, 21, 2);
    for (std::size_t n = 0; n < seq.size(); ++n) {
      ++steps;
      if (!seq[n].matches) c.fail("translated word mismatch at n=" + std::to_string(n));
      if (n && seq[n].g.size() != seq[n - 1].g.size() + 1) c.fail("|g| did not grow by one at n=" + std::to_string(n));
    }
  }
  r.counts = {{"pairs", 50}, {"steps", steps}, {"failures", c.failures}};
  r.pass = c.failures == 0;
  r.detail = c.failures ? c.first : "|g_n| grows by one; e_n = A in the worked instance";
}

void c12_presentations(CriterionResult& r, const VerifyOptions& opt) {
  Check c{r};
  const std::vector<std::pair<std::string, std::string>> expected{
      {"bs23.gbs", "< a, t | t^-1 a^2 t = a^3 >"},
      {"torus_knot_2_3.gbs", "< a, b | a^2 = b^3 >"},
      {"z2.gbs", "< a, t | t^-1 a t = a >"}};
  long long witnesses = 0;
  for (const auto& [file, text] : expected) {
    const auto g = GBSGraph::parse_string([&] {
      std::ifstream in(data_path(opt, "graphs/" + file));
      if (!in) throw Error("cannot open " + data_path(opt, "graphs/" + file));
      return std::string(std::istreambuf_iterator<char>(in), {});
    }());
    const auto got = fundamental_presentation(g, spanning_tree(g)).to_string();
    if (got != text) c.fail(file + ": got '" + got + "'");
    const auto w = weak_aperiodicity_witness(g);
    ++witnesses;
    if (verify_witness(w) != WPAnswer::equal) c.fail(file + ": witness " + w.describe() + " not verified");
  }
  r.counts = {{"graphs", 3}, {"witnesses_verified", witnesses - c.failures}, {"failures", c.failures}};
  r.pass = c.failures == 0;
  r.detail = c.failures ? c.first : "byte-exact presentations; witness relations proved by the oracle";
}

const std::map<int, std::pair<std::string, double>>& catalogue() {
  static const std::map<int, std::pair<std::string, double>> names{
      {1, {"tile-computing identity", 10}},
      {2, {"BS(2,3) configuration witness", 30}},
      {3, {"lambda identities", 0}},
      {4, {"beta_y well-defined", 0}},
      {5, {"circle map aperiodic", 0}},
      {6, {"normal form soundness", 60}},
      {7, {"flow periods force words", 0}},
      {8, {"fold/unfold round trip", 0}},
      {9, {"period scanners", 0}},
      {10, {"locked shift stabilizers", 0}},
      {11, {"approach sequence", 0}},
      {12, {"presentations and witnesses", 0}}};
  return names;
}

}  // namespace

CriterionResult run_criterion(int id, const VerifyOptions& opt) {
  const auto& cat = catalogue();
  const auto it = cat.find(id);
  if (it == cat.end()) throw Error("no acceptance criterion " + std::to_string(id));
  CriterionResult r;
  r.id = id;
  r.name = it->second.first;
  r.time_limit = it->second.second;
  Rng rng(opt.seed * 1000003ULL + static_cast<std::uint64_t>(id));
  const auto t0 = std::chrono::steady_clock::now();
  try {
    switch (id) {
      case 1: c1_tile_identity(r, rng); break;
      case 2: c2_bs_config(r, rng); break;
      case 3: c3_lambda(r); break;
      case 4: c4_beta_y(r, rng); break;
      case 5: c5_circle(r, rng); break;
      case 6: c6_normal_form(r); break;
      case 7: c7_flow_periods(r); break;
      case 8: c8_fold(r, rng, opt); break;
      case 9: c9_scanners(r, rng, opt); break;
      case 10: c10_locked(r, opt); break;
      case 11: c11_approach(r, rng); break;
      case 12: c12_presentations(r, opt); break;
    }
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (r.time_limit > 0 && r.seconds >= r.time_limit) {
    r.pass = false;
    r.detail += "; over the time limit";
  }
  return r;
}

std::vector<CriterionResult> run_acceptance(const VerifyOptions& opt) {
  std::vector<CriterionResult> out;
  for (const auto& [id, _] : catalogue())
    if (opt.only.empty() || std::find(opt.only.begin(), opt.only.end(), id) != opt.only.end())
      out.push_back(run_criterion(id, opt));
  return out;
}

std::string acceptance_report_json(const std::vector<CriterionResult>& results, const VerifyOptions& opt) {
  nlohmann::ordered_json j;
  j["seed"] = opt.seed;
  j["all_passed"] = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.pass; });
  j["criteria"] = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json c;
    c["id"] = r.id;
    c["name"] = r.name;
    c["pass"] = r.pass;
    c["detail"] = r.detail;
    c["seconds"] = std::round(r.seconds * 1000) / 1000;
    if (r.time_limit > 0) c["time_limit_seconds"] = r.time_limit;
    c["counts"] = r.counts;
    j["criteria"].push_back(c);
  }
  return j.dump(2) + "\n";
}

std::string format_result_line(const CriterionResult& r) {
  char secs[32];
  std::snprintf(secs, sizeof secs, "%.2f s", r.seconds);
  return std::string(r.pass ? "PASS" : "FAIL") + " " + (r.id < 10 ? " " : "") + std::to_string(r.id) + " " + r.name +
         " (" + secs + ") " + r.detail;
}

}  // namespace gbs
