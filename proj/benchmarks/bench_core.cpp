#include <benchmark/benchmark.h>

#include <random>

#include "gbs/ball.hpp"
#include "gbs/flow.hpp"
#include "gbs/folding.hpp"
#include "gbs/locked.hpp"
#include "gbs/wang.hpp"
#include "gbs/word_problem.hpp"

using namespace gbs;

static void BM_BallBS23(benchmark::State& st) {
  const BaumslagSolitar B(2, 3);
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_ball(B, static_cast<int>(st.range(0))).size());
}
BENCHMARK(BM_BallBS23)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

static void BM_BallF2xZ(benchmark::State& st) {
  const FreeTimesZ G(2);
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_ball(G, static_cast<int>(st.range(0))).size());
}
BENCHMARK(BM_BallF2xZ)->DenseRange(4, 6, 2)->Unit(benchmark::kMillisecond);

static void BM_BuildAndValidateBS(benchmark::State& st) {
  const BaumslagSolitar B(2, 3);
  const auto W = parse_bs_word(B, "tatataTaTaTaTaT");
  const int R = static_cast<int>(st.range(0));
  for (auto _ : st) {
    const auto p = build_bs_config(B, W, Rational(1, 2), R);
    benchmark::DoNotOptimize(validate_bs_patch(p).ok());
  }
}
BENCHMARK(BM_BuildAndValidateBS)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

static void BM_CircleOrbit(benchmark::State& st) {
  const Rational x(3, 7);
  for (auto _ : st) benchmark::DoNotOptimize(orbit(x, st.range(0)));
}
BENCHMARK(BM_CircleOrbit)->Arg(10)->Arg(40);

static void BM_FoldUnfold(benchmark::State& st) {
  const auto ts = load_tileset(GBS_DATA_DIR "/tilesets/jeandel_rao.tiles");
  std::mt19937 rng(1);
  const int R = static_cast<int>(st.range(0));
  const auto x = random_valid_patch(ts, -R, R, -R, R, rng);
  const FreeGroup F(2);
  const Word W = F.alphabet().parse("abABabABab");
  for (auto _ : st) {
    const auto p = fold(ts, x, W, R, 2);
    benchmark::DoNotOptimize(validate_folded(ts, p).size());
    benchmark::DoNotOptimize(unfold(ts, p).cells.size());
  }
}
BENCHMARK(BM_FoldUnfold)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_RandomJeandelRaoWindow(benchmark::State& st) {
  const auto ts = load_tileset(GBS_DATA_DIR "/tilesets/jeandel_rao.tiles");
  std::mt19937 rng(1);
  const int R = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(random_valid_patch(ts, -R, R, -R, R, rng).cells.size());
}
BENCHMARK(BM_RandomJeandelRaoWindow)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_FlowEnumeration(benchmark::State& st) {
  const auto ball = enumerate_ball(FreeGroup(2), static_cast<int>(st.range(0)));
  for (auto _ : st)
    benchmark::DoNotOptimize(enumerate_flow_patches(ball, {}, [](const std::vector<Letter>&) { return true; }));
}
BENCHMARK(BM_FlowEnumeration)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

static void BM_MoveComponents(benchmark::State& st) {
  const auto P = Presentation::baumslag_solitar(2, 3);
  for (auto _ : st) benchmark::DoNotOptimize(MoveComponents(P, static_cast<int>(st.range(0))).word_count());
}
BENCHMARK(BM_MoveComponents)->Arg(8)->Arg(10)->Unit(benchmark::kMillisecond);

static void BM_LockedValidate(benchmark::State& st) {
  const FreeGroup F(2);
  const auto spec = load_quotient(GBS_DATA_DIR "/quotients/f2_s3.quot");
  const auto q = make_quotient(F, spec);
  const auto rules = locked_rules(q, quotient_n_generators(q, spec));
  const auto p = canonical_locked_patch(q, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(validate_locked(q, rules, p).size());
}
BENCHMARK(BM_LockedValidate)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_ScanPeriods(benchmark::State& st) {
  const BaumslagSolitar B(2, 3);
  const auto p = build_bs_config(B, parse_bs_word(B, "tataTaT"), Rational(1, 2), 4);
  for (auto _ : st) benchmark::DoNotOptimize(scan_periods(p, static_cast<int>(st.range(0)), 10).conclusive);
}
BENCHMARK(BM_ScanPeriods)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
