#include <benchmark/benchmark.h>

#include "m3/engine.hpp"
#include "m3/patterns.hpp"
#include "m3/perception.hpp"
#include "m3/prompting.hpp"

using namespace m3;

namespace {

Board bench_board(uint64_t seed = 42) { return new_board(9, 9, 5, seed); }

void BM_FindMatches(benchmark::State& state) {
    Board b = bench_board();
    for (auto _ : state) benchmark::DoNotOptimize(find_matches(b));
}
BENCHMARK(BM_FindMatches);

void BM_EnumerateValidMoves(benchmark::State& state) {
    Board b = bench_board();
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_valid_moves(b));
}
BENCHMARK(BM_EnumerateValidMoves);

void BM_ApplyMove(benchmark::State& state) {
    EngineConfig cfg;
    cfg.seed = 42;
    GameState s = GameState::new_game(cfg);
    Move m = enumerate_valid_moves(s.board).front();
    for (auto _ : state) benchmark::DoNotOptimize(apply_move(s, m, cfg));
}
BENCHMARK(BM_ApplyMove);

void BM_SuggestMoves(benchmark::State& state) {
    Board b = bench_board();
    const auto& lib = default_library();
    for (auto _ : state) benchmark::DoNotOptimize(suggest_moves(b, lib));
}
BENCHMARK(BM_SuggestMoves);

void BM_RenderBoard(benchmark::State& state) {
    Board b = bench_board();
    SpriteSheet sheet = make_default_sprites(5, 16);
    GridSpec grid{8, 8, 16, 9, 9};
    for (auto _ : state) benchmark::DoNotOptimize(render_board(b, sheet, grid));
}
BENCHMARK(BM_RenderBoard);

void BM_RecognizeBoard(benchmark::State& state) {
    Board b = bench_board();
    SpriteSheet sheet = make_default_sprites(5, 16);
    GridSpec grid{8, 8, 16, 9, 9};
    Image img = render_board(b, sheet, grid);
    for (auto _ : state) benchmark::DoNotOptimize(recognize_board(img, sheet, grid, 0.9));
}
BENCHMARK(BM_RecognizeBoard);

void BM_BuildBundle(benchmark::State& state) {
    Board b = bench_board();
    RuleSet rules = RuleSet::defaults();
    const auto& lib = default_library();
    for (auto _ : state)
        benchmark::DoNotOptimize(build_bundle(b, lib, rules, PromptMode::Both));
}
BENCHMARK(BM_BuildBundle);

void BM_ParseActions(benchmark::State& state) {
    std::string text = render_action(Move{{3, 4}, {3, 5}}) + " and then " +
                       render_action(Move{{7, 2}, {6, 2}});
    for (auto _ : state) benchmark::DoNotOptimize(parse_actions(text, 9, 9));
}
BENCHMARK(BM_ParseActions);

}  // namespace

BENCHMARK_MAIN();
