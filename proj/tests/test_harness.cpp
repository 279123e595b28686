#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "m3/harness.hpp"
#include "m3/stats.hpp"
#include "support/fixtures.hpp"

using namespace m3;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

AppShell small_shell(uint64_t seed = 1, std::vector<FaultSpec> faults = {}) {
    EngineConfig cfg;
    cfg.seed = seed;
    Calibration cal = Calibration::from_grid(8, 8, 16);
    ScreenRect screen{0, 0, 160, 280};
    ScreenRect button{60, 200, 40, 20};
    return AppShell::boot(cfg, screen, button, cal, std::move(faults));
}

std::string write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
    return p.string();
}

}  // namespace

TEST_CASE("the shell starts in the menu and only the start button enters the game") {
    AppShell shell = small_shell();
    CHECK(shell.screen == Screen::Menu);

    // Tap outside, swipe, then tap inside.
    CHECK(tick_shell(shell, Gesture::tap(10, 10)).shell.screen == Screen::Menu);
    CHECK(tick_shell(shell, Gesture::swipe(70, 205, 90, 205)).shell.screen == Screen::Menu);
    ShellStep entered = tick_shell(shell, Gesture::tap(80, 210));
    CHECK(entered.shell.screen == Screen::Playing);
    CHECK(!entered.outcome.has_value());  // menu transitions produce no game outcome
}

TEST_CASE("playing-screen swipes reach the engine through the calibration") {
    AppShell shell = tick_shell(small_shell(), Gesture::tap(80, 210)).shell;
    auto moves = enumerate_valid_moves(shell.game.board);
    REQUIRE(!moves.empty());
    Gesture g = move_to_gesture(moves.front(), shell.calibration, shell.screen_rect);
    ShellStep step = tick_shell(shell, g);
    REQUIRE(step.outcome.has_value());
    CHECK(step.outcome->accepted);
    CHECK(step.shell.game.score > 0);

    // A swipe that spans no two adjacent cells is a rejected input.
    ShellStep junk = tick_shell(shell, Gesture::swipe(16, 16, 17, 17));
    REQUIRE(junk.outcome.has_value());
    CHECK(!junk.outcome->accepted);
    REQUIRE(junk.outcome->events.size() == 1);
    CHECK(junk.outcome->events[0].kind == EventKind::InvalidMove);

    // Taps on the playing screen do nothing.
    CHECK(!tick_shell(shell, Gesture::tap(16, 16)).outcome.has_value());
}

TEST_CASE("a triggered fault crashes the shell and the crash screen absorbs input") {
    std::vector<FaultSpec> faults{{FaultSpec::Trigger::ScoreAtLeast, 1, {}, "any score"}};
    AppShell shell = tick_shell(small_shell(1, faults), Gesture::tap(80, 210)).shell;
    Gesture g = move_to_gesture(enumerate_valid_moves(shell.game.board).front(),
                                shell.calibration, shell.screen_rect);
    ShellStep step = tick_shell(shell, g);
    REQUIRE(step.outcome.has_value());
    CHECK(step.outcome->crashed);
    CHECK(step.shell.screen == Screen::Crashed);

    ShellStep after = tick_shell(step.shell, g);
    CHECK(after.shell.screen == Screen::Crashed);
    CHECK(!after.outcome.has_value());
}

TEST_CASE("load_run_config parses a commented JSON document") {
    TempDir dir("m3_cfg_test");
    std::string path = write_file(dir.path / "run.json", R"({
  // engine and schedule
  "iterations": 40,
  "agent": "llm",
  "mode": "examples_only",
  "seeds": [3, 4],
  "engine": {"rows": 7, "cols": 8, "colors": 4, "level_threshold": 500},
  "faults": [
    {"trigger": "cascade_depth_at_least", "value": 3, "message": "deep"},
    {"trigger": "move_on_position", "row": 2, "col": 5}
  ],
  "cell_px": 20,
  "fixture": "replies.jsonl",
  "out_dir": "results"
})");
    RunConfig cfg = load_run_config(path);
    CHECK(cfg.iterations == 40);
    CHECK(cfg.agent == "llm");
    CHECK(cfg.mode == PromptMode::ExamplesOnly);
    CHECK(cfg.seeds == std::vector<uint64_t>{3, 4});
    CHECK(cfg.engine.rows == 7);
    CHECK(cfg.engine.cols == 8);
    CHECK(cfg.engine.colors == 4);
    CHECK(cfg.engine.level_threshold == 500);
    REQUIRE(cfg.faults.size() == 2);
    CHECK(cfg.faults[0].trigger == FaultSpec::Trigger::CascadeDepthAtLeast);
    CHECK(cfg.faults[0].threshold == 3);
    CHECK(cfg.faults[1].trigger == FaultSpec::Trigger::MoveOnPosition);
    CHECK(cfg.faults[1].position == Position{2, 5});
    CHECK(cfg.cell_px == 20);
    CHECK(cfg.fixture == "replies.jsonl");
    CHECK(cfg.out_dir == "results");

    CHECK_THROWS(load_run_config((dir.path / "missing.json").string()));
    std::string bad = write_file(dir.path / "bad.json",
                                 R"({"faults":[{"trigger":"explode_randomly"}]})");
    CHECK_THROWS_AS(load_run_config(bad), std::invalid_argument);
}

TEST_CASE("episode logs round-trip through JSON lines") {
    EpisodeLog log;
    log.agent = "heuristic";
    log.mode = "both";
    log.seed = 9;
    log.iterations_configured = 2;
    IterationRecord r0;
    r0.iteration = 0;
    r0.score = 30;
    r0.accepted = true;
    r0.events = {{EventKind::Match3, 3, 1}, {EventKind::Cascade, 2, 0}};
    IterationRecord r1;
    r1.iteration = 1;
    r1.score = 30;
    r1.crash = true;
    r1.events = {{EventKind::Crash, 0, 0}};
    r1.screen = Screen::Crashed;
    log.records = {r0, r1};
    log.crash_count = 1;
    log.final_coverage = coverage(log);

    EpisodeLog back = EpisodeLog::from_jsonl(log.to_jsonl());
    CHECK(back.agent == log.agent);
    CHECK(back.mode == log.mode);
    CHECK(back.seed == log.seed);
    CHECK(back.crash_count == 1);
    CHECK(back.final_coverage == log.final_coverage);
    REQUIRE(back.records.size() == 2);
    CHECK(back.records[0].events == r0.events);
    CHECK(back.records[1].crash);
    CHECK(back.records[1].screen == Screen::Crashed);
    CHECK(back.to_jsonl() == log.to_jsonl());
}

TEST_CASE("coverage counts distinct kinds over the 10-kind universe") {
    EpisodeLog log;
    IterationRecord r;
    r.events = {{EventKind::Match3, 3, 1}, {EventKind::Match3, 3, 1}, {EventKind::Cascade, 2, 0}};
    log.records.push_back(r);
    IterationRecord r2;
    r2.events = {{EventKind::LevelUp, 2, 0}};
    log.records.push_back(r2);
    CHECK(coverage(log, 1) == 20.0);
    CHECK(coverage(log) == 30.0);
    CHECK(coverage(log, 0) == 0.0);
    CHECK(coverage(EpisodeLog{}) == 0.0);

    // Prefix coverage never decreases.
    for (int i = 0; i + 1 <= static_cast<int>(log.records.size()); ++i)
        CHECK(coverage(log, i) <= coverage(log, i + 1));
}

TEST_CASE("a heuristic episode replays deterministically with known results") {
    RunConfig cfg;
    cfg.iterations = 30;
    cfg.agent = "heuristic";
    auto agent = make_agent(cfg, 1);
    std::ostringstream sink;
    EpisodeLog log = run_episode(cfg, 1, *agent, &sink);
    REQUIRE(log.records.size() == 30);
    CHECK(log.records.back().score == 4320);
    CHECK(log.records.back().level == 5);
    CHECK(log.final_coverage == 50.0);
    CHECK(log.crash_count == 0);

    // The command stream opens with the scripted start tap.
    std::istringstream cmds(sink.str());
    std::string first;
    std::getline(cmds, first);
    CHECK(first == "input tap 80 220");

    auto agent2 = make_agent(cfg, 1);
    EpisodeLog again = run_episode(cfg, 1, *agent2);
    CHECK(again.to_jsonl() == log.to_jsonl());
}

TEST_CASE("a fault config truncates the episode at the crash") {
    RunConfig cfg;
    cfg.iterations = 30;
    cfg.agent = "heuristic";
    cfg.faults.push_back({FaultSpec::Trigger::CascadeDepthAtLeast, 3, {}, "deep cascade"});
    auto agent = make_agent(cfg, 1);
    EpisodeLog log = run_episode(cfg, 1, *agent);
    REQUIRE(!log.records.empty());
    CHECK(log.records.size() < 30);
    CHECK(log.records.back().crash);
    CHECK(log.crash_count == 1);
    CHECK(log.records.back().events.back().kind == EventKind::Crash);
}

TEST_CASE("the monkey agent starts stuck in the menu at score zero") {
    RunConfig cfg;
    cfg.iterations = 20;
    cfg.agent = "monkey";
    auto agent = make_agent(cfg, 3);
    EpisodeLog log = run_episode(cfg, 3, *agent);
    REQUIRE(!log.records.empty());
    CHECK(log.records.front().screen == Screen::Menu);
    CHECK(log.records.front().score == 0);
}

TEST_CASE("menu escape time tracks the button-to-screen area ratio") {
    // Only taps can press the button and half of all gestures are taps, so
    // the expected wait is 2 * screen_area / button_area iterations.
    RunConfig cfg;
    ScreenRect screen = cfg.screen_rect();
    ScreenRect button = cfg.start_button;
    button.y = cfg.origin_y * 2 + cfg.engine.rows * cfg.cell_px +
               (cfg.menu_band_px - button.height) / 2;
    double expected = 2.0 * (static_cast<double>(screen.width) * screen.height) /
                      (static_cast<double>(button.width) * button.height);

    EngineConfig ecfg;
    ecfg.seed = 1;
    Calibration cal = Calibration::from_grid(cfg.origin_x, cfg.origin_y, cfg.cell_px);
    AppShell menu = AppShell::boot(ecfg, screen, button, cal);
    double total = 0;
    const int kTrials = 400;
    for (int t = 0; t < kTrials; ++t) {
        MonkeyAgent monkey(screen, 1000 + t);
        AppShell shell = menu;
        int i = 1;
        for (; shell.screen == Screen::Menu; ++i)
            shell = tick_shell(shell, monkey.propose(Observation{}).raw_gestures[0]).shell;
        total += i - 1;
    }
    double mean = total / kTrials;
    CHECK(mean > expected * 0.9);
    CHECK(mean < expected * 1.1);
}

TEST_CASE("the ablation harness orders modes as their fixtures dictate") {
    TempDir dir("m3_ablation_test");

    // One iteration per seed; the Both fixture plays a real move, the
    // ExamplesOnly fixture answers prose, the RulesOnly fixture fails.
    Board opening = new_board(9, 9, 5, 1);
    auto valid = enumerate_valid_moves(opening);
    REQUIRE(!valid.empty());
    std::string move_line =
        nlohmann::json{{"content", render_action(valid.front())}}.dump();

    RunConfig cfg;
    cfg.iterations = 1;
    cfg.seeds = {1};
    cfg.backoff_base_ms = 0;
    cfg.ablation_fixtures["both"] = write_file(dir.path / "both.jsonl", move_line + "\n");
    cfg.ablation_fixtures["examples_only"] =
        write_file(dir.path / "examples.jsonl", R"({"content":"no move comes to mind"})" "\n");
    cfg.ablation_fixtures["rules_only"] =
        write_file(dir.path / "rules.jsonl", R"({"status":500})" "\n" R"({"status":500})" "\n"
                                             R"({"status":500})" "\n");

    AblationReport report = run_ablation(cfg);
    REQUIRE(report.episodes.size() == 3);
    CHECK(report.final_score("both") > 0.0);
    CHECK(report.final_score("examples_only") == 0.0);
    CHECK(report.final_score("rules_only") == 0.0);
    CHECK(report.final_score("both") >= report.final_score("examples_only"));
    CHECK(report.final_score("examples_only") >= report.final_score("rules_only"));
    CHECK(report.score_curve("both").size() == 1);

    // The hallucination and the wire failure are both recorded as no-ops.
    CHECK(report.episodes.at("examples_only")[0].records[0].hallucination);
    CHECK(!report.episodes.at("rules_only")[0].records[0].accepted);
}

TEST_CASE("write_report emits a CSV and three SVG charts with stable bytes") {
    RunConfig cfg;
    cfg.iterations = 10;
    cfg.agent = "heuristic";
    auto agent = make_agent(cfg, 1);
    EpisodeLog log = run_episode(cfg, 1, *agent);

    TempDir dir("m3_report_test");
    auto written = write_report({{"heuristic", {log}}}, dir.path.string());
    REQUIRE(written.size() == 4);
    CHECK(fs::path(written[0]).filename() == "report.csv");

    std::ifstream csv(written[0]);
    std::string header;
    std::getline(csv, header);
    CHECK(header == "series,iteration,score,level,coverage,crashes");
    std::string first;
    std::getline(csv, first);
    CHECK(first.rfind("heuristic,0,", 0) == 0);
    int lines = 1;
    for (std::string l; std::getline(csv, l);) ++lines;
    CHECK(lines == 10);

    std::ostringstream svg;
    svg << std::ifstream(written[1]).rdbuf();
    CHECK(svg.str().find("<polyline") != std::string::npos);
    CHECK(svg.str().find("Game Scores Across Iteration Rounds") != std::string::npos);

    TempDir dir2("m3_report_test2");
    auto written2 = write_report({{"heuristic", {log}}}, dir2.path.string());
    for (size_t i = 0; i < written.size(); ++i) {
        std::ostringstream a, b;
        a << std::ifstream(written[i], std::ios::binary).rdbuf();
        b << std::ifstream(written2[i], std::ios::binary).rdbuf();
        CHECK(a.str() == b.str());
    }
}

TEST_CASE("the rank-sum test matches reference p-values") {
    // Reference values from an independent statistics package
    // (one-sided Mann-Whitney, normal approximation, continuity correction).
    std::vector<double> a{5, 7, 8, 9, 12, 12, 15};
    std::vector<double> b{3, 4, 7, 8, 8, 10};
    CHECK(rank_sum_p_greater(a, b) == doctest::Approx(0.07486399094772561).epsilon(1e-9));

    std::vector<double> lo{1, 2, 3};
    std::vector<double> hi{4, 5, 6};
    CHECK(rank_sum_p_greater(lo, hi) == doctest::Approx(0.9854518341293739).epsilon(1e-9));
    CHECK(rank_sum_p_greater(hi, lo) < 0.05);
    CHECK(rank_sum_p_greater({}, hi) == 1.0);
}
