#pragma once

#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "m3/agents.hpp"
#include "m3/engine.hpp"
#include "m3/perception.hpp"
#include "m3/prompting.hpp"
#include "m3/shell.hpp"

namespace m3 {

struct RunConfig {
    int iterations = 150;
    std::string agent = "heuristic";  // llm | heuristic | monkey
    PromptMode mode = PromptMode::Both;
    std::vector<uint64_t> seeds = {1};

    EngineConfig engine;
    std::vector<FaultSpec> faults;

    // Screen geometry. The playing grid sits at (origin_x, origin_y); the
    // screen extends below it with a menu band holding the start button.
    int cell_px = 16;
    int origin_x = 8;
    int origin_y = 8;
    int menu_band_px = 120;
    ScreenRect start_button{60, 0, 40, 20};  // y 0 = derive below the grid

    double recognize_threshold = 0.9;
    std::string sprite_dir;   // empty = procedural default sprites

    GenParams gen;
    std::string endpoint;     // chat-completions base URL
    std::string api_key_env = "M3_API_KEY";
    std::string fixture;      // scripted transport JSON-lines file
    std::map<std::string, std::string> ablation_fixtures;  // mode name -> fixture
    int backoff_base_ms = 1000;

    std::string prompt_dir;    // RuleSet template overrides
    std::string library_file;  // pattern library override
    std::string out_dir = "out";
    bool measure_latency = false;

    ScreenRect screen_rect() const;
    GridSpec grid() const;
    std::vector<PatternRule> load_library() const;
    RuleSet load_rules() const;
};

// Parsed from a JSON document ('//' comments allowed).
RunConfig load_run_config(const std::string& path);

struct IterationRecord {
    int iteration = 0;
    int score = 0;
    int level = 1;
    bool accepted = false;
    std::vector<EngineEvent> events;
    bool crash = false;
    bool hallucination = false;
    long latency_ms = 0;
    Screen screen = Screen::Playing;
};

struct EpisodeLog {
    std::string agent;
    std::string mode;
    uint64_t seed = 0;
    int iterations_configured = 0;
    std::vector<IterationRecord> records;
    int crash_count = 0;
    double final_coverage = 0.0;

    // JSON-lines: one header line, then one line per iteration record.
    std::string to_jsonl() const;
    static EpisodeLog from_jsonl(const std::string& text);
};

// Distinct event kinds seen in the first `prefix` records (all when
// negative), over the 10-kind universe, as a percent with one decimal.
double coverage(const EpisodeLog& log, int prefix = -1);

std::unique_ptr<Agent> make_agent(const RunConfig& cfg, uint64_t seed);

// One capture -> perceive -> propose -> execute -> step cycle per
// iteration; stops at the iteration cap or on a crash. Every gesture is
// also emitted as a device-shell command line when a sink is given.
EpisodeLog run_episode(const RunConfig& cfg, uint64_t seed, Agent& agent,
                       std::ostream* command_sink = nullptr);

struct AblationReport {
    // Mode name -> one episode per seed.
    std::map<std::string, std::vector<EpisodeLog>> episodes;

    // Mean score per iteration across seeds, last value carried forward
    // for truncated episodes.
    std::vector<double> score_curve(const std::string& mode) const;
    double final_score(const std::string& mode) const;
};

// Runs the three prompt modes with shared seeds off scripted fixtures
// (cfg.ablation_fixtures) or the live endpoint.
AblationReport run_ablation(const RunConfig& cfg);

// CSV + SVG charts, deterministic bytes. Returns the written paths.
std::vector<std::string> write_report(
    const std::vector<std::pair<std::string, std::vector<EpisodeLog>>>& series,
    const std::string& out_dir);

}  // namespace m3
