#include "m3/harness.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace m3 {

using json = nlohmann::ordered_json;

ScreenRect RunConfig::screen_rect() const {
    int w = origin_x * 2 + engine.cols * cell_px;
    int h = origin_y * 2 + engine.rows * cell_px + menu_band_px;
    return {0, 0, w, h};
}

GridSpec RunConfig::grid() const {
    return {origin_x, origin_y, cell_px, engine.rows, engine.cols};
}

std::vector<PatternRule> RunConfig::load_library() const {
    if (library_file.empty()) return default_library();
    std::ifstream in(library_file);
    if (!in) throw std::runtime_error("cannot open pattern library " + library_file);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_library(buf.str());
}

RuleSet RunConfig::load_rules() const {
    return prompt_dir.empty() ? RuleSet::defaults() : RuleSet::load(prompt_dir);
}

namespace {

FaultSpec fault_from_json(const json& j) {
    FaultSpec f;
    std::string trigger = j.at("trigger").get<std::string>();
    if (trigger == "cascade_depth_at_least") {
        f.trigger = FaultSpec::Trigger::CascadeDepthAtLeast;
        f.threshold = j.at("value").get<int>();
    } else if (trigger == "bomb_swapped_with_bomb") {
        f.trigger = FaultSpec::Trigger::BombSwappedWithBomb;
    } else if (trigger == "score_at_least") {
        f.trigger = FaultSpec::Trigger::ScoreAtLeast;
        f.threshold = j.at("value").get<int>();
    } else if (trigger == "move_on_position") {
        f.trigger = FaultSpec::Trigger::MoveOnPosition;
        f.position = {j.at("row").get<int>(), j.at("col").get<int>()};
    } else {
        throw std::invalid_argument("unknown fault trigger: " + trigger);
    }
    f.message = j.value("message", "injected fault");
    return f;
}

}  // namespace

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config " + path);
    json j = json::parse(in, nullptr, true, /*ignore_comments=*/true);

    RunConfig cfg;
    cfg.iterations = j.value("iterations", cfg.iterations);
    cfg.agent = j.value("agent", cfg.agent);
    if (j.contains("mode")) cfg.mode = prompt_mode_from_name(j["mode"].get<std::string>());
    if (j.contains("seeds")) cfg.seeds = j["seeds"].get<std::vector<uint64_t>>();
    if (cfg.seeds.empty()) throw std::invalid_argument("seeds must be non-empty");
    if (cfg.iterations < 1) throw std::invalid_argument("iterations must be >= 1");

    if (j.contains("engine")) {
        const json& e = j["engine"];
        cfg.engine.rows = e.value("rows", cfg.engine.rows);
        cfg.engine.cols = e.value("cols", cfg.engine.cols);
        cfg.engine.colors = e.value("colors", cfg.engine.colors);
        cfg.engine.points_per_cell = e.value("points_per_cell", cfg.engine.points_per_cell);
        cfg.engine.level_threshold = e.value("level_threshold", cfg.engine.level_threshold);
        cfg.engine.reshuffle_attempts = e.value("reshuffle_attempts", cfg.engine.reshuffle_attempts);
    }
    if (j.contains("faults"))
        for (const auto& f : j["faults"]) cfg.faults.push_back(fault_from_json(f));

    cfg.cell_px = j.value("cell_px", cfg.cell_px);
    cfg.origin_x = j.value("origin_x", cfg.origin_x);
    cfg.origin_y = j.value("origin_y", cfg.origin_y);
    cfg.menu_band_px = j.value("menu_band_px", cfg.menu_band_px);
    if (j.contains("start_button")) {
        const json& b = j["start_button"];
        cfg.start_button = {b.value("x", 60), b.value("y", 0), b.value("width", 40),
                            b.value("height", 20)};
    }
    cfg.recognize_threshold = j.value("recognize_threshold", cfg.recognize_threshold);
    cfg.sprite_dir = j.value("sprite_dir", cfg.sprite_dir);

    if (j.contains("gen")) {
        const json& g = j["gen"];
        cfg.gen.temperature = g.value("temperature", cfg.gen.temperature);
        cfg.gen.max_tokens = g.value("max_tokens", cfg.gen.max_tokens);
        cfg.gen.num_samples = g.value("num_samples", cfg.gen.num_samples);
        cfg.gen.model = g.value("model", cfg.gen.model);
    }
    cfg.endpoint = j.value("endpoint", cfg.endpoint);
    cfg.api_key_env = j.value("api_key_env", cfg.api_key_env);
    cfg.fixture = j.value("fixture", cfg.fixture);
    if (j.contains("ablation_fixtures"))
        for (const auto& [k, v] : j["ablation_fixtures"].items())
            cfg.ablation_fixtures[k] = v.get<std::string>();
    cfg.backoff_base_ms = j.value("backoff_base_ms", cfg.backoff_base_ms);
    cfg.prompt_dir = j.value("prompt_dir", cfg.prompt_dir);
    cfg.library_file = j.value("library_file", cfg.library_file);
    cfg.out_dir = j.value("out_dir", cfg.out_dir);
    cfg.measure_latency = j.value("measure_latency", cfg.measure_latency);
    return cfg;
}

namespace {

json event_to_json(const EngineEvent& e) {
    return json{{"kind", event_kind_name(e.kind)}, {"a", e.a}, {"b", e.b}};
}

EngineEvent event_from_json(const json& j) {
    auto kind = event_kind_from_name(j.at("kind").get<std::string>());
    if (!kind) throw std::invalid_argument("unknown event kind in log");
    return {*kind, j.value("a", 0), j.value("b", 0)};
}

}  // namespace

std::string EpisodeLog::to_jsonl() const {
    std::ostringstream out;
    json header{{"agent", agent},
                {"mode", mode},
                {"seed", seed},
                {"iterations", iterations_configured},
                {"crash_count", crash_count},
                {"coverage", final_coverage}};
    out << header.dump() << '\n';
    for (const auto& r : records) {
        json rec{{"iteration", r.iteration}, {"score", r.score},   {"level", r.level},
                 {"accepted", r.accepted},   {"crash", r.crash},   {"hallucination", r.hallucination},
                 {"latency_ms", r.latency_ms}, {"screen", screen_name(r.screen)},
                 {"events", json::array()}};
        for (const auto& e : r.events) rec["events"].push_back(event_to_json(e));
        out << rec.dump() << '\n';
    }
    return out.str();
}

EpisodeLog EpisodeLog::from_jsonl(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("empty episode log");
    json header = json::parse(line);
    EpisodeLog log;
    log.agent = header.value("agent", "");
    log.mode = header.value("mode", "");
    log.seed = header.value("seed", 0ull);
    log.iterations_configured = header.value("iterations", 0);
    log.crash_count = header.value("crash_count", 0);
    log.final_coverage = header.value("coverage", 0.0);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j = json::parse(line);
        IterationRecord r;
        r.iteration = j.at("iteration").get<int>();
        r.score = j.at("score").get<int>();
        r.level = j.at("level").get<int>();
        r.accepted = j.at("accepted").get<bool>();
        r.crash = j.value("crash", false);
        r.hallucination = j.value("hallucination", false);
        r.latency_ms = j.value("latency_ms", 0l);
        std::string screen = j.value("screen", "Playing");
        r.screen = screen == "Menu" ? Screen::Menu
                   : screen == "Crashed" ? Screen::Crashed : Screen::Playing;
        for (const auto& e : j.at("events")) r.events.push_back(event_from_json(e));
        log.records.push_back(std::move(r));
    }
    return log;
}

double coverage(const EpisodeLog& log, int prefix) {
    std::set<EventKind> kinds;
    int n = prefix < 0 ? static_cast<int>(log.records.size())
                       : std::min<int>(prefix, static_cast<int>(log.records.size()));
    for (int i = 0; i < n; ++i)
        for (const auto& e : log.records[i].events) kinds.insert(e.kind);
    double pct = 100.0 * static_cast<double>(kinds.size()) / kEventKindCount;
    return std::round(pct * 10.0) / 10.0;
}

std::unique_ptr<Agent> make_agent(const RunConfig& cfg, uint64_t seed) {
    if (cfg.agent == "heuristic") return std::make_unique<HeuristicAgent>(cfg.load_library());
    if (cfg.agent == "monkey") return std::make_unique<MonkeyAgent>(cfg.screen_rect(), seed);
    if (cfg.agent == "llm") {
        std::shared_ptr<ChatTransport> transport;
        if (!cfg.fixture.empty()) {
            transport = std::make_shared<ScriptedTransport>(ScriptedTransport::from_file(cfg.fixture));
        } else if (!cfg.endpoint.empty()) {
            const char* key = std::getenv(cfg.api_key_env.c_str());
            transport = std::make_shared<HttpTransport>(cfg.endpoint, key ? key : "");
        } else {
            throw std::invalid_argument("llm agent needs a fixture or an endpoint");
        }
        LlmAgentConfig lc;
        lc.params = cfg.gen;
        lc.rules = cfg.load_rules();
        lc.library = cfg.load_library();
        lc.mode = cfg.mode;
        lc.backoff_base_ms = cfg.backoff_base_ms;
        return std::make_unique<LlmAgent>(std::move(transport), std::move(lc));
    }
    throw std::invalid_argument("unknown agent: " + cfg.agent);
}

EpisodeLog run_episode(const RunConfig& cfg, uint64_t seed, Agent& agent,
                       std::ostream* command_sink) {
    EngineConfig ecfg = cfg.engine;
    ecfg.seed = seed;

    ScreenRect screen = cfg.screen_rect();
    ScreenRect button = cfg.start_button;
    if (button.y == 0)  // derive: centered in the band below the grid
        button.y = cfg.origin_y * 2 + ecfg.rows * cfg.cell_px + (cfg.menu_band_px - button.height) / 2;

    Calibration cal = Calibration::from_grid(cfg.origin_x, cfg.origin_y, cfg.cell_px);
    AppShell shell = AppShell::boot(ecfg, screen, button, cal, cfg.faults);

    SpriteSheet sprites = cfg.sprite_dir.empty()
                              ? make_default_sprites(ecfg.colors, cfg.cell_px)
                              : load_sprites(cfg.sprite_dir, ecfg.colors);
    GridSpec grid = cfg.grid();

    std::unique_ptr<DeviceShellBackend> device;
    if (command_sink) device = std::make_unique<DeviceShellBackend>(*command_sink);

    bool monkey = cfg.agent == "monkey";
    if (!monkey) {
        // Scripted start: agents that know the game tap the start button.
        Gesture start = Gesture::tap(button.x + button.width / 2, button.y + button.height / 2);
        if (device) device->emit(start);
        shell = tick_shell(shell, start).shell;
    }

    EpisodeLog log;
    log.agent = cfg.agent;
    log.mode = prompt_mode_name(cfg.mode);
    log.seed = seed;
    log.iterations_configured = cfg.iterations;

    for (int i = 0; i < cfg.iterations && shell.screen != Screen::Crashed; ++i) {
        IterationRecord rec;
        rec.iteration = i;
        rec.screen = shell.screen;

        Observation obs;
        obs.iteration = i;
        obs.screen = shell.screen;
        obs.score = shell.game.score;
        obs.level = shell.game.level;
        if (shell.screen == Screen::Playing) {
            // Perception path end to end: render, then recognize back.
            Image frame = render_board(shell.game.board, sprites, grid);
            obs.board = recognize_board(frame, sprites, grid, cfg.recognize_threshold);
        } else {
            obs.board = Board(1, 1, {1});
        }

        AgentDecision decision;
        auto t0 = std::chrono::steady_clock::now();
        bool transport_failed = false;
        try {
            decision = agent.propose(obs);
        } catch (const TransportError&) {
            transport_failed = true;  // surfaced after retries: no-op iteration
        } catch (const MalformedResponse&) {
            transport_failed = true;
        }
        if (cfg.measure_latency)
            rec.latency_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count();
        rec.hallucination = decision.hallucination;

        std::vector<Gesture> gestures = decision.raw_gestures;
        if (!transport_failed && !decision.moves.empty()) {
            // One move per iteration keeps the board in sync with the
            // prompt; extra moves stay in the transcript.
            gestures.push_back(move_to_gesture(decision.moves.front(), cal, screen));
        }
        for (const auto& g : gestures) {
            if (device) device->emit(g);
            ShellStep step = tick_shell(shell, g);
            shell = step.shell;
            if (step.outcome) {
                rec.accepted = step.outcome->accepted;
                rec.events.insert(rec.events.end(), step.outcome->events.begin(),
                                  step.outcome->events.end());
                if (step.outcome->crashed) rec.crash = true;
            }
        }

        rec.score = shell.game.score;
        rec.level = shell.game.level;
        if (rec.crash) ++log.crash_count;
        log.records.push_back(std::move(rec));
    }

    log.final_coverage = coverage(log);
    return log;
}

AblationReport run_ablation(const RunConfig& cfg) {
    AblationReport report;
    for (PromptMode mode : {PromptMode::RulesOnly, PromptMode::ExamplesOnly, PromptMode::Both}) {
        RunConfig mode_cfg = cfg;
        mode_cfg.agent = "llm";
        mode_cfg.mode = mode;
        auto it = cfg.ablation_fixtures.find(prompt_mode_name(mode));
        if (it != cfg.ablation_fixtures.end()) mode_cfg.fixture = it->second;
        std::vector<EpisodeLog> logs;
        for (uint64_t seed : cfg.seeds) {
            auto agent = make_agent(mode_cfg, seed);
            logs.push_back(run_episode(mode_cfg, seed, *agent));
        }
        report.episodes[prompt_mode_name(mode)] = std::move(logs);
    }
    return report;
}

std::vector<double> AblationReport::score_curve(const std::string& mode) const {
    auto it = episodes.find(mode);
    if (it == episodes.end() || it->second.empty()) return {};
    size_t n = 0;
    for (const auto& log : it->second) n = std::max(n, static_cast<size_t>(log.iterations_configured));
    std::vector<double> curve(n, 0.0);
    for (const auto& log : it->second) {
        int last = 0;
        for (size_t i = 0; i < n; ++i) {
            if (i < log.records.size()) last = log.records[i].score;
            curve[i] += last;
        }
    }
    for (auto& v : curve) v /= static_cast<double>(it->second.size());
    return curve;
}

double AblationReport::final_score(const std::string& mode) const {
    auto curve = score_curve(mode);
    return curve.empty() ? 0.0 : curve.back();
}

}  // namespace m3
