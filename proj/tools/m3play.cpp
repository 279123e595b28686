// Playtest harness CLI: run episodes, run the prompt ablation, render and
// recognize boards, query the move oracle, and rebuild reports from logs.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "m3/harness.hpp"
#include "m3/perception.hpp"

namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

int cmd_play(const std::string& config_path, std::string agent, std::string mode, int iterations,
             std::vector<uint64_t> seeds, std::string out_dir) {
    m3::RunConfig cfg = config_path.empty() ? m3::RunConfig{} : m3::load_run_config(config_path);
    if (!agent.empty()) cfg.agent = agent;
    if (!mode.empty()) cfg.mode = m3::prompt_mode_from_name(mode);
    if (iterations > 0) cfg.iterations = iterations;
    if (!seeds.empty()) cfg.seeds = seeds;
    if (!out_dir.empty()) cfg.out_dir = out_dir;

    std::vector<m3::EpisodeLog> logs;
    fs::create_directories(cfg.out_dir);
    for (uint64_t seed : cfg.seeds) {
        auto a = m3::make_agent(cfg, seed);
        std::ostringstream commands;
        m3::EpisodeLog log = m3::run_episode(cfg, seed, *a, &commands);
        std::string stem = cfg.agent + "_" + std::to_string(seed);
        write_file(fs::path(cfg.out_dir) / ("episode_" + stem + ".jsonl"), log.to_jsonl());
        write_file(fs::path(cfg.out_dir) / ("commands_" + stem + ".txt"), commands.str());
        std::cout << stem << ": score=" << (log.records.empty() ? 0 : log.records.back().score)
                  << " level=" << (log.records.empty() ? 1 : log.records.back().level)
                  << " coverage=" << log.final_coverage << "% crashes=" << log.crash_count << "\n";
        logs.push_back(std::move(log));
    }
    m3::write_report({{cfg.agent, logs}}, cfg.out_dir);
    std::cout << "report written to " << cfg.out_dir << "\n";
    return 0;
}

int cmd_ablate(const std::string& config_path, std::string out_dir) {
    m3::RunConfig cfg = m3::load_run_config(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    m3::AblationReport report = m3::run_ablation(cfg);
    std::vector<std::pair<std::string, std::vector<m3::EpisodeLog>>> series;
    for (const auto& [mode, logs] : report.episodes) {
        for (const auto& log : logs)
            write_file(fs::path(cfg.out_dir) /
                           ("episode_" + mode + "_" + std::to_string(log.seed) + ".jsonl"),
                       log.to_jsonl());
        std::cout << mode << ": final score=" << report.final_score(mode) << "\n";
        series.emplace_back(mode, logs);
    }
    m3::write_report(series, cfg.out_dir);
    std::cout << "report written to " << cfg.out_dir << "\n";
    return 0;
}

int cmd_render(const std::string& matrix_path, const std::string& out_path, int cell_px) {
    m3::Board board = m3::parse_matrix_text(slurp(matrix_path));
    auto sprites = m3::make_default_sprites(m3::kMaxColors, cell_px);
    m3::GridSpec grid{0, 0, cell_px, board.rows(), board.cols()};
    m3::write_png(m3::render_board(board, sprites, grid), out_path);
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

int cmd_perceive(const std::string& image_path, int rows, int cols, int cell_px, int origin_x,
                 int origin_y, double threshold) {
    m3::Image img = m3::read_png(image_path);
    auto sprites = m3::make_default_sprites(m3::kMaxColors, cell_px);
    m3::GridSpec grid{origin_x, origin_y, cell_px, rows, cols};
    m3::Board board = m3::recognize_board(img, sprites, grid, threshold);
    std::cout << m3::to_matrix_text(board) << "\n";
    return 0;
}

int cmd_oracle(const std::string& matrix_path) {
    m3::Board board = m3::parse_matrix_text(slurp(matrix_path));
    for (const auto& m : m3::enumerate_valid_moves(board))
        std::cout << "swipe (" << m.a.row << "," << m.a.col << ") with (" << m.b.row << ","
                  << m.b.col << ")\n";
    return 0;
}

int cmd_report(const std::vector<std::string>& log_paths, const std::string& out_dir) {
    std::vector<std::pair<std::string, std::vector<m3::EpisodeLog>>> series;
    for (const auto& path : log_paths) {
        m3::EpisodeLog log = m3::EpisodeLog::from_jsonl(slurp(path));
        std::string name = log.agent.empty() ? fs::path(path).stem().string() : log.agent;
        auto it = std::find_if(series.begin(), series.end(),
                               [&](const auto& s) { return s.first == name; });
        if (it == series.end())
            series.push_back({name, {std::move(log)}});
        else
            it->second.push_back(std::move(log));
    }
    for (const auto& p : m3::write_report(series, out_dir)) std::cout << "wrote " << p << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"match-3 playtest harness"};
    app.require_subcommand(1);

    std::string config, agent, mode, out_dir, matrix, image, out_path;
    std::vector<uint64_t> seeds;
    std::vector<std::string> log_paths;
    int iterations = 0, rows = 9, cols = 9, cell_px = 16, origin_x = 0, origin_y = 0;
    double threshold = 0.9;

    auto* play = app.add_subcommand("play", "run playtest episodes");
    play->add_option("--config", config, "JSON config file");
    play->add_option("--agent", agent, "llm | heuristic | monkey");
    play->add_option("--mode", mode, "rules_only | examples_only | both");
    play->add_option("--iterations", iterations, "iterations per episode");
    play->add_option("--seed", seeds, "episode seed (repeatable)");
    play->add_option("--out", out_dir, "output directory");

    auto* ablate = app.add_subcommand("ablate", "run the three prompt modes");
    ablate->add_option("--config", config, "JSON config file")->required();
    ablate->add_option("--out", out_dir, "output directory");

    auto* render = app.add_subcommand("render", "render a matrix file to a PNG");
    render->add_option("--matrix", matrix, "matrix text file")->required();
    render->add_option("--out", out_path, "output PNG")->required();
    render->add_option("--cell-px", cell_px, "sprite size in pixels");

    auto* perceive = app.add_subcommand("perceive", "recognize a board PNG into matrix text");
    perceive->add_option("--image", image, "input PNG")->required();
    perceive->add_option("--rows", rows, "grid rows");
    perceive->add_option("--cols", cols, "grid cols");
    perceive->add_option("--cell-px", cell_px, "cell size in pixels");
    perceive->add_option("--origin-x", origin_x, "grid origin x");
    perceive->add_option("--origin-y", origin_y, "grid origin y");
    perceive->add_option("--threshold", threshold, "correlation threshold");

    auto* oracle = app.add_subcommand("oracle", "print all valid moves for a matrix file");
    oracle->add_option("--matrix", matrix, "matrix text file")->required();

    auto* report = app.add_subcommand("report", "rebuild CSV/SVG report from episode logs");
    report->add_option("--log", log_paths, "episode JSONL file (repeatable)")->required();
    report->add_option("--out", out_dir, "output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (play->parsed()) return cmd_play(config, agent, mode, iterations, seeds, out_dir);
        if (ablate->parsed()) return cmd_ablate(config, out_dir);
        if (render->parsed()) return cmd_render(matrix, out_path, cell_px);
        if (perceive->parsed())
            return cmd_perceive(image, rows, cols, cell_px, origin_x, origin_y, threshold);
        if (oracle->parsed()) return cmd_oracle(matrix);
        if (report->parsed()) return cmd_report(log_paths, out_dir.empty() ? "out" : out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
