#include "m3/engine.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace m3 {

namespace {

constexpr int kEmpty = -2;  // internal marker for cleared cells during resolution

constexpr std::array<const char*, kEventKindCount> kEventNames = {
    "Match3",   "Match4Plus", "BombSpawn", "BombDetonate", "Cascade",
    "Reshuffle", "LevelUp",   "InvalidMove", "BlockerHit", "Crash",
};

}  // namespace

const char* event_kind_name(EventKind kind) { return kEventNames[static_cast<int>(kind)]; }

std::optional<EventKind> event_kind_from_name(const std::string& name) {
    for (int i = 0; i < kEventKindCount; ++i)
        if (name == kEventNames[i]) return static_cast<EventKind>(i);
    return std::nullopt;
}

MatchSet find_matches(const Board& board) {
    MatchSet out;
    // Horizontal runs.
    for (int r = 0; r < board.rows(); ++r) {
        int c = 0;
        while (c < board.cols()) {
            int v = board.at(r, c);
            int end = c + 1;
            while (end < board.cols() && board.at(r, end) == v) ++end;
            if (is_regular(v) && end - c >= 3) {
                std::vector<Position> group;
                for (int i = c; i < end; ++i) group.push_back({r, i});
                out.groups.push_back(std::move(group));
            }
            c = end;
        }
    }
    // Vertical runs.
    for (int c = 0; c < board.cols(); ++c) {
        int r = 0;
        while (r < board.rows()) {
            int v = board.at(r, c);
            int end = r + 1;
            while (end < board.rows() && board.at(end, c) == v) ++end;
            if (is_regular(v) && end - r >= 3) {
                std::vector<Position> group;
                for (int i = r; i < end; ++i) group.push_back({i, c});
                out.groups.push_back(std::move(group));
            }
            r = end;
        }
    }
    return out;
}

bool is_valid_move(const Board& board, const Move& move) {
    if (!board.in_bounds(move.a) || !board.in_bounds(move.b))
        throw std::out_of_range("move out of bounds");
    if (!move.adjacent()) throw std::invalid_argument("move endpoints not adjacent");
    int va = board.at(move.a);
    int vb = board.at(move.b);
    if (va == kBlocker || vb == kBlocker) return false;
    if (va == kBomb || vb == kBomb) return true;
    return !find_matches(swap_cells(board, move)).empty();
}

std::vector<Move> enumerate_valid_moves(const Board& board) {
    std::vector<Move> out;
    for (int r = 0; r < board.rows(); ++r) {
        for (int c = 0; c < board.cols(); ++c) {
            if (c + 1 < board.cols()) {
                Move m{{r, c}, {r, c + 1}};
                if (is_valid_move(board, m)) out.push_back(m);
            }
            if (r + 1 < board.rows()) {
                Move m{{r, c}, {r + 1, c}};
                if (is_valid_move(board, m)) out.push_back(m);
            }
        }
    }
    // Already canonical (a before b row-major) and generated in row-major order.
    return out;
}

namespace {

// Fill with regular colors until the board has no match and >=1 valid move.
Board generate_board(int rows, int cols, int colors, SplitMix64& rng) {
    constexpr int kMaxAttempts = 100000;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
        std::vector<int> cells(static_cast<size_t>(rows) * cols);
        for (auto& c : cells) c = rng.color(colors);
        Board b(rows, cols, std::move(cells));
        if (find_matches(b).empty() && !enumerate_valid_moves(b).empty()) return b;
    }
    throw std::invalid_argument("cannot generate a match-free board with these parameters");
}

struct Resolver {
    Board board;
    const EngineConfig& cfg;
    SplitMix64& rng;
    std::vector<EngineEvent>& events;
    int score_delta = 0;
    int cascade_depth = 0;

    bool clear_and_collapse(std::vector<Position>& to_clear, int pass) {
        if (to_clear.empty()) return false;
        int cleared = 0;
        for (const auto& p : to_clear) {
            if (board.at(p) != kEmpty) {
                board.set(p, kEmpty);
                ++cleared;
            }
        }
        score_delta += cfg.points_per_cell * cleared * pass;
        // Gravity per column: candies (regular and bombs) fall within
        // segments delimited by blockers; blockers never move.
        for (int c = 0; c < board.cols(); ++c) {
            int seg_start = 0;
            for (int r = 0; r <= board.rows(); ++r) {
                bool at_end = r == board.rows();
                if (at_end || board.at(r, c) == kBlocker) {
                    int write = r - 1;
                    for (int rr = r - 1; rr >= seg_start; --rr) {
                        int v = board.at(rr, c);
                        if (v != kEmpty) {
                            board.set({write, c}, v);
                            --write;
                        }
                    }
                    for (int rr = write; rr >= seg_start; --rr)
                        board.set({rr, c}, rng.color(cfg.colors));
                    seg_start = r + 1;
                }
            }
        }
        return cleared > 0;
    }

    // Runs the cascade loop. `detonated` are cells already owed to pass 1
    // by a bomb swap; `spawn_hint` is where a run >=4 drops its bomb.
    void resolve(std::vector<Position> detonated, const Move& move) {
        int pass = 1;
        while (true) {
            MatchSet matches = find_matches(board);
            if (matches.empty() && detonated.empty()) break;
            if (pass > 1) {
                events.push_back({EventKind::Cascade, pass, 0});
            }
            std::vector<Position> to_clear = std::move(detonated);
            detonated.clear();
            for (const auto& group : matches.groups) {
                int size = static_cast<int>(group.size());
                events.push_back({size >= 4 ? EventKind::Match4Plus : EventKind::Match3, size, pass});
                Position spawn{-1, -1};
                if (size >= 4) {
                    // A run >=4 leaves a bomb behind: on the moved-to cell
                    // when it is part of the run, else on the run's first cell.
                    spawn = group.front();
                    for (const auto& p : group)
                        if (p == move.a || p == move.b) spawn = p;
                    board.set(spawn, kBomb);
                    events.push_back({EventKind::BombSpawn, spawn.row, spawn.col});
                }
                for (const auto& p : group)
                    if (!(p == spawn)) to_clear.push_back(p);
            }
            clear_and_collapse(to_clear, pass);
            cascade_depth = pass;
            ++pass;
        }
    }
};

}  // namespace

Board new_board(int rows, int cols, int colors, uint64_t seed) {
    if (rows < 3 || cols < 3) throw std::invalid_argument("board must be at least 3x3");
    if (colors < 3 || colors > kMaxColors)
        throw std::invalid_argument("color count must be in [3, 9]");
    SplitMix64 rng(seed);
    return generate_board(rows, cols, colors, rng);
}

GameState GameState::new_game(const EngineConfig& cfg) {
    GameState s;
    s.rng = SplitMix64(cfg.seed);
    if (cfg.rows < 3 || cfg.cols < 3) throw std::invalid_argument("board must be at least 3x3");
    if (cfg.colors < 3 || cfg.colors > kMaxColors)
        throw std::invalid_argument("color count must be in [3, 9]");
    s.board = generate_board(cfg.rows, cfg.cols, cfg.colors, s.rng);
    return s;
}

StepOutcome apply_move(const GameState& state, const Move& move, const EngineConfig& cfg,
                       const std::vector<FaultSpec>& faults) {
    if (!state.board.in_bounds(move.a) || !state.board.in_bounds(move.b))
        throw std::out_of_range("move out of bounds");
    if (!move.adjacent()) throw std::invalid_argument("move endpoints not adjacent");

    StepOutcome out;
    out.state = state;

    int va = state.board.at(move.a);
    int vb = state.board.at(move.b);
    bool blocker = va == kBlocker || vb == kBlocker;
    if (blocker || !is_valid_move(state.board, move)) {
        if (blocker) out.events.push_back({EventKind::BlockerHit, 0, 0});
        out.events.push_back({EventKind::InvalidMove, 0, 0});
        out.state.event_log.insert(out.state.event_log.end(), out.events.begin(), out.events.end());
        return out;
    }

    out.accepted = true;
    Resolver res{swap_cells(state.board, move), cfg, out.state.rng, out.events};

    std::vector<Position> detonated;
    bool bomb_with_bomb = va == kBomb && vb == kBomb;
    if (bomb_with_bomb) {
        // Both detonate: clear the two most frequent regular colors.
        std::map<int, int> freq;
        for (int v : res.board.cells())
            if (is_regular(v)) ++freq[v];
        std::vector<std::pair<int, int>> by_count(freq.begin(), freq.end());
        std::stable_sort(by_count.begin(), by_count.end(),
                         [](auto& l, auto& r) { return l.second > r.second; });
        for (size_t i = 0; i < by_count.size() && i < 2; ++i) {
            int color = by_count[i].first;
            int n = 0;
            for (int r = 0; r < res.board.rows(); ++r)
                for (int c = 0; c < res.board.cols(); ++c)
                    if (res.board.at(r, c) == color) {
                        detonated.push_back({r, c});
                        ++n;
                    }
            out.events.push_back({EventKind::BombDetonate, color, n});
        }
        detonated.push_back(move.a);
        detonated.push_back(move.b);
    } else if (va == kBomb || vb == kBomb) {
        // After the swap the bomb sits where the partner was, and vice versa.
        Position bomb_pos = va == kBomb ? move.b : move.a;
        Position partner_pos = va == kBomb ? move.a : move.b;
        int color = res.board.at(partner_pos);
        int n = 0;
        if (is_regular(color)) {
            for (int r = 0; r < res.board.rows(); ++r)
                for (int c = 0; c < res.board.cols(); ++c)
                    if (res.board.at(r, c) == color) {
                        detonated.push_back({r, c});
                        ++n;
                    }
        }
        detonated.push_back(bomb_pos);
        out.events.push_back({EventKind::BombDetonate, color, n});
    }

    res.resolve(std::move(detonated), move);
    out.score_delta = res.score_delta;
    out.cascade_depth = res.cascade_depth;
    out.state.board = res.board;
    out.state.score += res.score_delta;

    // Level-ups: crossing level*threshold regenerates the board.
    while (out.state.score >= out.state.level * cfg.level_threshold) {
        out.state.level += 1;
        out.events.push_back({EventKind::LevelUp, out.state.level, 0});
        out.state.board = generate_board(cfg.rows, cfg.cols, cfg.colors, out.state.rng);
    }

    // Dead board: permute regular cells until a move exists.
    if (enumerate_valid_moves(out.state.board).empty()) {
        bool revived = false;
        int attempts = 0;
        for (; attempts < cfg.reshuffle_attempts; ++attempts) {
            Board shuffled = out.state.board;
            std::vector<Position> slots;
            std::vector<int> values;
            for (int r = 0; r < shuffled.rows(); ++r)
                for (int c = 0; c < shuffled.cols(); ++c)
                    if (is_regular(shuffled.at(r, c))) {
                        slots.push_back({r, c});
                        values.push_back(shuffled.at(r, c));
                    }
            for (size_t i = values.size(); i > 1; --i)
                std::swap(values[i - 1], values[out.state.rng.below(i)]);
            for (size_t i = 0; i < slots.size(); ++i) shuffled.set(slots[i], values[i]);
            if (find_matches(shuffled).empty() && !enumerate_valid_moves(shuffled).empty()) {
                out.state.board = shuffled;
                revived = true;
                break;
            }
        }
        out.events.push_back({EventKind::Reshuffle, attempts + 1, revived ? 1 : 0});
        if (!revived) {
            // Unplayable with this candy mix: declare the level complete.
            out.state.level += 1;
            out.events.push_back({EventKind::LevelUp, out.state.level, 0});
            out.state.board = generate_board(cfg.rows, cfg.cols, cfg.colors, out.state.rng);
        }
    }

    // Fault evaluation after every accepted move; first trigger crashes.
    for (size_t i = 0; i < faults.size(); ++i) {
        const FaultSpec& f = faults[i];
        bool fired = false;
        switch (f.trigger) {
            case FaultSpec::Trigger::CascadeDepthAtLeast:
                fired = out.cascade_depth >= f.threshold;
                break;
            case FaultSpec::Trigger::BombSwappedWithBomb:
                fired = bomb_with_bomb;
                break;
            case FaultSpec::Trigger::ScoreAtLeast:
                fired = out.state.score >= f.threshold;
                break;
            case FaultSpec::Trigger::MoveOnPosition:
                fired = move.a == f.position || move.b == f.position;
                break;
        }
        if (fired) {
            out.crashed = true;
            out.events.push_back({EventKind::Crash, static_cast<int>(i), 0});
            break;
        }
    }

    out.state.event_log.insert(out.state.event_log.end(), out.events.begin(), out.events.end());
    return out;
}

}  // namespace m3
