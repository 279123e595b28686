#pragma once

#include <optional>
#include <string>
#include <vector>

#include "m3/board.hpp"
#include "m3/rng.hpp"

namespace m3 {

enum class EventKind {
    Match3,
    Match4Plus,
    BombSpawn,
    BombDetonate,
    Cascade,
    Reshuffle,
    LevelUp,
    InvalidMove,
    BlockerHit,
    Crash,
};

// The fixed coverage universe.
constexpr int kEventKindCount = 10;

const char* event_kind_name(EventKind kind);
std::optional<EventKind> event_kind_from_name(const std::string& name);

struct EngineEvent {
    EventKind kind;
    // Kind-specific payload: run size / cascade pass / color / score, 0 when unused.
    int a = 0;
    int b = 0;

    friend bool operator==(const EngineEvent&, const EngineEvent&) = default;
};

// Maximal horizontal/vertical runs of >=3 equal regular colors.
// Bombs (0) and blockers (-1) never participate.
struct MatchSet {
    std::vector<std::vector<Position>> groups;

    bool empty() const { return groups.empty(); }
};

struct FaultSpec {
    enum class Trigger { CascadeDepthAtLeast, BombSwappedWithBomb, ScoreAtLeast, MoveOnPosition };

    Trigger trigger;
    int threshold = 0;        // CascadeDepthAtLeast / ScoreAtLeast
    Position position{};      // MoveOnPosition
    std::string message;
};

struct EngineConfig {
    int rows = 9;
    int cols = 9;
    int colors = 5;
    uint64_t seed = 0;
    int points_per_cell = 10;
    int level_threshold = 1000;
    int reshuffle_attempts = 100;
};

struct GameState {
    Board board;
    int score = 0;
    int level = 1;
    SplitMix64 rng;
    std::vector<EngineEvent> event_log;

    static GameState new_game(const EngineConfig& cfg);

    friend bool operator==(const GameState&, const GameState&) = default;
};

struct StepOutcome {
    GameState state;
    bool accepted = false;
    int score_delta = 0;
    int cascade_depth = 0;
    bool crashed = false;
    std::vector<EngineEvent> events;
};

MatchSet find_matches(const Board& board);

// True iff neither cell is a blocker AND (either cell is a bomb OR the
// swap yields at least one match). Throws on out-of-bounds/non-adjacent.
bool is_valid_move(const Board& board, const Move& move);

// Brute-force oracle: every valid move, deduplicated up to unordered
// endpoints, sorted row-major.
std::vector<Move> enumerate_valid_moves(const Board& board);

// Full move resolution: swap, bomb detonation, cascade loop (clear /
// bomb spawn on runs >=4 / gravity / refill), level-up, dead-board
// reshuffle, then fault evaluation.
StepOutcome apply_move(const GameState& state, const Move& move, const EngineConfig& cfg,
                       const std::vector<FaultSpec>& faults = {});

}  // namespace m3
