#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace m3 {

// Cell codes: -1 blocker, 0 color bomb, 1..K regular colors.
constexpr int kBlocker = -1;
constexpr int kBomb = 0;
constexpr int kMaxColors = 9;

inline bool is_regular(int code) { return code >= 1; }

struct Position {
    int row = 0;
    int col = 0;

    friend bool operator==(const Position&, const Position&) = default;
    friend auto operator<=>(const Position&, const Position&) = default;
};

// An ordered pair of orthogonally adjacent positions to swap.
struct Move {
    Position a;
    Position b;

    friend bool operator==(const Move&, const Move&) = default;

    bool adjacent() const {
        int dr = a.row - b.row;
        int dc = a.col - b.col;
        return (dr < 0 ? -dr : dr) + (dc < 0 ? -dc : dc) == 1;
    }

    // Endpoints ordered row-major, for deduplication of unordered swaps.
    Move canonical() const {
        Position lo = a, hi = b;
        if (hi < lo) std::swap(lo, hi);
        return Move{lo, hi};
    }
};

class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Immutable-by-convention m x n grid of cell codes, 0-indexed (row, col).
class Board {
  public:
    Board() = default;
    Board(int rows, int cols, int fill = 1)
        : rows_(rows), cols_(cols), cells_(static_cast<size_t>(rows) * cols, fill) {
        if (rows < 1 || cols < 1) throw std::invalid_argument("board dims must be positive");
    }
    Board(int rows, int cols, std::vector<int> cells)
        : rows_(rows), cols_(cols), cells_(std::move(cells)) {
        if (rows < 1 || cols < 1 || cells_.size() != static_cast<size_t>(rows) * cols)
            throw std::invalid_argument("cell count does not match dims");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool in_bounds(Position p) const {
        return p.row >= 0 && p.row < rows_ && p.col >= 0 && p.col < cols_;
    }

    int at(Position p) const { return cells_[index(p)]; }
    int at(int r, int c) const { return at(Position{r, c}); }
    void set(Position p, int code) { cells_[index(p)] = code; }

    const std::vector<int>& cells() const { return cells_; }

    friend bool operator==(const Board&, const Board&) = default;

  private:
    size_t index(Position p) const {
        if (!in_bounds(p)) throw std::out_of_range("position out of bounds");
        return static_cast<size_t>(p.row) * cols_ + p.col;
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<int> cells_;
};

// Renders a board as nested bracket rows: [[3, 1, 3], [1, 3, 4]].
// This exact rendering is embedded into prompts, so it is byte-stable.
std::string to_matrix_text(const Board& board);

// Inverse of to_matrix_text. Tolerates arbitrary whitespace and quoted
// integer tokens. Throws ParseError on ragged rows, non-integer tokens,
// or codes outside {-1, 0} U [1..max_color].
Board parse_matrix_text(const std::string& text, int max_color = kMaxColors);

// Returns a new board with the two cells exchanged; the input is untouched.
// Throws std::out_of_range / std::invalid_argument for bad moves.
Board swap_cells(const Board& board, const Move& move);

// Fresh board of only regular colors with no pre-existing match and at
// least one valid move, fully determined by the seed. Throws
// std::invalid_argument when dims or color count make that impossible.
Board new_board(int rows, int cols, int colors, uint64_t seed);

}  // namespace m3
