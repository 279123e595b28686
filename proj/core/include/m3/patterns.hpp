#pragma once

#include <string>
#include <vector>

#include "m3/board.hpp"

namespace m3 {

enum class PatternToken { Wild, Var };

// A few-shot example in executable form: a wildcard submatrix where Var
// cells must bind one consistent regular color, plus the swap to make,
// in pattern-local coordinates.
struct PatternRule {
    std::vector<std::vector<PatternToken>> grid;
    Move action;
    std::string name;

    int rows() const { return static_cast<int>(grid.size()); }
    int cols() const { return grid.empty() ? 0 : static_cast<int>(grid[0].size()); }

    PatternRule transposed() const;

    // Rendered text form: Submatrix:[['1', '1', '*', '1']], Action: swipe
    // '1' at position (0,3) with adjacent '*' at position (0,2)
    std::string render() const;
};

struct Placement {
    Position offset;   // top-left of the match in board coordinates
    int bound_color;   // the color every Var cell carries
    bool transposed = false;
};

// Applying the rule's action to its own grid must line up >=3 collinear
// Var tokens; throws std::invalid_argument otherwise.
void validate_rule(const PatternRule& rule);

// All offsets where the rule matches: Var cells share one regular color
// and neither action endpoint lands on a blocker. The rule's transpose
// is consulted too (Placement::transposed). Row-major order.
std::vector<Placement> find_placements(const Board& board, const PatternRule& rule);

// Placement actions translated to board coordinates, deduplicated,
// ordered by (rule index, row-major), filtered to engine-valid moves.
std::vector<Move> suggest_moves(const Board& board, const std::vector<PatternRule>& library);

// The 15-rule library used as few-shot examples and by the heuristic agent.
const std::vector<PatternRule>& default_library();

// Parses one rule from its rendered text form.
PatternRule parse_rule(const std::string& line);

// Loads a library file: one rendered rule per line, '#' comments allowed.
std::vector<PatternRule> parse_library(const std::string& text);

}  // namespace m3
