#pragma once

#include <vector>

#include "m3/board.hpp"
#include "m3/rng.hpp"

namespace m3::testfix {

// 9x9 board whose first two rows appear verbatim in the documented prompt
// examples; the rest are chosen so the board is match-free and playable.
inline Board reference_board() {
    return Board(9, 9,
                 {
                     3, 1, 3, 5, 1, 1, 3, 3, 1,  //
                     1, 3, 4, 3, 3, 1, 5, 3, 5,  //
                     2, 4, 1, 2, 5, 3, 1, 4, 2,  //
                     4, 5, 3, 1, 2, 4, 5, 1, 3,  //
                     1, 2, 4, 5, 3, 1, 2, 4, 5,  //
                     5, 3, 1, 2, 4, 5, 3, 2, 1,  //
                     2, 4, 5, 3, 1, 2, 4, 5, 3,  //
                     3, 1, 2, 4, 5, 3, 1, 2, 4,  //
                     4, 5, 3, 1, 2, 4, 5, 3, 2,  //
                 });
}

// Diagonal striping (r+c) mod 3: no runs and no valid moves.
inline Board striped_board(int rows = 4, int cols = 4) {
    std::vector<int> cells;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) cells.push_back((r + c) % 3 + 1);
    return Board(rows, cols, std::move(cells));
}

// Bomb in the middle, all neighbors distinct: exactly the 4 bomb swaps.
inline Board bomb_center_board() {
    return Board(3, 3, {1, 2, 3, 4, 0, 1, 2, 3, 4});
}

// Blocker in the top row plus a few achievable runs.
inline Board blocker_board() {
    return Board(4, 4, {1, 1, -1, 1, 2, 3, 1, 2, 1, 2, 2, 3, 3, 1, 2, 1});
}

// One horizontal and one vertical run of 1s sharing the corner cell.
inline Board l_overlap_board() {
    return Board(4, 4, {1, 1, 1, 2, 1, 3, 4, 2, 1, 2, 4, 3, 4, 2, 3, 1});
}

// Random board over the full code range, for serialization properties.
inline Board random_codes_board(SplitMix64& rng, int max_rows = 9, int max_cols = 9,
                                int colors = 5) {
    int rows = 1 + static_cast<int>(rng.below(max_rows));
    int cols = 1 + static_cast<int>(rng.below(max_cols));
    std::vector<int> cells;
    for (int i = 0; i < rows * cols; ++i) {
        uint64_t pick = rng.below(10);
        if (pick == 0)
            cells.push_back(kBlocker);
        else if (pick == 1)
            cells.push_back(kBomb);
        else
            cells.push_back(1 + static_cast<int>(rng.below(colors)));
    }
    return Board(rows, cols, std::move(cells));
}

}  // namespace m3::testfix
