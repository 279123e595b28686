#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "m3/board.hpp"
#include "m3/engine.hpp"
#include "m3/rng.hpp"
#include "support/fixtures.hpp"

using namespace m3;

TEST_CASE("new_board rejects out-of-range parameters") {
    CHECK_THROWS_AS(new_board(3, 3, 1, 42), std::invalid_argument);
    CHECK_THROWS_AS(new_board(2, 9, 5, 42), std::invalid_argument);
    CHECK_THROWS_AS(new_board(9, 9, 10, 42), std::invalid_argument);
}

TEST_CASE("new_board is deterministic in the seed") {
    Board a = new_board(9, 9, 5, 42);
    Board b = new_board(9, 9, 5, 42);
    CHECK(a == b);
    CHECK(!(a == new_board(9, 9, 5, 43)));
}

TEST_CASE("new_board yields a match-free board with at least one move") {
    for (uint64_t seed : {1ull, 7ull, 42ull, 1234ull}) {
        Board b = new_board(9, 9, 5, seed);
        CHECK(find_matches(b).empty());
        CHECK(!enumerate_valid_moves(b).empty());
        for (int v : b.cells()) {
            CHECK(v >= 1);
            CHECK(v <= 5);
        }
    }
}

TEST_CASE("to_matrix_text basic rendering") {
    CHECK(to_matrix_text(Board(1, 3, {1, 1, 1})) == "[[1, 1, 1]]");
    CHECK(to_matrix_text(Board(2, 2, {-1, 0, 3, 5})) == "[[-1, 0], [3, 5]]");
}

TEST_CASE("to_matrix_text matches the documented layout for the fixture board") {
    std::string text = to_matrix_text(testfix::reference_board());
    CHECK(text.rfind("[[3, 1, 3, 5, 1, 1, 3, 3, 1], [1, 3, 4, 3, 3, 1, 5, 3, 5], ", 0) == 0);
}

TEST_CASE("serialization round-trip over random boards") {
    SplitMix64 rng(99);
    for (int i = 0; i < 1000; ++i) {
        Board b = testfix::random_codes_board(rng);
        CHECK(parse_matrix_text(to_matrix_text(b)) == b);
    }
}

TEST_CASE("parse_matrix_text accepts minimal and full-board inputs") {
    Board bomb = parse_matrix_text("[[0]]");
    CHECK(bomb.rows() == 1);
    CHECK(bomb.at(0, 0) == kBomb);

    Board full = parse_matrix_text(to_matrix_text(testfix::reference_board()));
    CHECK(full.cols() == 9);
    CHECK(full.at(1, 2) == 4);

    // Whitespace and quoted tokens are tolerated.
    Board b = parse_matrix_text("[[ '1' ,\n 2 ],\n [ -1, 0 ]]");
    CHECK(b == Board(2, 2, {1, 2, -1, 0}));
}

TEST_CASE("parse_matrix_text rejects malformed input") {
    CHECK_THROWS_AS(parse_matrix_text("[[1,2],[3]]"), ParseError);
    CHECK_THROWS_AS(parse_matrix_text("[[1,x]]"), ParseError);
    CHECK_THROWS_AS(parse_matrix_text("[[1,12]]"), ParseError);   // out of code range
    CHECK_THROWS_AS(parse_matrix_text("[[1,-2]]"), ParseError);
    CHECK_THROWS_AS(parse_matrix_text("[]"), ParseError);
    CHECK_THROWS_AS(parse_matrix_text("[[1]] trailing"), ParseError);
}

TEST_CASE("swap is an involution that preserves the cell multiset") {
    SplitMix64 rng(5);
    for (int i = 0; i < 200; ++i) {
        Board b = testfix::random_codes_board(rng, 6, 6);
        if (b.rows() < 2 && b.cols() < 2) continue;
        Move m = b.cols() >= 2 ? Move{{0, 0}, {0, 1}} : Move{{0, 0}, {1, 0}};
        Board swapped = swap_cells(b, m);
        CHECK(swap_cells(swapped, m) == b);

        auto sorted = [](const Board& x) {
            auto v = x.cells();
            std::sort(v.begin(), v.end());
            return v;
        };
        CHECK(sorted(swapped) == sorted(b));
    }
}

TEST_CASE("swap moves the three same-coded candies onto one row") {
    // Instance of the [[*,1,*],[1,*,1]] shape with 1s as the variable color.
    Board b(2, 3, {2, 1, 3, 1, 4, 1});
    Board after = swap_cells(b, Move{{0, 1}, {1, 1}});
    CHECK(after.at(1, 0) == 1);
    CHECK(after.at(1, 1) == 1);
    CHECK(after.at(1, 2) == 1);
}

TEST_CASE("swap validates its arguments") {
    Board b(3, 3, std::vector<int>(9, 1));
    CHECK_THROWS_AS(swap_cells(b, Move{{0, 0}, {2, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(swap_cells(b, Move{{0, 0}, {0, 3}}), std::out_of_range);
}
