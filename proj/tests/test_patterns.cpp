#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "m3/engine.hpp"
#include "m3/patterns.hpp"
#include "support/fixtures.hpp"

using namespace m3;

namespace {

PatternRule slide_right_rule() { return default_library()[0]; }  // [[1,1,*,1]] (0,3)<->(0,2)

}  // namespace

TEST_CASE("the default library has 15 statically valid rules") {
    const auto& lib = default_library();
    REQUIRE(lib.size() == 15);
    std::set<std::string> rendered;
    for (const auto& rule : lib) {
        CHECK_NOTHROW(validate_rule(rule));
        rendered.insert(rule.render());
    }
    CHECK(rendered.size() == 15);  // no duplicate rules
}

TEST_CASE("the library leads with the documented example rules") {
    const auto& lib = default_library();
    CHECK(lib[0].render() ==
          "Submatrix:[['1', '1', '*', '1']], Action: swipe '1' at position (0,3) "
          "with adjacent '*' at position (0,2)");
    CHECK(lib[1].render() ==
          "Submatrix:[['*', '1', '1'], ['1', '*', '*']], Action: swipe '1' at position (1,0) "
          "with adjacent '*' at position (0,0)");
    CHECK(lib[2].render() ==
          "Submatrix:[['*', '1', '*'], ['1', '*', '1']], Action: swipe '1' at position (0,1) "
          "with adjacent '*' at position (1,1)");
}

TEST_CASE("validate_rule rejects rules whose action makes no run") {
    PatternRule bad;
    bad.grid = {{PatternToken::Var, PatternToken::Var, PatternToken::Wild}};
    bad.action = Move{{0, 2}, {0, 1}};  // leaves the vars split 1-gap-1
    CHECK_THROWS_AS(validate_rule(bad), std::invalid_argument);

    PatternRule offgrid = slide_right_rule();
    offgrid.action = Move{{0, 3}, {0, 4}};
    CHECK_THROWS_AS(validate_rule(offgrid), std::invalid_argument);
}

TEST_CASE("find_placements binds one consistent color") {
    auto pl = find_placements(Board(1, 4, {2, 2, 5, 2}), slide_right_rule());
    REQUIRE(pl.size() == 1);
    CHECK(pl[0].offset == Position{0, 0});
    CHECK(pl[0].bound_color == 2);
    CHECK(!pl[0].transposed);

    // Mixed var colors do not match; bombs cannot bind as the var color.
    CHECK(find_placements(Board(1, 4, {2, 3, 5, 2}), slide_right_rule()).empty());
    CHECK(find_placements(Board(1, 4, {0, 0, 5, 0}), slide_right_rule()).empty());
}

TEST_CASE("find_placements consults the transposed pattern") {
    auto pl = find_placements(Board(4, 1, {2, 2, 3, 2}), slide_right_rule());
    REQUIRE(pl.size() == 1);
    CHECK(pl[0].offset == Position{0, 0});
    CHECK(pl[0].bound_color == 2);
    CHECK(pl[0].transposed);
}

TEST_CASE("find_placements refuses blocker action endpoints but allows bomb wilds") {
    CHECK(find_placements(Board(1, 4, {2, 2, -1, 2}), slide_right_rule()).empty());

    auto pl = find_placements(Board(1, 4, {2, 2, 0, 2}), slide_right_rule());
    REQUIRE(pl.size() == 1);
    CHECK(pl[0].bound_color == 2);
}

TEST_CASE("suggest_moves translates, deduplicates and filters to valid moves") {
    Board v(4, 1, {2, 2, 3, 2});
    std::vector<PatternRule> lib = {slide_right_rule(), slide_right_rule()};
    auto moves = suggest_moves(v, lib);
    REQUIRE(moves.size() == 1);  // duplicate rule suggests the same move once
    CHECK(moves[0] == Move{{3, 0}, {2, 0}});
    CHECK(is_valid_move(v, moves[0]));
}

TEST_CASE("suggested moves on the fixture board are all engine-valid") {
    Board b = testfix::reference_board();
    auto suggested = suggest_moves(b, default_library());
    CHECK(suggested.size() == 5);
    auto valid = enumerate_valid_moves(b);
    for (const auto& m : suggested) {
        CHECK(std::any_of(valid.begin(), valid.end(),
                          [&](const Move& v) { return v == m.canonical(); }));
    }
}

TEST_CASE("rules round-trip through their text form") {
    for (const auto& rule : default_library()) {
        PatternRule back = parse_rule(rule.render());
        CHECK(back.grid == rule.grid);
        CHECK(back.action == rule.action);
        CHECK(back.render() == rule.render());
    }
}

TEST_CASE("parse_rule rejects malformed lines") {
    CHECK_THROWS_AS(parse_rule("not a rule"), ParseError);
    CHECK_THROWS_AS(parse_rule("Submatrix:[['1','1']], Action: swipe"), ParseError);
}

TEST_CASE("the shipped library file matches the built-in library") {
    std::ifstream in(std::string(M3_REPO_DIR) + "/assets/patterns/default_library.txt");
    REQUIRE(in.is_open());
    std::stringstream buf;
    buf << in.rdbuf();
    auto lib = parse_library(buf.str());
    REQUIRE(lib.size() == default_library().size());
    for (size_t i = 0; i < lib.size(); ++i)
        CHECK(lib[i].render() == default_library()[i].render());
}

TEST_CASE("parse_library handles comments and blank lines") {
    std::string text = "# slide family\n\n" + default_library()[0].render() + "\n" +
                       default_library()[1].render() + "\n   # done\n";
    auto lib = parse_library(text);
    REQUIRE(lib.size() == 2);
    CHECK(lib[0].render() == default_library()[0].render());
    CHECK(lib[1].render() == default_library()[1].render());
}
