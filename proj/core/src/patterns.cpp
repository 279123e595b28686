#include "m3/patterns.hpp"

#include <regex>
#include <set>
#include <sstream>

#include "m3/engine.hpp"

namespace m3 {

PatternRule PatternRule::transposed() const {
    PatternRule out;
    out.name = name + "_t";
    out.grid.assign(cols(), std::vector<PatternToken>(rows()));
    for (int r = 0; r < rows(); ++r)
        for (int c = 0; c < cols(); ++c) out.grid[c][r] = grid[r][c];
    out.action = Move{{action.a.col, action.a.row}, {action.b.col, action.b.row}};
    return out;
}

std::string PatternRule::render() const {
    std::ostringstream out;
    out << "Submatrix:[";
    for (int r = 0; r < rows(); ++r) {
        if (r > 0) out << ", ";
        out << '[';
        for (int c = 0; c < cols(); ++c) {
            if (c > 0) out << ", ";
            out << '\'' << (grid[r][c] == PatternToken::Var ? '1' : '*') << '\'';
        }
        out << ']';
    }
    auto token_at = [&](Position p) { return grid[p.row][p.col] == PatternToken::Var ? '1' : '*'; };
    out << "], Action: swipe '" << token_at(action.a) << "' at position (" << action.a.row << ","
        << action.a.col << ") with adjacent '" << token_at(action.b) << "' at position ("
        << action.b.row << "," << action.b.col << ")";
    return out.str();
}

void validate_rule(const PatternRule& rule) {
    if (rule.rows() < 1 || rule.cols() < 1) throw std::invalid_argument(rule.name + ": empty grid");
    for (const auto& row : rule.grid)
        if (static_cast<int>(row.size()) != rule.cols())
            throw std::invalid_argument(rule.name + ": ragged grid");
    auto inside = [&](Position p) {
        return p.row >= 0 && p.row < rule.rows() && p.col >= 0 && p.col < rule.cols();
    };
    if (!inside(rule.action.a) || !inside(rule.action.b) || !rule.action.adjacent())
        throw std::invalid_argument(rule.name + ": action endpoints invalid");

    // Execute the action on the token grid and look for >=3 collinear Vars.
    auto g = rule.grid;
    std::swap(g[rule.action.a.row][rule.action.a.col], g[rule.action.b.row][rule.action.b.col]);
    auto has_run = [&]() {
        for (int r = 0; r < rule.rows(); ++r) {
            int run = 0;
            for (int c = 0; c < rule.cols(); ++c) {
                run = g[r][c] == PatternToken::Var ? run + 1 : 0;
                if (run >= 3) return true;
            }
        }
        for (int c = 0; c < rule.cols(); ++c) {
            int run = 0;
            for (int r = 0; r < rule.rows(); ++r) {
                run = g[r][c] == PatternToken::Var ? run + 1 : 0;
                if (run >= 3) return true;
            }
        }
        return false;
    };
    if (!has_run())
        throw std::invalid_argument(rule.name + ": action does not line up three variable cells");
}

namespace {

void placements_of(const Board& board, const PatternRule& rule, bool transposed,
                   std::vector<Placement>& out) {
    int h = rule.rows(), w = rule.cols();
    if (h > board.rows() || w > board.cols()) return;
    for (int r0 = 0; r0 + h <= board.rows(); ++r0)
        for (int c0 = 0; c0 + w <= board.cols(); ++c0) {
            int color = 0;
            bool ok = true;
            for (int r = 0; ok && r < h; ++r)
                for (int c = 0; ok && c < w; ++c) {
                    if (rule.grid[r][c] != PatternToken::Var) continue;
                    int v = board.at(r0 + r, c0 + c);
                    if (!is_regular(v) || (color != 0 && v != color)) ok = false;
                    color = v;
                }
            if (!ok) continue;
            // Both swapped cells must be swappable.
            Position pa{r0 + rule.action.a.row, c0 + rule.action.a.col};
            Position pb{r0 + rule.action.b.row, c0 + rule.action.b.col};
            if (board.at(pa) == kBlocker || board.at(pb) == kBlocker) continue;
            out.push_back({{r0, c0}, color, transposed});
        }
}

}  // namespace

std::vector<Placement> find_placements(const Board& board, const PatternRule& rule) {
    if (rule.rows() > board.rows() && rule.cols() > board.cols())
        throw std::invalid_argument("pattern larger than board");
    std::vector<Placement> out;
    placements_of(board, rule, false, out);
    PatternRule t = rule.transposed();
    if (t.grid != rule.grid || !(t.action == rule.action)) placements_of(board, t, true, out);
    return out;
}

std::vector<Move> suggest_moves(const Board& board, const std::vector<PatternRule>& library) {
    std::vector<Move> out;
    std::set<std::pair<std::pair<int, int>, std::pair<int, int>>> seen;
    for (const auto& rule : library) {
        if (rule.rows() > board.rows() && rule.cols() > board.cols()) continue;
        for (const auto& p : find_placements(board, rule)) {
            Move local = p.transposed ? rule.transposed().action : rule.action;
            Move m{{p.offset.row + local.a.row, p.offset.col + local.a.col},
                   {p.offset.row + local.b.row, p.offset.col + local.b.col}};
            Move canon = m.canonical();
            auto key = std::make_pair(std::make_pair(canon.a.row, canon.a.col),
                                      std::make_pair(canon.b.row, canon.b.col));
            if (!seen.insert(key).second) continue;
            if (is_valid_move(board, m)) out.push_back(m);
        }
    }
    return out;
}

namespace {

PatternRule make_rule(std::string name, const std::vector<std::string>& rows, Position a,
                      Position b) {
    PatternRule rule;
    rule.name = std::move(name);
    for (const auto& row : rows) {
        std::vector<PatternToken> r;
        for (char ch : row) r.push_back(ch == '*' ? PatternToken::Wild : PatternToken::Var);
        rule.grid.push_back(std::move(r));
    }
    rule.action = Move{a, b};
    validate_rule(rule);
    return rule;
}

}  // namespace

const std::vector<PatternRule>& default_library() {
    static const std::vector<PatternRule> library = [] {
        std::vector<PatternRule> rules;
        // The documented example rules first, then the
        // split-triple taxonomy: a run of three broken by one gap, fed
        // horizontally or from the row/column beside it.
        rules.push_back(make_rule("h_slide_right", {"11*1"}, {0, 3}, {0, 2}));
        rules.push_back(make_rule("l_feed_left_up", {"*11", "1**"}, {1, 0}, {0, 0}));
        rules.push_back(make_rule("t_feed_mid_down", {"*1*", "1*1"}, {0, 1}, {1, 1}));
        rules.push_back(make_rule("h_slide_left", {"1*11"}, {0, 0}, {0, 1}));
        rules.push_back(make_rule("t_feed_mid_up", {"1*1", "*1*"}, {1, 1}, {0, 1}));
        rules.push_back(make_rule("l_feed_left_down", {"1**", "*11"}, {0, 0}, {1, 0}));
        rules.push_back(make_rule("l_feed_right_up", {"**1", "11*"}, {0, 2}, {1, 2}));
        rules.push_back(make_rule("l_feed_right_down", {"11*", "**1"}, {1, 2}, {0, 2}));
        rules.push_back(make_rule("v_slide_up", {"1", "1", "*", "1"}, {3, 0}, {2, 0}));
        rules.push_back(make_rule("v_slide_down", {"1", "*", "1", "1"}, {0, 0}, {1, 0}));
        rules.push_back(make_rule("v_feed_mid_left", {"*1", "1*", "*1"}, {1, 0}, {1, 1}));
        rules.push_back(make_rule("v_feed_mid_right", {"1*", "*1", "1*"}, {1, 1}, {1, 0}));
        rules.push_back(make_rule("v_feed_top_left", {"1*", "*1", "*1"}, {0, 0}, {0, 1}));
        rules.push_back(make_rule("v_feed_top_right", {"*1", "1*", "1*"}, {0, 1}, {0, 0}));
        rules.push_back(make_rule("v_feed_bottom_left", {"*1", "*1", "1*"}, {2, 0}, {2, 1}));
        return rules;
    }();
    return library;
}

PatternRule parse_rule(const std::string& line) {
    size_t sub = line.find("Submatrix:");
    size_t act = line.find("Action:");
    if (sub == std::string::npos || act == std::string::npos)
        throw ParseError("rule line missing Submatrix/Action: " + line);

    PatternRule rule;
    // Grid: rows of quoted (or bare) '*' / '1' tokens.
    std::string grid_text = line.substr(sub + 10, act - (sub + 10));
    std::regex row_re(R"(\[((?:\s*'?[*1]'?\s*,?)+)\])");
    auto rows_begin = std::sregex_iterator(grid_text.begin(), grid_text.end(), row_re);
    for (auto it = rows_begin; it != std::sregex_iterator(); ++it) {
        std::string row_text = (*it)[1].str();
        // The outermost match also captures the whole list; skip rows that
        // themselves contain brackets.
        if (row_text.find('[') != std::string::npos) continue;
        std::vector<PatternToken> row;
        for (char ch : row_text)
            if (ch == '*' || ch == '1')
                row.push_back(ch == '*' ? PatternToken::Wild : PatternToken::Var);
        if (!row.empty()) rule.grid.push_back(std::move(row));
    }

    std::string action_text = line.substr(act);
    std::regex pos_re(R"(\(\s*(\d+)\s*,\s*(\d+)\s*\))");
    std::vector<Position> positions;
    auto pos_begin = std::sregex_iterator(action_text.begin(), action_text.end(), pos_re);
    for (auto it = pos_begin; it != std::sregex_iterator(); ++it)
        positions.push_back({std::stoi((*it)[1].str()), std::stoi((*it)[2].str())});
    if (positions.size() != 2) throw ParseError("rule action needs exactly two positions: " + line);
    rule.action = Move{positions[0], positions[1]};
    rule.name = "rule";
    validate_rule(rule);
    return rule;
}

std::vector<PatternRule> parse_library(const std::string& text) {
    std::vector<PatternRule> rules;
    std::istringstream in(text);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        PatternRule rule = parse_rule(line);
        rule.name = "rule_" + std::to_string(++n);
        rules.push_back(std::move(rule));
    }
    return rules;
}

}  // namespace m3
