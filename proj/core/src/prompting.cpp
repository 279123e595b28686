#include "m3/prompting.hpp"

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

namespace m3 {

const char* prompt_mode_name(PromptMode mode) {
    switch (mode) {
        case PromptMode::RulesOnly: return "rules_only";
        case PromptMode::ExamplesOnly: return "examples_only";
        case PromptMode::Both: return "both";
    }
    return "both";
}

PromptMode prompt_mode_from_name(const std::string& name) {
    if (name == "rules_only" || name == "rules") return PromptMode::RulesOnly;
    if (name == "examples_only" || name == "examples") return PromptMode::ExamplesOnly;
    if (name == "both") return PromptMode::Both;
    throw std::invalid_argument("unknown prompt mode: " + name);
}

std::string PromptBundle::joined() const {
    std::string out;
    for (const auto& m : messages) {
        out += m.content;
        out += '\n';
    }
    return out;
}

RuleSet RuleSet::defaults() {
    RuleSet rs;
    rs.persona =
        "You are a highly experienced game tester with deep knowledge of mobile game "
        "mechanics, strategies, and testing methodologies. Your role is to follow game rules "
        "and meet specific testing requirements to help assess the game's functionality and "
        "enjoyment.";
    rs.context_template =
        "<task> The game's environmental context is a 2D matrix as follows: {matrix} </task>";
    rs.example_preamble =
        "The <example> tag provides examples of the game playtest, showing a specific "
        "submatrix pattern of candies and an exact swipe action. Please reference those "
        "submatrix pattern in the game test. And make sure the entire submatrix must be "
        "matched as it appears in the examples in the game matrix. Moreover, because actions "
        "in examples use coordinates based on the submatrix, translate them to the game "
        "matrix by the submatrix's top-left position. All matrices are 0-indexed.";
    rs.rules = {
        "You are testing a game based on the mechanics of Match-3 games. Players swap "
        "adjacent candies to form horizontal or vertical lines of three or more candies of "
        "the same color. A match of three or more clears those candies from the board.",
        "The game board has been preprocessed and represented as a 2D matrices, with numbers "
        "representing candies of specific colors and types.",
        "Color bombs (represented by 0) are special candies and should be swapped with any "
        "adjacent candy to maximize the effect. These should be prioritized for swaps where "
        "possible.",
        "Blocker candies (represented by -1) cannot be swapped; never propose a move that "
        "touches one.",
    };
    rs.request =
        "Recommend a set of actions for the current game matrix. Answer with lines of the "
        "form: swipe 'X' at position (row,col) with adjacent 'Y' at position (row,col).";
    return rs;
}

namespace {

std::string read_file_or(const std::filesystem::path& p, const std::string& fallback) {
    std::ifstream in(p);
    if (!in) return fallback;
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string s = buf.str();
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    return s;
}

}  // namespace

RuleSet RuleSet::load(const std::string& dir) {
    RuleSet def = defaults();
    RuleSet rs;
    std::filesystem::path d(dir);
    rs.persona = read_file_or(d / "persona.txt", def.persona);
    rs.context_template = read_file_or(d / "context.txt", def.context_template);
    rs.example_preamble = read_file_or(d / "example_preamble.txt", def.example_preamble);
    rs.request = read_file_or(d / "request.txt", def.request);
    std::ifstream rules_in(d / "rules.txt");
    if (rules_in) {
        std::string line;
        while (std::getline(rules_in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (!line.empty() && line[0] != '#') rs.rules.push_back(line);
        }
    }
    if (rs.rules.empty()) rs.rules = def.rules;
    return rs;
}

namespace {

std::string substitute(const std::string& tmpl, const std::string& key, const std::string& value) {
    std::string out = tmpl;
    const std::string needle = "{" + key + "}";
    size_t pos = out.find(needle);
    while (pos != std::string::npos) {
        out.replace(pos, needle.size(), value);
        pos = out.find(needle, pos + value.size());
    }
    return out;
}

}  // namespace

PromptBundle build_bundle(const Board& board, const std::vector<PatternRule>& library,
                          const RuleSet& rules, PromptMode mode) {
    bool want_examples = mode != PromptMode::RulesOnly;
    bool want_rules = mode != PromptMode::ExamplesOnly;
    if (want_examples && library.empty())
        throw std::invalid_argument("example-bearing mode needs a non-empty pattern library");

    PromptBundle bundle;
    bundle.mode = mode;
    bundle.messages.push_back({Role::user, rules.persona});
    bundle.messages.push_back(
        {Role::user, substitute(rules.context_template, "matrix", to_matrix_text(board))});

    if (want_examples) {
        bundle.messages.push_back({Role::user, rules.example_preamble});
        std::string body;
        for (const auto& rule : library) {
            body += "<example>";
            body += rule.render();
            body += "</example>\n";
        }
        bundle.messages.push_back({Role::user, body});
    }
    if (want_rules) {
        std::string body =
            "The <rule> tag provides all game rules. These rules define the game mechanics, "
            "objectives, constraints, and any special actions allowed in the game.\n";
        for (const auto& rule : rules.rules) {
            body += "<rule>";
            body += rule;
            body += "</rule>\n";
        }
        bundle.messages.push_back({Role::user, body});
    }
    bundle.messages.push_back({Role::user, rules.request});
    return bundle;
}

std::string render_action(const Move& move) {
    std::ostringstream out;
    out << "swipe '1' at position (" << move.a.row << "," << move.a.col
        << ") with adjacent '*' at position (" << move.b.row << "," << move.b.col << ")";
    return out.str();
}

std::vector<Move> parse_actions(const std::string& text, int rows, int cols) {
    // Accepts both the quoted rule-text form and the bare "swipe (r,c) with
    // (r,c)" form; anything between keywords is tolerated except parens.
    static const std::regex action_re(
        R"(swipe[^()]*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)[^()]*?with[^()]*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\))",
        std::regex::icase);
    std::vector<Move> out;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), action_re);
         it != std::sregex_iterator(); ++it) {
        Move m{{std::stoi((*it)[1].str()), std::stoi((*it)[2].str())},
               {std::stoi((*it)[3].str()), std::stoi((*it)[4].str())}};
        auto in_bounds = [&](Position p) {
            return p.row >= 0 && p.row < rows && p.col >= 0 && p.col < cols;
        };
        if (in_bounds(m.a) && in_bounds(m.b) && m.adjacent()) out.push_back(m);
    }
    return out;
}

}  // namespace m3
