#pragma once

#include <string>
#include <vector>

#include "m3/board.hpp"
#include "m3/patterns.hpp"

namespace m3 {

enum class Role { user, system };

struct Message {
    Role role = Role::user;
    std::string content;

    friend bool operator==(const Message&, const Message&) = default;
};

enum class PromptMode { RulesOnly, ExamplesOnly, Both };

const char* prompt_mode_name(PromptMode mode);
PromptMode prompt_mode_from_name(const std::string& name);

struct PromptBundle {
    std::vector<Message> messages;
    PromptMode mode = PromptMode::Both;

    // Concatenated message contents, for substring checks and transcripts.
    std::string joined() const;
};

struct GenParams {
    double temperature = 0.5;
    int max_tokens = 500;
    int num_samples = 1;
    std::string model = "o1-mini";
};

// Editable prompt text: persona line, example preamble, <rule> bodies,
// and the closing request. Placeholders use the "{ ... }" scheme.
struct RuleSet {
    std::string persona;
    std::string context_template;   // contains {matrix}
    std::string example_preamble;
    std::vector<std::string> rules;
    std::string request;

    static RuleSet defaults();
    // Loads template files from a directory (persona.txt, context.txt,
    // example_preamble.txt, rules.txt one rule per line, request.txt);
    // missing files fall back to the built-ins.
    static RuleSet load(const std::string& dir);
};

// Assembles context -> examples -> rules per the ablation mode. The
// context (and persona) are always present. Byte-deterministic in its
// inputs. Throws std::invalid_argument for an empty library in an
// example-bearing mode.
PromptBundle build_bundle(const Board& board, const std::vector<PatternRule>& library,
                          const RuleSet& rules, PromptMode mode);

// Canonical text for one move, in the examples' action syntax.
std::string render_action(const Move& move);

// Extracts every "swipe ... (r1,c1) ... with ... (r2,c2)" occurrence,
// case-insensitive, tolerant of surrounding prose; keeps only in-bounds
// adjacent pairs, in order of appearance. Unparseable text yields {}.
std::vector<Move> parse_actions(const std::string& text, int rows, int cols);

}  // namespace m3
