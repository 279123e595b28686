#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "m3/board.hpp"
#include "m3/executor.hpp"
#include "m3/prompting.hpp"
#include "m3/rng.hpp"
#include "m3/shell.hpp"

namespace m3 {

struct Observation {
    Board board;
    int score = 0;
    int level = 1;
    Screen screen = Screen::Menu;
    int iteration = 0;
};

struct AgentDecision {
    std::vector<Move> moves;
    std::vector<Gesture> raw_gestures;  // random agent only
    std::optional<std::string> request_text;
    std::optional<std::string> response_text;
    bool hallucination = false;
};

class TransportError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};
class TimeoutError : public TransportError {
  public:
    using TransportError::TransportError;
};
class MalformedResponse : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Chat-completions wire: POST {base_url}/chat/completions with body
// {model, messages:[{role,content}], temperature, max_tokens}; reply
// content read from choices[0].message.content.
std::string chat_request_body(const PromptBundle& bundle, const GenParams& params);
std::string chat_response_content(const std::string& body_json);

class ChatTransport {
  public:
    virtual ~ChatTransport() = default;
    // Takes a request body, returns a response body. Throws
    // TransportError / TimeoutError on wire failures.
    virtual std::string send(const std::string& request_body) = 0;
};

class HttpTransport : public ChatTransport {
  public:
    HttpTransport(std::string base_url, std::string api_key, int timeout_seconds = 60);
    std::string send(const std::string& request_body) override;

  private:
    std::string base_url_;
    std::string api_key_;
    int timeout_seconds_;
};

// Canned responses from a JSON-lines fixture, consumed in order. Each
// line is {"content": "..."} or {"status": 500} to simulate a wire
// failure. Captures every request body for inspection.
class ScriptedTransport : public ChatTransport {
  public:
    static ScriptedTransport from_file(const std::string& path);
    static ScriptedTransport from_lines(std::vector<std::string> fixture_lines);

    std::string send(const std::string& request_body) override;

    const std::vector<std::string>& captured_requests() const { return requests_; }

  private:
    std::vector<std::string> lines_;
    size_t next_ = 0;
    std::vector<std::string> requests_;
};

class Agent {
  public:
    virtual ~Agent() = default;
    virtual AgentDecision propose(const Observation& obs) = 0;
    virtual const char* name() const = 0;
};

struct LlmAgentConfig {
    GenParams params;
    RuleSet rules = RuleSet::defaults();
    std::vector<PatternRule> library;
    PromptMode mode = PromptMode::Both;
    int max_attempts = 3;
    int backoff_base_ms = 1000;  // 1s, 2s, 4s
};

class LlmAgent : public Agent {
  public:
    LlmAgent(std::shared_ptr<ChatTransport> transport, LlmAgentConfig cfg);
    AgentDecision propose(const Observation& obs) override;
    const char* name() const override { return "llm"; }

  private:
    std::shared_ptr<ChatTransport> transport_;
    LlmAgentConfig cfg_;
};

// Plays the first move the pattern library suggests.
class HeuristicAgent : public Agent {
  public:
    explicit HeuristicAgent(std::vector<PatternRule> library = default_library());
    AgentDecision propose(const Observation& obs) override;
    const char* name() const override { return "heuristic"; }

  private:
    std::vector<PatternRule> library_;
};

// One uniformly random pixel gesture per iteration, blind to the board.
class MonkeyAgent : public Agent {
  public:
    MonkeyAgent(ScreenRect screen, uint64_t seed);
    AgentDecision propose(const Observation& obs) override;
    const char* name() const override { return "monkey"; }

  private:
    ScreenRect screen_;
    SplitMix64 rng_;
};

}  // namespace m3
