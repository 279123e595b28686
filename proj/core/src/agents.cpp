#include "m3/agents.hpp"

#include <chrono>
#include <fstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

namespace m3 {

using json = nlohmann::ordered_json;

std::string chat_request_body(const PromptBundle& bundle, const GenParams& params) {
    json body;
    body["model"] = params.model;
    body["messages"] = json::array();
    for (const auto& m : bundle.messages)
        body["messages"].push_back({{"role", m.role == Role::system ? "system" : "user"},
                                    {"content", m.content}});
    body["temperature"] = params.temperature;
    body["max_tokens"] = params.max_tokens;
    return body.dump();
}

std::string chat_response_content(const std::string& body_json) {
    json body = json::parse(body_json, nullptr, false);
    if (body.is_discarded()) throw MalformedResponse("response is not JSON");
    if (!body.contains("choices") || !body["choices"].is_array() || body["choices"].empty())
        throw MalformedResponse("response missing choices");
    const auto& msg = body["choices"][0];
    if (!msg.contains("message") || !msg["message"].contains("content") ||
        !msg["message"]["content"].is_string())
        throw MalformedResponse("response missing message content");
    return msg["message"]["content"].get<std::string>();
}

HttpTransport::HttpTransport(std::string base_url, std::string api_key, int timeout_seconds)
    : base_url_(std::move(base_url)), api_key_(std::move(api_key)),
      timeout_seconds_(timeout_seconds) {}

std::string HttpTransport::send(const std::string& request_body) {
    httplib::Client client(base_url_);
    client.set_connection_timeout(timeout_seconds_, 0);
    client.set_read_timeout(timeout_seconds_, 0);
    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
    auto res = client.Post("/chat/completions", headers, request_body, "application/json");
    if (!res) {
        if (res.error() == httplib::Error::ConnectionTimeout ||
            res.error() == httplib::Error::Read)
            throw TimeoutError("chat endpoint timed out");
        throw TransportError("chat endpoint unreachable: " + httplib::to_string(res.error()));
    }
    if (res->status < 200 || res->status >= 300)
        throw TransportError("chat endpoint returned HTTP " + std::to_string(res->status));
    return res->body;
}

ScriptedTransport ScriptedTransport::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open fixture " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return from_lines(std::move(lines));
}

ScriptedTransport ScriptedTransport::from_lines(std::vector<std::string> fixture_lines) {
    ScriptedTransport t;
    t.lines_ = std::move(fixture_lines);
    return t;
}

std::string ScriptedTransport::send(const std::string& request_body) {
    requests_.push_back(request_body);
    if (next_ >= lines_.size()) throw TransportError("scripted fixture exhausted");
    json entry = json::parse(lines_[next_++]);
    if (entry.contains("status") && entry["status"].get<int>() >= 400)
        throw TransportError("scripted HTTP " + std::to_string(entry["status"].get<int>()));
    json body;
    body["choices"] = json::array(
        {{{"message", {{"role", "assistant"}, {"content", entry.at("content").get<std::string>()}}},
          {"finish_reason", "stop"}}});
    body["usage"] = {{"prompt_tokens", 0}, {"completion_tokens", 0}};
    return body.dump();
}

LlmAgent::LlmAgent(std::shared_ptr<ChatTransport> transport, LlmAgentConfig cfg)
    : transport_(std::move(transport)), cfg_(std::move(cfg)) {}

AgentDecision LlmAgent::propose(const Observation& obs) {
    PromptBundle bundle = build_bundle(obs.board, cfg_.library, cfg_.rules, cfg_.mode);
    std::string request = chat_request_body(bundle, cfg_.params);

    std::string response;
    for (int attempt = 1;; ++attempt) {
        try {
            response = transport_->send(request);
            break;
        } catch (const TransportError&) {
            if (attempt >= cfg_.max_attempts) throw;
            std::this_thread::sleep_for(
                std::chrono::milliseconds(cfg_.backoff_base_ms << (attempt - 1)));
        }
    }

    AgentDecision decision;
    decision.request_text = request;
    std::string content = chat_response_content(response);
    decision.response_text = content;
    decision.moves = parse_actions(content, obs.board.rows(), obs.board.cols());
    decision.hallucination = decision.moves.empty();
    return decision;
}

HeuristicAgent::HeuristicAgent(std::vector<PatternRule> library) : library_(std::move(library)) {}

AgentDecision HeuristicAgent::propose(const Observation& obs) {
    AgentDecision decision;
    auto moves = suggest_moves(obs.board, library_);
    if (!moves.empty()) decision.moves.push_back(moves.front());
    return decision;
}

MonkeyAgent::MonkeyAgent(ScreenRect screen, uint64_t seed) : screen_(screen), rng_(seed) {}

AgentDecision MonkeyAgent::propose(const Observation&) {
    auto px = [&] { return screen_.x + static_cast<int>(rng_.below(screen_.width)); };
    auto py = [&] { return screen_.y + static_cast<int>(rng_.below(screen_.height)); };
    AgentDecision decision;
    // Draws are sequenced explicitly so the gesture stream does not depend
    // on argument evaluation order.
    if (rng_.below(2) == 0) {
        int x = px(), y = py();
        decision.raw_gestures.push_back(Gesture::tap(x, y));
    } else {
        int x1 = px(), y1 = py(), x2 = px(), y2 = py();
        decision.raw_gestures.push_back(Gesture::swipe(x1, y1, x2, y2));
    }
    return decision;
}

}  // namespace m3
