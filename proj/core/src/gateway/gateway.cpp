#include <aprgauntlet/gateway/gateway.hpp>

#include <aprgauntlet/error.hpp>

#include <httplib.h>
#include <json.hpp>

#include <cctype>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

namespace aprgauntlet::gateway {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string concat_message_text(const ChatRequest& request) {
    std::string out;
    for (const auto& m : request.messages) out += m.text;
    return out;
}

Completion finalize(std::string text, const ChatRequest& request, long prompt_tokens,
                    long completion_tokens, bool estimated, double wall_time_s) {
    Completion c;
    c.finish_reason = FinishReason::stop;
    if (text.size() > static_cast<std::size_t>(request.max_output_chars)) {
        text.resize(static_cast<std::size_t>(request.max_output_chars));
        c.finish_reason = FinishReason::length;
    }
    c.usage.prompt_tokens = prompt_tokens;
    c.usage.completion_tokens =
        completion_tokens >= 0 ? completion_tokens : estimate_tokens_from_chars(text.size());
    c.usage.model_name = request.model.name;
    c.usage.wall_time_s = wall_time_s;
    c.usage.estimated = estimated;
    c.text = std::move(text);
    return c;
}

}  // namespace

// --- MockGateway -----------------------------------------------------------

MockGateway MockGateway::echo() {
    return MockGateway{};
}

MockGateway MockGateway::with_map(std::map<std::string, ScriptEntry> responses) {
    MockGateway g;
    g.mode_ = Mode::map;
    g.map_ = std::move(responses);
    return g;
}

MockGateway MockGateway::with_sequence(std::vector<ScriptEntry> responses) {
    MockGateway g;
    g.mode_ = Mode::sequence;
    g.sequence_ = std::move(responses);
    return g;
}

namespace {

MockGateway::ScriptEntry entry_from_json(const ordered_json& j) {
    using Entry = MockGateway::ScriptEntry;
    if (j.is_string()) return Entry::text_entry(j.get<std::string>());
    if (j.is_object() && j.contains("error")) {
        const std::string kind = j.at("error").get<std::string>();
        if (kind == "transport") return Entry::transport_error_entry(j.value("message", "scripted fault"));
        if (kind == "refusal") return Entry::refusal_error_entry(j.value("message", "scripted refusal"));
        throw Error(ErrorKind::schema, "mock script: unknown error kind '" + kind + "'");
    }
    if (j.is_object() && j.contains("text")) return Entry::text_entry(j.at("text").get<std::string>());
    throw Error(ErrorKind::schema, "mock script: entry must be a string or {error}/{text} object");
}

}  // namespace

MockGateway MockGateway::from_script(const std::string& json_text) {
    ordered_json j = ordered_json::parse(json_text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw Error(ErrorKind::parse, "mock script: not a JSON object");
    }
    const std::string mode = j.value("mode", "echo");
    if (mode == "echo") return echo();
    if (mode == "map") {
        std::map<std::string, ScriptEntry> responses;
        for (const auto& [key, value] : j.value("responses", ordered_json::object()).items()) {
            responses.emplace(key, entry_from_json(value));
        }
        return with_map(std::move(responses));
    }
    if (mode == "sequence") {
        std::vector<ScriptEntry> responses;
        for (const auto& value : j.value("responses", ordered_json::array())) {
            responses.push_back(entry_from_json(value));
        }
        return with_sequence(std::move(responses));
    }
    throw Error(ErrorKind::schema, "mock script: unknown mode '" + mode + "'");
}

MockGateway MockGateway::from_script_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::io, "cannot open mock script '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_script(buf.str());
}

Completion MockGateway::complete(const ChatRequest& request) {
    request.validate();
    const long prompt_tokens = estimate_tokens_from_chars(concat_message_text(request).size());

    ScriptEntry entry;
    switch (mode_) {
        case Mode::echo: {
            entry = ScriptEntry::text_entry("");
            for (auto it = request.messages.rbegin(); it != request.messages.rend(); ++it) {
                if (it->role == Role::user) {
                    entry.value = it->text;
                    break;
                }
            }
            break;
        }
        case Mode::map: {
            auto it = map_.find(request.digest());
            if (it == map_.end()) {
                throw Error(ErrorKind::transport,
                            "mock map has no response for digest " + request.digest());
            }
            entry = it->second;
            break;
        }
        case Mode::sequence: {
            std::lock_guard<std::mutex> lock(cursor_->mutex);
            if (cursor_->next >= sequence_.size()) {
                throw Error(ErrorKind::transport, "mock sequence exhausted");
            }
            entry = sequence_[cursor_->next++];
            break;
        }
    }

    switch (entry.kind) {
        case ScriptEntry::Kind::transport_error:
            throw Error(ErrorKind::transport, entry.value);
        case ScriptEntry::Kind::refusal_error:
            throw Error(ErrorKind::refusal, entry.value);
        case ScriptEntry::Kind::text:
            break;
    }
    return finalize(entry.value, request, prompt_tokens, -1, true, 0.0);
}

// --- RemoteGateway ---------------------------------------------------------

std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
    auto scheme_end = endpoint.find("://");
    if (scheme_end == std::string::npos) {
        throw Error(ErrorKind::configuration, "endpoint '" + endpoint + "' has no scheme");
    }
    auto path_start = endpoint.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {endpoint, "/"};
    return {endpoint.substr(0, path_start), endpoint.substr(path_start)};
}

RemoteGateway::RemoteGateway(RetryPolicy policy, std::string api_key_env_suffix)
    : policy_(policy), api_key_env_suffix_(std::move(api_key_env_suffix)) {}

std::string RemoteGateway::api_key_env_name(const ModelSpec& model) const {
    std::string suffix = api_key_env_suffix_;
    if (suffix.empty()) {
        suffix = std::string(to_string(model.provider));
    }
    for (auto& c : suffix) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return "APR_GAUNTLET_API_KEY_" + suffix;
}

std::string RemoteGateway::build_request_body(const ChatRequest& request) const {
    ordered_json body;
    body["model"] = request.model.name;
    body["messages"] = ordered_json::array();
    for (const auto& m : request.messages) {
        body["messages"].push_back({{"role", std::string(to_string(m.role))}, {"content", m.text}});
    }
    body["temperature"] = request.model.temperature;
    body["max_tokens"] = std::max(1, request.max_output_chars / 4);
    if (request.model.output_mode == OutputMode::structured) {
        body["response_format"] = {{"type", "json_object"}};
    }
    return body.dump();
}

RemoteGateway::RawResult RemoteGateway::send_once(const ChatRequest& request,
                                                  const std::string& body_json) {
    auto [base, path] = split_endpoint(request.model.endpoint);
    httplib::Client client(base);
    client.set_connection_timeout(30);
    client.set_read_timeout(120);

    httplib::Headers headers;
    const char* key = std::getenv(api_key_env_name(request.model).c_str());
    if (key != nullptr && *key != '\0') {
        headers.emplace("Authorization", std::string("Bearer ") + key);
    }
    auto res = client.Post(path, headers, body_json, "application/json");
    RawResult out;
    if (!res) {
        out.transport_failed = true;
        out.error = httplib::to_string(res.error());
        return out;
    }
    out.status = res->status;
    out.body = res->body;
    return out;
}

Completion RemoteGateway::complete(const ChatRequest& request) {
    request.validate();
    const std::string body = build_request_body(request);
    const long prompt_tokens_estimate = estimate_tokens_from_chars(concat_message_text(request).size());

    std::string last_error;
    const int attempts = policy_.max_retries + 1;
    for (int attempt = 0; attempt < attempts; ++attempt) {
        if (attempt > 0 && policy_.backoff_base_ms > 0) {
            double delay = policy_.backoff_base_ms;
            for (int i = 1; i < attempt; ++i) delay *= policy_.backoff_factor;
            std::this_thread::sleep_for(std::chrono::milliseconds(static_cast<long>(delay)));
        }
        const auto started = std::chrono::steady_clock::now();
        RawResult raw = send_once(request, body);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

        if (raw.transport_failed) {
            last_error = raw.error.empty() ? "connection failed" : raw.error;
            continue;
        }
        if (raw.status == 429 || raw.status >= 500) {
            last_error = "HTTP " + std::to_string(raw.status);
            continue;
        }
        if (raw.status >= 400) {
            throw Error(ErrorKind::refusal,
                        "provider returned HTTP " + std::to_string(raw.status) + ": " + raw.body);
        }

        ordered_json j = ordered_json::parse(raw.body, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("choices") ||
            !j["choices"].is_array() || j["choices"].empty()) {
            last_error = "malformed provider payload";
            continue;
        }
        const auto& choice = j["choices"][0];
        std::string text;
        if (choice.contains("message") && choice["message"].contains("content") &&
            choice["message"]["content"].is_string()) {
            text = choice["message"]["content"].get<std::string>();
        } else {
            last_error = "malformed provider payload";
            continue;
        }
        if (choice.contains("refusal") && choice["refusal"].is_string() &&
            !choice["refusal"].get<std::string>().empty()) {
            throw Error(ErrorKind::refusal, choice["refusal"].get<std::string>());
        }

        long prompt_tokens = prompt_tokens_estimate;
        long completion_tokens = -1;
        bool estimated = true;
        if (j.contains("usage") && j["usage"].is_object()) {
            const auto& usage = j["usage"];
            if (usage.contains("prompt_tokens") && usage.contains("completion_tokens")) {
                prompt_tokens = usage["prompt_tokens"].get<long>();
                completion_tokens = usage["completion_tokens"].get<long>();
                estimated = false;
            }
        }
        return finalize(std::move(text), request, prompt_tokens, completion_tokens, estimated,
                        wall);
    }
    throw Error(ErrorKind::transport, "gave up after " + std::to_string(attempts) +
                                          " attempts; last error: " + last_error);
}

}  // namespace aprgauntlet::gateway
