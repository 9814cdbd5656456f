#pragma once

#include <aprgauntlet/gateway/model.hpp>

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace aprgauntlet::gateway {

/// Chat-completion interface. Implementations are shareable across
/// concurrent callers; every call is independent and usage is returned to
/// the caller rather than accumulated internally.
class Gateway {
public:
    virtual ~Gateway() = default;

    /// Throws Error{transport} after exhausted retries, Error{refusal}
    /// when the provider declines. Completion text is truncated to
    /// max_output_chars (finish_reason becomes length).
    virtual Completion complete(const ChatRequest& request) = 0;
};

/// Deterministic offline backend. Three modes:
///  - echo: returns the last user message verbatim
///  - map: responses keyed by ChatRequest::digest()
///  - sequence: scripted responses consumed in call order
/// Scripted entries may also inject transport or refusal failures.
class MockGateway : public Gateway {
public:
    struct ScriptEntry {
        enum class Kind { text, transport_error, refusal_error };
        Kind kind = Kind::text;
        std::string value;

        static ScriptEntry text_entry(std::string text) {
            return {Kind::text, std::move(text)};
        }
        static ScriptEntry transport_error_entry(std::string message = "scripted fault") {
            return {Kind::transport_error, std::move(message)};
        }
        static ScriptEntry refusal_error_entry(std::string message = "scripted refusal") {
            return {Kind::refusal_error, std::move(message)};
        }
    };

    static MockGateway echo();
    static MockGateway with_map(std::map<std::string, ScriptEntry> responses);
    static MockGateway with_sequence(std::vector<ScriptEntry> responses);

    /// Script file format (JSON):
    ///   {"mode": "echo"}
    ///   {"mode": "map", "responses": {"<digest>": "text" | {"error": "..."}}}
    ///   {"mode": "sequence", "responses": ["text", {"error": "transport"}]}
    static MockGateway from_script(const std::string& json_text);
    static MockGateway from_script_file(const std::string& path);

    Completion complete(const ChatRequest& request) override;

private:
    enum class Mode { echo, map, sequence };
    Mode mode_ = Mode::echo;
    std::map<std::string, ScriptEntry> map_;
    std::vector<ScriptEntry> sequence_;
    struct SequenceCursor {
        std::mutex mutex;
        std::size_t next = 0;
    };
    std::unique_ptr<SequenceCursor> cursor_ = std::make_unique<SequenceCursor>();
};

struct RetryPolicy {
    int max_retries = 3;  // transport attempts = max_retries + 1
    int backoff_base_ms = 250;
    double backoff_factor = 2.0;
};

/// HTTP chat-completion client (bearer-token auth, OpenAI-style wire
/// format). API keys come only from the environment:
/// APR_GAUNTLET_API_KEY_<SUFFIX>.
class RemoteGateway : public Gateway {
public:
    explicit RemoteGateway(RetryPolicy policy = {}, std::string api_key_env_suffix = "");

    Completion complete(const ChatRequest& request) override;

    /// Environment variable consulted for the bearer token.
    std::string api_key_env_name(const ModelSpec& model) const;

protected:
    struct RawResult {
        bool transport_failed = false;  // could not reach / no response
        std::string error;              // transport failure detail
        int status = 0;
        std::string body;
    };

    /// One HTTP exchange; overridable for fault-injection in tests.
    virtual RawResult send_once(const ChatRequest& request, const std::string& body_json);

private:
    RetryPolicy policy_;
    std::string api_key_env_suffix_;

    std::string build_request_body(const ChatRequest& request) const;
};

/// Splits "http://host:port/some/path" into base URL and path.
std::pair<std::string, std::string> split_endpoint(const std::string& endpoint);

}  // namespace aprgauntlet::gateway
