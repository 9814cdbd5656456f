#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace aprgauntlet::gateway {

enum class Provider { remote_api, local_server, mock };
enum class OutputMode { unstructured_text, structured };
enum class Role { system, user };
enum class FinishReason { stop, length, error };

std::string_view to_string(Provider p);
std::string_view to_string(OutputMode m);
std::string_view to_string(Role r);
std::string_view to_string(FinishReason r);
Provider provider_from_string(std::string_view s);
OutputMode output_mode_from_string(std::string_view s);

struct ModelSpec {
    std::string name;
    Provider provider = Provider::mock;
    std::string endpoint;  // empty for mock
    OutputMode output_mode = OutputMode::unstructured_text;
    double temperature = 0.0;
    std::string response_schema;  // required when output_mode == structured

    /// Throws Error{configuration} when invariants fail: mock needs no
    /// endpoint, remote/local need one, structured mode needs a schema
    /// name, temperature >= 0.
    void validate() const;
};

struct ChatMessage {
    Role role = Role::user;
    std::string text;
};

struct ChatRequest {
    std::vector<ChatMessage> messages;
    ModelSpec model;
    int max_output_chars = 65536;

    void validate() const;

    /// Stable digest over roles and texts; keys the mock's map mode.
    std::string digest() const;
};

struct UsageRecord {
    long prompt_tokens = 0;
    long completion_tokens = 0;
    std::string model_name;
    double wall_time_s = 0.0;
    bool estimated = false;  // true when token counts come from the chars/4 fallback
};

struct Completion {
    std::string text;
    FinishReason finish_reason = FinishReason::stop;
    UsageRecord usage;
};

/// chars/4 heuristic used when a provider omits token counts.
long estimate_tokens_from_chars(std::size_t chars);

}  // namespace aprgauntlet::gateway
