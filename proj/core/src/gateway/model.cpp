#include <aprgauntlet/gateway/model.hpp>

#include <aprgauntlet/digest.hpp>
#include <aprgauntlet/error.hpp>

namespace aprgauntlet::gateway {

std::string_view to_string(Provider p) {
    switch (p) {
        case Provider::remote_api: return "remote_api";
        case Provider::local_server: return "local_server";
        case Provider::mock: return "mock";
    }
    return "mock";
}

std::string_view to_string(OutputMode m) {
    return m == OutputMode::structured ? "structured" : "unstructured_text";
}

std::string_view to_string(Role r) {
    return r == Role::system ? "system" : "user";
}

std::string_view to_string(FinishReason r) {
    switch (r) {
        case FinishReason::stop: return "stop";
        case FinishReason::length: return "length";
        case FinishReason::error: return "error";
    }
    return "error";
}

Provider provider_from_string(std::string_view s) {
    if (s == "remote_api") return Provider::remote_api;
    if (s == "local_server") return Provider::local_server;
    if (s == "mock") return Provider::mock;
    throw Error(ErrorKind::schema, "unknown provider '" + std::string(s) + "'");
}

OutputMode output_mode_from_string(std::string_view s) {
    if (s == "unstructured_text") return OutputMode::unstructured_text;
    if (s == "structured") return OutputMode::structured;
    throw Error(ErrorKind::schema, "unknown output mode '" + std::string(s) + "'");
}

void ModelSpec::validate() const {
    if (name.empty()) {
        throw Error(ErrorKind::configuration, "model name must not be empty");
    }
    if (provider == Provider::mock && !endpoint.empty()) {
        throw Error(ErrorKind::configuration,
                    "mock model '" + name + "' must not declare an endpoint");
    }
    if (provider != Provider::mock && endpoint.empty()) {
        throw Error(ErrorKind::configuration, "model '" + name + "' needs an endpoint");
    }
    if (output_mode == OutputMode::structured && response_schema.empty()) {
        throw Error(ErrorKind::configuration,
                    "structured model '" + name + "' needs a response schema name");
    }
    if (temperature < 0.0) {
        throw Error(ErrorKind::configuration, "temperature must be >= 0");
    }
}

void ChatRequest::validate() const {
    model.validate();
    if (messages.empty()) {
        throw Error(ErrorKind::invalid_parameter, "chat request needs at least one message");
    }
    if (max_output_chars <= 0) {
        throw Error(ErrorKind::invalid_parameter, "max_output_chars must be positive");
    }
}

std::string ChatRequest::digest() const {
    std::string blob;
    for (const auto& m : messages) {
        blob += to_string(m.role);
        blob.push_back(':');
        blob += m.text;
        blob.push_back('\n');
    }
    return sha256_hex(blob);
}

long estimate_tokens_from_chars(std::size_t chars) {
    return static_cast<long>(chars / 4);
}

}  // namespace aprgauntlet::gateway
