#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace aprgauntlet {

/// Failure categories used across the harness. Each maps to one class of
/// contract violation; callers that need to branch on a failure match on
/// the kind, not on message text.
enum class ErrorKind {
    invalid_parameter,
    configuration,
    incompatible_signature,
    parse,
    template_syntax,
    missing_placeholder,
    generation_failed,
    transport,
    refusal,
    missing_price,
    unparseable_verdict,
    schema,
    duplicate_label,
    validation,
    undefined_rate,
    invalid_input,
    io,
};

constexpr std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_parameter: return "invalid-parameter";
        case ErrorKind::configuration: return "configuration";
        case ErrorKind::incompatible_signature: return "incompatible-signature";
        case ErrorKind::parse: return "parse";
        case ErrorKind::template_syntax: return "template-syntax";
        case ErrorKind::missing_placeholder: return "missing-placeholder";
        case ErrorKind::generation_failed: return "generation-failed";
        case ErrorKind::transport: return "transport";
        case ErrorKind::refusal: return "refusal";
        case ErrorKind::missing_price: return "missing-price";
        case ErrorKind::unparseable_verdict: return "unparseable-verdict";
        case ErrorKind::schema: return "schema";
        case ErrorKind::duplicate_label: return "duplicate-label";
        case ErrorKind::validation: return "validation";
        case ErrorKind::undefined_rate: return "undefined-rate";
        case ErrorKind::invalid_input: return "invalid-input";
        case ErrorKind::io: return "io";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message),
          kind_(kind),
          message_(std::move(message)) {}

    ErrorKind kind() const noexcept { return kind_; }

    /// Message without the kind prefix.
    const std::string& detail() const noexcept { return message_; }

private:
    ErrorKind kind_;
    std::string message_;
};

}  // namespace aprgauntlet
