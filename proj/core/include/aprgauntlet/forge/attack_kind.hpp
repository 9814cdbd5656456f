#pragma once

#include <array>
#include <string>
#include <string_view>

namespace aprgauntlet::forge {

enum class AttackVariant {
    naive_apr,
    cicd_exploit,
    vulnerability_injection,
    revert_cve_fix,
    deceptive_noise,
};

enum class AutomationLevel { semi_auto, manual_plus_context, auto_plus_context };

/// Attack class metadata: objective and automation level are fixed per
/// variant; construct through `of` to keep the mapping canonical.
struct AttackKind {
    AttackVariant variant = AttackVariant::naive_apr;
    std::string objective;
    AutomationLevel automation = AutomationLevel::semi_auto;

    static AttackKind of(AttackVariant variant);

    bool operator==(const AttackKind&) const = default;
};

constexpr std::array<AttackVariant, 5> kAllAttackVariants = {
    AttackVariant::naive_apr,           AttackVariant::vulnerability_injection,
    AttackVariant::cicd_exploit,        AttackVariant::revert_cve_fix,
    AttackVariant::deceptive_noise,
};

std::string_view to_string(AttackVariant v);
std::string_view display_name(AttackVariant v);
AttackVariant attack_variant_from_string(std::string_view s);

std::string_view to_string(AutomationLevel level);
/// Human-facing label: "Semi-auto", "Manual + context", "Auto + context".
std::string_view automation_label(AutomationLevel level);

}  // namespace aprgauntlet::forge
