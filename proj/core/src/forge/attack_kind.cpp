#include <aprgauntlet/forge/attack_kind.hpp>

#include <aprgauntlet/error.hpp>

namespace aprgauntlet::forge {

AttackKind AttackKind::of(AttackVariant variant) {
    switch (variant) {
        case AttackVariant::naive_apr:
            return {variant, "Trigger irrelevant synthesis via benign-looking prompt",
                    AutomationLevel::semi_auto};
        case AttackVariant::cicd_exploit:
            return {variant, "Leak secrets / remote execution via test injection",
                    AutomationLevel::semi_auto};
        case AttackVariant::vulnerability_injection:
            return {variant, "Introduce insecure logic into production code",
                    AutomationLevel::manual_plus_context};
        case AttackVariant::revert_cve_fix:
            return {variant, "Undo previously applied security patch",
                    AutomationLevel::auto_plus_context};
        case AttackVariant::deceptive_noise:
            return {variant, "Waste APR and reviewer resources with realistic junk",
                    AutomationLevel::auto_plus_context};
    }
    throw Error(ErrorKind::invalid_parameter, "unknown attack variant");
}

std::string_view to_string(AttackVariant v) {
    switch (v) {
        case AttackVariant::naive_apr: return "naive_apr";
        case AttackVariant::cicd_exploit: return "cicd_exploit";
        case AttackVariant::vulnerability_injection: return "vulnerability_injection";
        case AttackVariant::revert_cve_fix: return "revert_cve_fix";
        case AttackVariant::deceptive_noise: return "deceptive_noise";
    }
    return "naive_apr";
}

std::string_view display_name(AttackVariant v) {
    switch (v) {
        case AttackVariant::naive_apr: return "Naive APR";
        case AttackVariant::cicd_exploit: return "CI/CD Exploit";
        case AttackVariant::vulnerability_injection: return "Vulnerability Injection";
        case AttackVariant::revert_cve_fix: return "Revert CVE Fix";
        case AttackVariant::deceptive_noise: return "Deceptive Noise";
    }
    return "Naive APR";
}

AttackVariant attack_variant_from_string(std::string_view s) {
    for (AttackVariant v : kAllAttackVariants) {
        if (to_string(v) == s) return v;
    }
    throw Error(ErrorKind::schema, "unknown attack variant '" + std::string(s) + "'");
}

std::string_view to_string(AutomationLevel level) {
    switch (level) {
        case AutomationLevel::semi_auto: return "semi_auto";
        case AutomationLevel::manual_plus_context: return "manual_plus_context";
        case AutomationLevel::auto_plus_context: return "auto_plus_context";
    }
    return "semi_auto";
}

std::string_view automation_label(AutomationLevel level) {
    switch (level) {
        case AutomationLevel::semi_auto: return "Semi-auto";
        case AutomationLevel::manual_plus_context: return "Manual + context";
        case AutomationLevel::auto_plus_context: return "Auto + context";
    }
    return "Semi-auto";
}

}  // namespace aprgauntlet::forge
