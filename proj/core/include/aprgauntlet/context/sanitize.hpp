#pragma once

#include <aprgauntlet/context/diff.hpp>

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace aprgauntlet::context {

enum class RemovalReason { test, documentation, unrelated };

std::string_view to_string(RemovalReason reason);

/// Path classification used for FileDocument.kind and diff sanitization.
/// Globs use `*` within a path segment and `**` across segments; test
/// globs are checked before documentation globs.
struct ClassifyRules {
    std::vector<std::string> test_globs = {
        "**/test*/**",
        "**/*_test.*",
        "**/tests/**",
    };
    std::vector<std::string> doc_globs = {
        "**/doc*/**", "**/*.md", "**/*.rst", "**/*.txt",
    };
    /// A non-seed file stays when some hunk of it scores at least this
    /// fuzzy ratio against some hunk of a seed-path file.
    double related_threshold = 60.0;
};

/// `**`-aware glob match over '/'-separated paths.
bool glob_match(std::string_view pattern, std::string_view path);

enum class PathClass { test, documentation, other };

PathClass classify_path(std::string_view path, const ClassifyRules& rules);

struct SanitizedDiff {
    DiffDocument retained;
    std::vector<std::pair<std::string, RemovalReason>> removed;

    bool operator==(const SanitizedDiff&) const = default;
};

/// Drops test and documentation file diffs, then drops files unrelated to
/// the seed paths (see ClassifyRules::related_threshold). With no seed
/// paths, no relatedness filtering happens: every non-test, non-doc file
/// stays. Retained and removed partition the input paths exactly.
SanitizedDiff sanitize_diff(const DiffDocument& diff, const std::set<std::string>& seed_paths,
                            const ClassifyRules& rules = {});

/// Parses then sanitizes; parse errors carry the offending line number.
SanitizedDiff sanitize_diff_text(std::string_view diff_text,
                                 const std::set<std::string>& seed_paths,
                                 const ClassifyRules& rules = {});

}  // namespace aprgauntlet::context
