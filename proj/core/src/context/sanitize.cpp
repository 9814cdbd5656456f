#include <aprgauntlet/context/sanitize.hpp>

#include <aprgauntlet/context/fuzzy.hpp>

#include <algorithm>

namespace aprgauntlet::context {

std::string_view to_string(RemovalReason reason) {
    switch (reason) {
        case RemovalReason::test: return "test";
        case RemovalReason::documentation: return "documentation";
        case RemovalReason::unrelated: return "unrelated";
    }
    return "unknown";
}

namespace {

std::vector<std::string_view> split_segments(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t slash = s.find('/', start);
        if (slash == std::string_view::npos) {
            out.push_back(s.substr(start));
            break;
        }
        out.push_back(s.substr(start, slash - start));
        start = slash + 1;
    }
    return out;
}

// One-segment match: '*' spans any run, '?' one char.
bool segment_match(std::string_view pat, std::string_view seg) {
    std::size_t p = 0, s = 0;
    std::size_t star_p = std::string_view::npos, star_s = 0;
    while (s < seg.size()) {
        if (p < pat.size() && (pat[p] == seg[s] || pat[p] == '?')) {
            ++p;
            ++s;
        } else if (p < pat.size() && pat[p] == '*') {
            star_p = p++;
            star_s = s;
        } else if (star_p != std::string_view::npos) {
            p = star_p + 1;
            s = ++star_s;
        } else {
            return false;
        }
    }
    while (p < pat.size() && pat[p] == '*') ++p;
    return p == pat.size();
}

bool match_segments(const std::vector<std::string_view>& pat,
                    const std::vector<std::string_view>& segs, std::size_t pi, std::size_t si) {
    while (pi < pat.size()) {
        if (pat[pi] == "**") {
            // Trailing ** means "anything inside": at least one segment.
            if (pi + 1 == pat.size()) return si < segs.size();
            // Elsewhere it spans zero or more whole segments.
            for (std::size_t skip = si; skip <= segs.size(); ++skip) {
                if (match_segments(pat, segs, pi + 1, skip)) return true;
            }
            return false;
        }
        if (si >= segs.size()) return false;
        if (!segment_match(pat[pi], segs[si])) return false;
        ++pi;
        ++si;
    }
    return si == segs.size();
}

}  // namespace

bool glob_match(std::string_view pattern, std::string_view path) {
    return match_segments(split_segments(pattern), split_segments(path), 0, 0);
}

PathClass classify_path(std::string_view path, const ClassifyRules& rules) {
    for (const auto& g : rules.test_globs) {
        if (glob_match(g, path)) return PathClass::test;
    }
    for (const auto& g : rules.doc_globs) {
        if (glob_match(g, path)) return PathClass::documentation;
    }
    return PathClass::other;
}

SanitizedDiff sanitize_diff(const DiffDocument& diff, const std::set<std::string>& seed_paths,
                            const ClassifyRules& rules) {
    SanitizedDiff out;

    // Hunk bodies of seed-path files drive the relatedness check.
    std::vector<std::string> seed_hunks;
    for (const auto& file : diff.files) {
        if (seed_paths.count(file.path) == 0) continue;
        for (const auto& hunk : file.hunks) seed_hunks.push_back(hunk.body_text());
    }

    auto related = [&](const FileDiff& file) {
        if (seed_paths.empty()) return true;
        if (seed_paths.count(file.path) != 0) return true;
        for (const auto& hunk : file.hunks) {
            const std::string body = hunk.body_text();
            for (const auto& seed : seed_hunks) {
                if (fuzzy_ratio(body, seed) >= rules.related_threshold) return true;
            }
        }
        return false;
    };

    for (const auto& file : diff.files) {
        switch (classify_path(file.path, rules)) {
            case PathClass::test:
                out.removed.emplace_back(file.path, RemovalReason::test);
                continue;
            case PathClass::documentation:
                out.removed.emplace_back(file.path, RemovalReason::documentation);
                continue;
            case PathClass::other: break;
        }
        if (!related(file)) {
            out.removed.emplace_back(file.path, RemovalReason::unrelated);
            continue;
        }
        out.retained.files.push_back(file);
    }
    return out;
}

SanitizedDiff sanitize_diff_text(std::string_view diff_text,
                                 const std::set<std::string>& seed_paths,
                                 const ClassifyRules& rules) {
    return sanitize_diff(DiffDocument::parse(diff_text), seed_paths, rules);
}

}  // namespace aprgauntlet::context
