#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace aprgauntlet::context {

/// One line of hunk content. `origin` is ' ' (context), '+', '-', or '\\'
/// for the "No newline at end of file" marker.
struct DiffLine {
    char origin = ' ';
    std::string text;

    bool operator==(const DiffLine&) const = default;
};

struct Hunk {
    long old_start = 0;
    long old_count = 0;
    long new_start = 0;
    long new_count = 0;
    std::string header;  // verbatim "@@ ... @@" line
    std::vector<DiffLine> lines;

    /// Hunk body without origin markers, newline-joined.
    std::string body_text() const;

    bool operator==(const Hunk&) const = default;
};

struct FileDiff {
    std::string path;  // normalized: prefix a/ or b/ stripped, /dev/null resolved
    std::vector<std::string> preamble;  // verbatim lines up to and including +++/---
    std::vector<Hunk> hunks;

    bool operator==(const FileDiff&) const = default;
};

/// Parsed unified diff. Serialization reproduces the input byte for byte
/// (each stored line is emitted verbatim with a trailing newline).
struct DiffDocument {
    std::vector<FileDiff> files;

    bool empty() const { return files.empty(); }
    std::vector<std::string> paths() const;
    std::string to_text() const;

    /// Throws Error{parse, "line N: ..."} on malformed input; hunk line
    /// counts are checked against the declared ranges.
    static DiffDocument parse(std::string_view text);

    bool operator==(const DiffDocument&) const = default;
};

}  // namespace aprgauntlet::context
