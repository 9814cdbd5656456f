#include <aprgauntlet/context/diff.hpp>

#include <aprgauntlet/error.hpp>

#include <charconv>

namespace aprgauntlet::context {

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& message) {
    throw Error(ErrorKind::parse, "line " + std::to_string(line_no) + ": " + message);
}

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            if (start < text.size()) lines.emplace_back(text.substr(start));
            break;
        }
        std::string line(text.substr(start, nl - start));
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
        start = nl + 1;
    }
    return lines;
}

std::string strip_header_path(std::string_view header_rest) {
    // "a/src/x.py\t2024-01-01 ..." -> "src/x.py"
    std::size_t tab = header_rest.find('\t');
    std::string_view path = header_rest.substr(0, tab);
    if (path.starts_with("a/") || path.starts_with("b/")) path.remove_prefix(2);
    return std::string(path);
}

bool parse_range(std::string_view text, std::size_t& pos, long& start, long& count) {
    auto read_long = [&](long& out) {
        const char* first = text.data() + pos;
        const char* last = text.data() + text.size();
        auto [p, ec] = std::from_chars(first, last, out);
        if (ec != std::errc{}) return false;
        pos += static_cast<std::size_t>(p - first);
        return true;
    };
    if (!read_long(start)) return false;
    count = 1;  // single-line ranges may omit ",1"
    if (pos < text.size() && text[pos] == ',') {
        ++pos;
        if (!read_long(count)) return false;
    }
    return true;
}

}  // namespace

std::string Hunk::body_text() const {
    std::string out;
    for (const auto& line : lines) {
        if (line.origin == '\\') continue;
        out += line.text;
        out.push_back('\n');
    }
    return out;
}

std::vector<std::string> DiffDocument::paths() const {
    std::vector<std::string> out;
    out.reserve(files.size());
    for (const auto& f : files) out.push_back(f.path);
    return out;
}

std::string DiffDocument::to_text() const {
    std::string out;
    for (const auto& file : files) {
        for (const auto& line : file.preamble) {
            out += line;
            out.push_back('\n');
        }
        for (const auto& hunk : file.hunks) {
            out += hunk.header;
            out.push_back('\n');
            for (const auto& line : hunk.lines) {
                out.push_back(line.origin);
                out += line.text;
                out.push_back('\n');
            }
        }
    }
    return out;
}

DiffDocument DiffDocument::parse(std::string_view text) {
    DiffDocument doc;
    auto lines = split_lines(text);

    std::vector<std::string> pending;  // preamble lines awaiting their ---/+++ pair
    FileDiff* file = nullptr;
    Hunk* hunk = nullptr;
    long old_left = 0;
    long new_left = 0;

    auto close_hunk = [&](std::size_t line_no) {
        if (hunk != nullptr && (old_left != 0 || new_left != 0)) {
            parse_fail(line_no, "hunk ended before declared line counts were met");
        }
        hunk = nullptr;
    };

    auto flush_pending_or_fail = [&](std::size_t line_no) {
        // diff --git blocks without hunks (renames, binary changes) become
        // hunk-less file entries keyed by the header path.
        if (pending.empty()) return;
        std::string path;
        for (const auto& p : pending) {
            if (p.starts_with("diff --git ")) {
                std::string_view rest = std::string_view(p).substr(11);
                std::size_t space = rest.find(' ');
                if (space != std::string_view::npos) {
                    path = strip_header_path(rest.substr(space + 1));
                }
            }
        }
        if (path.empty()) {
            parse_fail(line_no, "stray content outside any file diff");
        }
        FileDiff fd;
        fd.path = path;
        fd.preamble = pending;
        pending.clear();
        doc.files.push_back(std::move(fd));
    };

    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        const std::size_t line_no = i + 1;

        if (hunk != nullptr && (old_left > 0 || new_left > 0)) {
            if (line.starts_with('\\')) {
                hunk->lines.push_back({'\\', line.substr(1)});
                continue;
            }
            if (line.empty()) {
                // Some tools strip the trailing space of blank context lines.
                hunk->lines.push_back({' ', ""});
                --old_left;
                --new_left;
                if (old_left < 0 || new_left < 0) {
                    parse_fail(line_no, "hunk has more lines than its ranges declare");
                }
                continue;
            }
            char origin = line[0];
            if (origin == ' ') {
                --old_left;
                --new_left;
            } else if (origin == '-') {
                --old_left;
            } else if (origin == '+') {
                --new_left;
            } else {
                parse_fail(line_no, std::string("unexpected hunk line prefix '") + origin + "'");
            }
            if (old_left < 0 || new_left < 0) {
                parse_fail(line_no, "hunk has more lines than its ranges declare");
            }
            hunk->lines.push_back({origin, line.substr(1)});
            continue;
        }

        if (hunk != nullptr && line.starts_with('\\')) {
            hunk->lines.push_back({'\\', line.substr(1)});
            continue;
        }

        if (line.starts_with("--- ")) {
            close_hunk(line_no);
            if (i + 1 >= lines.size() || !lines[i + 1].starts_with("+++ ")) {
                parse_fail(line_no + 1, "expected '+++' header after '---'");
            }
            const std::string& plus = lines[i + 1];
            FileDiff fd;
            std::string new_path = strip_header_path(std::string_view(plus).substr(4));
            std::string old_path = strip_header_path(std::string_view(line).substr(4));
            fd.path = new_path == "/dev/null" ? old_path : new_path;
            fd.preamble = pending;
            pending.clear();
            fd.preamble.push_back(line);
            fd.preamble.push_back(plus);
            doc.files.push_back(std::move(fd));
            file = &doc.files.back();
            ++i;
            continue;
        }

        if (line.starts_with("@@")) {
            close_hunk(line_no);
            if (file == nullptr) parse_fail(line_no, "hunk header outside any file diff");
            std::string_view rest = line;
            if (!rest.starts_with("@@ -")) parse_fail(line_no, "malformed hunk header");
            std::size_t pos = 4;
            Hunk h;
            if (!parse_range(rest, pos, h.old_start, h.old_count)) {
                parse_fail(line_no, "malformed old range in hunk header");
            }
            if (pos + 2 > rest.size() || rest[pos] != ' ' || rest[pos + 1] != '+') {
                parse_fail(line_no, "malformed hunk header");
            }
            pos += 2;
            if (!parse_range(rest, pos, h.new_start, h.new_count)) {
                parse_fail(line_no, "malformed new range in hunk header");
            }
            if (pos + 3 > rest.size() || rest.substr(pos, 3) != " @@") {
                parse_fail(line_no, "malformed hunk header");
            }
            h.header = line;
            file->hunks.push_back(std::move(h));
            hunk = &file->hunks.back();
            old_left = hunk->old_count;
            new_left = hunk->new_count;
            continue;
        }

        if (line.starts_with("diff ") || line.starts_with("index ") ||
            line.starts_with("new file mode") || line.starts_with("deleted file mode") ||
            line.starts_with("old mode") || line.starts_with("new mode") ||
            line.starts_with("similarity index") || line.starts_with("rename ") ||
            line.starts_with("copy ") || line.starts_with("Binary files ") ||
            line.starts_with("GIT binary patch")) {
            close_hunk(line_no);
            if (line.starts_with("diff ")) {
                flush_pending_or_fail(line_no);
                file = nullptr;
            }
            pending.push_back(line);
            continue;
        }

        if (line.empty()) {
            // Blank lines between file blocks are tolerated but not kept.
            close_hunk(line_no);
            if (!pending.empty()) parse_fail(line_no, "blank line inside file header block");
            continue;
        }

        parse_fail(line_no, "unrecognized line '" + line.substr(0, 40) + "'");
    }
    close_hunk(lines.size());
    flush_pending_or_fail(lines.size());
    return doc;
}

}  // namespace aprgauntlet::context
