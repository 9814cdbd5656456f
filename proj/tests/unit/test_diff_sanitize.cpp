#include <doctest.h>

#include <aprgauntlet/context/diff.hpp>
#include <aprgauntlet/context/sanitize.hpp>
#include <aprgauntlet/error.hpp>

#include <set>
#include <string>

using namespace aprgauntlet;
using namespace aprgauntlet::context;

namespace {

const char* kMixedDiff =
    "diff --git a/src/core.ext b/src/core.ext\n"
    "index 111..222 100644\n"
    "--- a/src/core.ext\n"
    "+++ b/src/core.ext\n"
    "@@ -10,3 +10,3 @@ def handler():\n"
    " keep\n"
    "-validate(token)\n"
    "+pass\n"
    " done\n"
    "diff --git a/docs/readme.md b/docs/readme.md\n"
    "--- a/docs/readme.md\n"
    "+++ b/docs/readme.md\n"
    "@@ -1,2 +1,2 @@\n"
    "-old text\n"
    "+new text\n"
    " trailing\n"
    "diff --git a/tests/t.ext b/tests/t.ext\n"
    "--- a/tests/t.ext\n"
    "+++ b/tests/t.ext\n"
    "@@ -1 +1,2 @@\n"
    " assert_ok()\n"
    "+assert_more()\n";

}  // namespace

TEST_SUITE_BEGIN("diff-sanitize");

TEST_CASE("parse and byte-exact round trip") {
    DiffDocument doc = DiffDocument::parse(kMixedDiff);
    REQUIRE(doc.files.size() == 3);
    CHECK(doc.files[0].path == "src/core.ext");
    CHECK(doc.files[1].path == "docs/readme.md");
    CHECK(doc.files[2].path == "tests/t.ext");
    CHECK(doc.files[0].hunks.size() == 1);
    CHECK(doc.files[0].hunks[0].old_start == 10);
    CHECK(doc.files[0].hunks[0].old_count == 3);
    CHECK(doc.to_text() == kMixedDiff);
}

TEST_CASE("single-line ranges may omit the count") {
    DiffDocument doc = DiffDocument::parse(
        "--- a/x\n+++ b/x\n@@ -1 +1 @@\n-a\n+b\n");
    REQUIRE(doc.files.size() == 1);
    CHECK(doc.files[0].hunks[0].old_count == 1);
    CHECK(doc.files[0].hunks[0].new_count == 1);
    CHECK(doc.to_text() == "--- a/x\n+++ b/x\n@@ -1 +1 @@\n-a\n+b\n");
}

TEST_CASE("new and deleted files resolve the non-null path") {
    DiffDocument doc = DiffDocument::parse(
        "--- /dev/null\n+++ b/added.py\n@@ -0,0 +1 @@\n+print(1)\n"
        "--- a/gone.py\n+++ /dev/null\n@@ -1 +0,0 @@\n-print(2)\n");
    REQUIRE(doc.files.size() == 2);
    CHECK(doc.files[0].path == "added.py");
    CHECK(doc.files[1].path == "gone.py");
}

TEST_CASE("no-newline marker lines are kept verbatim") {
    const char* text =
        "--- a/x\n+++ b/x\n@@ -1 +1 @@\n-a\n+b\n\\ No newline at end of file\n";
    DiffDocument doc = DiffDocument::parse(text);
    CHECK(doc.to_text() == text);
}

TEST_CASE("empty input parses to an empty document") {
    CHECK(DiffDocument::parse("").empty());
    CHECK(DiffDocument::parse("\n\n").empty());
}

TEST_CASE("parse errors carry line numbers") {
    auto expect_parse_error = [](const char* text, const char* needle) {
        try {
            DiffDocument::parse(text);
            FAIL_CHECK("expected parse error for: ", needle);
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::parse);
            CHECK_MESSAGE(std::string(e.what()).find("line ") != std::string::npos, e.what());
        }
    };
    // Too many content lines for the declared range.
    expect_parse_error("--- a/x\n+++ b/x\n@@ -1 +1 @@\n-a\n+b\n+c\n", "count overflow");
    // Hunk cut short.
    expect_parse_error("--- a/x\n+++ b/x\n@@ -2,2 +2,2 @@\n-a\n+b\n", "count underflow");
    // --- without +++.
    expect_parse_error("--- a/x\n@@ -1 +1 @@\n-a\n+b\n", "missing +++");
    // Hunk header with no file.
    expect_parse_error("@@ -1 +1 @@\n-a\n+b\n", "orphan hunk");
    // Garbage line.
    expect_parse_error("random prose\n", "prose");
}

TEST_CASE("glob matching with globstar") {
    CHECK(glob_match("**/*.md", "readme.md"));
    CHECK(glob_match("**/*.md", "docs/deep/readme.md"));
    CHECK(glob_match("**/tests/**", "tests/test_x.py"));
    CHECK(glob_match("**/tests/**", "pkg/tests/unit/x.py"));
    CHECK_FALSE(glob_match("**/tests/**", "tests"));  // needs a trailing segment
    CHECK(glob_match("**/test*/**", "testdata/blob.bin"));
    CHECK(glob_match("**/*_test.*", "pkg/foo_test.go"));
    CHECK_FALSE(glob_match("**/*_test.*", "pkg/footest.go"));
    CHECK_FALSE(glob_match("**/doc*/**", "src/dock.py"));  // dock is a file, not a dir
}

TEST_CASE("classification order: test rules win over documentation rules") {
    ClassifyRules rules;
    CHECK(classify_path("tests/readme.md", rules) == PathClass::test);
    CHECK(classify_path("docs/guide.rst", rules) == PathClass::documentation);
    CHECK(classify_path("src/core.py", rules) == PathClass::other);
    CHECK(classify_path("notes.txt", rules) == PathClass::documentation);
}

TEST_CASE("sanitize removes a tests-only diff entirely") {
    SanitizedDiff out = sanitize_diff_text(
        "--- a/tests/test_x.py\n+++ b/tests/test_x.py\n@@ -1 +1 @@\n-a\n+b\n", {});
    CHECK(out.retained.empty());
    REQUIRE(out.removed.size() == 1);
    CHECK(out.removed[0].first == "tests/test_x.py");
    CHECK(out.removed[0].second == RemovalReason::test);
}

TEST_CASE("sanitize keeps only the seed path in the mixed fixture") {
    SanitizedDiff out = sanitize_diff_text(kMixedDiff, {"src/core.ext"});
    REQUIRE(out.retained.files.size() == 1);
    CHECK(out.retained.files[0].path == "src/core.ext");
    REQUIRE(out.removed.size() == 2);
    std::set<std::string> removed_paths;
    for (const auto& [path, reason] : out.removed) removed_paths.insert(path);
    CHECK(removed_paths == std::set<std::string>{"docs/readme.md", "tests/t.ext"});
    // Retained subset still parses as a unified diff.
    CHECK_NOTHROW(DiffDocument::parse(out.retained.to_text()));
}

TEST_CASE("empty diff sanitizes to an empty result") {
    SanitizedDiff out = sanitize_diff_text("", {});
    CHECK(out.retained.empty());
    CHECK(out.removed.empty());
}

TEST_CASE("unrelated files drop below the fuzzy threshold and stay above it") {
    const char* diff =
        "--- a/src/seed.py\n+++ b/src/seed.py\n@@ -1,2 +1,2 @@\n"
        " def check_token(token):\n-    return validate(token)\n+    return True\n"
        "--- a/src/similar.py\n+++ b/src/similar.py\n@@ -1,2 +1,2 @@\n"
        " def check_token(token):\n-    return validate(token)\n+    return False\n"
        "--- a/src/distant.py\n+++ b/src/distant.py\n@@ -1 +1 @@\n"
        "-zzz qqq completely other universe 12345\n+yyy www nothing shared here 67890\n";
    SanitizedDiff out = sanitize_diff_text(diff, {"src/seed.py"});
    std::set<std::string> retained;
    for (const auto& f : out.retained.files) retained.insert(f.path);
    CHECK(retained == std::set<std::string>{"src/seed.py", "src/similar.py"});
    bool saw_unrelated = false;
    for (const auto& [path, reason] : out.removed) {
        if (path == "src/distant.py") {
            saw_unrelated = true;
            CHECK(reason == RemovalReason::unrelated);
        }
    }
    CHECK(saw_unrelated);
}

TEST_CASE("no seed paths disables unrelated filtering") {
    SanitizedDiff out = sanitize_diff_text(kMixedDiff, {});
    REQUIRE(out.retained.files.size() == 1);  // tests + docs still drop
    CHECK(out.retained.files[0].path == "src/core.ext");
}

TEST_CASE("partition invariant: retained + removed == input, disjoint") {
    SanitizedDiff out = sanitize_diff_text(kMixedDiff, {"src/core.ext"});
    std::set<std::string> seen;
    for (const auto& f : out.retained.files) {
        CHECK(seen.insert(f.path).second);
        CHECK(classify_path(f.path, {}) == PathClass::other);
    }
    for (const auto& [path, reason] : out.removed) CHECK(seen.insert(path).second);
    DiffDocument input = DiffDocument::parse(kMixedDiff);
    const auto paths = input.paths();
    std::set<std::string> expected(paths.begin(), paths.end());
    CHECK(seen == expected);
}

TEST_SUITE_END();
