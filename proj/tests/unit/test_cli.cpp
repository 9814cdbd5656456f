// End-to-end exercises of the installed CLI surface: index -> forge ->
// screen -> ingest -> report, plus exit-code contracts.
#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <unistd.h>

namespace fs = std::filesystem;

namespace {

std::string cli() {
#ifdef APRGAUNTLET_CLI_PATH
    return APRGAUNTLET_CLI_PATH;
#else
    return "aprgauntlet";
#endif
}

int run(const std::string& args, const std::string& log = "/dev/null") {
    const std::string cmd = cli() + " " + args + " >" + log + " 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << content;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct Workspace {
    fs::path root;

    Workspace() {
        root = fs::temp_directory_path() / ("aprg-cli-" + std::to_string(::getpid()));
        fs::remove_all(root);
        fs::create_directories(root);
    }
    ~Workspace() { fs::remove_all(root); }

    fs::path p(const std::string& rel) const { return root / rel; }
    std::string s(const std::string& rel) const { return (root / rel).string(); }
};

void seed_repo(const Workspace& ws) {
    write_file(ws.p("repo/src/auth.py"),
               "def verify(token, key):\n    return hmac_check(token, key)\n");
    write_file(ws.p("repo/tests/test_auth.py"), "def test(): pass\n");
    nlohmann::json commit = {
        {"commit_id", "abc123"},
        {"message", "fix verification bypass"},
        {"author", "dev"},
        {"date", "2024-05-01"},
        {"diff",
         "--- a/src/auth.py\n+++ b/src/auth.py\n@@ -1,2 +1,2 @@\n def verify(token, key):\n"
         "-    return True\n+    return hmac_check(token, key)\n"},
    };
    write_file(ws.p("export/commits.jsonl"), commit.dump() + "\n");
    write_file(ws.p("mock-echo.json"), R"({"mode": "echo"})");
    write_file(ws.p("suite.toml"),
               "[[filter]]\n"
               "id = \"screen-main\"\n"
               "kind = \"custom_prompt\"\n"
               "model = { name = \"mock-screen\", provider = \"mock\" }\n");
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("full pipeline: index, forge, screen, ingest, report") {
    Workspace ws;
    seed_repo(ws);

    CHECK(run("index " + ws.s("repo") + " --out " + ws.s("idx") + " --commits " +
              ws.s("export/commits.jsonl") + " --timestamp 2025-07-01T00:00:00Z") == 0);
    CHECK(fs::exists(ws.p("idx/snapshot.json")));
    CHECK(fs::exists(ws.p("idx/index.json")));

    CHECK(run("--mock " + ws.s("mock-echo.json") +
              " forge --attack revert_cve_fix --seed commit:abc123"
              " --template builtin:revert-cve --out " +
              ws.s("issues") + " --index " + ws.s("idx") +
              " --timestamp 2025-07-01T00:00:00Z") == 0);

    std::string issue_id;
    for (const auto& entry : fs::directory_iterator(ws.p("issues"))) {
        const std::string name = entry.path().filename().string();
        if (name.ends_with(".json")) {
            issue_id = name.substr(6, name.size() - 6 - 5);  // strip issue- and .json
        }
    }
    REQUIRE(!issue_id.empty());
    CHECK(fs::exists(ws.p("issues/issue-" + issue_id + ".md")));
    CHECK(fs::exists(ws.p("issues/context-bundle.json")));

    write_file(ws.p("mock-verdict.json"),
               R"({"mode": "sequence", "responses": ["problematic\nCVE revert"]})");
    CHECK(run("--mock " + ws.s("mock-verdict.json") + " screen --issues " + ws.s("issues") +
              " --suite " + ws.s("suite.toml") + " --out " + ws.s("ledger")) == 0);
    CHECK(fs::exists(ws.p("ledger/manifest.json")));
    CHECK(fs::exists(ws.p("ledger/records.jsonl")));
    // Flat stream: one FilterResult per line.
    const std::string stream = slurp(ws.p("ledger/filter_results.jsonl"));
    CHECK(std::count(stream.begin(), stream.end(), '\n') == 1);
    CHECK(stream.find("\"filter_id\":\"screen-main\"") != std::string::npos);

    nlohmann::json patch = {{"issue_id", issue_id},
                            {"created", true},
                            {"patch_text", "--- a/x\n+++ b/x\n@@ -1 +1 @@\n-a\n+b\n"},
                            {"apr_agent", "agent"}};
    write_file(ws.p("patches.jsonl"), patch.dump() + "\n");
    nlohmann::json comment = {{"issue_id", issue_id},
                              {"tier", "low_confidence"},
                              {"security_relevant", true},
                              {"text", "reintroduces bypass"}};
    write_file(ws.p("comments.jsonl"), comment.dump() + "\n");
    nlohmann::json label = {{"issue_id", issue_id},
                            {"compromised", true},
                            {"rationale", "reverts the fix"},
                            {"annotators", {"a", "b"}}};
    write_file(ws.p("labels.jsonl"), label.dump() + "\n");
    nlohmann::json sarif = {
        {"version", "2.1.0"},
        {"runs", {{{"properties", {{"issue_id", issue_id}}}, {"results", nlohmann::json::array()}}}}};
    write_file(ws.p("findings.sarif"), sarif.dump());

    CHECK(run("ingest --ledger " + ws.s("ledger") + " --sarif " + ws.s("findings.sarif") +
              " --comments " + ws.s("comments.jsonl") + " --labels " + ws.s("labels.jsonl") +
              " --patches " + ws.s("patches.jsonl")) == 0);

    CHECK(run("report --ledger " + ws.s("ledger") + " --format csv --best screen-main --out " +
              ws.s("report.csv")) == 0);
    const std::string csv = slurp(ws.p("report.csv"));
    CHECK(csv.find("label,issues,filter:screen-main") == 0);
    CHECK(csv.find("Total,1,1,1,1,1,0,0,1,0,1,1,1") != std::string::npos);

    CHECK(run("report --ledger " + ws.s("ledger") + " --format md --out " + ws.s("report.md")) ==
          0);
    CHECK(slurp(ws.p("report.md")).find("## Detection table") != std::string::npos);
}

TEST_CASE("validation errors exit 1") {
    Workspace ws;
    seed_repo(ws);
    CHECK(run("index " + ws.s("no-such-repo") + " --out " + ws.s("idx2")) == 1);
    CHECK(run("report --ledger " + ws.s("no-such-ledger") + " --format md") == 1);
    CHECK(run("--mock " + ws.s("mock-echo.json") +
              " forge --attack bogus_kind --seed x --template builtin:naive-noise --out " +
              ws.s("i2")) == 1);
    // Unknown report format.
    CHECK(run("report --ledger " + ws.s("no-such-ledger") + " --format pdf") == 1);
}

TEST_CASE("screen exits 2 on partial filter failures") {
    Workspace ws;
    seed_repo(ws);
    CHECK(run("index " + ws.s("repo") + " --out " + ws.s("idx") + " --commits " +
              ws.s("export/commits.jsonl") + " --timestamp 2025-07-01T00:00:00Z") == 0);
    CHECK(run("--mock " + ws.s("mock-echo.json") +
              " forge --attack naive_apr --seed \"tidy the docs\""
              " --template builtin:naive-noise --out " +
              ws.s("issues") + " --index " + ws.s("idx") +
              " --timestamp 2025-07-01T00:00:00Z") == 0);

    write_file(ws.p("mock-fault.json"), R"({"mode": "sequence", "responses": [{"error": "transport"}]})");
    CHECK(run("--mock " + ws.s("mock-fault.json") + " screen --issues " + ws.s("issues") +
              " --suite " + ws.s("suite.toml") + " --out " + ws.s("ledger2")) == 2);
    // The faulted ledger still reports.
    CHECK(run("report --ledger " + ws.s("ledger2") + " --format csv") == 0);
}

TEST_CASE("benign corpus marker flows into the report's FP section") {
    Workspace ws;
    seed_repo(ws);
    CHECK(run("index " + ws.s("repo") + " --out " + ws.s("idx") + " --commits " +
              ws.s("export/commits.jsonl") + " --timestamp 2025-07-01T00:00:00Z") == 0);
    CHECK(run("--mock " + ws.s("mock-echo.json") +
              " forge --attack naive_apr --seed \"benign request\""
              " --template builtin:naive-noise --out " +
              ws.s("benign") + " --index " + ws.s("idx") +
              " --timestamp 2025-07-01T00:00:00Z") == 0);
    write_file(ws.p("benign/corpus.json"), R"({"benign": true})");

    write_file(ws.p("mock-ok.json"), R"({"mode": "sequence", "responses": ["OK\n-"]})");
    CHECK(run("--mock " + ws.s("mock-ok.json") + " screen --issues " + ws.s("benign") +
              " --suite " + ws.s("suite.toml") + " --out " + ws.s("fp-ledger")) == 0);
    CHECK(run("report --ledger " + ws.s("fp-ledger") + " --format md --out " +
              ws.s("fp-report.md")) == 0);
    const std::string md = slurp(ws.p("fp-report.md"));
    CHECK(md.find("## False positives (benign corpus)") != std::string::npos);
    CHECK(md.find("fp-filter") == std::string::npos);
    CHECK(md.find("screen-main") != std::string::npos);
}

TEST_SUITE_END();
