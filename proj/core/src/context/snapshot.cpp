#include <aprgauntlet/context/snapshot.hpp>

#include <aprgauntlet/error.hpp>

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace aprgauntlet::context {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::string_view to_string(DocumentKind kind) {
    switch (kind) {
        case DocumentKind::source: return "source";
        case DocumentKind::test: return "test";
        case DocumentKind::documentation: return "documentation";
        case DocumentKind::other: return "other";
    }
    return "other";
}

DocumentKind document_kind_from_string(std::string_view s) {
    if (s == "source") return DocumentKind::source;
    if (s == "test") return DocumentKind::test;
    if (s == "documentation") return DocumentKind::documentation;
    if (s == "other") return DocumentKind::other;
    throw Error(ErrorKind::schema, "unknown document kind '" + std::string(s) + "'");
}

std::string CommitRecord::combined_text() const {
    return message + "\n" + diff.to_text();
}

const FileDocument* RepoSnapshot::find_document(const std::string& doc_id) const {
    for (const auto& d : documents) {
        if (d.doc_id == doc_id) return &d;
    }
    return nullptr;
}

const CommitRecord* RepoSnapshot::find_commit(const std::string& commit_id) const {
    for (const auto& c : commits) {
        if (c.commit_id == commit_id) return &c;
    }
    return nullptr;
}

std::vector<IndexableText> RepoSnapshot::indexables() const {
    std::vector<IndexableText> out;
    out.reserve(documents.size() + commits.size());
    for (const auto& d : documents) out.push_back({d.doc_id, d.content});
    for (const auto& c : commits) out.push_back({c.indexable_id(), c.combined_text()});
    return out;
}

void RepoSnapshot::validate() const {
    std::set<std::string> ids;
    for (const auto& d : documents) {
        if (!ids.insert(d.doc_id).second) {
            throw Error(ErrorKind::validation, "duplicate document id '" + d.doc_id + "'");
        }
    }
    for (const auto& c : commits) {
        if (c.commit_id.empty()) {
            throw Error(ErrorKind::validation, "commit with empty id");
        }
        if (!ids.insert(c.indexable_id()).second) {
            throw Error(ErrorKind::validation, "duplicate commit id '" + c.commit_id + "'");
        }
    }
}

namespace {

bool looks_binary(const std::string& content) {
    const std::size_t probe = std::min<std::size_t>(content.size(), 8192);
    return content.find('\0') < probe;
}

DocumentKind classify_document(const std::string& path, const ClassifyRules& rules) {
    switch (classify_path(path, rules)) {
        case PathClass::test: return DocumentKind::test;
        case PathClass::documentation: return DocumentKind::documentation;
        case PathClass::other: break;
    }
    static const std::set<std::string> source_exts = {
        ".c",  ".cc", ".cpp", ".cxx", ".h",  ".hh", ".hpp", ".py", ".js",  ".ts",
        ".go", ".rs", ".rb",  ".java", ".cs", ".sh", ".pl",  ".php", ".swift", ".kt",
    };
    auto dot = path.rfind('.');
    if (dot != std::string::npos && source_exts.count(path.substr(dot)) != 0) {
        return DocumentKind::source;
    }
    return DocumentKind::other;
}

}  // namespace

RepoSnapshot RepoSnapshot::scan_working_tree(const std::string& root, std::string built_at,
                                             const ScanOptions& options) {
    if (!fs::exists(root) || !fs::is_directory(root)) {
        throw Error(ErrorKind::io, "repository root '" + root + "' is not a directory");
    }
    RepoSnapshot snap;
    snap.root_path = root;
    snap.built_at = std::move(built_at);

    std::vector<std::string> paths;
    for (auto it = fs::recursive_directory_iterator(root); it != fs::recursive_directory_iterator();
         ++it) {
        if (it->is_directory()) {
            if (it->path().filename() == ".git") it.disable_recursion_pending();
            continue;
        }
        if (!it->is_regular_file()) continue;
        paths.push_back(fs::relative(it->path(), root).generic_string());
    }
    std::sort(paths.begin(), paths.end());

    for (const auto& rel : paths) {
        std::ifstream in(fs::path(root) / rel, std::ios::binary);
        if (!in) continue;
        std::ostringstream buf;
        buf << in.rdbuf();
        std::string content = buf.str();
        if (content.size() > options.max_file_bytes) continue;
        if (looks_binary(content)) continue;
        FileDocument doc;
        doc.doc_id = "file:" + rel;
        doc.path = rel;
        doc.kind = classify_document(rel, options.rules);
        doc.content = std::move(content);
        snap.documents.push_back(std::move(doc));
    }
    return snap;
}

std::vector<CommitRecord> RepoSnapshot::load_commit_log(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::io, "cannot open commit log '" + path + "'");
    std::vector<CommitRecord> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        ordered_json j = ordered_json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object()) {
            throw Error(ErrorKind::parse,
                        "commit log line " + std::to_string(line_no) + ": not a JSON object");
        }
        CommitRecord rec;
        try {
            rec.commit_id = j.at("commit_id").get<std::string>();
            rec.message = j.value("message", std::string{});
            rec.author = j.value("author", std::string{});
            rec.date = j.value("date", std::string{});
            rec.diff = DiffDocument::parse(j.value("diff", std::string{}));
        } catch (const ordered_json::exception& e) {
            throw Error(ErrorKind::parse,
                        "commit log line " + std::to_string(line_no) + ": " + e.what());
        }
        if (rec.commit_id.empty()) {
            throw Error(ErrorKind::validation,
                        "commit log line " + std::to_string(line_no) + ": empty commit_id");
        }
        out.push_back(std::move(rec));
    }
    return out;
}

std::string RepoSnapshot::to_json() const {
    ordered_json j;
    j["root_path"] = root_path;
    j["built_at"] = built_at;
    j["documents"] = ordered_json::array();
    for (const auto& d : documents) {
        j["documents"].push_back({{"doc_id", d.doc_id},
                                  {"path", d.path},
                                  {"kind", std::string(to_string(d.kind))},
                                  {"content", d.content}});
    }
    j["commits"] = ordered_json::array();
    for (const auto& c : commits) {
        j["commits"].push_back({{"commit_id", c.commit_id},
                                {"message", c.message},
                                {"author", c.author},
                                {"date", c.date},
                                {"diff", c.diff.to_text()}});
    }
    return j.dump(2) + "\n";
}

RepoSnapshot RepoSnapshot::from_json(std::string_view text) {
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object()) {
        throw Error(ErrorKind::parse, "snapshot: not a JSON object");
    }
    RepoSnapshot snap;
    try {
        snap.root_path = j.value("root_path", std::string{});
        snap.built_at = j.value("built_at", std::string{});
        for (const auto& d : j.value("documents", ordered_json::array())) {
            FileDocument doc;
            doc.doc_id = d.at("doc_id").get<std::string>();
            doc.path = d.at("path").get<std::string>();
            doc.kind = document_kind_from_string(d.value("kind", "other"));
            doc.content = d.value("content", std::string{});
            snap.documents.push_back(std::move(doc));
        }
        for (const auto& c : j.value("commits", ordered_json::array())) {
            CommitRecord rec;
            rec.commit_id = c.at("commit_id").get<std::string>();
            rec.message = c.value("message", std::string{});
            rec.author = c.value("author", std::string{});
            rec.date = c.value("date", std::string{});
            rec.diff = DiffDocument::parse(c.value("diff", std::string{}));
            snap.commits.push_back(std::move(rec));
        }
    } catch (const ordered_json::exception& e) {
        throw Error(ErrorKind::parse, std::string("snapshot: ") + e.what());
    }
    snap.validate();
    return snap;
}

}  // namespace aprgauntlet::context
