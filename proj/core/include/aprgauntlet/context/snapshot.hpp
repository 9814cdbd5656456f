#pragma once

#include <aprgauntlet/context/diff.hpp>
#include <aprgauntlet/context/lsh_index.hpp>
#include <aprgauntlet/context/sanitize.hpp>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace aprgauntlet::context {

enum class DocumentKind { source, test, documentation, other };

std::string_view to_string(DocumentKind kind);
DocumentKind document_kind_from_string(std::string_view s);

struct FileDocument {
    std::string doc_id;  // "file:<repo-relative path>"
    std::string path;
    std::string content;
    DocumentKind kind = DocumentKind::other;
};

struct CommitRecord {
    std::string commit_id;
    std::string message;
    DiffDocument diff;
    std::string author;
    std::string date;

    /// Text used for indexing and retrieval: message plus the diff.
    std::string combined_text() const;
    std::string indexable_id() const { return "commit:" + commit_id; }
};

struct ScanOptions {
    std::size_t max_file_bytes = 262144;
    ClassifyRules rules;
};

/// Immutable view of a target repository: file documents plus an imported
/// commit log. Indexing and retrieval work over both.
struct RepoSnapshot {
    std::string root_path;
    std::vector<FileDocument> documents;
    std::vector<CommitRecord> commits;
    std::string built_at;

    bool empty() const { return documents.empty() && commits.empty(); }

    const FileDocument* find_document(const std::string& doc_id) const;
    const CommitRecord* find_commit(const std::string& commit_id) const;

    /// Documents and commits as (id, text) pairs for index construction,
    /// in deterministic (sorted path / log) order.
    std::vector<IndexableText> indexables() const;

    /// Throws Error{validation} on duplicate document ids or empty commit
    /// ids.
    void validate() const;

    /// Walks a working tree (skipping .git, binary files and files above
    /// the size cap) and classifies each file.
    static RepoSnapshot scan_working_tree(const std::string& root, std::string built_at,
                                          const ScanOptions& options = {});

    /// One JSON record per line: {"commit_id", "message", "author",
    /// "date", "diff"}. Each diff must parse as a unified diff.
    static std::vector<CommitRecord> load_commit_log(const std::string& path);

    std::string to_json() const;
    static RepoSnapshot from_json(std::string_view text);
};

}  // namespace aprgauntlet::context
