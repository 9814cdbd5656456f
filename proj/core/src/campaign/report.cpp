#include <aprgauntlet/campaign/report.hpp>

#include <aprgauntlet/error.hpp>

#include <charconv>
#include <sstream>

namespace aprgauntlet::campaign {

CostSummary aggregate_costs(const CampaignLedger& ledger, const gateway::PriceTable& prices) {
    std::map<std::string, std::vector<gateway::UsageRecord>> by_filter;
    std::map<std::string, std::vector<gateway::UsageRecord>> by_stage;
    std::vector<gateway::UsageRecord> all;

    for (const IssueRecord* rec : ledger.effective_records()) {
        for (const auto& entry : rec->usage) {
            by_stage[entry.stage].push_back(entry.usage);
            if (entry.stage == "screen" && !entry.filter_id.empty()) {
                by_filter[entry.filter_id].push_back(entry.usage);
            }
            all.push_back(entry.usage);
        }
    }

    CostSummary summary;
    for (const auto& [filter_id, records] : by_filter) {
        summary.per_filter.emplace(filter_id, gateway::aggregate_usage(records, prices));
    }
    for (const auto& [stage, records] : by_stage) {
        summary.per_stage.emplace(stage, gateway::aggregate_usage(records, prices));
    }
    summary.overall = gateway::aggregate_usage(all, prices);
    return summary;
}

std::string format_percent(long numerator, long denominator, int decimals) {
    if (denominator == 0) return "-";
    if (decimals < 0 || decimals > 6) {
        throw Error(ErrorKind::invalid_parameter, "decimals must be in [0, 6]");
    }
    long long scale = 1;
    for (int i = 0; i < decimals; ++i) scale *= 10;
    // round(100 * num * scale / den), half up, in integers.
    long long scaled_num = 100LL * numerator * scale;
    long long value = (2 * scaled_num + denominator) / (2LL * denominator);
    std::string whole = std::to_string(value / scale);
    if (decimals == 0) return whole;
    std::string frac = std::to_string(value % scale);
    frac.insert(frac.begin(), decimals - static_cast<int>(frac.size()), '0');
    return whole + "." + frac;
}

namespace {

// --- CSV helpers -----------------------------------------------------------

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out += "\"";
    return out;
}

std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    fields.push_back(std::move(current));
    return fields;
}

long parse_count(const std::string& field, std::size_t line_no) {
    long value = 0;
    auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc{} || p != field.data() + field.size()) {
        throw Error(ErrorKind::parse,
                    "csv line " + std::to_string(line_no) + ": bad count '" + field + "'");
    }
    return value;
}

const std::vector<std::string>& fixed_mid_columns() {
    static const std::vector<std::string> cols = {
        "pre_ensemble",     "patch_created",           "compromised",
        "static_findings",  "comments_general",        "comments_low_confidence",
        "comments_file_level_security", "post_ensemble",
    };
    return cols;
}

std::vector<std::string> row_fields(const DetectionRow& row) {
    std::vector<std::string> out;
    out.push_back(row.label);
    out.push_back(std::to_string(row.issues));
    for (long v : row.filter_flags) out.push_back(std::to_string(v));
    out.push_back(std::to_string(row.pre_ensemble));
    out.push_back(std::to_string(row.patch_created));
    out.push_back(std::to_string(row.compromised));
    out.push_back(std::to_string(row.static_findings));
    out.push_back(std::to_string(row.comments_general));
    out.push_back(std::to_string(row.comments_low_confidence));
    out.push_back(std::to_string(row.comments_file_level_security));
    out.push_back(std::to_string(row.post_ensemble));
    for (long v : row.combined) out.push_back(std::to_string(v));
    return out;
}

DetectionRow row_from_fields(const std::vector<std::string>& fields, std::size_t n_filters,
                             std::size_t n_strategies, std::size_t line_no) {
    DetectionRow row;
    std::size_t i = 0;
    row.label = fields[i++];
    row.issues = parse_count(fields[i++], line_no);
    for (std::size_t f = 0; f < n_filters; ++f) {
        row.filter_flags.push_back(parse_count(fields[i++], line_no));
    }
    row.pre_ensemble = parse_count(fields[i++], line_no);
    row.patch_created = parse_count(fields[i++], line_no);
    row.compromised = parse_count(fields[i++], line_no);
    row.static_findings = parse_count(fields[i++], line_no);
    row.comments_general = parse_count(fields[i++], line_no);
    row.comments_low_confidence = parse_count(fields[i++], line_no);
    row.comments_file_level_security = parse_count(fields[i++], line_no);
    row.post_ensemble = parse_count(fields[i++], line_no);
    for (std::size_t s = 0; s < n_strategies; ++s) {
        row.combined.push_back(parse_count(fields[i++], line_no));
    }
    return row;
}

std::string money_cell(const Money& m) {
    return "$" + m.to_string();
}

}  // namespace

std::string emit_report_csv(const DetectionTable& table) {
    std::ostringstream out;
    out << "label,issues";
    for (const auto& id : table.filter_ids) out << ",filter:" << csv_escape(id);
    for (const auto& col : fixed_mid_columns()) out << "," << col;
    for (const auto& s : table.strategies) out << ",strategy:" << csv_escape(s);
    out << "\n";
    auto emit_row = [&](const DetectionRow& row) {
        const auto fields = row_fields(row);
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i != 0) out << ",";
            out << csv_escape(fields[i]);
        }
        out << "\n";
    };
    for (const auto& row : table.rows) emit_row(row);
    emit_row(table.total);
    return out.str();
}

DetectionTable parse_detection_table_csv(std::string_view csv_text) {
    std::istringstream in{std::string(csv_text)};
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw Error(ErrorKind::parse, "csv: empty document");
    ++line_no;
    auto header = csv_split(line);
    if (header.size() < 2 || header[0] != "label" || header[1] != "issues") {
        throw Error(ErrorKind::parse, "csv: bad header");
    }

    DetectionTable table;
    std::size_t i = 2;
    while (i < header.size() && header[i].starts_with("filter:")) {
        table.filter_ids.push_back(header[i].substr(7));
        ++i;
    }
    for (const auto& col : fixed_mid_columns()) {
        if (i >= header.size() || header[i] != col) {
            throw Error(ErrorKind::parse, "csv: expected column '" + col + "'");
        }
        ++i;
    }
    while (i < header.size() && header[i].starts_with("strategy:")) {
        table.strategies.push_back(header[i].substr(9));
        ++i;
    }
    if (i != header.size()) {
        throw Error(ErrorKind::parse, "csv: unexpected trailing column '" + header[i] + "'");
    }
    const std::size_t expected = header.size();

    std::vector<DetectionRow> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto fields = csv_split(line);
        if (fields.size() != expected) {
            throw Error(ErrorKind::parse, "csv line " + std::to_string(line_no) +
                                              ": expected " + std::to_string(expected) +
                                              " fields, got " + std::to_string(fields.size()));
        }
        rows.push_back(
            row_from_fields(fields, table.filter_ids.size(), table.strategies.size(), line_no));
    }
    if (rows.empty() || rows.back().label != "Total") {
        throw Error(ErrorKind::parse, "csv: missing Total row");
    }
    table.total = rows.back();
    rows.pop_back();
    table.rows = std::move(rows);
    return table;
}

std::string emit_report_markdown(const DetectionTable& table, const CostSummary* costs,
                                 const ReportMeta& meta) {
    std::ostringstream out;
    out << "# Campaign report\n\n";
    out << "## Detection table\n\n";

    out << "| Type | Issues |";
    for (const auto& id : table.filter_ids) out << " " << id << " |";
    out << " Pre ens. | Patch | Compromised | Static | Gen. sec. | Low-conf sec. |"
           " File sec. | Post ens. |";
    for (const auto& s : table.strategies) out << " " << s << " |";
    out << "\n|";
    const std::size_t columns = 2 + table.filter_ids.size() + 8 + table.strategies.size();
    for (std::size_t c = 0; c < columns; ++c) out << " --- |";
    out << "\n";

    auto emit_row = [&](const DetectionRow& row, bool strong) {
        out << "| " << (strong ? "**" + row.label + "**" : row.label) << " | " << row.issues
            << " |";
        for (long v : row.filter_flags) out << " " << v << " |";
        out << " " << row.pre_ensemble << " | " << row.patch_created << " | " << row.compromised
            << " | " << row.static_findings << " | " << row.comments_general << " | "
            << row.comments_low_confidence << " | " << row.comments_file_level_security << " | "
            << row.post_ensemble << " |";
        for (long v : row.combined) out << " " << v << " |";
        out << "\n";
    };
    for (const auto& row : table.rows) emit_row(row, false);
    emit_row(table.total, true);

    const long n = table.total.issues;
    out << "\n## Derived rates (Total row)\n\n";
    out << "- issues: " << n << "\n";
    out << "- compromised: " << table.total.compromised << "/" << n << " = "
        << format_percent(table.total.compromised, n, 2) << "%\n";
    out << "- pre-ensemble detections: " << table.total.pre_ensemble << "/" << n << " = "
        << format_percent(table.total.pre_ensemble, n, 2) << "%\n";
    out << "- post-ensemble detections: " << table.total.post_ensemble << "/" << n << " = "
        << format_percent(table.total.post_ensemble, n, 2) << "%\n";
    for (std::size_t s = 0; s < table.strategies.size(); ++s) {
        out << "- blocked by " << table.strategies[s] << ": " << table.total.combined[s] << "/"
            << n << " = " << format_percent(table.total.combined[s], n, 2) << "%\n";
    }

    if (costs != nullptr) {
        out << "\n## Costs\n\n";
        out << "| Scope | n | Total | Mean | Std (population) |\n";
        out << "| --- | --- | --- | --- | --- |\n";
        out << "| overall | " << costs->overall.n << " | " << money_cell(costs->overall.total)
            << " | " << money_cell(costs->overall.mean) << " | "
            << money_cell(costs->overall.std_dev) << " |\n";
        for (const auto& [stage, agg] : costs->per_stage) {
            out << "| stage: " << stage << " | " << agg.n << " | " << money_cell(agg.total)
                << " | " << money_cell(agg.mean) << " | " << money_cell(agg.std_dev) << " |\n";
        }
        for (const auto& [filter_id, agg] : costs->per_filter) {
            out << "| filter: " << filter_id << " | " << agg.n << " | " << money_cell(agg.total)
                << " | " << money_cell(agg.mean) << " | " << money_cell(agg.std_dev) << " |\n";
        }
    }

    if (!meta.fp_summaries.empty()) {
        out << "\n## False positives (benign corpus)\n\n";
        out << "| Filter | Evaluated | Flagged | Errors | Denominator | Rate |\n";
        out << "| --- | --- | --- | --- | --- | --- |\n";
        for (const auto& [filter_id, fp] : meta.fp_summaries) {
            out << "| " << filter_id << " | " << fp.n << " | " << fp.flagged_count << " | "
                << fp.error_count << " | " << fp.denominator
                << (fp.denominator_overridden ? " (override)" : "") << " | "
                << format_percent(static_cast<long>(fp.flagged_count),
                                  static_cast<long>(fp.denominator), 2)
                << "% |\n";
        }
    }

    out << "\n## Notes\n\n";
    out << "- " << meta.flag_policy_note << "\n";
    out << "- " << meta.denominator_note << "\n";
    out << "- Post-repair blocks are advisory: they assume a reviewer acts on the"
           " security-relevant comments.\n";
    return out.str();
}

std::string emit_report(const DetectionTable& table, const CostSummary* costs,
                        const ReportMeta& meta, ReportFormat format) {
    return format == ReportFormat::csv ? emit_report_csv(table)
                                       : emit_report_markdown(table, costs, meta);
}

}  // namespace aprgauntlet::campaign
