#include "cream/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "cream/text.hpp"

namespace cream {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<json> read_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot read " + path);
    std::vector<json> records;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded()) {
            throw input_error(path + ":" + std::to_string(lineno) + ": invalid JSON");
        }
        records.push_back(std::move(j));
    }
    return records;
}

SummaryDoc make_summary(const std::string& meeting_id, const std::string& model_id,
                        const std::string& text, std::size_t max_lines) {
    SummaryDoc doc;
    doc.meeting_id = meeting_id;
    doc.model_id = model_id;
    doc.summary_id = meeting_id + "/" + model_id;
    doc.sentences = split_into_lines(text);
    if (doc.sentences.size() > max_lines) {
        throw input_error("summary " + doc.summary_id + " has " +
                          std::to_string(doc.sentences.size()) +
                          " lines, exceeding the limit of " + std::to_string(max_lines));
    }
    doc.validate();
    return doc;
}

std::string format_rating(double v) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(2) << v;
    return out.str();
}

std::string format_score(const std::optional<double>& v) {
    if (!v) return "-";
    std::ostringstream out;
    out << std::fixed << std::setprecision(4) << *v;
    return out.str();
}

}  // namespace

std::vector<Transcript> read_meetings(const std::string& path) {
    std::vector<Transcript> meetings;
    for (const auto& record : read_jsonl(path)) {
        Transcript t;
        t.meeting_id = record.value("meeting_id", "");
        for (const auto& turn : record.value("turns", json::array())) {
            t.turns.push_back({turn.value("speaker", ""), turn.value("text", "")});
        }
        t.validate();
        meetings.push_back(std::move(t));
    }
    if (meetings.empty()) throw input_error(path + ": no meetings");
    return meetings;
}

std::map<std::pair<std::string, std::string>, SummaryDoc> read_summaries(
    const std::string& path, std::size_t max_lines) {
    std::map<std::pair<std::string, std::string>, SummaryDoc> out;
    for (const auto& record : read_jsonl(path)) {
        auto meeting_id = record.value("meeting_id", "");
        auto model_id = record.value("model_id", "");
        if (meeting_id.empty() || model_id.empty()) {
            throw input_error(path + ": summary record missing meeting_id or model_id");
        }
        auto key = std::make_pair(meeting_id, model_id);
        if (out.count(key)) {
            throw input_error(path + ": duplicate summary for " + meeting_id + "/" + model_id);
        }
        out.emplace(key, make_summary(meeting_id, model_id,
                                      record.value("text", ""), max_lines));
    }
    if (out.empty()) throw input_error(path + ": no summaries");
    return out;
}

std::map<std::string, SummaryDoc> read_gold_summaries(const std::string& path,
                                                      std::size_t max_lines) {
    std::map<std::string, SummaryDoc> out;
    for (const auto& record : read_jsonl(path)) {
        auto meeting_id = record.value("meeting_id", "");
        if (meeting_id.empty()) {
            throw input_error(path + ": gold record missing meeting_id");
        }
        out.emplace(meeting_id,
                    make_summary(meeting_id, "gold", record.value("text", ""), max_lines));
    }
    if (out.empty()) throw input_error(path + ": no gold summaries");
    return out;
}

Transcript qmsum_to_transcript(const json& record, const std::string& meeting_id) {
    Transcript t;
    t.meeting_id = meeting_id;
    for (const auto& turn : record.value("meeting_transcripts", json::array())) {
        t.turns.push_back({turn.value("speaker", ""), turn.value("content", "")});
    }
    t.validate();
    return t;
}

void atomic_write_file(const std::string& path, const std::string& content) {
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    auto tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw input_error("cannot write " + tmp.string());
        out << content;
    }
    fs::rename(tmp, target);
}

json comparison_result_to_json(const ComparisonResult& result) {
    auto alignment_json = [](const AlignmentSet& a) {
        json arr = json::array();
        for (const auto& e : a.entries) {
            json lines = json::array();
            for (auto ln : e.line_numbers) lines.push_back(ln);
            arr.push_back({{"fact", e.fact_ordinal},
                           {"supported", e.supported},
                           {"lines", lines}});
        }
        return arr;
    };
    json facts = json::array();
    for (const auto& f : result.key_facts.facts()) facts.push_back(f.text);
    json warnings = json::array();
    for (const auto& w : result.warnings) {
        warnings.push_back({{"code", w.code}, {"message", w.message}});
    }
    return {{"meeting_id", result.meeting_id},
            {"model_a", result.model_a},
            {"model_b", result.model_b},
            {"scores_a",
             {{"completeness", result.scores_a.completeness},
              {"conciseness", result.scores_a.conciseness}}},
            {"scores_b",
             {{"completeness", result.scores_b.completeness},
              {"conciseness", result.scores_b.conciseness}}},
            {"key_facts", facts},
            {"alignment_a", alignment_json(result.alignment_a)},
            {"alignment_b", alignment_json(result.alignment_b)},
            {"warnings", warnings},
            {"valid", result.valid}};
}

ComparisonResult comparison_result_from_json(const json& j) {
    auto alignment_from = [](const json& arr) {
        AlignmentSet a;
        for (const auto& e : arr) {
            AlignmentEntry entry;
            entry.fact_ordinal = e.value("fact", 0u);
            entry.supported = e.value("supported", false);
            for (const auto& ln : e.value("lines", json::array())) {
                entry.line_numbers.insert(ln.get<std::uint32_t>());
            }
            a.entries.push_back(std::move(entry));
        }
        return a;
    };
    ComparisonResult r;
    r.meeting_id = j.at("meeting_id").get<std::string>();
    r.model_a = j.at("model_a").get<std::string>();
    r.model_b = j.at("model_b").get<std::string>();
    r.scores_a.completeness = j.at("scores_a").at("completeness").get<double>();
    r.scores_a.conciseness = j.at("scores_a").at("conciseness").get<double>();
    r.scores_b.completeness = j.at("scores_b").at("completeness").get<double>();
    r.scores_b.conciseness = j.at("scores_b").at("conciseness").get<double>();
    std::vector<std::string> facts;
    for (const auto& f : j.value("key_facts", json::array())) {
        facts.push_back(f.get<std::string>());
    }
    r.key_facts = KeyFactSet::build(facts, facts.size() ? facts.size() : 1,
                                    FactSource::concatenated_pair);
    r.alignment_a = alignment_from(j.value("alignment_a", json::array()));
    r.alignment_b = alignment_from(j.value("alignment_b", json::array()));
    for (const auto& w : j.value("warnings", json::array())) {
        r.warnings.push_back({w.value("code", ""), w.value("message", "")});
    }
    r.valid = j.value("valid", true);
    return r;
}

void write_results_file(const std::string& path, const json& meta,
                        const std::vector<ComparisonResult>& results) {
    std::ostringstream out;
    out << json{{"type", "meta"}, {"config", meta}}.dump() << '\n';
    for (const auto& r : results) out << comparison_result_to_json(r).dump() << '\n';
    atomic_write_file(path, out.str());
}

ResultsFile read_results_file(const std::string& path) {
    ResultsFile file;
    bool first = true;
    for (const auto& record : read_jsonl(path)) {
        if (first && record.value("type", "") == "meta") {
            file.meta = record.value("config", json::object());
            first = false;
            continue;
        }
        first = false;
        file.results.push_back(comparison_result_from_json(record));
    }
    return file;
}

PairwiseMatrix pairwise_matrix(const std::vector<ComparisonResult>& results) {
    PairwiseMatrix matrix;
    std::map<std::string, std::size_t> index;
    for (const auto& r : results) {
        for (const auto& m : {r.model_a, r.model_b}) {
            if (!index.count(m)) {
                index.emplace(m, 0);
            }
        }
    }
    for (auto& [model, idx] : index) {
        idx = matrix.models.size();
        matrix.models.push_back(model);
    }
    const auto n = matrix.models.size();
    for (Metric metric : {Metric::completeness, Metric::conciseness}) {
        std::vector<std::vector<double>> sum(n, std::vector<double>(n, 0.0));
        std::vector<std::vector<std::size_t>> count(n, std::vector<std::size_t>(n, 0));
        for (const auto& r : results) {
            if (!r.valid) continue;
            auto a = index.at(r.model_a);
            auto b = index.at(r.model_b);
            double sa = metric == Metric::completeness ? r.scores_a.completeness
                                                       : r.scores_a.conciseness;
            double sb = metric == Metric::completeness ? r.scores_b.completeness
                                                       : r.scores_b.conciseness;
            sum[a][b] += sa;
            sum[b][a] += sb;
            ++count[a][b];
            ++count[b][a];
        }
        auto& cells = matrix.cells[metric];
        cells.assign(n, std::vector<std::optional<double>>(n));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (count[i][j]) cells[i][j] = sum[i][j] / static_cast<double>(count[i][j]);
            }
        }
    }
    return matrix;
}

std::string leaderboard_to_csv(const RatingTable& table) {
    std::ostringstream out;
    out << "metric,rank,model,rating,spread,matches\n";
    for (const auto& [metric, ratings] : table.by_metric) {
        (void)ratings;
        for (const auto& row : leaderboard(table, metric)) {
            out << to_string(metric) << ',' << row.rank << ',' << row.model_id << ','
                << format_rating(row.rating.mean) << ','
                << format_rating(row.rating.spread) << ',' << row.rating.matches_played
                << '\n';
        }
    }
    return out.str();
}

std::string leaderboard_to_markdown(const RatingTable& table,
                                    const PairwiseMatrix& matrix) {
    std::ostringstream out;
    for (const auto& [metric, ratings] : table.by_metric) {
        (void)ratings;
        out << "## " << to_string(metric) << " leaderboard\n\n";
        out << "| Rank | Model | Rating | Spread | Matches |\n";
        out << "|---:|---|---:|---:|---:|\n";
        for (const auto& row : leaderboard(table, metric)) {
            out << "| " << row.rank << " | " << row.model_id << " | "
                << format_rating(row.rating.mean) << " | "
                << format_rating(row.rating.spread) << " | " << row.rating.matches_played
                << " |\n";
        }
        out << '\n';

        auto cells = matrix.cells.find(metric);
        if (cells == matrix.cells.end()) continue;
        out << "### raw pairwise " << to_string(metric) << " scores\n\n";
        out << "| vs |";
        for (const auto& m : matrix.models) out << ' ' << m << " |";
        out << "\n|---|";
        for (std::size_t i = 0; i < matrix.models.size(); ++i) out << "---:|";
        out << '\n';
        for (std::size_t i = 0; i < matrix.models.size(); ++i) {
            out << "| " << matrix.models[i] << " |";
            for (std::size_t j = 0; j < matrix.models.size(); ++j) {
                out << ' ' << format_score(cells->second[i][j]) << " |";
            }
            out << '\n';
        }
        out << '\n';
    }
    return out.str();
}

json leaderboard_to_json(const RatingTable& table, const PairwiseMatrix& matrix,
                         const json& meta) {
    json metrics = json::object();
    for (const auto& [metric, ratings] : table.by_metric) {
        (void)ratings;
        json rows = json::array();
        for (const auto& row : leaderboard(table, metric)) {
            rows.push_back({{"rank", row.rank},
                            {"model", row.model_id},
                            {"rating", row.rating.mean},
                            {"spread", row.rating.spread},
                            {"matches", row.rating.matches_played}});
        }
        json cells = json::array();
        auto it = matrix.cells.find(metric);
        if (it != matrix.cells.end()) {
            for (const auto& mrow : it->second) {
                json jrow = json::array();
                for (const auto& v : mrow) {
                    if (v) jrow.push_back(*v);
                    else jrow.push_back(nullptr);
                }
                cells.push_back(jrow);
            }
        }
        metrics[to_string(metric)] = {{"leaderboard", rows}, {"pairwise", cells}};
    }
    return {{"config", meta}, {"models", matrix.models}, {"metrics", metrics}};
}

}  // namespace cream
