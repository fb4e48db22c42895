#pragma once
// Dataset ingestion, result persistence, and report generation.

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "cream/elo.hpp"
#include "cream/tournament.hpp"
#include "cream/types.hpp"

namespace cream {

// meetings file: one JSON object per line,
// {"meeting_id": ..., "turns": [{"speaker": ..., "text": ...}]}
std::vector<Transcript> read_meetings(const std::string& path);

// summaries file: {"meeting_id": ..., "model_id": ..., "text": ...}
// Text is split into numbered sentences; more than max_lines is an error.
std::map<std::pair<std::string, std::string>, SummaryDoc> read_summaries(
    const std::string& path, std::size_t max_lines);

// gold summaries file: {"meeting_id": ..., "text": ...}
std::map<std::string, SummaryDoc> read_gold_summaries(const std::string& path,
                                                      std::size_t max_lines);

// Converts a QMSum-style meeting record ({"meeting_transcripts":
// [{"speaker": ..., "content": ...}]}) into a Transcript.
Transcript qmsum_to_transcript(const nlohmann::json& record,
                               const std::string& meeting_id);

void atomic_write_file(const std::string& path, const std::string& content);

nlohmann::json comparison_result_to_json(const ComparisonResult& result);
ComparisonResult comparison_result_from_json(const nlohmann::json& j);

// Results file: first line a meta object embedding the resolved config,
// then one ComparisonResult object per line.
void write_results_file(const std::string& path, const nlohmann::json& meta,
                        const std::vector<ComparisonResult>& results);
struct ResultsFile {
    nlohmann::json meta;
    std::vector<ComparisonResult> results;
};
ResultsFile read_results_file(const std::string& path);

// Mean per-metric score of each row model against each column model,
// over valid matches.
struct PairwiseMatrix {
    std::vector<std::string> models;
    // [metric][row][col]; diagonal entries are NaN-free (0 matches -> null).
    std::map<Metric, std::vector<std::vector<std::optional<double>>>> cells;
};
PairwiseMatrix pairwise_matrix(const std::vector<ComparisonResult>& results);

std::string leaderboard_to_csv(const RatingTable& table);
std::string leaderboard_to_markdown(const RatingTable& table,
                                    const PairwiseMatrix& matrix);
nlohmann::json leaderboard_to_json(const RatingTable& table,
                                   const PairwiseMatrix& matrix,
                                   const nlohmann::json& meta);

}  // namespace cream
