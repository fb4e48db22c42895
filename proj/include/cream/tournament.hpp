#pragma once
// Pairwise match orchestration: concatenated-paragraph construction,
// extraction + alignment judge calls, per-side metrics, and win/draw/loss
// derivation.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "cream/elo.hpp"
#include "cream/judge.hpp"
#include "cream/promptkit.hpp"
#include "cream/types.hpp"

namespace cream {

enum class ComparisonMode { shared_extraction, combined_prompt };
enum class OrderPolicy { both_orders, seeded_random };

std::string to_string(ComparisonMode m);
std::string to_string(OrderPolicy p);
ComparisonMode comparison_mode_from_string(const std::string& s);
OrderPolicy order_policy_from_string(const std::string& s);

struct MatchSpec {
    std::string meeting_id;
    std::string model_a;
    std::string model_b;
};

struct MatchPlan {
    std::vector<MatchSpec> matches;
    ComparisonMode mode = ComparisonMode::shared_extraction;
    OrderPolicy order_policy = OrderPolicy::both_orders;
    std::vector<Warning> warnings;  // skipped (meeting, pair) cells
};

struct ComparisonResult {
    std::string meeting_id;
    std::string model_a;
    std::string model_b;
    MetricScores scores_a;
    MetricScores scores_b;
    KeyFactSet key_facts;  // side-a fact set of the first concatenation order
    AlignmentSet alignment_a;
    AlignmentSet alignment_b;
    std::vector<Warning> warnings;
    bool valid = true;
};

struct MatchOutcome {
    Metric metric = Metric::completeness;
    enum class Result { win, draw, loss } result_for_a = Result::draw;
    double margin = 0.0;  // score_a - score_b
};

struct TournamentConfig {
    ComparisonMode mode = ComparisonMode::shared_extraction;
    OrderPolicy order_policy = OrderPolicy::both_orders;
    std::size_t max_key_facts = 16;
    double epsilon = 0.02;  // absolute tie tolerance on metric scores
    std::uint64_t seed = 0;
    std::string judge_model_id = "mock";
    double temperature = 0.0;
    std::uint32_t max_output_tokens = 4096;
    std::uint32_t concurrency = 4;
    PromptOptions prompt;
};

// Round-robin over all unordered model pairs x meetings. Pairs with a
// missing summary are skipped with a warning.
MatchPlan schedule_matches(
    const std::vector<std::string>& models,
    const std::vector<std::string>& meetings,
    const std::map<std::pair<std::string, std::string>, SummaryDoc>& summaries,
    ComparisonMode mode, OrderPolicy order_policy);

// One pairwise comparison. Judge or parse failure after the single re-ask
// marks the result invalid instead of throwing.
ComparisonResult run_match(const MatchSpec& spec, const SummaryDoc& summary_a,
                           const SummaryDoc& summary_b, JudgeBackend& judge,
                           const TournamentConfig& config);

// Full plan; matches may run concurrently, results come back sorted by
// (meeting_id, model_a, model_b).
std::vector<ComparisonResult> run_plan(
    const MatchPlan& plan,
    const std::map<std::pair<std::string, std::string>, SummaryDoc>& summaries,
    JudgeBackend& judge, const TournamentConfig& config);

MatchOutcome decide_outcome(const ComparisonResult& result, Metric metric,
                            double epsilon);

// Valid results -> rated matches for both metrics.
std::vector<RatedMatch> derive_rated_matches(
    const std::vector<ComparisonResult>& results, double epsilon);

}  // namespace cream
