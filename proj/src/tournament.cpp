#include "cream/tournament.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <thread>

#include "cream/metrics.hpp"
#include "cream/parse.hpp"

namespace cream {

std::string to_string(ComparisonMode m) {
    return m == ComparisonMode::shared_extraction ? "shared_extraction" : "combined_prompt";
}

std::string to_string(OrderPolicy p) {
    return p == OrderPolicy::both_orders ? "both_orders" : "seeded_random";
}

ComparisonMode comparison_mode_from_string(const std::string& s) {
    if (s == "shared_extraction") return ComparisonMode::shared_extraction;
    if (s == "combined_prompt") return ComparisonMode::combined_prompt;
    throw config_error("unknown comparison mode: " + s);
}

OrderPolicy order_policy_from_string(const std::string& s) {
    if (s == "both_orders") return OrderPolicy::both_orders;
    if (s == "seeded_random") return OrderPolicy::seeded_random;
    throw config_error("unknown order policy: " + s);
}

MatchPlan schedule_matches(
    const std::vector<std::string>& models,
    const std::vector<std::string>& meetings,
    const std::map<std::pair<std::string, std::string>, SummaryDoc>& summaries,
    ComparisonMode mode, OrderPolicy order_policy) {
    if (models.size() < 2) throw input_error("scheduling requires at least 2 models");
    if (meetings.empty()) throw input_error("scheduling requires at least 1 meeting");

    auto sorted_models = models;
    std::sort(sorted_models.begin(), sorted_models.end());
    auto sorted_meetings = meetings;
    std::sort(sorted_meetings.begin(), sorted_meetings.end());

    MatchPlan plan;
    plan.mode = mode;
    plan.order_policy = order_policy;
    for (const auto& meeting : sorted_meetings) {
        for (std::size_t i = 0; i < sorted_models.size(); ++i) {
            for (std::size_t j = i + 1; j < sorted_models.size(); ++j) {
                bool have_a = summaries.count({meeting, sorted_models[i]}) > 0;
                bool have_b = summaries.count({meeting, sorted_models[j]}) > 0;
                if (!have_a || !have_b) {
                    plan.warnings.push_back(
                        {"missing_summary",
                         "skipping (" + meeting + ", " + sorted_models[i] + " vs " +
                             sorted_models[j] + "): no summary from " +
                             (have_a ? sorted_models[j] : sorted_models[i])});
                    continue;
                }
                plan.matches.push_back({meeting, sorted_models[i], sorted_models[j]});
            }
        }
    }
    return plan;
}

namespace {

// Internal signal: this match cannot be scored and must be excluded.
struct MatchInvalid : error {
    using error::error;
};

std::string judge_once(JudgeBackend& judge, const TournamentConfig& config,
                       const std::string& prompt, bool bypass_cache) {
    JudgeRequest request;
    request.prompt = prompt;
    request.judge_model_id = config.judge_model_id;
    request.temperature = config.temperature;
    request.max_output_tokens = config.max_output_tokens;
    request.bypass_cache = bypass_cache;
    return judge.complete(request).raw_text;
}

// One judge call with a single re-ask on parse/validation failure.
template <typename ParseFn>
auto ask(JudgeBackend& judge, const TournamentConfig& config, const std::string& prompt,
         std::vector<Warning>& warnings, ParseFn&& parse_fn) {
    try {
        return parse_fn(judge_once(judge, config, prompt, false));
    } catch (const parse_error& e) {
        warnings.push_back({"reask", std::string("judge output rejected, re-asking: ") + e.what()});
    } catch (const validation_error& e) {
        warnings.push_back({"reask", std::string("judge output rejected, re-asking: ") + e.what()});
    }
    try {
        return parse_fn(judge_once(judge, config, prompt, true));
    } catch (const error& e) {
        throw MatchInvalid(std::string("judge output invalid after re-ask: ") + e.what());
    }
}

struct SideScores {
    KeyFactSet facts;
    AlignmentSet alignment;
    double completeness = 0.0;
    double conciseness = 0.0;
};

SideScores align_and_score(JudgeBackend& judge, const TournamentConfig& config,
                           const KeyFactSet& facts, const SummaryDoc& summary,
                           std::vector<Warning>& warnings) {
    auto prompt = render_alignment_prompt(facts, summary, config.prompt);
    auto parsed = ask(judge, config, prompt, warnings,
                      [&](const std::string& raw) {
                          return parse_alignment_response(extract_json_payload(raw), facts,
                                                          summary.line_count());
                      });
    warnings.insert(warnings.end(), parsed.warnings.begin(), parsed.warnings.end());
    SideScores side;
    side.facts = facts;
    side.alignment = std::move(parsed.alignment);
    side.alignment.target_summary_id = summary.summary_id;
    side.completeness = completeness(facts, side.alignment);
    side.conciseness = conciseness(summary, side.alignment);
    return side;
}

SideScores combined_call(JudgeBackend& judge, const TournamentConfig& config,
                         const std::string& paragraph, const SummaryDoc& summary,
                         std::vector<Warning>& warnings) {
    auto prompt = render_combined_prompt(paragraph, summary, config.max_key_facts,
                                         config.prompt);
    struct Out {
        KeyFactSet facts;
        ParsedAlignment parsed;
    };
    auto out = ask(judge, config, prompt, warnings, [&](const std::string& raw) {
        auto payload = extract_json_payload(raw);
        auto fact_texts = parse_extraction_response(payload);
        auto facts = KeyFactSet::build(fact_texts, config.max_key_facts,
                                       FactSource::concatenated_pair);
        if (facts.empty()) throw validation_error("combined response contains no key facts");
        return Out{facts,
                   parse_alignment_response(payload, facts, summary.line_count())};
    });
    warnings.insert(warnings.end(), out.parsed.warnings.begin(), out.parsed.warnings.end());
    SideScores side;
    side.facts = out.facts;
    side.alignment = std::move(out.parsed.alignment);
    side.alignment.target_summary_id = summary.summary_id;
    side.completeness = completeness(side.facts, side.alignment);
    side.conciseness = conciseness(summary, side.alignment);
    return side;
}

// Scores for the (first, second) concatenation order, reported in that
// order.
std::pair<SideScores, SideScores> run_order(JudgeBackend& judge,
                                            const TournamentConfig& config,
                                            const SummaryDoc& first,
                                            const SummaryDoc& second,
                                            std::vector<Warning>& warnings) {
    // Plain text, no model identifiers, blank-line separator.
    const std::string paragraph = first.joined_text() + "\n\n" + second.joined_text();
    if (config.mode == ComparisonMode::shared_extraction) {
        auto prompt = render_extraction_prompt(paragraph, config.max_key_facts, config.prompt);
        auto facts = ask(judge, config, prompt, warnings, [&](const std::string& raw) {
            auto texts = parse_extraction_response(extract_json_payload(raw));
            auto set = KeyFactSet::build(texts, config.max_key_facts,
                                         FactSource::concatenated_pair);
            if (set.empty()) throw validation_error("extraction produced no key facts");
            return set;
        });
        auto side_first = align_and_score(judge, config, facts, first, warnings);
        auto side_second = align_and_score(judge, config, facts, second, warnings);
        return {std::move(side_first), std::move(side_second)};
    }
    // combined_prompt: each side re-extracts from the same paragraph.
    auto side_first = combined_call(judge, config, paragraph, first, warnings);
    auto side_second = combined_call(judge, config, paragraph, second, warnings);
    return {std::move(side_first), std::move(side_second)};
}

std::uint64_t match_seed(const TournamentConfig& config, const MatchSpec& spec) {
    std::uint64_t h = config.seed ^ 0x9e3779b97f4a7c15ull;
    for (unsigned char c : spec.meeting_id + '\x1f' + spec.model_a + '\x1f' + spec.model_b) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

ComparisonResult run_match(const MatchSpec& spec, const SummaryDoc& summary_a,
                           const SummaryDoc& summary_b, JudgeBackend& judge,
                           const TournamentConfig& config) {
    if (summary_a.meeting_id != spec.meeting_id || summary_b.meeting_id != spec.meeting_id) {
        throw input_error("run_match: summary does not belong to meeting " + spec.meeting_id);
    }
    ComparisonResult result;
    result.meeting_id = spec.meeting_id;
    result.model_a = spec.model_a;
    result.model_b = spec.model_b;
    try {
        if (config.order_policy == OrderPolicy::both_orders) {
            auto [a1, b1] = run_order(judge, config, summary_a, summary_b, result.warnings);
            auto [b2, a2] = run_order(judge, config, summary_b, summary_a, result.warnings);
            if (config.mode == ComparisonMode::shared_extraction &&
                a1.facts.content_hash() != b1.facts.content_hash()) {
                throw MatchInvalid("shared extraction produced divergent fact sets");
            }
            result.scores_a = {(a1.completeness + a2.completeness) / 2.0,
                               (a1.conciseness + a2.conciseness) / 2.0,
                               std::nullopt};
            result.scores_b = {(b1.completeness + b2.completeness) / 2.0,
                               (b1.conciseness + b2.conciseness) / 2.0,
                               std::nullopt};
            result.key_facts = a1.facts;
            result.alignment_a = a1.alignment;
            result.alignment_b = b1.alignment;
        } else {
            std::mt19937_64 rng(match_seed(config, spec));
            bool a_first = (rng() & 1) == 0;
            const auto& first = a_first ? summary_a : summary_b;
            const auto& second = a_first ? summary_b : summary_a;
            auto [s_first, s_second] = run_order(judge, config, first, second, result.warnings);
            const auto& for_a = a_first ? s_first : s_second;
            const auto& for_b = a_first ? s_second : s_first;
            result.scores_a = {for_a.completeness, for_a.conciseness, std::nullopt};
            result.scores_b = {for_b.completeness, for_b.conciseness, std::nullopt};
            result.key_facts = for_a.facts;
            result.alignment_a = for_a.alignment;
            result.alignment_b = for_b.alignment;
        }
    } catch (const MatchInvalid& e) {
        result.valid = false;
        result.warnings.push_back({"match_invalid", e.what()});
    }
    return result;
}

std::vector<ComparisonResult> run_plan(
    const MatchPlan& plan,
    const std::map<std::pair<std::string, std::string>, SummaryDoc>& summaries,
    JudgeBackend& judge, const TournamentConfig& config) {
    std::vector<ComparisonResult> results(plan.matches.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= plan.matches.size()) return;
            const auto& spec = plan.matches[i];
            results[i] = run_match(spec, summaries.at({spec.meeting_id, spec.model_a}),
                                   summaries.at({spec.meeting_id, spec.model_b}), judge,
                                   config);
        }
    };
    const std::size_t threads =
        std::min<std::size_t>(std::max<std::uint32_t>(config.concurrency, 1),
                              std::max<std::size_t>(plan.matches.size(), 1));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    std::sort(results.begin(), results.end(), [](const auto& x, const auto& y) {
        return std::tie(x.meeting_id, x.model_a, x.model_b) <
               std::tie(y.meeting_id, y.model_a, y.model_b);
    });
    return results;
}

MatchOutcome decide_outcome(const ComparisonResult& result, Metric metric,
                            double epsilon) {
    if (!result.valid) throw input_error("decide_outcome: invalid match");
    double a = metric == Metric::completeness ? result.scores_a.completeness
                                              : result.scores_a.conciseness;
    double b = metric == Metric::completeness ? result.scores_b.completeness
                                              : result.scores_b.conciseness;
    MatchOutcome outcome;
    outcome.metric = metric;
    outcome.margin = a - b;
    if (outcome.margin > epsilon) {
        outcome.result_for_a = MatchOutcome::Result::win;
    } else if (outcome.margin < -epsilon) {
        outcome.result_for_a = MatchOutcome::Result::loss;
    } else {
        outcome.result_for_a = MatchOutcome::Result::draw;
    }
    return outcome;
}

std::vector<RatedMatch> derive_rated_matches(
    const std::vector<ComparisonResult>& results, double epsilon) {
    std::vector<RatedMatch> rated;
    for (const auto& r : results) {
        if (!r.valid) continue;
        for (Metric metric : {Metric::completeness, Metric::conciseness}) {
            auto outcome = decide_outcome(r, metric, epsilon);
            double score = outcome.result_for_a == MatchOutcome::Result::win    ? 1.0
                           : outcome.result_for_a == MatchOutcome::Result::loss ? 0.0
                                                                                : 0.5;
            rated.push_back({metric, r.model_a, r.model_b, score});
        }
    }
    return rated;
}

}  // namespace cream
