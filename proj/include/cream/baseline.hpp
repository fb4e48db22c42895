#pragma once
// Reference-based absolute evaluation: key facts from a chosen reference
// source, aligned against each candidate summary.

#include <string>
#include <variant>

#include "cream/judge.hpp"
#include "cream/promptkit.hpp"
#include "cream/types.hpp"

namespace cream {

struct ReferenceSource {
    FactSource kind = FactSource::human_summary;
    std::variant<SummaryDoc, Transcript> payload;

    static ReferenceSource from_summary(SummaryDoc doc, FactSource kind);
    static ReferenceSource from_transcript(Transcript transcript);
};

struct BaselineConfig {
    std::size_t max_key_facts = 16;
    // Hard cap on transcript characters rendered into extraction prompts.
    std::size_t transcript_char_budget = 60000;
    std::string judge_model_id = "mock";
    double temperature = 0.0;
    std::uint32_t max_output_tokens = 4096;
    PromptOptions prompt;
};

KeyFactSet extract_reference_key_facts(const ReferenceSource& source,
                                       JudgeBackend& judge,
                                       const BaselineConfig& config);

MetricScores score_summary_absolute(const SummaryDoc& summary,
                                    const KeyFactSet& facts, JudgeBackend& judge,
                                    const BaselineConfig& config);

std::pair<FaithfulnessLabels, double> evaluate_faithfulness(
    const Transcript& transcript, const SummaryDoc& summary, JudgeBackend& judge,
    const BaselineConfig& config);

}  // namespace cream
