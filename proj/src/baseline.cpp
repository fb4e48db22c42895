#include "cream/baseline.hpp"

#include "cream/metrics.hpp"
#include "cream/parse.hpp"

namespace cream {

ReferenceSource ReferenceSource::from_summary(SummaryDoc doc, FactSource kind) {
    if (kind != FactSource::human_summary && kind != FactSource::machine_summary) {
        throw input_error("reference source: summary payload requires a summary kind");
    }
    return {kind, std::move(doc)};
}

ReferenceSource ReferenceSource::from_transcript(Transcript transcript) {
    return {FactSource::transcript, std::move(transcript)};
}

namespace {

JudgeRequest make_request(const BaselineConfig& config, std::string prompt,
                          bool bypass_cache = false) {
    JudgeRequest request;
    request.prompt = std::move(prompt);
    request.judge_model_id = config.judge_model_id;
    request.temperature = config.temperature;
    request.max_output_tokens = config.max_output_tokens;
    request.bypass_cache = bypass_cache;
    return request;
}

// Single re-ask on rejected judge output, then give up.
template <typename ParseFn>
auto ask(JudgeBackend& judge, const BaselineConfig& config, const std::string& prompt,
         ParseFn&& parse_fn) {
    try {
        return parse_fn(judge.complete(make_request(config, prompt)).raw_text);
    } catch (const parse_error&) {
    } catch (const validation_error&) {
    }
    return parse_fn(judge.complete(make_request(config, prompt, true)).raw_text);
}

}  // namespace

KeyFactSet extract_reference_key_facts(const ReferenceSource& source,
                                       JudgeBackend& judge,
                                       const BaselineConfig& config) {
    std::string paragraph;
    if (source.kind == FactSource::transcript) {
        const auto& transcript = std::get<Transcript>(source.payload);
        transcript.validate();
        paragraph = transcript.rendered();
        if (paragraph.size() > config.transcript_char_budget) {
            throw input_error("reference transcript exceeds character budget (" +
                              std::to_string(paragraph.size()) + " > " +
                              std::to_string(config.transcript_char_budget) + ")");
        }
    } else {
        const auto& doc = std::get<SummaryDoc>(source.payload);
        doc.validate();
        paragraph = doc.joined_text();
    }
    auto prompt = render_extraction_prompt(paragraph, config.max_key_facts, config.prompt);
    auto texts = ask(judge, config, prompt, [](const std::string& raw) {
        return parse_extraction_response(extract_json_payload(raw));
    });
    auto facts = KeyFactSet::build(texts, config.max_key_facts, source.kind);
    if (facts.empty()) throw validation_error("reference extraction produced no key facts");
    return facts;
}

MetricScores score_summary_absolute(const SummaryDoc& summary,
                                    const KeyFactSet& facts, JudgeBackend& judge,
                                    const BaselineConfig& config) {
    summary.validate();
    auto prompt = render_alignment_prompt(facts, summary, config.prompt);
    auto parsed = ask(judge, config, prompt, [&](const std::string& raw) {
        return parse_alignment_response(extract_json_payload(raw), facts,
                                        summary.line_count());
    });
    MetricScores scores;
    scores.completeness = completeness(facts, parsed.alignment);
    scores.conciseness = conciseness(summary, parsed.alignment);
    return scores;
}

std::pair<FaithfulnessLabels, double> evaluate_faithfulness(
    const Transcript& transcript, const SummaryDoc& summary, JudgeBackend& judge,
    const BaselineConfig& config) {
    PromptOptions opts = config.prompt;
    opts.transcript_char_budget = config.transcript_char_budget;
    auto prompt = render_faithfulness_prompt(transcript, summary, opts);
    auto parsed = ask(judge, config, prompt, [&](const std::string& raw) {
        return parse_faithfulness_response(extract_json_payload(raw), summary.line_count());
    });
    return {parsed.labels, faithfulness(parsed.labels)};
}

}  // namespace cream
