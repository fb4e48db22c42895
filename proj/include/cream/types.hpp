#pragma once
// Shared domain types for the evaluation pipeline.

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace cream {

// Error hierarchy. Each subsystem throws the narrowest type that applies.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct input_error : error {
    using error::error;
};
struct config_error : error {
    using error::error;
};
struct render_error : error {
    using error::error;
};
struct parse_error : error {
    using error::error;
};
struct validation_error : error {
    using error::error;
};
struct transport_error : error {
    using error::error;
};
struct metric_error : error {
    using error::error;
};
struct rating_error : error {
    using error::error;
};

struct Turn {
    std::string speaker;
    std::string text;
};

struct Transcript {
    std::string meeting_id;
    std::vector<Turn> turns;

    void validate() const;
    // "speaker: text" per line.
    std::string rendered() const;
};

// A candidate summary split into 1-based numbered sentences.
struct SummaryDoc {
    std::string summary_id;
    std::string meeting_id;
    std::string model_id;
    std::vector<std::string> sentences;  // index i holds line i+1

    std::size_t line_count() const { return sentences.size(); }
    std::string joined_text() const;
    void validate() const;
};

struct KeyFact {
    std::string text;
    std::uint32_t ordinal = 0;  // 1-based position in the set
};

enum class FactSource {
    concatenated_pair,
    human_summary,
    machine_summary,
    transcript,
};

std::string to_string(FactSource s);
FactSource fact_source_from_string(const std::string& s);

// Ordered, deduplicated (on normalized text) key facts.
class KeyFactSet {
public:
    KeyFactSet() = default;

    // Builds from raw fact texts: normalizes for dedup, keeps first
    // occurrence, truncates to max_facts. Original text is preserved.
    static KeyFactSet build(const std::vector<std::string>& texts,
                            std::size_t max_facts, FactSource source);

    const std::vector<KeyFact>& facts() const { return facts_; }
    FactSource source() const { return source_; }
    std::size_t size() const { return facts_.size(); }
    bool empty() const { return facts_.empty(); }

    // Stable content hash, used to assert both sides of a match saw the
    // same fact set.
    std::uint64_t content_hash() const;

private:
    std::vector<KeyFact> facts_;
    FactSource source_ = FactSource::concatenated_pair;
};

struct AlignmentEntry {
    std::uint32_t fact_ordinal = 0;
    bool supported = false;
    std::set<std::uint32_t> line_numbers;  // empty when unsupported
};

struct AlignmentSet {
    std::vector<AlignmentEntry> entries;  // exactly one per key fact
    std::string target_summary_id;
};

struct MetricScores {
    double completeness = 0.0;
    double conciseness = 0.0;
    std::optional<double> faithfulness;
};

// Per-sentence verdicts, true = faithful, aligned to SummaryDoc.sentences.
using FaithfulnessLabels = std::vector<bool>;

// Structured record of a tolerated deviation somewhere in the pipeline.
struct Warning {
    std::string code;
    std::string message;
};

}  // namespace cream
