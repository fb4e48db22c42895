#pragma once
// Extraction and validation of judge JSON answers. The judge is sloppy;
// the parser is not: every tolerated deviation yields one warning record,
// anything worse is a validation error.

#include <string>
#include <vector>

#include "cream/types.hpp"

namespace cream {

// First syntactically balanced JSON array in raw_text, with markdown code
// fences and surrounding prose stripped. Throws parse_error if none found.
std::string extract_json_payload(const std::string& raw_text);

struct ParsedAlignment {
    AlignmentSet alignment;
    std::vector<Warning> warnings;
};

// Validates the verdict-schema array ({"key fact", "response",
// "line number"}) against the expected fact set. Elements are matched to
// facts by normalized text first, then by position; missing facts are
// filled unsupported, extras dropped, out-of-range line numbers dropped —
// each with a warning. Structural problems throw validation_error.
ParsedAlignment parse_alignment_response(const std::string& payload,
                                         const KeyFactSet& expected_facts,
                                         std::size_t num_lines);

// Serializes back to the same schema. parse(serialize(parse(x)))
// equals parse(x) for any accepted payload.
std::string serialize_alignment(const AlignmentSet& alignment,
                                const KeyFactSet& facts);

// JSON array of fact strings from an extraction-only response.
std::vector<std::string> parse_extraction_response(const std::string& payload);

// [{"line number": i, "faithful": "Yes"/"No"}] -> per-sentence labels.
// Missing lines default to faithful=false with a warning.
struct ParsedFaithfulness {
    FaithfulnessLabels labels;
    std::vector<Warning> warnings;
};
ParsedFaithfulness parse_faithfulness_response(const std::string& payload,
                                               std::size_t num_lines);

}  // namespace cream
