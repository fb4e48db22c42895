#pragma once
// Deterministic rendering of judge prompts. Rendering is a pure function
// of (template, inputs); the combined template is pinned byte-for-byte by
// golden-file tests.

#include <cstddef>
#include <string>

#include "cream/types.hpp"

namespace cream {

struct PromptOptions {
    // Reproduce the source template's literal "ket facts" spelling instead
    // of the corrected default.
    bool literal_typo = false;
    // Optional directory of template override files (combined.txt,
    // extraction.txt, alignment.txt, faithfulness.txt) with {{placeholder}}
    // markers. Empty = built-in templates.
    std::string template_dir;
    // Hard cap on transcript characters fed to the faithfulness prompt.
    std::size_t transcript_char_budget = 60000;
};

// Summary rendered as explicit numbered lines ("1. ...\n2. ...").
std::string numbered_lines(const SummaryDoc& summary);

std::string render_combined_prompt(const std::string& paragraph,
                                   const SummaryDoc& candidate_summary,
                                   std::size_t max_facts,
                                   const PromptOptions& opts = {});

std::string render_extraction_prompt(const std::string& paragraph,
                                     std::size_t max_facts,
                                     const PromptOptions& opts = {});

std::string render_alignment_prompt(const KeyFactSet& facts,
                                    const SummaryDoc& candidate_summary,
                                    const PromptOptions& opts = {});

std::string render_faithfulness_prompt(const Transcript& transcript,
                                       const SummaryDoc& candidate_summary,
                                       const PromptOptions& opts = {});

}  // namespace cream
