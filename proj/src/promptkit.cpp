#include "cream/promptkit.hpp"

#include <fstream>
#include <sstream>

namespace cream {

namespace {

const char* kExampleBlock =
    R"(Here are nine examples of key facts to illustrate the desired level of granularity (please be careful that these are examples, and do NOT use them as actual key facts):
* Kevin Carr set off on his journey from Haytor.
* Kevin Carr set off on his journey from Dartmoor.
* Kevin Carr set off on his journey in July 2013.
* Kevin Carr is less than 24 hours away from completing his trip.
* Kevin Carr ran around the world unsupported.
* Kevin Carr ran with his tent.
* Kevin Carr is set to break the previous record.
* Kevin Carr is set to break the record by 24 hours.
* The previous record was held by an Australian.)";

const char* kSchemaBlock =
    R"(Provide your answer in JSON format. The answer should be a list of dictionaries whose keys are "key fact", "response", and "line number":
[{"key fact": "first key fact", "response": "Yes", "line number": [1]}, {"key fact": "second key fact", "response": "No", "line number": []}, {"key fact": "third key fact", "response": "Yes", "line number": [1, 2, 3]}])";

std::string combined_template() {
    std::ostringstream t;
    t << R"(You will be provided with a paragraph and a summary. Your task is to decompose the paragraph into a set of "key facts". A "key fact" is a single fact written as briefly and clearly as possible, encompassing at most 2-3 entities. There should not be any repeated "key fact".
)" << kExampleBlock
      << R"(
Instruction:
First, read the paragraph carefully.
Second, decompose the paragraph into (at most {{max_facts}}) {{fact_noun}} facts.

Paragraph:
{{paragraph}}

You now have a summary and a set of key facts for the same transcript. Your task is to assess if each key fact is inferred from the summary.

Instruction:
First, compare each key fact with the summary.
Second, check if the key fact is inferred from the summary and then response "Yes" or "No" for each key fact. If "Yes", specify the line number(s) of the summary sentence(s) relevant to each key fact.

)" << kSchemaBlock
      << R"(

Summary:
{{summary}}
)";
    return t.str();
}

std::string extraction_template() {
    std::ostringstream t;
    t << R"(You will be provided with a paragraph. Your task is to decompose the paragraph into a set of "key facts". A "key fact" is a single fact written as briefly and clearly as possible, encompassing at most 2-3 entities. There should not be any repeated "key fact".
)" << kExampleBlock
      << R"(
Instruction:
First, read the paragraph carefully.
Second, decompose the paragraph into (at most {{max_facts}}) {{fact_noun}} facts.

Provide your answer in JSON format. The answer should be a list of key fact strings:
["first key fact", "second key fact", "third key fact"]

Paragraph:
{{paragraph}}
)";
    return t.str();
}

std::string alignment_template() {
    std::ostringstream t;
    t << R"(You will be provided with a summary and a set of key facts for the same transcript. Your task is to assess if each key fact is inferred from the summary.

Instruction:
First, compare each key fact with the summary.
Second, check if the key fact is inferred from the summary and then response "Yes" or "No" for each key fact. If "Yes", specify the line number(s) of the summary sentence(s) relevant to each key fact.

)" << kSchemaBlock
      << R"(

Key facts:
{{key_facts}}

Summary:
{{summary}}
)";
    return t.str();
}

std::string faithfulness_template() {
    return R"(You will be provided with a meeting transcript and a summary of that transcript. Your task is to assess the factual consistency of each summary sentence against the transcript.

Instruction:
First, read the transcript carefully.
Second, for each numbered summary sentence, respond "Yes" if the sentence contains no factuality error with respect to the transcript, and "No" otherwise.

Provide your answer in JSON format. The answer should be a list of dictionaries whose keys are "line number" and "faithful":
[{"line number": 1, "faithful": "Yes"}, {"line number": 2, "faithful": "No"}]

Transcript:
{{transcript}}

Summary:
{{summary}}
)";
}

std::string load_template(const PromptOptions& opts, const std::string& name,
                          std::string fallback) {
    if (opts.template_dir.empty()) return fallback;
    std::ifstream in(opts.template_dir + "/" + name);
    if (!in) throw config_error("promptkit: cannot read template override " +
                                opts.template_dir + "/" + name);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void substitute(std::string& body, const std::string& placeholder,
                const std::string& value) {
    const std::string marker = "{{" + placeholder + "}}";
    auto pos = body.find(marker);
    if (pos == std::string::npos) {
        throw render_error("promptkit: placeholder " + marker + " not found in template");
    }
    while (pos != std::string::npos) {
        body.replace(pos, marker.size(), value);
        pos = body.find(marker, pos + value.size());
    }
}

std::string numbered_block(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += '\n';
        out += std::to_string(i + 1);
        out += ". ";
        out += items[i];
    }
    return out;
}

}  // namespace

std::string numbered_lines(const SummaryDoc& summary) {
    return numbered_block(summary.sentences);
}

std::string render_combined_prompt(const std::string& paragraph,
                                   const SummaryDoc& candidate_summary,
                                   std::size_t max_facts,
                                   const PromptOptions& opts) {
    if (paragraph.empty()) throw render_error("combined prompt: empty paragraph");
    candidate_summary.validate();
    if (max_facts < 1 || max_facts > 100) {
        throw render_error("combined prompt: max_facts out of range");
    }
    auto body = load_template(opts, "combined.txt", combined_template());
    substitute(body, "max_facts", std::to_string(max_facts));
    substitute(body, "fact_noun", opts.literal_typo ? "ket" : "key");
    substitute(body, "paragraph", paragraph);
    substitute(body, "summary", numbered_lines(candidate_summary));
    return body;
}

std::string render_extraction_prompt(const std::string& paragraph,
                                     std::size_t max_facts,
                                     const PromptOptions& opts) {
    if (paragraph.empty()) throw render_error("extraction prompt: empty paragraph");
    if (max_facts < 1 || max_facts > 100) {
        throw render_error("extraction prompt: max_facts out of range");
    }
    auto body = load_template(opts, "extraction.txt", extraction_template());
    substitute(body, "max_facts", std::to_string(max_facts));
    substitute(body, "fact_noun", opts.literal_typo ? "ket" : "key");
    substitute(body, "paragraph", paragraph);
    return body;
}

std::string render_alignment_prompt(const KeyFactSet& facts,
                                    const SummaryDoc& candidate_summary,
                                    const PromptOptions& opts) {
    if (facts.empty()) throw render_error("alignment prompt: empty key fact set");
    candidate_summary.validate();
    std::vector<std::string> fact_texts;
    for (const auto& f : facts.facts()) fact_texts.push_back(f.text);
    auto body = load_template(opts, "alignment.txt", alignment_template());
    substitute(body, "key_facts", numbered_block(fact_texts));
    substitute(body, "summary", numbered_lines(candidate_summary));
    return body;
}

std::string render_faithfulness_prompt(const Transcript& transcript,
                                       const SummaryDoc& candidate_summary,
                                       const PromptOptions& opts) {
    transcript.validate();
    candidate_summary.validate();
    auto rendered = transcript.rendered();
    if (rendered.size() > opts.transcript_char_budget) {
        throw input_error("faithfulness prompt: transcript exceeds character budget (" +
                          std::to_string(rendered.size()) + " > " +
                          std::to_string(opts.transcript_char_budget) + ")");
    }
    // Trailing newline from rendering is dropped; the template supplies it.
    if (!rendered.empty() && rendered.back() == '\n') rendered.pop_back();
    auto body = load_template(opts, "faithfulness.txt", faithfulness_template());
    substitute(body, "transcript", rendered);
    substitute(body, "summary", numbered_lines(candidate_summary));
    return body;
}

}  // namespace cream
