#include <regex>
#include <sstream>

#include "cream/judge.hpp"
#include "cream/text.hpp"

#include <json.hpp>

namespace cream {

using nlohmann::json;

KeyFactSet mock_extract(const std::string& paragraph, std::size_t max_facts) {
    if (paragraph.empty()) throw input_error("mock_extract: empty paragraph");
    std::vector<std::string> candidates;
    for (const auto& sentence : split_into_lines(paragraph)) {
        auto tokens = tokenize(sentence);
        if (tokens.size() > 20) tokens.resize(20);
        std::string fact;
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            if (i) fact += ' ';
            fact += tokens[i];
        }
        candidates.push_back(fact);
    }
    return KeyFactSet::build(candidates, max_facts, FactSource::concatenated_pair);
}

AlignmentSet mock_align(const KeyFactSet& facts, const SummaryDoc& summary,
                        double threshold) {
    std::vector<std::set<std::string>> line_words;
    for (const auto& line : summary.sentences) line_words.push_back(content_words(line));

    AlignmentSet out;
    out.target_summary_id = summary.summary_id;
    for (const auto& fact : facts.facts()) {
        AlignmentEntry entry;
        entry.fact_ordinal = fact.ordinal;
        auto fact_words = content_words(fact.text);
        if (!fact_words.empty()) {
            for (std::size_t j = 0; j < line_words.size(); ++j) {
                std::size_t shared = 0;
                for (const auto& w : fact_words) shared += line_words[j].count(w);
                double containment =
                    static_cast<double>(shared) / static_cast<double>(fact_words.size());
                if (containment >= threshold) {
                    entry.line_numbers.insert(static_cast<std::uint32_t>(j + 1));
                }
            }
        }
        entry.supported = !entry.line_numbers.empty();
        out.entries.push_back(std::move(entry));
    }
    return out;
}

FaithfulnessLabels mock_faithfulness(const std::string& transcript_text,
                                     const SummaryDoc& summary) {
    auto transcript_words = content_words(transcript_text);
    FaithfulnessLabels labels;
    for (const auto& line : summary.sentences) {
        bool shares = false;
        for (const auto& w : content_words(line)) {
            if (transcript_words.count(w)) {
                shares = true;
                break;
            }
        }
        labels.push_back(shares);
    }
    return labels;
}

namespace {

// Known section boundaries in rendered prompts.
bool is_boundary(const std::string& line) {
    return line == "Paragraph:" || line == "Summary:" || line == "Key facts:" ||
           line == "Transcript:" || line == "Instruction:" ||
           line.rfind("You now have a summary", 0) == 0 ||
           line.rfind("Provide your answer in JSON format", 0) == 0;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text + "\n") {
        if (c == '\n') {
            lines.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    return lines;
}

std::optional<std::string> section(const std::vector<std::string>& lines,
                                   const std::string& header) {
    std::string content;
    bool in_section = false;
    bool found = false;
    for (const auto& line : lines) {
        if (line == header) {
            in_section = true;
            found = true;
            continue;
        }
        if (in_section && is_boundary(line)) break;
        if (in_section) {
            content += line;
            content += '\n';
        }
    }
    if (!found) return std::nullopt;
    while (!content.empty() && (content.back() == '\n' || content.back() == ' ')) {
        content.pop_back();
    }
    return content;
}

std::vector<std::string> strip_numbering(const std::string& block) {
    std::vector<std::string> items;
    static const std::regex prefix(R"(^\d+\.\s+)");
    for (const auto& line : split_lines(block)) {
        if (line.empty()) continue;
        items.push_back(std::regex_replace(line, prefix, ""));
    }
    return items;
}

std::size_t parse_max_facts(const std::string& prompt) {
    static const std::regex pat(R"(\(at most (\d+)\))");
    std::smatch m;
    if (std::regex_search(prompt, m, pat)) return std::stoul(m[1]);
    return 30;
}

SummaryDoc summary_from_block(const std::string& block) {
    SummaryDoc doc;
    doc.summary_id = "prompt";
    doc.sentences = strip_numbering(block);
    if (doc.sentences.empty()) throw input_error("mock judge: empty summary block");
    return doc;
}

json alignment_to_json(const KeyFactSet& facts, const AlignmentSet& alignment) {
    json arr = json::array();
    for (std::size_t i = 0; i < alignment.entries.size(); ++i) {
        const auto& e = alignment.entries[i];
        json lines = json::array();
        for (auto ln : e.line_numbers) lines.push_back(ln);
        arr.push_back({{"key fact", facts.facts()[i].text},
                       {"response", e.supported ? "Yes" : "No"},
                       {"line number", lines}});
    }
    return arr;
}

std::string fenced(const json& answer) {
    return "Here is the answer:\n```json\n" + answer.dump() + "\n```\n";
}

}  // namespace

JudgeResponse MockJudge::complete(const JudgeRequest& request) {
    if (request.prompt.empty()) throw input_error("mock judge: empty prompt");
    auto lines = split_lines(request.prompt);
    auto paragraph = section(lines, "Paragraph:");
    auto summary_block = section(lines, "Summary:");
    auto facts_block = section(lines, "Key facts:");
    auto transcript_block = section(lines, "Transcript:");

    json answer;
    if (facts_block && summary_block) {
        // Alignment-only prompt.
        auto facts = KeyFactSet::build(strip_numbering(*facts_block), 100,
                                       FactSource::concatenated_pair);
        auto summary = summary_from_block(*summary_block);
        answer = alignment_to_json(facts, mock_align(facts, summary, align_threshold_));
    } else if (transcript_block && summary_block) {
        auto summary = summary_from_block(*summary_block);
        auto labels = mock_faithfulness(*transcript_block, summary);
        answer = json::array();
        for (std::size_t i = 0; i < labels.size(); ++i) {
            answer.push_back({{"line number", i + 1}, {"faithful", labels[i] ? "Yes" : "No"}});
        }
    } else if (paragraph && summary_block) {
        // Combined prompt: extract then align in one answer.
        auto facts = mock_extract(*paragraph, parse_max_facts(request.prompt));
        auto summary = summary_from_block(*summary_block);
        answer = alignment_to_json(facts, mock_align(facts, summary, align_threshold_));
    } else if (paragraph) {
        auto facts = mock_extract(*paragraph, parse_max_facts(request.prompt));
        answer = json::array();
        for (const auto& f : facts.facts()) answer.push_back(f.text);
    } else {
        throw input_error("mock judge: unrecognized prompt layout");
    }

    JudgeResponse response;
    response.raw_text = fenced(answer);
    response.judge_model_id = request.judge_model_id.empty() ? "mock" : request.judge_model_id;
    return response;
}

}  // namespace cream
