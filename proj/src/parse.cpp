#include "cream/parse.hpp"

#include <algorithm>
#include <unordered_map>

#include <json.hpp>

#include "cream/text.hpp"

namespace cream {

using nlohmann::json;

std::string extract_json_payload(const std::string& raw_text) {
    if (raw_text.empty()) throw parse_error("empty judge response");
    // Scan for a balanced top-level array, ignoring brackets inside strings.
    for (std::size_t start = raw_text.find('[');
         start != std::string::npos;
         start = raw_text.find('[', start + 1)) {
        int depth = 0;
        bool in_string = false;
        bool escaped = false;
        for (std::size_t i = start; i < raw_text.size(); ++i) {
            char c = raw_text[i];
            if (in_string) {
                if (escaped) {
                    escaped = false;
                } else if (c == '\\') {
                    escaped = true;
                } else if (c == '"') {
                    in_string = false;
                }
                continue;
            }
            if (c == '"') {
                in_string = true;
            } else if (c == '[') {
                ++depth;
            } else if (c == ']') {
                if (--depth == 0) {
                    auto candidate = raw_text.substr(start, i - start + 1);
                    if (json::accept(candidate)) return candidate;
                    break;  // balanced but invalid JSON; try the next '['
                }
            }
        }
    }
    throw parse_error("no balanced JSON array found in judge response");
}

namespace {

bool parse_yes_no(const json& value, bool& out) {
    if (!value.is_string()) return false;
    std::string s = normalize_key_fact(value.get<std::string>());
    if (s == "yes") {
        out = true;
        return true;
    }
    if (s == "no") {
        out = false;
        return true;
    }
    return false;
}

}  // namespace

ParsedAlignment parse_alignment_response(const std::string& payload,
                                         const KeyFactSet& expected_facts,
                                         std::size_t num_lines) {
    json doc = json::parse(payload, nullptr, false);
    if (doc.is_discarded() || !doc.is_array()) {
        throw validation_error("alignment response is not a JSON array");
    }

    struct Element {
        std::string fact_text;
        bool supported = false;
        std::set<std::uint32_t> lines;
    };
    ParsedAlignment result;
    std::vector<Element> elements;
    for (const auto& item : doc) {
        if (!item.is_object() || !item.contains("key fact") ||
            !item.contains("response") || !item.contains("line number")) {
            throw validation_error(
                "alignment element missing one of the keys "
                "\"key fact\", \"response\", \"line number\"");
        }
        Element e;
        if (!item["key fact"].is_string()) {
            throw validation_error("alignment element: \"key fact\" is not a string");
        }
        e.fact_text = item["key fact"].get<std::string>();
        if (!parse_yes_no(item["response"], e.supported)) {
            throw validation_error("alignment element: \"response\" is not Yes/No");
        }
        const auto& lines = item["line number"];
        if (!lines.is_array()) {
            throw validation_error("alignment element: \"line number\" is not an array");
        }
        for (const auto& ln : lines) {
            if (!ln.is_number_integer()) {
                throw validation_error("alignment element: non-integer line number");
            }
            auto v = ln.get<long long>();
            if (v < 1 || static_cast<std::size_t>(v) > num_lines) {
                result.warnings.push_back(
                    {"dropped_line", "line number " + std::to_string(v) +
                                         " outside 1.." + std::to_string(num_lines) +
                                         " for fact \"" + e.fact_text + "\""});
                continue;
            }
            e.lines.insert(static_cast<std::uint32_t>(v));
        }
        if (!e.supported && !e.lines.empty()) {
            result.warnings.push_back(
                {"dropped_line", "line numbers cited on a \"No\" verdict for fact \"" +
                                     e.fact_text + "\""});
            e.lines.clear();
        }
        elements.push_back(std::move(e));
    }

    // Match elements to expected facts by normalized text, then fill the
    // remainder by position.
    const auto& facts = expected_facts.facts();
    std::vector<int> fact_to_element(facts.size(), -1);
    std::vector<bool> element_used(elements.size(), false);
    std::unordered_map<std::string, std::size_t> by_text;
    for (std::size_t f = 0; f < facts.size(); ++f) {
        by_text.emplace(normalize_key_fact(facts[f].text), f);
    }
    for (std::size_t e = 0; e < elements.size(); ++e) {
        auto it = by_text.find(normalize_key_fact(elements[e].fact_text));
        if (it != by_text.end() && fact_to_element[it->second] == -1) {
            fact_to_element[it->second] = static_cast<int>(e);
            element_used[e] = true;
        }
    }
    std::size_t next_unused = 0;
    for (std::size_t f = 0; f < facts.size(); ++f) {
        if (fact_to_element[f] != -1) continue;
        while (next_unused < elements.size() && element_used[next_unused]) ++next_unused;
        if (next_unused < elements.size()) {
            fact_to_element[f] = static_cast<int>(next_unused);
            element_used[next_unused] = true;
        }
    }
    for (std::size_t e = 0; e < elements.size(); ++e) {
        if (!element_used[e]) {
            result.warnings.push_back(
                {"dropped_extra", "extra alignment element for \"" +
                                      elements[e].fact_text + "\" dropped"});
        }
    }

    for (std::size_t f = 0; f < facts.size(); ++f) {
        AlignmentEntry entry;
        entry.fact_ordinal = facts[f].ordinal;
        if (fact_to_element[f] == -1) {
            result.warnings.push_back(
                {"filled_missing", "no verdict for fact \"" + facts[f].text +
                                       "\"; recorded as unsupported"});
        } else {
            const auto& e = elements[static_cast<std::size_t>(fact_to_element[f])];
            entry.supported = e.supported;
            entry.line_numbers = e.lines;
        }
        result.alignment.entries.push_back(std::move(entry));
    }
    return result;
}

std::string serialize_alignment(const AlignmentSet& alignment,
                                const KeyFactSet& facts) {
    json out = json::array();
    for (std::size_t i = 0; i < alignment.entries.size(); ++i) {
        const auto& e = alignment.entries[i];
        json lines = json::array();
        for (auto ln : e.line_numbers) lines.push_back(ln);
        out.push_back({{"key fact", facts.facts().at(i).text},
                       {"response", e.supported ? "Yes" : "No"},
                       {"line number", lines}});
    }
    return out.dump();
}

std::vector<std::string> parse_extraction_response(const std::string& payload) {
    json doc = json::parse(payload, nullptr, false);
    if (doc.is_discarded() || !doc.is_array()) {
        throw validation_error("extraction response is not a JSON array");
    }
    std::vector<std::string> facts;
    for (const auto& item : doc) {
        if (item.is_string()) {
            facts.push_back(item.get<std::string>());
        } else if (item.is_object() && item.contains("key fact") &&
                   item["key fact"].is_string()) {
            facts.push_back(item["key fact"].get<std::string>());
        } else {
            throw validation_error("extraction element is neither a string nor a "
                                   "{\"key fact\": ...} object");
        }
    }
    return facts;
}

ParsedFaithfulness parse_faithfulness_response(const std::string& payload,
                                               std::size_t num_lines) {
    json doc = json::parse(payload, nullptr, false);
    if (doc.is_discarded() || !doc.is_array()) {
        throw validation_error("faithfulness response is not a JSON array");
    }
    ParsedFaithfulness result;
    result.labels.assign(num_lines, false);
    std::vector<bool> seen(num_lines, false);
    for (const auto& item : doc) {
        if (!item.is_object() || !item.contains("line number") ||
            !item.contains("faithful")) {
            throw validation_error(
                "faithfulness element missing \"line number\" or \"faithful\"");
        }
        if (!item["line number"].is_number_integer()) {
            throw validation_error("faithfulness element: non-integer line number");
        }
        auto v = item["line number"].get<long long>();
        bool verdict = false;
        if (!parse_yes_no(item["faithful"], verdict)) {
            throw validation_error("faithfulness element: \"faithful\" is not Yes/No");
        }
        if (v < 1 || static_cast<std::size_t>(v) > num_lines) {
            result.warnings.push_back(
                {"dropped_line", "faithfulness verdict for line " + std::to_string(v) +
                                     " outside 1.." + std::to_string(num_lines)});
            continue;
        }
        result.labels[static_cast<std::size_t>(v - 1)] = verdict;
        seen[static_cast<std::size_t>(v - 1)] = true;
    }
    for (std::size_t i = 0; i < num_lines; ++i) {
        if (!seen[i]) {
            result.warnings.push_back(
                {"filled_missing", "no faithfulness verdict for line " +
                                       std::to_string(i + 1) + "; recorded unfaithful"});
        }
    }
    return result;
}

}  // namespace cream
