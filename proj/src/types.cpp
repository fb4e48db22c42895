#include "cream/types.hpp"

#include <unordered_set>

#include "cream/text.hpp"

namespace cream {

namespace {

std::string trimmed(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

void Transcript::validate() const {
    if (meeting_id.empty()) throw input_error("transcript: empty meeting_id");
    if (turns.empty()) throw input_error("transcript " + meeting_id + ": no turns");
    for (const auto& t : turns) {
        if (trimmed(t.text).empty()) {
            throw input_error("transcript " + meeting_id + ": empty turn text");
        }
    }
}

std::string Transcript::rendered() const {
    std::string out;
    for (const auto& t : turns) {
        out += t.speaker;
        out += ": ";
        out += t.text;
        out += '\n';
    }
    return out;
}

std::string SummaryDoc::joined_text() const {
    std::string out;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
        if (i) out += '\n';
        out += sentences[i];
    }
    return out;
}

void SummaryDoc::validate() const {
    if (sentences.empty()) throw input_error("summary " + summary_id + ": no sentences");
    for (const auto& s : sentences) {
        if (trimmed(s).empty()) {
            throw input_error("summary " + summary_id + ": empty sentence");
        }
    }
}

std::string to_string(FactSource s) {
    switch (s) {
        case FactSource::concatenated_pair: return "concatenated_pair";
        case FactSource::human_summary: return "human_summary";
        case FactSource::machine_summary: return "machine_summary";
        case FactSource::transcript: return "transcript";
    }
    return "unknown";
}

FactSource fact_source_from_string(const std::string& s) {
    if (s == "concatenated_pair") return FactSource::concatenated_pair;
    if (s == "human_summary") return FactSource::human_summary;
    if (s == "machine_summary") return FactSource::machine_summary;
    if (s == "transcript") return FactSource::transcript;
    throw input_error("unknown fact source: " + s);
}

KeyFactSet KeyFactSet::build(const std::vector<std::string>& texts,
                             std::size_t max_facts, FactSource source) {
    KeyFactSet set;
    set.source_ = source;
    std::unordered_set<std::string> seen;
    for (const auto& text : texts) {
        if (set.facts_.size() >= max_facts) break;
        auto norm = normalize_key_fact(text);
        if (norm.empty()) continue;
        if (!seen.insert(norm).second) continue;
        set.facts_.push_back({text, static_cast<std::uint32_t>(set.facts_.size() + 1)});
    }
    return set;
}

std::uint64_t KeyFactSet::content_hash() const {
    // FNV-1a over normalized fact texts.
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
        h ^= 0x1f;
        h *= 1099511628211ull;
    };
    for (const auto& f : facts_) mix(normalize_key_fact(f.text));
    return h;
}

}  // namespace cream
