#include "cream/metrics.hpp"

#include <set>

namespace cream {

double completeness(const KeyFactSet& facts, const AlignmentSet& alignment) {
    if (facts.empty()) throw metric_error("completeness: empty key fact set");
    if (alignment.entries.size() != facts.size()) {
        throw metric_error("completeness: alignment does not cover the fact set");
    }
    std::size_t supported = 0;
    for (const auto& e : alignment.entries) {
        if (e.supported) ++supported;
    }
    return static_cast<double>(supported) / static_cast<double>(facts.size());
}

double conciseness(const SummaryDoc& summary, const AlignmentSet& alignment) {
    const auto n = summary.line_count();
    if (n == 0) throw metric_error("conciseness: empty summary");
    std::set<std::uint32_t> cited;
    for (const auto& e : alignment.entries) {
        for (auto line : e.line_numbers) {
            if (line == 0 || line > n) {
                throw metric_error("conciseness: line number out of range");
            }
            cited.insert(line);
        }
    }
    return static_cast<double>(cited.size()) / static_cast<double>(n);
}

double faithfulness(const FaithfulnessLabels& labels) {
    if (labels.empty()) throw metric_error("faithfulness: no labels");
    std::size_t faithful = 0;
    for (bool b : labels) {
        if (b) ++faithful;
    }
    return static_cast<double>(faithful) / static_cast<double>(labels.size());
}

}  // namespace cream
