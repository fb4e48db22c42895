#pragma once
// Scalar quality metrics computed from key-fact alignments.

#include "cream/types.hpp"

namespace cream {

// Fraction of key facts supported by the summary.
double completeness(const KeyFactSet& facts, const AlignmentSet& alignment);

// Fraction of summary lines cited by at least one supported fact.
// Duplicate citations never double-count.
double conciseness(const SummaryDoc& summary, const AlignmentSet& alignment);

// Fraction of summary sentences marked faithful.
double faithfulness(const FaithfulnessLabels& labels);

}  // namespace cream
