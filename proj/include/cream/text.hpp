#pragma once
// Text normalization and sentence splitting. The splitting rule is fixed
// because the conciseness denominator |S| depends on it.

#include <set>
#include <string>
#include <vector>

namespace cream {

// Splits on newlines first, then on terminal punctuation (. ! ?) followed
// by whitespace. Trims each segment, drops empties. Throws input_error if
// nothing survives.
std::vector<std::string> split_into_lines(const std::string& raw_text);

// Lowercase, collapse internal whitespace, strip leading/trailing
// whitespace and terminal punctuation. Idempotent.
std::string normalize_key_fact(const std::string& text);

// Normalized tokens of the text.
std::vector<std::string> tokenize(const std::string& text);

// Tokens minus a small fixed stopword list; used by the lexical mock judge.
std::set<std::string> content_words(const std::string& text);

}  // namespace cream
