#include "cream/text.hpp"

#include <algorithm>
#include <cctype>

#include "cream/types.hpp"

namespace cream {

namespace {

bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

void split_on_punctuation(const std::string& line, std::vector<std::string>& out) {
    std::string current;
    for (std::size_t i = 0; i < line.size(); ++i) {
        current.push_back(line[i]);
        if (is_terminal(line[i])) {
            // Consume any run of terminal punctuation ("...", "?!").
            while (i + 1 < line.size() && is_terminal(line[i + 1])) {
                current.push_back(line[++i]);
            }
            bool at_end = i + 1 == line.size();
            bool before_space = !at_end && std::isspace(static_cast<unsigned char>(line[i + 1]));
            if (at_end || before_space) {
                auto t = trim(current);
                if (!t.empty()) out.push_back(t);
                current.clear();
            }
        }
    }
    auto t = trim(current);
    if (!t.empty()) out.push_back(t);
}

}  // namespace

std::vector<std::string> split_into_lines(const std::string& raw_text) {
    std::vector<std::string> out;
    std::string line;
    for (char c : raw_text + "\n") {
        if (c == '\n') {
            split_on_punctuation(line, out);
            line.clear();
        } else {
            line.push_back(c);
        }
    }
    if (out.empty()) throw input_error("empty summary");
    return out;
}

std::string normalize_key_fact(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    while (!out.empty() && is_terminal(out.back())) out.pop_back();
    while (!out.empty() && out.back() == ' ') out.pop_back();
    return out;
}

std::vector<std::string> tokenize(const std::string& text) {
    std::vector<std::string> tokens;
    std::string current;
    for (char c : normalize_key_fact(text) + " ") {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '\'') {
            current.push_back(c);
        } else if (!current.empty()) {
            tokens.push_back(current);
            current.clear();
        }
    }
    return tokens;
}

std::set<std::string> content_words(const std::string& text) {
    static const std::set<std::string> kStopwords = {
        "a",   "an",  "and", "are",  "as",   "at",   "be",  "but", "by",
        "for", "he",  "her", "his",  "in",   "is",   "it",  "its", "of",
        "on",  "or",  "she", "that", "the",  "they", "this", "to", "was",
        "we",  "were", "with"};
    std::set<std::string> out;
    for (auto& t : tokenize(text)) {
        if (!kStopwords.count(t)) out.insert(t);
    }
    return out;
}

}  // namespace cream
