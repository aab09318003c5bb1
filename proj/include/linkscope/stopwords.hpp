#pragma once
// Default English stopword list for description-token counting. A custom
// list can be supplied from a file instead.

#include <fstream>
#include <set>
#include <string>

#include "linkscope/errors.hpp"

namespace linkscope {

inline const std::set<std::string>& default_stopwords() {
    static const std::set<std::string> words = {
        "a",     "about", "above", "after",  "again", "all",   "am",    "an",    "and",
        "any",   "are",   "as",    "at",     "be",    "been",  "being", "below", "between",
        "both",  "but",   "by",    "can",    "did",   "do",    "does",  "doing", "down",
        "during","each",  "few",   "for",    "from",  "further","had",  "has",   "have",
        "having","he",    "her",   "here",   "hers",  "him",   "his",   "how",   "i",
        "if",    "in",    "into",  "is",     "it",    "its",   "just",  "me",    "more",
        "most",  "my",    "no",    "nor",    "not",   "now",   "of",    "off",   "on",
        "once",  "only",  "or",    "other",  "our",   "ours",  "out",   "over",  "own",
        "s",     "same",  "she",   "should", "so",    "some",  "such",  "t",     "than",
        "that",  "the",   "their", "theirs", "them",  "then",  "there", "these", "they",
        "this",  "those", "through","to",    "too",   "under", "until", "up",    "very",
        "was",   "we",    "were",  "what",   "when",  "where", "which", "while", "who",
        "whom",  "why",   "will",  "with",   "you",   "your",  "yours",
    };
    return words;
}

inline std::set<std::string> load_stopwords(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open stopword file: " + path);
    std::set<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty()) words.insert(line);
    }
    return words;
}

}  // namespace linkscope
