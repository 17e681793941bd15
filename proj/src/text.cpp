#include "meso/text.hpp"

#include <cctype>

namespace meso {

namespace {

bool ascii_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool ascii_lower(char c) { return c >= 'a' && c <= 'z'; }
bool ascii_digit(char c) { return c >= '0' && c <= '9'; }
bool ascii_alnum(char c) { return ascii_upper(c) || ascii_lower(c) || ascii_digit(c); }

bool ends_with(const std::string& s, const char* suffix) {
    std::string_view sv(suffix);
    return s.size() >= sv.size() && s.compare(s.size() - sv.size(), sv.size(), sv) == 0;
}

// "StressResponse" -> "Stress Response", "CBTSession" -> "CBT Session".
std::string split_camel(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 8);
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (ascii_upper(c) && i > 0) {
            char prev = s[i - 1];
            bool after_lower = ascii_lower(prev) || ascii_digit(prev);
            bool acronym_end = ascii_upper(prev) && i + 1 < s.size() && ascii_lower(s[i + 1]);
            if (after_lower || acronym_end) out.push_back(' ');
        }
        out.push_back(c);
    }
    return out;
}

} // namespace

std::string singularize(const std::string& token) {
    if (ends_with(token, "ies")) return token.substr(0, token.size() - 3) + "y";
    if (ends_with(token, "sses")) return token.substr(0, token.size() - 2);
    if (ends_with(token, "xes") || ends_with(token, "ches") || ends_with(token, "shes"))
        return token.substr(0, token.size() - 2);
    if (ends_with(token, "ss")) return token;
    if (ends_with(token, "s")) return token.substr(0, token.size() - 1);
    return token;
}

std::vector<std::string> normalize_term(const std::string& text) {
    std::string spaced = split_camel(text);
    std::string cleaned;
    cleaned.reserve(spaced.size());
    for (char c : spaced) {
        if (ascii_upper(c))
            cleaned.push_back(static_cast<char>(c - 'A' + 'a'));
        else if (ascii_lower(c) || ascii_digit(c))
            cleaned.push_back(c);
        else
            cleaned.push_back(' ');
    }
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (!current.empty()) {
            std::string t = singularize(current);
            if (!t.empty()) tokens.push_back(t);
            current.clear();
        }
    };
    for (char c : cleaned) {
        if (c == ' ')
            flush();
        else
            current.push_back(c);
    }
    flush();
    return tokens;
}

std::vector<std::string> tokenize_words(const std::string& text) {
    std::vector<std::string> tokens;
    std::string current;
    auto flush = [&] {
        if (!current.empty()) {
            tokens.push_back(current);
            current.clear();
        }
    };
    for (char c : text) {
        if (ascii_alnum(c))
            current.push_back(ascii_upper(c) ? static_cast<char>(c - 'A' + 'a') : c);
        else
            flush();
    }
    flush();
    return tokens;
}

std::string normalized_key(const std::string& text) {
    std::string key;
    for (const auto& t : normalize_term(text)) {
        if (!key.empty()) key.push_back(' ');
        key += t;
    }
    return key;
}

const std::set<std::string>& matcher_stop_tokens() {
    static const std::set<std::string> stops = {"a", "an", "the", "of", "to", "and", "or"};
    return stops;
}

std::string fold_whitespace(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (unsigned char c : text) {
        if (std::isspace(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(ascii_upper(static_cast<char>(c)) ? static_cast<char>(c - 'A' + 'a')
                                                        : static_cast<char>(c));
    }
    return out;
}

bool is_upper_camel_case(const std::string& label) {
    if (label.empty()) return false;
    if (!ascii_upper(label[0])) return false;
    for (char c : label)
        if (!ascii_alnum(c)) return false;
    return true;
}

} // namespace meso
