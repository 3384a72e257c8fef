#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "stockcast/error.hpp"

namespace stockcast::sentiment {

// Rule constants from the original VADER tool.
constexpr double kBoosterIncr = 0.293;
constexpr double kBoosterDecr = -0.293;
constexpr double kCapsIncr = 0.733;
constexpr double kNegationScalar = -0.74;
constexpr double kExclamationStep = 0.292;
constexpr double kNormalizeAlpha = 15.0;

struct Lexicon {
    std::unordered_map<std::string, double> entries;   // token -> mean valence
    std::unordered_map<std::string, double> boosters;  // token -> signed increment
    std::unordered_set<std::string> negators;

    static Lexicon with_default_rules();
};

struct SentimentScore {
    double compound = 0.0;  // in [-1, 1]
    double pos = 0.0;
    double neu = 0.0;
    double neg = 0.0;
};

struct TokenizedText {
    std::vector<std::string> tokens;
    int exclamations = 0;
    int questions = 0;
};

class EmptyLexicon : public ValidationError {
public:
    EmptyLexicon() : ValidationError("sentiment lexicon has no entries") {}
};

namespace detail {

inline std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) c = char(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

inline bool is_all_caps(const std::string& s) {
    bool has_alpha = false;
    for (char c : s) {
        const auto u = static_cast<unsigned char>(c);
        if (std::isalpha(u)) {
            has_alpha = true;
            if (!std::isupper(u)) return false;
        }
    }
    return has_alpha;
}

// Strip punctuation from both ends; short leftovers mean the token was
// mostly punctuation (an emoticon), so it stays intact.
inline std::string strip_token(const std::string& token) {
    std::size_t start = 0, end = token.size();
    while (start < end && std::ispunct(static_cast<unsigned char>(token[start]))) ++start;
    while (end > start && std::ispunct(static_cast<unsigned char>(token[end - 1]))) --end;
    std::string stripped = token.substr(start, end - start);
    if (stripped.size() <= 2) return token;
    return stripped;
}

// True when some but not all tokens are ALL-CAPS; uniform shouting carries
// no extra emphasis.
inline bool mixed_caps(const std::vector<std::string>& tokens) {
    std::size_t caps = 0;
    for (const auto& t : tokens)
        if (is_all_caps(t)) ++caps;
    return caps > 0 && caps < tokens.size();
}

} // namespace detail

inline Lexicon Lexicon::with_default_rules() {
    Lexicon lex;
    for (const char* w :
         {"absolutely", "amazingly", "awfully",   "completely", "considerably", "decidedly",
          "deeply",     "effing",    "enormously", "entirely",  "especially",   "exceptionally",
          "extremely",  "fabulously", "flipping",  "frickin",   "fricking",     "friggin",
          "frigging",   "fully",     "greatly",    "hella",     "highly",       "hugely",
          "incredibly", "intensely", "majorly",    "more",      "most",         "particularly",
          "purely",     "quite",     "really",     "remarkably", "so",          "substantially",
          "thoroughly", "totally",   "tremendously", "uber",    "unbelievably", "unusually",
          "utterly",    "very"})
        lex.boosters.emplace(w, kBoosterIncr);
    for (const char* w :
         {"almost", "barely", "hardly", "kinda", "less", "little", "marginally",
          "occasionally", "partly", "scarcely", "slightly", "somewhat"})
        lex.boosters.emplace(w, kBoosterDecr);
    for (const char* w :
         {"aint",     "arent",    "cannot",   "cant",    "couldnt", "darent",   "didnt",
          "doesnt",   "ain't",    "aren't",   "can't",   "couldn't", "daren't", "didn't",
          "doesn't",  "dont",     "hadnt",    "hasnt",   "havent",  "isnt",     "mightnt",
          "mustnt",   "neither",  "don't",    "hadn't",  "hasn't",  "haven't",  "isn't",
          "mightn't", "mustn't",  "neednt",   "needn't", "never",   "no",       "none",
          "nope",     "nor",      "not",      "nothing", "nowhere", "oughtnt",  "shant",
          "shouldnt", "uhuh",     "wasnt",    "werent",  "oughtn't", "shan't",  "shouldn't",
          "uh-uh",    "wasn't",   "weren't",  "without", "wont",    "wouldnt",  "won't",
          "wouldn't", "rarely",   "seldom",   "despite"})
        lex.negators.emplace(w);
    return lex;
}

// Whitespace split with edge punctuation stripped; emoticons survive intact.
// '!' and '?' counts are collected for the punctuation-emphasis rules.
inline TokenizedText tokenize(std::string_view text) {
    TokenizedText out;
    for (char c : text) {
        if (c == '!') ++out.exclamations;
        if (c == '?') ++out.questions;
    }
    std::istringstream iss{std::string(text)};
    std::string raw;
    while (iss >> raw) out.tokens.push_back(detail::strip_token(raw));
    return out;
}

// One entry per line, `token<TAB>valence`. Extra tab-separated fields are
// ignored; blank lines skipped. Tokens are lowercased on load.
inline std::unordered_map<std::string, double> parse_lexicon_entries(std::istream& in) {
    std::unordered_map<std::string, double> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0)
            throw ValidationError("lexicon line " + std::to_string(line_no) +
                                  ": expected token<TAB>valence");
        std::string token = line.substr(0, tab);
        for (char c : token)
            if (std::isspace(static_cast<unsigned char>(c)))
                throw ValidationError("lexicon line " + std::to_string(line_no) +
                                      ": token contains whitespace");
        std::string rest = line.substr(tab + 1);
        const auto next_tab = rest.find('\t');
        if (next_tab != std::string::npos) rest = rest.substr(0, next_tab);
        char* end = nullptr;
        const double valence = std::strtod(rest.c_str(), &end);
        if (end == rest.c_str() || !std::isfinite(valence))
            throw ValidationError("lexicon line " + std::to_string(line_no) +
                                  ": bad valence \"" + rest + "\"");
        entries[detail::to_lower(token)] = valence;
    }
    return entries;
}

inline Lexicon load_lexicon(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open lexicon file: " + path);
    Lexicon lex = Lexicon::with_default_rules();
    lex.entries = parse_lexicon_entries(in);
    return lex;
}

namespace detail {

// Valence of tokens[i], adjusted for ALL-CAPS emphasis, preceding boosters
// (damped 1.0/0.95/0.9 by distance) and preceding negators.
inline double token_valence(const std::vector<std::string>& tokens, std::size_t i,
                            const Lexicon& lex, bool caps_mixed) {
    static const double kDamping[3] = {1.0, 0.95, 0.9};

    const std::string lower = to_lower(tokens[i]);
    const auto hit = lex.entries.find(lower);
    if (hit == lex.entries.end()) return 0.0;

    double valence = hit->second;
    if (is_all_caps(tokens[i]) && caps_mixed)
        valence += (valence >= 0 ? kCapsIncr : -kCapsIncr);

    for (std::size_t d = 1; d <= 3 && d <= i; ++d) {
        const std::string prev = to_lower(tokens[i - d]);
        if (lex.entries.count(prev)) continue;  // scored in its own right
        const auto booster = lex.boosters.find(prev);
        if (booster != lex.boosters.end()) {
            double s = booster->second;
            if (valence < 0) s = -s;
            valence += s * kDamping[d - 1];
        }
        if (lex.negators.count(prev)) valence *= kNegationScalar;
    }
    return valence;
}

inline double punctuation_emphasis(const TokenizedText& t) {
    const double excl = double(std::min(t.exclamations, 3)) * kExclamationStep;
    double quest = 0.0;
    if (t.questions > 1) quest = t.questions <= 3 ? double(t.questions) * 0.18 : 0.96;
    return excl + quest;
}

} // namespace detail

inline double normalize_compound(double raw_sum) {
    double c = raw_sum / std::sqrt(raw_sum * raw_sum + kNormalizeAlpha);
    return std::clamp(c, -1.0, 1.0);
}

inline SentimentScore score(std::string_view text, const Lexicon& lexicon) {
    if (lexicon.entries.empty()) throw EmptyLexicon();

    const TokenizedText t = tokenize(text);
    SentimentScore result;
    if (t.tokens.empty()) {
        result.neu = 1.0;
        return result;
    }

    const bool caps_mixed = detail::mixed_caps(t.tokens);
    std::vector<double> sentiments;
    sentiments.reserve(t.tokens.size());
    for (std::size_t i = 0; i < t.tokens.size(); ++i) {
        if (lexicon.boosters.count(detail::to_lower(t.tokens[i]))) {
            sentiments.push_back(0.0);
            continue;
        }
        sentiments.push_back(detail::token_valence(t.tokens, i, lexicon, caps_mixed));
    }

    double raw_sum = 0.0;
    for (double s : sentiments) raw_sum += s;

    const double emphasis = detail::punctuation_emphasis(t);
    if (raw_sum > 0)
        raw_sum += emphasis;
    else if (raw_sum < 0)
        raw_sum -= emphasis;

    result.compound = normalize_compound(raw_sum);

    double pos_sum = 0.0, neg_sum = 0.0;
    double neu_count = 0.0;
    for (double s : sentiments) {
        if (s > 0)
            pos_sum += s + 1.0;
        else if (s < 0)
            neg_sum += s - 1.0;
        else
            neu_count += 1.0;
    }
    if (pos_sum > std::fabs(neg_sum))
        pos_sum += emphasis;
    else if (pos_sum < std::fabs(neg_sum))
        neg_sum -= emphasis;

    const double total = pos_sum + std::fabs(neg_sum) + neu_count;
    if (total > 0) {
        result.pos = pos_sum / total;
        result.neg = std::fabs(neg_sum) / total;
        result.neu = neu_count / total;
    } else {
        result.neu = 1.0;
    }
    return result;
}

} // namespace stockcast::sentiment
