#pragma once

#include <algorithm>
#include <cmath>
#include <string_view>
#include <vector>

#include "sentiscope/scores.hpp"
#include "sentiscope/tokenizer.hpp"
#include "sentiscope/vocabulary.hpp"

namespace sentiscope {

/// A vocabulary entry found at tokens [start, start + length).
struct MatchResult {
    std::size_t entry = 0;  // index into Vocabulary::entries()
    std::size_t start = 0;
    std::size_t length = 0;

    [[nodiscard]] std::size_t end() const { return start + length; }

    friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

/// Finds vocabulary n-grams with longest-match precedence.
///
/// Lengths are tried from vocab.max_n() down to 1 and positions left to
/// right; a candidate is accepted only if none of its tokens were consumed
/// by an earlier acceptance, and then consumes its whole span. Any n-gram
/// contained in an accepted longer one is therefore discounted. Results are
/// ordered by start position.
[[nodiscard]] inline std::vector<MatchResult> match_ngrams(const std::vector<Token>& tokens,
                                                           const Vocabulary& vocab) {
    std::vector<MatchResult> candidates;
    if (tokens.empty() || vocab.empty()) return candidates;

    std::vector<std::uint32_t> ids(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) ids[i] = vocab.token_id(tokens[i].text);

    for (std::size_t start = 0; start < tokens.size(); ++start) {
        std::uint32_t node = Vocabulary::kRoot;
        for (std::size_t k = start; k < tokens.size() && k - start < vocab.max_n(); ++k) {
            if (ids[k] == Vocabulary::kUnknownToken) break;
            node = vocab.child(node, ids[k]);
            if (node == Vocabulary::kUnknownToken) break;
            if (const auto e = vocab.entry_at(node); e >= 0) {
                candidates.push_back({static_cast<std::size_t>(e), start, k - start + 1});
            }
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const MatchResult& a, const MatchResult& b) {
        return a.length != b.length ? a.length > b.length : a.start < b.start;
    });

    std::vector<char> consumed(tokens.size(), 0);
    std::vector<MatchResult> accepted;
    for (const auto& c : candidates) {
        const auto first = consumed.begin() + static_cast<std::ptrdiff_t>(c.start);
        const auto last = first + static_cast<std::ptrdiff_t>(c.length);
        if (std::find(first, last, 1) != last) continue;
        std::fill(first, last, 1);
        accepted.push_back(c);
    }
    std::sort(accepted.begin(), accepted.end(),
              [](const MatchResult& a, const MatchResult& b) { return a.start < b.start; });
    return accepted;
}

enum class Scaling { linear, log };

inline constexpr std::string_view scaling_name(Scaling s) { return s == Scaling::linear ? "linear" : "log"; }

inline Scaling parse_scaling(std::string_view name) {
    if (name == "linear") return Scaling::linear;
    if (name == "log") return Scaling::log;
    throw InputError("unknown scaling '" + std::string(name) + "' (expected linear or log)");
}

struct ScoringConfig {
    Scaling scaling = Scaling::log;
};

namespace detail {

// Maps a matched weight total onto [0, 1] relative to the token count.
inline double scale_count(double count, std::size_t tokens, Scaling scaling) {
    if (count <= 0.0) return 0.0;
    const auto t = static_cast<double>(tokens);
    const double v = scaling == Scaling::linear ? count / t : std::log1p(count) / std::log1p(t);
    return std::min(1.0, v);
}

}  // namespace detail

/// Scores an already tokenized text.
[[nodiscard]] inline SentimentScores score_tokens(const std::vector<Token>& tokens, const Vocabulary& vocab,
                                                  const ScoringConfig& cfg = {}) {
    if (tokens.empty()) return {};
    double pos = 0.0;
    double neg = 0.0;
    for (const auto& m : match_ngrams(tokens, vocab)) {
        const auto& e = vocab[m.entry];
        (e.polarity == Polarity::positive ? pos : neg) += e.weight;
    }
    const double negative = detail::scale_count(neg, tokens.size(), cfg.scaling);
    return SentimentScores::from_components(detail::scale_count(pos, tokens.size(), cfg.scaling),
                                            negative > 0.0 ? -negative : 0.0);
}

/// Tokenizes and scores `text`. Empty text scores all zeros.
[[nodiscard]] inline SentimentScores score(std::string_view text, const Vocabulary& vocab,
                                           const ScoringConfig& cfg = {}) {
    return score_tokens(tokenize(text), vocab, cfg);
}

}  // namespace sentiscope
