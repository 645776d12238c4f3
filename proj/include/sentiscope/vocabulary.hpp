#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sentiscope/error.hpp"
#include "sentiscope/tokenizer.hpp"

namespace sentiscope {

enum class Polarity { positive, negative };

inline constexpr std::string_view polarity_name(Polarity p) {
    return p == Polarity::positive ? "positive" : "negative";
}

/// One weighted n-gram of a sentiment lexicon.
struct VocabEntry {
    std::vector<Token> tokens;
    Polarity polarity = Polarity::positive;
    double weight = 1.0;

    [[nodiscard]] std::size_t n() const { return tokens.size(); }

    friend bool operator==(const VocabEntry&, const VocabEntry&) = default;
};

/// Immutable set of positive and negative n-grams, indexed for matching.
///
/// Entries are stored in insertion order. A token sequence may appear under
/// one polarity only. Lookup goes through a token-id trie so that matching
/// a text costs O(tokens * max_n) hash probes regardless of lexicon size.
class Vocabulary {
public:
    static constexpr std::uint32_t kUnknownToken = std::numeric_limits<std::uint32_t>::max();
    static constexpr std::uint32_t kRoot = 0;

    Vocabulary() { node_entry_.push_back(-1); }

    /// Validates and indexes `entries`. A repeated (tokens, polarity) pair
    /// keeps its first occurrence and appends a note to `warnings`.
    /// Throws ValidationError on empty or non-normalized n-grams, negative
    /// weights, or a token sequence listed under both polarities.
    [[nodiscard]] static Vocabulary build(std::vector<VocabEntry> entries,
                                          std::vector<std::string>* warnings = nullptr) {
        Vocabulary vocab;
        std::map<std::vector<std::string>, std::size_t> seen;
        for (auto& entry : entries) {
            if (entry.tokens.empty()) throw ValidationError("vocabulary entry with no tokens");
            if (!std::isfinite(entry.weight) || entry.weight < 0.0) {
                throw ValidationError("vocabulary entry '" + join_tokens(entry.tokens) +
                                      "' has invalid weight " + std::to_string(entry.weight));
            }
            std::vector<std::string> key;
            key.reserve(entry.tokens.size());
            for (const auto& tok : entry.tokens) {
                const auto normal = tokenize(tok.text);
                if (normal.size() != 1 || normal.front().text != tok.text) {
                    throw ValidationError("vocabulary token '" + tok.text + "' is not normalized");
                }
                key.push_back(tok.text);
            }
            if (auto it = seen.find(key); it != seen.end()) {
                const VocabEntry& prior = vocab.entries_[it->second];
                if (prior.polarity != entry.polarity) {
                    throw ValidationError("n-gram '" + join_tokens(entry.tokens) +
                                          "' listed as both positive and negative");
                }
                if (warnings) {
                    warnings->push_back("duplicate " + std::string(polarity_name(entry.polarity)) +
                                        " n-gram '" + join_tokens(entry.tokens) + "' ignored");
                }
                continue;
            }
            seen.emplace(std::move(key), vocab.entries_.size());
            vocab.insert(std::move(entry));
        }
        return vocab;
    }

    [[nodiscard]] const std::vector<VocabEntry>& entries() const { return entries_; }
    [[nodiscard]] const VocabEntry& operator[](std::size_t i) const { return entries_[i]; }
    [[nodiscard]] std::size_t size() const { return entries_.size(); }
    [[nodiscard]] bool empty() const { return entries_.empty(); }
    [[nodiscard]] std::size_t max_n() const { return max_n_; }
    [[nodiscard]] std::size_t count(Polarity p) const {
        std::size_t c = 0;
        for (const auto& e : entries_) c += e.polarity == p;
        return c;
    }

    // Matching primitives.
    [[nodiscard]] std::uint32_t token_id(const std::string& text) const {
        const auto it = ids_.find(text);
        return it == ids_.end() ? kUnknownToken : it->second;
    }
    /// Child trie node, or kUnknownToken when there is none.
    [[nodiscard]] std::uint32_t child(std::uint32_t node, std::uint32_t token) const {
        const auto it = edges_.find(edge_key(node, token));
        return it == edges_.end() ? kUnknownToken : it->second;
    }
    /// Entry index terminating at `node`, or -1.
    [[nodiscard]] std::int64_t entry_at(std::uint32_t node) const { return node_entry_[node]; }

private:
    static std::uint64_t edge_key(std::uint32_t node, std::uint32_t token) {
        return (static_cast<std::uint64_t>(node) << 32) | token;
    }

    void insert(VocabEntry entry) {
        std::uint32_t node = kRoot;
        for (const auto& tok : entry.tokens) {
            auto [id_it, fresh_id] =
                ids_.try_emplace(tok.text, static_cast<std::uint32_t>(ids_.size()));
            (void)fresh_id;
            const auto key = edge_key(node, id_it->second);
            auto edge = edges_.find(key);
            if (edge == edges_.end()) {
                const auto next = static_cast<std::uint32_t>(node_entry_.size());
                node_entry_.push_back(-1);
                edge = edges_.emplace(key, next).first;
            }
            node = edge->second;
        }
        node_entry_[node] = static_cast<std::int64_t>(entries_.size());
        max_n_ = std::max(max_n_, entry.tokens.size());
        entries_.push_back(std::move(entry));
    }

    std::vector<VocabEntry> entries_;
    std::size_t max_n_ = 0;
    std::unordered_map<std::string, std::uint32_t> ids_;
    std::unordered_map<std::uint64_t, std::uint32_t> edges_;
    std::vector<std::int64_t> node_entry_;
};

}  // namespace sentiscope
