#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sentiscope/calendar.hpp"
#include "sentiscope/error.hpp"
#include "sentiscope/eval.hpp"
#include "sentiscope/io.hpp"
#include "sentiscope/timeseries.hpp"
#include "sentiscope/vocabulary.hpp"

namespace sentiscope {

/// Parameters of a synthetic corpus whose sentiment leads the price.
struct SyntheticConfig {
    std::size_t channels = 77;
    std::size_t days = 180;
    std::size_t posts_per_day = 3;  // per channel, on days it posts
    int planted_lag = 1;            // days by which signal channels lead the price difference
    double signal_strength = 0.8;   // correlation of the price difference with the planted driver
    std::size_t signal_channels = 10;
    std::size_t truth_items = 490;
    std::uint64_t seed = 42;
    Day start = Day{std::chrono::year{2021} / std::chrono::July / 1};
};

struct SyntheticData {
    std::vector<NewsItem> corpus;
    DailySeries prices;
    std::vector<GroundTruthRecord> truth;
    std::vector<std::string> signal_channels;
};

namespace synthetic {

inline const std::vector<std::string> kPositive = {"bullish", "moon", "gains",  "pump", "breakout",
                                                   "rally",   "profit", "hodl", "good", "🚀"};
inline const std::vector<std::string> kNegative = {"bearish", "dump", "crash", "rekt", "scam",
                                                   "selloff", "fear", "panic", "bad"};
// Phrases that exercise longest-match precedence against the unigrams above.
inline const std::vector<std::string> kPositivePhrases = {"not bad", "not a bad thing"};
inline const std::vector<std::string> kNegativePhrases = {"no good", "bad thing"};
// Domain jargon missing from the base lexicon; adding it is the fine-tuning step.
inline const std::string kPositiveJargon = "diamond hands";
inline const std::string kNegativeJargon = "rug pull";

inline const std::vector<std::string> kFiller = {
    "btc",  "eth",  "price", "market", "today", "chart", "the",  "is",    "and",   "this",
    "week", "traders", "volume", "looks", "just", "i",  "think", "we",  "see",   "crypto",
    "#bitcoin", "$BTC", "Bitcoin", "now", "again", "after", "news", "on", "for", "with"};

}  // namespace synthetic

/// The lexicon the synthetic corpus is written against. Without jargon it
/// plays the out-of-the-box lexicon; with it, the fine-tuned one.
[[nodiscard]] inline Vocabulary synthetic_vocabulary(bool with_jargon = true) {
    std::vector<VocabEntry> entries;
    auto add = [&](const std::string& phrase, Polarity p) { entries.push_back({tokenize(phrase), p, 1.0}); };
    for (const auto& w : synthetic::kPositive) add(w, Polarity::positive);
    for (const auto& w : synthetic::kPositivePhrases) add(w, Polarity::positive);
    for (const auto& w : synthetic::kNegative) add(w, Polarity::negative);
    for (const auto& w : synthetic::kNegativePhrases) add(w, Polarity::negative);
    if (with_jargon) {
        add(synthetic::kPositiveJargon, Polarity::positive);
        add(synthetic::kNegativeJargon, Polarity::negative);
    }
    return Vocabulary::build(std::move(entries));
}

/// synthetic_vocabulary() padded with pronounceable nonsense n-grams up to
/// the requested per-polarity sizes; used for throughput runs.
[[nodiscard]] inline Vocabulary padded_vocabulary(std::size_t positive, std::size_t negative, std::uint64_t seed) {
    std::vector<VocabEntry> entries = synthetic_vocabulary(true).entries();
    std::set<std::string> taken;
    for (const auto& e : entries) taken.insert(join_tokens(e.tokens));
    std::mt19937_64 rng(seed);
    static const char* const syllables[] = {"ka", "lo", "mi", "nu", "ra", "se", "ti", "vo", "ze", "qu",
                                            "bri", "dak", "fen", "gor", "hul", "jin", "pex", "wyn"};
    std::uniform_int_distribution<int> syl(0, static_cast<int>(std::size(syllables)) - 1);
    std::uniform_int_distribution<int> word_len(2, 3);
    std::uniform_int_distribution<int> gram_len(1, 4);
    auto make = [&](std::size_t target, Polarity p) {
        std::size_t have = static_cast<std::size_t>(
            std::count_if(entries.begin(), entries.end(), [&](const VocabEntry& e) { return e.polarity == p; }));
        while (have < target) {
            std::string phrase;
            const int n = gram_len(rng);
            for (int k = 0; k < n; ++k) {
                if (k) phrase += ' ';
                const int len = word_len(rng);
                for (int s = 0; s < len; ++s) phrase += syllables[syl(rng)];
            }
            if (!taken.insert(phrase).second) continue;
            entries.push_back({tokenize(phrase), p, 1.0});
            ++have;
        }
    };
    make(positive, Polarity::positive);
    make(negative, Polarity::negative);
    return Vocabulary::build(std::move(entries));
}

/// Seeded corpus, closing prices and ground truth.
///
/// A daily driver z(d) ~ N(0,1) sets the mood of the signal channels on day
/// d; the price difference on day d is
/// 400 * (s * z(d - planted_lag) + sqrt(1 - s^2) * noise). Other channels
/// follow independent moods. Posts mix filler words with lexicon phrases
/// whose polarity odds follow the mood. Each ground-truth item has two
/// reviewers scoring 0.3 per inserted phrase of a polarity, plus noise.
[[nodiscard]] inline SyntheticData generate_synthetic(const SyntheticConfig& cfg) {
    if (!(cfg.signal_strength >= 0.0 && cfg.signal_strength <= 1.0)) {
        throw InputError("signal_strength must be within [0, 1]");
    }
    if (cfg.channels == 0 || cfg.days < 2 || cfg.posts_per_day == 0) {
        throw InputError("synthetic config needs channels >= 1, days >= 2, posts_per_day >= 1");
    }
    if (cfg.signal_channels > cfg.channels) throw InputError("more signal channels than channels");
    if (cfg.planted_lag < 0 || static_cast<std::size_t>(cfg.planted_lag) >= cfg.days) {
        throw InputError("planted_lag must be within [0, days)");
    }

    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto pick = [&](const std::vector<std::string>& v) {
        return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
    };

    const auto lag = static_cast<std::size_t>(cfg.planted_lag);
    std::vector<double> driver(cfg.days + lag);  // driver[i] is z(i - lag)
    for (auto& z : driver) z = normal(rng);
    auto z_at = [&](std::size_t day) { return driver[day + lag]; };

    SyntheticData out;

    // Prices.
    const double s = cfg.signal_strength;
    const double rest = std::sqrt(1.0 - s * s);
    std::vector<std::pair<Day, double>> closes;
    double price = 30000.0;
    closes.emplace_back(cfg.start, price);
    for (std::size_t d = 1; d < cfg.days; ++d) {
        price += 400.0 * (s * driver[d] + rest * normal(rng));  // driver[d] == z(d - lag)
        closes.emplace_back(cfg.start + std::chrono::days{static_cast<long>(d)}, price);
    }
    out.prices = DailySeries::from_points(closes);

    // Channels.
    std::vector<std::string> names;
    for (std::size_t c = 0; c < cfg.channels; ++c) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "feed_%02zu", c + 1);
        names.emplace_back(buf);
    }
    std::vector<std::size_t> order(cfg.channels);
    for (std::size_t c = 0; c < cfg.channels; ++c) order[c] = c;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<char> is_signal(cfg.channels, 0);
    for (std::size_t k = 0; k < cfg.signal_channels; ++k) is_signal[order[k]] = 1;
    std::vector<double> activity(cfg.channels);
    for (std::size_t c = 0; c < cfg.channels; ++c) {
        activity[c] = is_signal[c] ? 0.85 + 0.15 * unit(rng) : 0.4 + 0.6 * unit(rng);
        if (is_signal[c]) out.signal_channels.push_back(names[c]);
    }
    std::sort(out.signal_channels.begin(), out.signal_channels.end());

    // Posts, with the phrase counts behind each one kept for ground truth.
    std::vector<std::pair<int, int>> phrase_counts;
    std::size_t next_id = 1;
    for (std::size_t d = 0; d < cfg.days; ++d) {
        const Day day = cfg.start + std::chrono::days{static_cast<long>(d)};
        for (std::size_t c = 0; c < cfg.channels; ++c) {
            const bool active = unit(rng) < activity[c];
            const double idio = normal(rng);
            if (!active) continue;
            const double mood = is_signal[c] ? 0.8 * z_at(d) + 0.6 * idio : idio;
            const double p_pos = 0.45 / (1.0 + std::exp(-1.6 * mood));
            const double p_neg = 0.45 / (1.0 + std::exp(1.6 * mood));
            for (std::size_t k = 0; k < cfg.posts_per_day; ++k) {
                std::vector<std::string> words;
                const int filler = 5 + static_cast<int>(unit(rng) * 5);
                for (int f = 0; f < filler; ++f) words.push_back(pick(synthetic::kFiller));
                int npos = 0;
                int nneg = 0;
                for (int slot = 0; slot < 3; ++slot) {
                    const double r = unit(rng);
                    std::string phrase;
                    if (r < p_pos) {
                        const double v = unit(rng);
                        phrase = v < 0.3   ? synthetic::kPositiveJargon
                                 : v < 0.4 ? pick(synthetic::kPositivePhrases)
                                           : pick(synthetic::kPositive);
                        ++npos;
                    } else if (r < p_pos + p_neg) {
                        const double v = unit(rng);
                        phrase = v < 0.3   ? synthetic::kNegativeJargon
                                 : v < 0.4 ? pick(synthetic::kNegativePhrases)
                                           : pick(synthetic::kNegative);
                        ++nneg;
                    } else {
                        continue;
                    }
                    const auto at = std::uniform_int_distribution<std::size_t>(0, words.size())(rng);
                    words.insert(words.begin() + static_cast<std::ptrdiff_t>(at), phrase);
                }
                std::string text;
                if (unit(rng) < 0.15) text = "@" + names[c] + "_fan ";
                for (std::size_t w = 0; w < words.size(); ++w) text += (w ? " " : "") + words[w];
                if (unit(rng) < 0.2) text += " https://t.co/" + std::to_string(next_id);

                char id[32];
                std::snprintf(id, sizeof id, "p%07zu", next_id++);
                const auto second = std::uniform_int_distribution<int>(0, 86399)(rng);
                out.corpus.push_back({id, names[c], Timestamp{day} + std::chrono::seconds{second}, std::move(text)});
                phrase_counts.emplace_back(npos, nneg);
            }
        }
    }

    // Ground truth on a sample of posts, kept in corpus order.
    std::vector<std::size_t> sample(out.corpus.size());
    for (std::size_t i = 0; i < sample.size(); ++i) sample[i] = i;
    std::shuffle(sample.begin(), sample.end(), rng);
    sample.resize(std::min(cfg.truth_items, sample.size()));
    std::sort(sample.begin(), sample.end());
    std::normal_distribution<double> reviewer_noise(0.0, 0.05);
    for (std::size_t i : sample) {
        const auto [npos, nneg] = phrase_counts[i];
        std::vector<double> pos;
        std::vector<double> neg;
        for (int r = 0; r < 2; ++r) {
            pos.push_back(std::clamp(0.3 * npos + reviewer_noise(rng), 0.0, 1.0));
            neg.push_back(-std::clamp(0.3 * nneg + reviewer_noise(rng), 0.0, 1.0) + 0.0);
        }
        out.truth.push_back(GroundTruthRecord::from_reviews(out.corpus[i].item_id, std::move(pos), std::move(neg)));
    }
    return out;
}

}  // namespace sentiscope
