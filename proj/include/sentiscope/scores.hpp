#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <string_view>

#include "sentiscope/error.hpp"

namespace sentiscope {

/// The four sentiment dimensions, in canonical order.
enum class Metric : int { sentiment = 0, positive = 1, negative = 2, contradictive = 3 };

inline constexpr std::array<Metric, 4> kAllMetrics = {Metric::sentiment, Metric::positive,
                                                      Metric::negative, Metric::contradictive};

inline constexpr std::string_view metric_name(Metric m) {
    switch (m) {
        case Metric::sentiment: return "sentiment";
        case Metric::positive: return "positive";
        case Metric::negative: return "negative";
        case Metric::contradictive: return "contradictive";
    }
    return "?";
}

inline Metric parse_metric(std::string_view name) {
    for (Metric m : kAllMetrics) {
        if (metric_name(m) == name) return m;
    }
    throw InputError("unknown metric '" + std::string(name) + "'");
}

/// Four-metric assessment of one text (or one day of texts).
///
/// Invariants: sentiment = positive + negative and
/// contradictive = sqrt(positive * |negative|), with positive in [0, 1],
/// negative in [-1, 0]. Build through from_components() or derive() to get
/// them for free; validate() checks values that arrive from outside.
struct SentimentScores {
    double sentiment = 0.0;
    double positive = 0.0;
    double negative = 0.0;
    double contradictive = 0.0;

    [[nodiscard]] double get(Metric m) const {
        switch (m) {
            case Metric::sentiment: return sentiment;
            case Metric::positive: return positive;
            case Metric::negative: return negative;
            case Metric::contradictive: return contradictive;
        }
        return 0.0;
    }

    /// Builds the scores from the positive/negative pair.
    [[nodiscard]] static SentimentScores from_components(double positive, double negative) {
        if (!(positive >= 0.0 && positive <= 1.0)) {
            throw RangeError("positive metric " + std::to_string(positive) + " outside [0, 1]");
        }
        if (!(negative >= -1.0 && negative <= 0.0)) {
            throw RangeError("negative metric " + std::to_string(negative) + " outside [-1, 0]");
        }
        SentimentScores s;
        s.positive = positive;
        s.negative = negative;
        s.sentiment = positive + negative;
        s.contradictive = std::sqrt(positive * -negative);
        return s;
    }

    /// Expands a single compound polarity into the four metrics: the
    /// polarity lands on whichever side its sign picks, contradictive is 0.
    [[nodiscard]] static SentimentScores derive(double compound) {
        if (!(compound >= -1.0 && compound <= 1.0)) {
            throw RangeError("compound sentiment " + std::to_string(compound) + " outside [-1, 1]");
        }
        SentimentScores s;
        s.sentiment = compound;
        s.positive = std::max(compound, 0.0);
        s.negative = std::min(compound, 0.0);
        s.contradictive = 0.0;
        return s;
    }

    friend bool operator==(const SentimentScores&, const SentimentScores&) = default;
};

/// Free-function spelling of SentimentScores::derive.
[[nodiscard]] inline SentimentScores derive_four_metrics(double compound) {
    return SentimentScores::derive(compound);
}

/// Checks ranges and the two identities to `tolerance`; throws ValidationError.
inline void validate(const SentimentScores& s, double tolerance = 1e-12) {
    auto within = [&](double v, double lo, double hi) {
        return std::isfinite(v) && v >= lo - tolerance && v <= hi + tolerance;
    };
    if (!within(s.positive, 0.0, 1.0)) throw ValidationError("positive outside [0, 1]");
    if (!within(s.negative, -1.0, 0.0)) throw ValidationError("negative outside [-1, 0]");
    if (!within(s.sentiment, -1.0, 1.0)) throw ValidationError("sentiment outside [-1, 1]");
    if (!within(s.contradictive, 0.0, 1.0)) throw ValidationError("contradictive outside [0, 1]");
    if (std::abs(s.sentiment - (s.positive + s.negative)) > tolerance) {
        throw ValidationError("sentiment != positive + negative");
    }
    const double expected = std::sqrt(std::max(0.0, s.positive) * std::abs(s.negative));
    if (std::abs(s.contradictive - expected) > tolerance) {
        throw ValidationError("contradictive != sqrt(positive * |negative|)");
    }
}

}  // namespace sentiscope
