#pragma once

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sentiscope/calendar.hpp"
#include "sentiscope/error.hpp"
#include "sentiscope/scores.hpp"
#include "sentiscope/stats.hpp"

namespace sentiscope {

/// Values on calendar days within a coverage range; a day may be missing.
///
/// Stored densely over [first, last] with NaN marking a missing day, so
/// non-finite values cannot be stored.
class DailySeries {
public:
    DailySeries() = default;

    DailySeries(Day first, Day last) : first_(first) {
        if (last < first) throw InputError("daily series: coverage ends before it starts");
        values_.assign(static_cast<std::size_t>((last - first).count()) + 1, kMissing);
    }

    [[nodiscard]] static DailySeries from_points(std::span<const std::pair<Day, double>> points) {
        if (points.empty()) return {};
        auto [lo, hi] = std::minmax_element(points.begin(), points.end(),
                                            [](const auto& a, const auto& b) { return a.first < b.first; });
        DailySeries s(lo->first, hi->first);
        for (const auto& [d, v] : points) {
            if (s.has(d)) throw InputError("daily series: duplicate day " + format_date(d));
            s.set(d, v);
        }
        return s;
    }

    [[nodiscard]] bool empty() const { return values_.empty(); }
    [[nodiscard]] Day first() const { return first_; }
    [[nodiscard]] Day last() const { return first_ + std::chrono::days{static_cast<long>(values_.size()) - 1}; }
    /// Number of days in the coverage range (defined or not).
    [[nodiscard]] std::size_t span_days() const { return values_.size(); }

    [[nodiscard]] bool covers(Day d) const { return !empty() && d >= first_ && d <= last(); }
    [[nodiscard]] bool has(Day d) const { return covers(d) && !std::isnan(values_[index(d)]); }
    [[nodiscard]] std::optional<double> at(Day d) const {
        if (!has(d)) return std::nullopt;
        return values_[index(d)];
    }
    /// Value at coverage offset i, NaN when missing.
    [[nodiscard]] double raw(std::size_t i) const { return values_[i]; }

    void set(Day d, double v) {
        if (!covers(d)) throw InputError("daily series: day " + format_date(d) + " outside coverage");
        if (!std::isfinite(v)) throw InputError("daily series: non-finite value on " + format_date(d));
        values_[index(d)] = v;
    }

    [[nodiscard]] std::size_t defined_count() const {
        return static_cast<std::size_t>(
            std::count_if(values_.begin(), values_.end(), [](double v) { return !std::isnan(v); }));
    }

    [[nodiscard]] std::vector<std::pair<Day, double>> points() const {
        std::vector<std::pair<Day, double>> out;
        for (std::size_t i = 0; i < values_.size(); ++i) {
            if (!std::isnan(values_[i])) out.emplace_back(first_ + std::chrono::days{static_cast<long>(i)}, values_[i]);
        }
        return out;
    }

    /// Same values, every day moved by `offset`.
    [[nodiscard]] DailySeries shifted(std::chrono::days offset) const {
        DailySeries s = *this;
        s.first_ += offset;
        return s;
    }

    friend bool operator==(const DailySeries& a, const DailySeries& b) {
        if (a.values_.size() != b.values_.size()) return false;
        if (a.empty()) return true;
        if (a.first_ != b.first_) return false;
        for (std::size_t i = 0; i < a.values_.size(); ++i) {
            const bool ma = std::isnan(a.values_[i]);
            if (ma != std::isnan(b.values_[i]) || (!ma && a.values_[i] != b.values_[i])) return false;
        }
        return true;
    }

private:
    static constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
    [[nodiscard]] std::size_t index(Day d) const { return static_cast<std::size_t>((d - first_).count()); }

    Day first_{};
    std::vector<double> values_;
};

/// Day-over-day difference: out(d) = price(d) - price(d-1) where both exist.
[[nodiscard]] inline DailySeries price_diff(const DailySeries& prices) {
    if (prices.defined_count() < 2) throw InputError("price difference needs prices on at least 2 days");
    DailySeries out(prices.first() + std::chrono::days{1}, prices.last());
    for (Day d = out.first(); d <= out.last(); d += std::chrono::days{1}) {
        const auto today = prices.at(d);
        const auto yesterday = prices.at(d - std::chrono::days{1});
        if (today && yesterday) out.set(d, *today - *yesterday);
    }
    return out;
}

/// A post with its channel, time and scores; the input of daily aggregation.
struct ScoredItem {
    std::string item_id;
    std::string channel;
    Timestamp timestamp{};
    SentimentScores scores;
};

/// Daily per-channel series for the four metrics over one shared coverage.
class MetricPanel {
public:
    MetricPanel() = default;

    /// Empty series for each (channel, metric); channels are sorted.
    MetricPanel(std::vector<std::string> channels, Day first, Day last) : channels_(std::move(channels)) {
        std::sort(channels_.begin(), channels_.end());
        if (std::adjacent_find(channels_.begin(), channels_.end()) != channels_.end()) {
            throw InputError("metric panel: duplicate channel");
        }
        series_.assign(channels_.size() * kAllMetrics.size(), DailySeries(first, last));
    }

    [[nodiscard]] const std::vector<std::string>& channels() const { return channels_; }
    [[nodiscard]] std::size_t channel_count() const { return channels_.size(); }
    [[nodiscard]] Day first() const { return series_.front().first(); }
    [[nodiscard]] Day last() const { return series_.front().last(); }
    [[nodiscard]] std::size_t span_days() const { return series_.empty() ? 0 : series_.front().span_days(); }

    [[nodiscard]] std::size_t channel_index(std::string_view channel) const {
        const auto it = std::lower_bound(channels_.begin(), channels_.end(), channel);
        if (it == channels_.end() || *it != channel) {
            throw InputError("metric panel: unknown channel '" + std::string(channel) + "'");
        }
        return static_cast<std::size_t>(it - channels_.begin());
    }

    [[nodiscard]] const DailySeries& series(std::size_t channel, Metric m) const {
        return series_[channel * kAllMetrics.size() + static_cast<std::size_t>(m)];
    }
    [[nodiscard]] const DailySeries& series(std::string_view channel, Metric m) const {
        return series(channel_index(channel), m);
    }
    [[nodiscard]] DailySeries& mutable_series(std::size_t channel, Metric m) {
        return series_[channel * kAllMetrics.size() + static_cast<std::size_t>(m)];
    }

    /// Days on which the channel has at least one post.
    [[nodiscard]] std::size_t post_days(std::size_t channel) const {
        return series(channel, Metric::sentiment).defined_count();
    }

    friend bool operator==(const MetricPanel&, const MetricPanel&) = default;

private:
    std::vector<std::string> channels_;
    std::vector<DailySeries> series_;
};

/// Per (channel, metric, UTC day): arithmetic mean of that day's posts,
/// summed in input order. Coverage spans the earliest to latest post day.
[[nodiscard]] inline MetricPanel aggregate_daily(std::span<const ScoredItem> items) {
    if (items.empty()) throw InputError("daily aggregation needs at least one item");
    std::vector<std::string> channels;
    Day lo = day_of(items.front().timestamp);
    Day hi = lo;
    for (const auto& it : items) {
        channels.push_back(it.channel);
        lo = std::min(lo, day_of(it.timestamp));
        hi = std::max(hi, day_of(it.timestamp));
    }
    std::sort(channels.begin(), channels.end());
    channels.erase(std::unique(channels.begin(), channels.end()), channels.end());

    MetricPanel panel(channels, lo, hi);
    const std::size_t days = panel.span_days();
    std::vector<double> sums(channels.size() * days * 4, 0.0);
    std::vector<std::size_t> counts(channels.size() * days, 0);
    for (const auto& it : items) {
        const std::size_t c = panel.channel_index(it.channel);
        const auto d = static_cast<std::size_t>((day_of(it.timestamp) - lo).count());
        const std::size_t cell = c * days + d;
        ++counts[cell];
        for (Metric m : kAllMetrics) sums[cell * 4 + static_cast<std::size_t>(m)] += it.scores.get(m);
    }
    for (std::size_t c = 0; c < channels.size(); ++c) {
        for (std::size_t d = 0; d < days; ++d) {
            const std::size_t cell = c * days + d;
            if (counts[cell] == 0) continue;
            const Day day = lo + std::chrono::days{static_cast<long>(d)};
            for (Metric m : kAllMetrics) {
                panel.mutable_series(c, m).set(
                    day, sums[cell * 4 + static_cast<std::size_t>(m)] / static_cast<double>(counts[cell]));
            }
        }
    }
    return panel;
}

inline constexpr std::size_t kDefaultMinOverlap = 30;

/// Pearson correlation of x(d) against dp(d - lag) over the days where both
/// exist. A negative lag pairs today's x with a later price change, so a
/// peak at lag -1 means x leads the price by one day. Returns nullopt when
/// fewer than `min_overlap` days pair up or either side is constant.
[[nodiscard]] inline std::optional<double> lag_correlation(const DailySeries& x, const DailySeries& dp, int lag,
                                                           std::size_t min_overlap = kDefaultMinOverlap) {
    if (x.empty() || dp.empty()) return std::nullopt;
    std::vector<double> xs;
    std::vector<double> ys;
    xs.reserve(x.span_days());
    ys.reserve(x.span_days());
    const std::chrono::days shift{lag};
    for (std::size_t i = 0; i < x.span_days(); ++i) {
        const double xv = x.raw(i);
        if (std::isnan(xv)) continue;
        const Day d = x.first() + std::chrono::days{static_cast<long>(i)};
        if (const auto yv = dp.at(d - shift)) {
            xs.push_back(xv);
            ys.push_back(*yv);
        }
    }
    if (xs.size() < std::max<std::size_t>(min_overlap, 2)) return std::nullopt;
    try {
        return pearson(xs, ys);
    } catch (const UndefinedCorrelation&) {
        return std::nullopt;
    }
}

/// Inclusive range of day lags.
struct LagWindow {
    int min = -10;
    int max = 10;

    [[nodiscard]] std::vector<int> lags() const {
        if (max < min) throw InputError("lag window " + std::to_string(min) + ".." + std::to_string(max) + " is empty");
        std::vector<int> out;
        for (int l = min; l <= max; ++l) out.push_back(l);
        return out;
    }
};

/// Parses `A..B`, e.g. `-10..10`.
[[nodiscard]] inline LagWindow parse_lag_window(std::string_view text) {
    const auto sep = text.find("..");
    LagWindow w;
    auto parse = [&](std::string_view part, int& out) {
        const auto r = std::from_chars(part.data(), part.data() + part.size(), out);
        return r.ec == std::errc{} && r.ptr == part.data() + part.size() && !part.empty();
    };
    if (sep == std::string_view::npos || !parse(text.substr(0, sep), w.min) || !parse(text.substr(sep + 2), w.max) ||
        w.max < w.min) {
        throw InputError("invalid lag window '" + std::string(text) + "' (expected A..B with A <= B)");
    }
    return w;
}

/// Fraction of coverage days on which a channel posted.
struct ChannelStats {
    std::string channel;
    double weight = 0.0;
};

[[nodiscard]] inline std::vector<ChannelStats> channel_stats(const MetricPanel& panel) {
    std::vector<ChannelStats> out;
    for (std::size_t c = 0; c < panel.channel_count(); ++c) {
        out.push_back({panel.channels()[c],
                       static_cast<double>(panel.post_days(c)) / static_cast<double>(panel.span_days())});
    }
    return out;
}

/// Correlation of every (channel, metric) series with the price difference
/// at every lag; undefined cells are nullopt.
struct LagCorrelationTable {
    std::vector<int> lags;
    std::vector<std::string> channels;
    std::vector<std::optional<double>> cells;  // [lag][channel][metric]

    [[nodiscard]] std::size_t lag_index(int lag) const {
        const auto it = std::find(lags.begin(), lags.end(), lag);
        if (it == lags.end()) throw InputError("lag " + std::to_string(lag) + " not in the table");
        return static_cast<std::size_t>(it - lags.begin());
    }
    [[nodiscard]] std::optional<double> at(int lag, std::size_t channel, Metric m) const {
        return cells[(lag_index(lag) * channels.size() + channel) * 4 + static_cast<std::size_t>(m)];
    }
};

struct LagAnalysis {
    LagCorrelationTable table;
    std::vector<ChannelStats> stats;
};

[[nodiscard]] inline LagAnalysis build_lag_table(const MetricPanel& panel, const DailySeries& dp,
                                                 const LagWindow& window = {},
                                                 std::size_t min_overlap = kDefaultMinOverlap) {
    if (panel.channel_count() == 0 || dp.empty() || dp.last() < panel.first() || panel.last() < dp.first()) {
        throw InputError("sentiment panel and price series do not overlap in time");
    }
    LagAnalysis out;
    out.table.lags = window.lags();
    out.table.channels = panel.channels();
    out.table.cells.reserve(out.table.lags.size() * panel.channel_count() * 4);
    for (int lag : out.table.lags) {
        for (std::size_t c = 0; c < panel.channel_count(); ++c) {
            for (Metric m : kAllMetrics) {
                out.table.cells.push_back(lag_correlation(panel.series(c, m), dp, lag, min_overlap));
            }
        }
    }
    out.stats = channel_stats(panel);
    return out;
}

enum class GreedyMode { stop, skip };

inline GreedyMode parse_greedy_mode(std::string_view s) {
    if (s == "stop") return GreedyMode::stop;
    if (s == "skip") return GreedyMode::skip;
    throw InputError("unknown greedy mode '" + std::string(s) + "' (expected stop or skip)");
}

/// How compound candidates are ranked: by W*|P|, or by W and then |P|.
enum class CandidateOrder { product, lexicographic };

struct CompoundOptions {
    GreedyMode mode = GreedyMode::stop;
    CandidateOrder order = CandidateOrder::product;
};

struct Ingredient {
    std::string channel;
    Metric metric = Metric::sentiment;
    double correlation_p = 0.0;  // P(l, c, m)
    double channel_weight = 0.0; // W(c)
    double weight = 0.0;         // P * W
    double correlation = 0.0;    // pearson(Y, dp) right after this ingredient joined
};

struct CompoundIndicator {
    int lag = 0;
    std::vector<Ingredient> ingredients;  // in acceptance order
    DailySeries series;                   // Y
    double terminal_corr = 0.0;
};

/// Greedy weighted sum of the most price-correlated series at one lag.
///
/// Candidates are all (channel, metric) cells with a defined P, sorted by
/// the configured key (ties: channel, then metric). The first is always
/// taken; each further one joins if |pearson(Y + X*P*W, dp)| strictly
/// grows. Missing X counts as 0, and Y is defined on the days where at
/// least one ingredient is. GreedyMode::stop ends at the first rejection,
/// GreedyMode::skip keeps going.
[[nodiscard]] inline CompoundIndicator build_compound(const MetricPanel& panel, const DailySeries& dp, int lag,
                                                      const LagCorrelationTable& table,
                                                      std::span<const ChannelStats> stats,
                                                      const CompoundOptions& options = {}) {
    struct Candidate {
        std::size_t channel;
        Metric metric;
        double p;
        double w;
    };
    if (stats.size() != panel.channel_count()) throw InputError("channel stats do not match the panel");
    std::vector<Candidate> candidates;
    for (std::size_t c = 0; c < panel.channel_count(); ++c) {
        for (Metric m : kAllMetrics) {
            if (const auto p = table.at(lag, c, m)) candidates.push_back({c, m, *p, stats[c].weight});
        }
    }
    if (candidates.empty()) {
        throw InputError("no defined correlation at lag " + std::to_string(lag) + " to build a compound from");
    }
    std::stable_sort(candidates.begin(), candidates.end(), [&](const Candidate& a, const Candidate& b) {
        if (options.order == CandidateOrder::product) {
            const double ka = a.w * std::abs(a.p);
            const double kb = b.w * std::abs(b.p);
            if (ka != kb) return ka > kb;
        } else {
            if (a.w != b.w) return a.w > b.w;
            if (std::abs(a.p) != std::abs(b.p)) return std::abs(a.p) > std::abs(b.p);
        }
        if (a.channel != b.channel) return a.channel < b.channel;
        return a.metric < b.metric;
    });

    // Days of the panel whose lagged price difference exists.
    const std::size_t days = panel.span_days();
    std::vector<double> target(days, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < days; ++i) {
        const Day d = panel.first() + std::chrono::days{static_cast<long>(i)};
        if (const auto v = dp.at(d - std::chrono::days{lag})) target[i] = *v;
    }

    std::vector<double> sum(days, 0.0);
    std::vector<char> defined(days, 0);
    std::vector<double> trial_sum(days);
    std::vector<char> trial_defined(days);
    std::vector<double> xs;
    std::vector<double> ys;

    auto correlate = [&](const std::vector<double>& s, const std::vector<char>& def) -> std::optional<double> {
        xs.clear();
        ys.clear();
        for (std::size_t i = 0; i < days; ++i) {
            if (def[i] && !std::isnan(target[i])) {
                xs.push_back(s[i]);
                ys.push_back(target[i]);
            }
        }
        if (xs.size() < 2) return std::nullopt;
        try {
            return pearson(xs, ys);
        } catch (const UndefinedCorrelation&) {
            return std::nullopt;
        }
    };

    CompoundIndicator out;
    out.lag = lag;
    double best = 0.0;
    bool any = false;
    for (const auto& cand : candidates) {
        const DailySeries& x = panel.series(cand.channel, cand.metric);
        const double weight = cand.p * cand.w;
        trial_sum = sum;
        trial_defined = defined;
        for (std::size_t i = 0; i < days; ++i) {
            const double v = x.raw(i);
            if (std::isnan(v)) continue;
            trial_sum[i] += v * weight;
            trial_defined[i] = 1;
        }
        const auto r = correlate(trial_sum, trial_defined);
        if (!any || (r && std::abs(*r) > std::abs(best))) {
            sum.swap(trial_sum);
            defined.swap(trial_defined);
            best = r.value_or(0.0);
            any = true;
            out.ingredients.push_back(
                {panel.channels()[cand.channel], cand.metric, cand.p, cand.w, weight, best});
        } else if (options.mode == GreedyMode::stop) {
            break;
        }
    }

    out.series = DailySeries(panel.first(), panel.last());
    for (std::size_t i = 0; i < days; ++i) {
        if (defined[i]) out.series.set(panel.first() + std::chrono::days{static_cast<long>(i)}, sum[i]);
    }
    out.terminal_corr = best;
    return out;
}

/// Compound indicators for every lag of the analysed window, ordered by lag.
[[nodiscard]] inline std::vector<CompoundIndicator> lag_sweep(const MetricPanel& panel, const DailySeries& dp,
                                                              const LagAnalysis& analysis,
                                                              const CompoundOptions& options = {}) {
    std::vector<CompoundIndicator> out;
    for (int lag : analysis.table.lags) {
        out.push_back(build_compound(panel, dp, lag, analysis.table, analysis.stats, options));
    }
    return out;
}

[[nodiscard]] inline std::vector<CompoundIndicator> lag_sweep(const MetricPanel& panel, const DailySeries& dp,
                                                              const LagWindow& window = {},
                                                              std::size_t min_overlap = kDefaultMinOverlap,
                                                              const CompoundOptions& options = {}) {
    return lag_sweep(panel, dp, build_lag_table(panel, dp, window, min_overlap), options);
}

/// Entry with the highest terminal correlation (earliest lag on ties).
[[nodiscard]] inline const CompoundIndicator& best_lag(const std::vector<CompoundIndicator>& sweep) {
    if (sweep.empty()) throw InputError("empty lag sweep");
    return *std::max_element(sweep.begin(), sweep.end(), [](const CompoundIndicator& a, const CompoundIndicator& b) {
        return a.terminal_corr < b.terminal_corr;
    });
}

}  // namespace sentiscope
