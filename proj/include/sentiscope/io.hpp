#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <system_error>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "sentiscope/calendar.hpp"
#include "sentiscope/csv.hpp"
#include "sentiscope/error.hpp"
#include "sentiscope/eval.hpp"
#include "sentiscope/scores.hpp"
#include "sentiscope/timeseries.hpp"
#include "sentiscope/tokenizer.hpp"
#include "sentiscope/vocabulary.hpp"

namespace sentiscope {

/// A timestamped post of one channel.
struct NewsItem {
    std::string item_id;
    std::string channel;
    Timestamp timestamp{};
    std::string text;

    friend bool operator==(const NewsItem&, const NewsItem&) = default;
};

namespace io {

inline std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path.string() + "'");
    return in;
}

/// Writes `content` to a sibling temp file, then renames it over `path`.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError("cannot write '" + tmp.string() + "'");
        out << content;
        if (!out.flush()) throw InputError("write to '" + tmp.string() + "' failed");
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw InputError("cannot move '" + tmp.string() + "' to '" + path.string() + "': " + ec.message());
}

// ---------------------------------------------------------------- corpus

/// Reads JSONL posts: one object per line with string fields `id`,
/// `channel`, `timestamp` (ISO-8601 with offset) and `text`. Blank lines
/// are skipped; ids must be unique.
[[nodiscard]] inline std::vector<NewsItem> read_corpus(std::istream& in, const std::string& source) {
    std::vector<NewsItem> items;
    std::unordered_set<std::string> ids;
    std::string line;
    std::size_t lineno = 0;
    auto field = [&](const nlohmann::json& obj, const char* key) -> std::string {
        const auto it = obj.find(key);
        if (it == obj.end()) throw InputError(at_line(source, lineno, std::string("missing field '") + key + "'"));
        if (!it->is_string()) throw InputError(at_line(source, lineno, std::string("field '") + key + "' must be a string"));
        return it->get<std::string>();
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw InputError(at_line(source, lineno, std::string("malformed JSON: ") + e.what()));
        }
        if (!obj.is_object()) throw InputError(at_line(source, lineno, "expected a JSON object"));
        NewsItem item;
        item.item_id = field(obj, "id");
        item.channel = field(obj, "channel");
        const std::string ts = field(obj, "timestamp");
        item.text = field(obj, "text");
        if (item.item_id.empty()) throw InputError(at_line(source, lineno, "empty id"));
        if (item.channel.empty()) throw InputError(at_line(source, lineno, "empty channel"));
        try {
            item.timestamp = parse_timestamp(ts);
        } catch (const InputError& e) {
            throw InputError(at_line(source, lineno, e.what()));
        }
        if (!ids.insert(item.item_id).second) {
            throw ValidationError(at_line(source, lineno, "duplicate id '" + item.item_id + "'"));
        }
        items.push_back(std::move(item));
    }
    return items;
}

[[nodiscard]] inline std::vector<NewsItem> load_corpus(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_corpus(in, path.string());
}

inline void write_corpus(std::ostream& out, const std::vector<NewsItem>& items) {
    for (const auto& it : items) {
        nlohmann::ordered_json obj;
        obj["id"] = it.item_id;
        obj["channel"] = it.channel;
        obj["timestamp"] = format_timestamp(it.timestamp);
        obj["text"] = it.text;
        out << obj.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
    }
}

// ------------------------------------------------------------ vocabulary

inline constexpr std::string_view kFormatHeader = "# format: v1";

/// Appends entries of one polarity from a vocabulary file: one n-gram per
/// line as `[weight<TAB>]token token ...`, '#' starts a comment line.
/// Tokens are re-normalized; a change is reported through `warnings`.
inline void read_vocabulary_entries(std::istream& in, Polarity polarity, const std::string& source,
                                    std::vector<VocabEntry>& entries, std::vector<std::string>* warnings) {
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        VocabEntry entry;
        entry.polarity = polarity;
        std::string phrase = line;
        if (const auto tab = line.find('\t'); tab != std::string::npos) {
            entry.weight = csv::parse_number(line.substr(0, tab), source, lineno, "weight");
            if (entry.weight < 0.0) throw ValidationError(at_line(source, lineno, "negative weight"));
            phrase = line.substr(tab + 1);
        }
        entry.tokens = tokenize(phrase);
        if (entry.tokens.empty()) {
            if (warnings) warnings->push_back(at_line(source, lineno, "n-gram has no tokens after normalization; skipped"));
            continue;
        }
        std::istringstream raw(phrase);
        std::string word;
        std::string as_written;
        while (raw >> word) as_written += (as_written.empty() ? "" : " ") + word;
        if (warnings && as_written != join_tokens(entry.tokens)) {
            warnings->push_back(at_line(source, lineno, "'" + as_written + "' normalized to '" +
                                                            join_tokens(entry.tokens) + "'"));
        }
        entries.push_back(std::move(entry));
    }
}

[[nodiscard]] inline Vocabulary load_vocabulary(const std::filesystem::path& positive_file,
                                                const std::filesystem::path& negative_file,
                                                std::vector<std::string>* warnings = nullptr) {
    std::vector<VocabEntry> entries;
    {
        auto in = open_input(positive_file);
        read_vocabulary_entries(in, Polarity::positive, positive_file.string(), entries, warnings);
    }
    {
        auto in = open_input(negative_file);
        read_vocabulary_entries(in, Polarity::negative, negative_file.string(), entries, warnings);
    }
    return Vocabulary::build(std::move(entries), warnings);
}

/// One polarity of `vocab` in the file format, weight omitted when 1.
[[nodiscard]] inline std::string format_vocabulary(const Vocabulary& vocab, Polarity polarity) {
    std::string out(kFormatHeader);
    out += '\n';
    for (const auto& e : vocab.entries()) {
        if (e.polarity != polarity) continue;
        if (e.weight != 1.0) out += csv::format_number(e.weight) + '\t';
        out += join_tokens(e.tokens) + '\n';
    }
    return out;
}

inline void save_vocabulary(const std::filesystem::path& positive_file, const std::filesystem::path& negative_file,
                            const Vocabulary& vocab) {
    write_file_atomic(positive_file, format_vocabulary(vocab, Polarity::positive));
    write_file_atomic(negative_file, format_vocabulary(vocab, Polarity::negative));
}

// ---------------------------------------------------------- ground truth

inline const std::vector<std::string> kTruthHeader = {"item_id", "reviewer", "positive", "negative"};

/// Reads `item_id,reviewer,positive,negative`, one row per (item, reviewer),
/// and resolves each item as the reviewer mean. Items keep first-seen order.
[[nodiscard]] inline std::vector<GroundTruthRecord> read_ground_truth(std::istream& in, const std::string& source) {
    const auto rows = csv::read(in, source);
    if (rows.empty()) throw InputError(source + ": empty ground truth file");
    csv::expect_header(rows.front(), kTruthHeader, source);

    std::vector<std::string> order;
    std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> reviews;
    std::set<std::pair<std::string, std::string>> seen;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.fields.size() != 4) throw InputError(at_line(source, row.line, "expected 4 fields"));
        const auto& id = row.fields[0];
        if (id.empty()) throw InputError(at_line(source, row.line, "empty item_id"));
        if (!seen.emplace(id, row.fields[1]).second) {
            throw ValidationError(at_line(source, row.line, "duplicate review of '" + id + "' by '" + row.fields[1] + "'"));
        }
        const double pos = csv::parse_number(row.fields[2], source, row.line, "positive");
        const double neg = csv::parse_number(row.fields[3], source, row.line, "negative");
        if (pos < 0.0 || pos > 1.0) throw ValidationError(at_line(source, row.line, "positive outside [0, 1]"));
        if (neg < -1.0 || neg > 0.0) throw ValidationError(at_line(source, row.line, "negative outside [-1, 0]"));
        auto [it, fresh] = reviews.try_emplace(id);
        if (fresh) order.push_back(id);
        it->second.first.push_back(pos);
        it->second.second.push_back(neg);
    }
    std::vector<GroundTruthRecord> out;
    out.reserve(order.size());
    for (const auto& id : order) {
        auto& [pos, neg] = reviews.at(id);
        out.push_back(GroundTruthRecord::from_reviews(id, std::move(pos), std::move(neg)));
    }
    return out;
}

[[nodiscard]] inline std::vector<GroundTruthRecord> load_ground_truth(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_ground_truth(in, path.string());
}

/// Reviewers are written as r1, r2, ... in list order.
[[nodiscard]] inline std::string format_ground_truth(const std::vector<GroundTruthRecord>& truth) {
    std::string out = csv::join(kTruthHeader);
    for (const auto& t : truth) {
        if (t.reviewer_positive.size() != t.reviewer_negative.size()) {
            throw InputError("ground truth '" + t.item_id + "': reviewer lists differ in length");
        }
        for (std::size_t r = 0; r < t.reviewer_positive.size(); ++r) {
            out += csv::join({t.item_id, "r" + std::to_string(r + 1), csv::format_number(t.reviewer_positive[r]),
                              csv::format_number(t.reviewer_negative[r])});
        }
    }
    return out;
}

// ------------------------------------------------------- external scores

inline const std::vector<std::string> kScoresHeader = {"item_id", "compound", "sentiment",
                                                       "positive", "negative", "contradictive"};
inline const std::vector<std::string> kScoredHeader = {"item_id", "sentiment", "positive", "negative",
                                                       "contradictive"};

/// Reads model output as a ModelRun.
///
/// Header `item_id,compound,sentiment,positive,negative,contradictive`:
/// each row carries either the compound alone (expanded with
/// derive_four_metrics) or all four metrics (checked against the metric
/// identities to 1e-12 and stored as given). The four-metric header
/// without `compound`, as written by `sentiscope score`, is also accepted.
[[nodiscard]] inline ModelRun read_external_scores(std::istream& in, const std::string& source, std::string model_id) {
    const auto rows = csv::read(in, source);
    if (rows.empty()) throw InputError(source + ": empty scores file");
    const bool with_compound = rows.front().fields == kScoresHeader;
    if (!with_compound) csv::expect_header(rows.front(), kScoredHeader, source);
    const std::size_t width = with_compound ? 6 : 5;

    ModelRun run;
    run.model_id = std::move(model_id);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.fields.size() != width) {
            throw InputError(at_line(source, row.line, "expected " + std::to_string(width) + " fields"));
        }
        const auto& id = row.fields[0];
        if (id.empty()) throw InputError(at_line(source, row.line, "empty item_id"));
        const std::size_t first_metric = with_compound ? 2 : 1;
        int filled = 0;
        for (std::size_t k = first_metric; k < width; ++k) filled += !row.fields[k].empty();
        SentimentScores s;
        try {
            if (with_compound && !row.fields[1].empty()) {
                if (filled != 0) {
                    throw InputError(at_line(source, row.line, "give either compound or the four metrics, not both"));
                }
                s = derive_four_metrics(csv::parse_number(row.fields[1], source, row.line, "compound"));
            } else {
                if (filled != 4) throw InputError(at_line(source, row.line, "expected compound or all four metrics"));
                s.sentiment = csv::parse_number(row.fields[first_metric], source, row.line, "sentiment");
                s.positive = csv::parse_number(row.fields[first_metric + 1], source, row.line, "positive");
                s.negative = csv::parse_number(row.fields[first_metric + 2], source, row.line, "negative");
                s.contradictive = csv::parse_number(row.fields[first_metric + 3], source, row.line, "contradictive");
                validate(s);
            }
        } catch (const ValidationError& e) {
            throw ValidationError(at_line(source, row.line, e.what()));
        } catch (const RangeError& e) {
            throw ValidationError(at_line(source, row.line, e.what()));
        }
        if (run.predictions.contains(id)) throw ValidationError(at_line(source, row.line, "duplicate item id '" + id + "'"));
        run.predictions.emplace(id, s);
    }
    return run;
}

/// Model id defaults to the file stem.
[[nodiscard]] inline ModelRun import_external_scores(const std::filesystem::path& path, std::string model_id = {}) {
    auto in = open_input(path);
    if (model_id.empty()) model_id = path.stem().string();
    return read_external_scores(in, path.string(), std::move(model_id));
}

/// Four-metric rows in item-id order (the scored-items format).
[[nodiscard]] inline std::string format_scores(const ModelRun& run) {
    std::string out = csv::join(kScoredHeader);
    for (const auto& [id, s] : run.predictions) {
        out += csv::join({id, csv::format_number(s.sentiment), csv::format_number(s.positive),
                          csv::format_number(s.negative), csv::format_number(s.contradictive)});
    }
    return out;
}

// ---------------------------------------------------------------- prices

inline const std::vector<std::string> kPriceHeader = {"date", "close"};

[[nodiscard]] inline DailySeries read_prices(std::istream& in, const std::string& source) {
    const auto rows = csv::read(in, source);
    if (rows.empty()) throw InputError(source + ": empty price file");
    csv::expect_header(rows.front(), kPriceHeader, source);
    std::vector<std::pair<Day, double>> points;
    std::set<Day> seen;
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const auto& row = rows[r];
        if (row.fields.size() != 2) throw InputError(at_line(source, row.line, "expected 2 fields"));
        Day d;
        try {
            d = parse_date(row.fields[0]);
        } catch (const InputError& e) {
            throw InputError(at_line(source, row.line, e.what()));
        }
        if (!seen.insert(d).second) throw ValidationError(at_line(source, row.line, "duplicate date " + row.fields[0]));
        points.emplace_back(d, csv::parse_number(row.fields[1], source, row.line, "close"));
    }
    if (points.empty()) throw InputError(source + ": no price rows");
    return DailySeries::from_points(points);
}

[[nodiscard]] inline DailySeries load_prices(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_prices(in, path.string());
}

/// Defined days only, ascending.
[[nodiscard]] inline std::string format_daily_series(const DailySeries& s, const std::vector<std::string>& header) {
    std::string out = csv::join(header);
    for (const auto& [d, v] : s.points()) out += csv::join({format_date(d), csv::format_number(v)});
    return out;
}

[[nodiscard]] inline std::string format_prices(const DailySeries& prices) {
    return format_daily_series(prices, kPriceHeader);
}

}  // namespace io
}  // namespace sentiscope
