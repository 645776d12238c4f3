// sentiscope command-line front end.
//
// Exit codes: 0 success, 1 computation error, 2 input or usage error.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sentiscope/sentiscope.hpp"

namespace fs = std::filesystem;
using namespace sentiscope;

namespace {

struct GlobalOptions {
    std::string out_dir = ".";
    std::string scaling = "log";
    std::string lags = "-10..10";
    std::size_t min_overlap = kDefaultMinOverlap;
    std::string greedy = "stop";
    std::uint64_t seed = 42;
};

struct Inputs {
    std::string corpus;
    std::string positive;
    std::string negative;
    std::string prices;
    std::string truth;
    std::vector<std::string> runs;
    double threshold = 0.5;
};

void require_files(std::initializer_list<const std::string*> paths) {
    for (const auto* p : paths) {
        if (p->empty()) continue;
        if (!fs::is_regular_file(*p)) throw InputError("input file not found: " + *p);
    }
}

Vocabulary read_vocab(const Inputs& in) {
    std::vector<std::string> warnings;
    auto vocab = io::load_vocabulary(in.positive, in.negative, &warnings);
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
    return vocab;
}

std::vector<ScoredItem> scored_corpus(const Inputs& in, const GlobalOptions& g) {
    const auto corpus = io::load_corpus(in.corpus);
    return score_corpus(corpus, read_vocab(in), ScoringConfig{parse_scaling(g.scaling)});
}

void write_output(const GlobalOptions& g, const std::string& name, const std::string& content) {
    const fs::path path = fs::path(g.out_dir) / name;
    io::write_file_atomic(path, content);
    std::cerr << "wrote " << path.string() << '\n';
}

std::string opt_number(const std::optional<double>& v) { return v ? csv::format_number(*v) : std::string{}; }

// ------------------------------------------------------------------ score

void cmd_score(const Inputs& in, const GlobalOptions& g) {
    require_files({&in.corpus, &in.positive, &in.negative});
    const auto scored = scored_corpus(in, g);
    std::string out = csv::join(io::kScoredHeader);
    for (const auto& s : scored) {
        out += csv::join({s.item_id, csv::format_number(s.scores.sentiment), csv::format_number(s.scores.positive),
                          csv::format_number(s.scores.negative), csv::format_number(s.scores.contradictive)});
    }
    write_output(g, "scores.csv", out);
}

// --------------------------------------------------------------- evaluate

void cmd_evaluate(const Inputs& in, const GlobalOptions& g) {
    require_files({&in.truth});
    for (const auto& r : in.runs) require_files({&r});
    const auto truth = io::load_ground_truth(in.truth);
    std::vector<ModelRun> runs;
    for (const auto& r : in.runs) runs.push_back(io::import_external_scores(r));
    std::map<std::string, int> ids;
    for (const auto& r : runs) {
        if (++ids[r.model_id] > 1) throw InputError("two runs share the model id '" + r.model_id + "'");
    }

    std::vector<EvalReport> reports;
    for (const auto& r : runs) reports.push_back(evaluate_model(r, truth));
    reports.push_back(evaluate_model(ensemble(runs, AllRuns{}), truth));
    auto top = evaluate_model(ensemble(runs, TopK{3, truth}), truth);
    reports.push_back(top);

    std::vector<std::string> header = {"model_id"};
    for (Metric m : kAllMetrics) header.emplace_back(metric_name(m));
    header.insert(header.end(), {"score", "excluded"});
    std::string out = csv::join(header);
    std::vector<svg::Bar> bars;
    for (const auto& rep : reports) {
        std::vector<std::string> row = {rep.model_id};
        for (Metric m : kAllMetrics) row.push_back(opt_number(rep.corr(m)));
        row.push_back(opt_number(rep.score));
        std::string excluded;
        for (Metric m : rep.excluded_metrics) excluded += (excluded.empty() ? "" : ";") + std::string(metric_name(m));
        row.push_back(excluded);
        out += csv::join(row);
        bars.push_back({rep.model_id, rep.score});
    }
    write_output(g, "evaluation.csv", out);
    write_output(g, "evaluation.svg",
                 svg::bar_chart("Average Pearson correlation with ground truth", "mean correlation", bars));
}

// -------------------------------------------------------- finetune-report

void cmd_finetune_report(const Inputs& in, const GlobalOptions& g) {
    if (in.runs.empty() && (in.positive.empty() || in.negative.empty())) {
        throw InputError("finetune-report needs --run or both --positive and --negative");
    }
    require_files({&in.truth, &in.corpus, &in.positive, &in.negative});
    for (const auto& r : in.runs) require_files({&r});
    const auto truth = io::load_ground_truth(in.truth);
    const auto corpus = io::load_corpus(in.corpus);
    std::map<std::string, const NewsItem*> by_id;
    for (const auto& item : corpus) by_id.emplace(item.item_id, &item);
    std::vector<std::string> unknown;
    for (const auto& t : truth) {
        if (!by_id.contains(t.item_id)) unknown.push_back(t.item_id);
    }
    if (!unknown.empty()) throw InputError("ground truth items not in the corpus: " + detail::list_ids(unknown));

    ModelRun run;
    if (!in.runs.empty()) {
        run = io::import_external_scores(in.runs.front());
    } else {
        run = to_model_run(score_corpus(corpus, read_vocab(in), ScoringConfig{parse_scaling(g.scaling)}), "lexicon");
    }
    std::string out = csv::join({"item_id", "metric", "predicted", "truth", "discrepancy", "text"});
    for (const auto& row : misalignment_report(run, truth, in.threshold)) {
        out += csv::join({row.item_id, std::string(metric_name(row.metric)), csv::format_number(row.predicted),
                          csv::format_number(row.truth_value), csv::format_number(row.discrepancy),
                          by_id.at(row.item_id)->text});
    }
    write_output(g, "finetune_report.csv", out);
}

// ---------------------------------------------------------------- lagscan

void cmd_lagscan(const Inputs& in, const GlobalOptions& g) {
    require_files({&in.corpus, &in.positive, &in.negative, &in.prices});
    const auto window = parse_lag_window(g.lags);
    const auto scored = scored_corpus(in, g);
    const auto dp = price_diff(io::load_prices(in.prices));
    const auto panel = aggregate_overall(scored);

    std::string out = csv::join({"lag", "metric", "corr"});
    std::vector<svg::LinePanel> panels;
    bool any = false;
    for (Metric m : kAllMetrics) {
        svg::LinePanel p{std::string(metric_name(m)), {}, {}};
        for (int lag : window.lags()) {
            const auto r = lag_correlation(panel.series(0, m), dp, lag, g.min_overlap);
            any = any || r.has_value();
            out += csv::join({std::to_string(lag), std::string(metric_name(m)), opt_number(r)});
            p.x.push_back(lag);
            p.y.push_back(r);
        }
        panels.push_back(std::move(p));
    }
    if (!any) {
        throw ComputationError("insufficient overlap: no lag has " + std::to_string(g.min_overlap) +
                               " days of sentiment paired with price changes");
    }
    write_output(g, "lagscan.csv", out);
    write_output(g, "lagscan.svg",
                 svg::line_panels("Daily sentiment vs price difference", "lag (days)", "Pearson r", panels));
}

// --------------------------------------------------------------- compound

void cmd_compound(const Inputs& in, const GlobalOptions& g) {
    require_files({&in.corpus, &in.positive, &in.negative, &in.prices});
    const auto window = parse_lag_window(g.lags);
    CompoundOptions options;
    options.mode = parse_greedy_mode(g.greedy);
    const auto scored = scored_corpus(in, g);
    const auto dp = price_diff(io::load_prices(in.prices));
    const auto panel = aggregate_daily(scored);
    const auto analysis = build_lag_table(panel, dp, window, g.min_overlap);

    std::string table_csv = csv::join({"lag", "channel", "metric", "P"});
    for (int lag : analysis.table.lags) {
        for (std::size_t c = 0; c < panel.channel_count(); ++c) {
            for (Metric m : kAllMetrics) {
                table_csv += csv::join({std::to_string(lag), panel.channels()[c], std::string(metric_name(m)),
                                        opt_number(analysis.table.at(lag, c, m))});
            }
        }
    }

    std::vector<CompoundIndicator> built;
    std::string sweep_csv = csv::join({"lag", "terminal_corr", "ingredients"});
    std::string manifest = csv::join({"lag", "order", "channel", "metric", "P", "W", "weight", "correlation"});
    svg::LinePanel line{"compound indicator", {}, {}};
    for (int lag : analysis.table.lags) {
        bool defined = false;
        for (std::size_t c = 0; c < panel.channel_count() && !defined; ++c) {
            for (Metric m : kAllMetrics) defined = defined || analysis.table.at(lag, c, m).has_value();
        }
        line.x.push_back(lag);
        if (!defined) {
            sweep_csv += csv::join({std::to_string(lag), "", "0"});
            line.y.push_back(std::nullopt);
            continue;
        }
        auto ind = build_compound(panel, dp, lag, analysis.table, analysis.stats, options);
        sweep_csv += csv::join({std::to_string(lag), csv::format_number(ind.terminal_corr),
                                std::to_string(ind.ingredients.size())});
        for (std::size_t k = 0; k < ind.ingredients.size(); ++k) {
            const auto& ing = ind.ingredients[k];
            manifest += csv::join({std::to_string(lag), std::to_string(k + 1), ing.channel,
                                   std::string(metric_name(ing.metric)), csv::format_number(ing.correlation_p),
                                   csv::format_number(ing.channel_weight), csv::format_number(ing.weight),
                                   csv::format_number(ing.correlation)});
        }
        line.y.push_back(ind.terminal_corr);
        built.push_back(std::move(ind));
    }
    if (built.empty()) {
        throw ComputationError("insufficient overlap: no lag has a defined correlation to build a compound from");
    }
    const auto& best = best_lag(built);
    write_output(g, "lag_table.csv", table_csv);
    write_output(g, "compound.csv", sweep_csv);
    write_output(g, "ingredients.csv", manifest);
    write_output(g, "compound_Y.csv", io::format_daily_series(best.series, {"date", "Y"}));
    write_output(g, "compound.svg", svg::line_panels("Compound indicator vs price difference", "lag (days)",
                                                     "terminal Pearson r", {line}, 1));
    std::cerr << "best lag " << best.lag << ": terminal correlation " << best.terminal_corr << " from "
              << best.ingredients.size() << " ingredients\n";
}

// ------------------------------------------------------------------ synth

void cmd_synth(const SyntheticConfig& cfg_in, const GlobalOptions& g) {
    SyntheticConfig cfg = cfg_in;
    cfg.seed = g.seed;
    const auto data = generate_synthetic(cfg);
    std::ostringstream corpus;
    io::write_corpus(corpus, data.corpus);
    write_output(g, "corpus.jsonl", corpus.str());
    write_output(g, "prices.csv", io::format_prices(data.prices));
    write_output(g, "truth.csv", io::format_ground_truth(data.truth));
    const auto base = synthetic_vocabulary(false);
    const auto tuned = synthetic_vocabulary(true);
    write_output(g, "vocab/positive.txt", io::format_vocabulary(base, Polarity::positive));
    write_output(g, "vocab/negative.txt", io::format_vocabulary(base, Polarity::negative));
    write_output(g, "vocab_tuned/positive.txt", io::format_vocabulary(tuned, Polarity::positive));
    write_output(g, "vocab_tuned/negative.txt", io::format_vocabulary(tuned, Polarity::negative));
    std::string signal;
    for (const auto& c : data.signal_channels) signal += c + '\n';
    write_output(g, "signal_channels.txt", signal);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sentiscope: interpretable n-gram sentiment scoring, evaluation against human ground truth, "
                 "and lagged sentiment/price correlation analysis"};
    app.fallthrough();
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--out-dir", g.out_dir, "Directory for output files")->capture_default_str();
    app.add_option("--scaling", g.scaling, "Count scaling: linear or log")
        ->check(CLI::IsMember({"linear", "log"}))
        ->capture_default_str();
    app.add_option("--lags", g.lags, "Lag window in days, A..B")->capture_default_str();
    app.add_option("--min-overlap", g.min_overlap, "Minimum paired days for a defined correlation")
        ->capture_default_str();
    app.add_option("--greedy", g.greedy, "Compound builder: stop at first rejection, or skip and continue")
        ->check(CLI::IsMember({"stop", "skip"}))
        ->capture_default_str();
    app.add_option("--seed", g.seed, "Random seed (synth)")->capture_default_str();

    Inputs in;
    auto* score = app.add_subcommand("score", "Score every post of a corpus; writes scores.csv");
    score->add_option("--corpus", in.corpus, "Corpus JSONL")->required();
    score->add_option("--positive", in.positive, "Positive n-gram file")->required();
    score->add_option("--negative", in.negative, "Negative n-gram file")->required();

    auto* evaluate = app.add_subcommand("evaluate", "Correlate model runs with ground truth; writes evaluation.csv/.svg");
    evaluate->add_option("--truth", in.truth, "Ground truth CSV")->required();
    evaluate->add_option("--run", in.runs, "Model scores CSV (repeatable)")->required();

    auto* finetune = app.add_subcommand("finetune-report",
                                        "List items whose positive/negative misses ground truth; writes finetune_report.csv");
    finetune->add_option("--truth", in.truth, "Ground truth CSV")->required();
    finetune->add_option("--corpus", in.corpus, "Corpus JSONL (for the text column)")->required();
    finetune->add_option("--run", in.runs, "Model scores CSV; omit to score with --positive/--negative");
    finetune->add_option("--positive", in.positive, "Positive n-gram file");
    finetune->add_option("--negative", in.negative, "Negative n-gram file");
    finetune->add_option("--threshold", in.threshold, "Discrepancy threshold")->capture_default_str();

    auto* lagscan = app.add_subcommand("lagscan", "Per-metric lag correlation of daily sentiment with price changes");
    auto* compound = app.add_subcommand("compound", "Greedy compound indicator per lag");
    for (auto* sub : {lagscan, compound}) {
        sub->add_option("--corpus", in.corpus, "Corpus JSONL")->required();
        sub->add_option("--positive", in.positive, "Positive n-gram file")->required();
        sub->add_option("--negative", in.negative, "Negative n-gram file")->required();
        sub->add_option("--prices", in.prices, "Daily closing prices CSV")->required();
    }

    SyntheticConfig synth_cfg;
    auto* synth = app.add_subcommand("synth", "Generate a seeded synthetic corpus, prices, ground truth and lexicons");
    synth->add_option("--channels", synth_cfg.channels, "Number of channels")->capture_default_str();
    synth->add_option("--days", synth_cfg.days, "Days of coverage")->capture_default_str();
    synth->add_option("--posts-per-day", synth_cfg.posts_per_day, "Posts per channel on days it posts")->capture_default_str();
    synth->add_option("--planted-lag", synth_cfg.planted_lag, "Days by which sentiment leads price")->capture_default_str();
    synth->add_option("--strength", synth_cfg.signal_strength, "Signal strength in [0, 1]")->capture_default_str();
    synth->add_option("--signal-channels", synth_cfg.signal_channels, "Channels carrying the planted signal")->capture_default_str();
    synth->add_option("--truth-items", synth_cfg.truth_items, "Items with reviewer ground truth")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*score) cmd_score(in, g);
        else if (*evaluate) cmd_evaluate(in, g);
        else if (*finetune) cmd_finetune_report(in, g);
        else if (*lagscan) cmd_lagscan(in, g);
        else if (*compound) cmd_compound(in, g);
        else if (*synth) cmd_synth(synth_cfg, g);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
