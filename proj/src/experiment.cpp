#include "trendnet/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "trendnet/error.hpp"
#include "trendnet/io.hpp"

namespace trendnet {

namespace {

std::string format_value(double v, const char* fmt = "%.12g") {
    char buf[48];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

std::string format_metric(const std::optional<double>& v) {
    return v ? format_value(*v) : std::string();
}

/// Everything derived from one (window, t) pair that predictors may share.
struct TimePoint {
    double t{};
    double window{};
    Snapshot snap;
    ActivitySummary counts;          // gamma = 0; degree / gain fields only
    std::vector<double> future_gain; // registry-sized
    RankedList true_top;
    RankedList past_top;
    std::map<double, PageRankVector> pagerank_by_alpha;
    std::map<double, ActivitySummary> activity_by_gamma;
};

TimePoint build_time_point(const TemporalGraph& graph, double t, double window,
                           std::size_t top_n) {
    TimePoint tp;
    tp.t = t;
    tp.window = window;
    tp.snap = graph.snapshot_at(t);
    tp.counts = activity_summary(graph, {t, window, window}, 0.0);
    tp.future_gain.assign(graph.node_count(), 0.0);
    std::vector<double> past_gain(graph.node_count(), 0.0);
    for (const NodeIndex v : tp.snap.nodes) {
        tp.future_gain[v] = static_cast<double>(graph.window_in_count(v, t, t + window));
        past_gain[v] = static_cast<double>(tp.counts.window_gain[v]);
    }
    tp.true_top = rank_nodes(tp.future_gain, tp.snap.nodes, top_n);
    tp.past_top = rank_nodes(past_gain, tp.snap.nodes, top_n);
    return tp;
}

MetricsReport evaluate_spec(const TimePoint& tp, const PredictorSpec& spec,
                            const ActivitySummary& activity, const PageRankVector* pr,
                            std::size_t top_n, TauKind tau_kind) {
    const ScoreVector scores = compute_scores(spec, tp.snap, activity, pr);
    const RankedList predicted = rank(scores, tp.snap, top_n);

    MetricsReport report;
    report.degenerate = scores.degenerate;
    report.precision = precision(predicted, tp.true_top, top_n);
    const MetricResult q = novelty(predicted, tp.true_top, tp.past_top);
    report.novelty = q.value;
    report.novelty_reason = q.reason;
    const MetricResult a = auc(scores.score, tp.true_top, tp.snap.nodes);
    report.auc = a.value;
    report.auc_reason = a.reason;
    const MetricResult k = kendall_tau(scores.score, tp.future_gain, tp.snap.nodes, tau_kind);
    report.tau = k.value;
    report.tau_reason = k.reason;
    return report;
}

/// Parameter grid of one predictor kind under a config.
std::vector<PredictorSpec> expand_specs(PredictorKind kind, const ExperimentConfig& cfg) {
    std::vector<PredictorSpec> specs;
    PredictorSpec base;
    base.kind = kind;
    base.pagerank.tolerance = cfg.tolerance;
    base.pagerank.max_iterations = cfg.max_iterations;
    switch (kind) {
    case PredictorKind::m1:
    case PredictorKind::m2:
        for (const double g : cfg.gammas)
            for (const double a : cfg.alphas) {
                PredictorSpec s = base;
                s.gamma = g;
                s.pagerank.alpha = a;
                specs.push_back(s);
            }
        break;
    case PredictorKind::m3:
        for (const double g : cfg.gammas)
            for (const double a : cfg.alphas)
                for (const double d : cfg.deltas) {
                    PredictorSpec s = base;
                    s.gamma = g;
                    s.pagerank.alpha = a;
                    s.delta = d;
                    specs.push_back(s);
                }
        break;
    case PredictorKind::pbp:
        for (const double l : cfg.lambdas) {
            PredictorSpec s = base;
            s.lambda = l;
            specs.push_back(s);
        }
        break;
    case PredictorKind::pagerank_only:
        for (const double a : cfg.alphas) {
            PredictorSpec s = base;
            s.pagerank.alpha = a;
            specs.push_back(s);
        }
        break;
    case PredictorKind::recent_degree: specs.push_back(base); break;
    }
    return specs;
}

constexpr int agg_raw = 0, agg_mean = 1, agg_std = 2;

std::vector<SweepRow> rows_for_time(const TemporalGraph& graph, const ExperimentConfig& cfg,
                                    double window, double t) {
    TimePoint tp = build_time_point(graph, t, window, cfg.top_n);
    std::vector<SweepRow> rows;
    for (const PredictorKind kind : cfg.predictors) {
        for (const PredictorSpec& spec : expand_specs(kind, cfg)) {
            SweepRow row;
            row.window = window;
            row.t = t;
            row.predictor = predictor_name(kind);
            row.params = spec.params_string();
            row.agg = agg_raw;
            try {
                const PageRankVector* pr = nullptr;
                if (spec.uses_pagerank()) {
                    auto it = tp.pagerank_by_alpha.find(spec.pagerank.alpha);
                    if (it == tp.pagerank_by_alpha.end())
                        it = tp.pagerank_by_alpha
                                 .emplace(spec.pagerank.alpha, pagerank(tp.snap, spec.pagerank))
                                 .first;
                    pr = &it->second;
                }
                const ActivitySummary* act = &tp.counts;
                if (spec.uses_decay()) {
                    auto it = tp.activity_by_gamma.find(spec.gamma);
                    if (it == tp.activity_by_gamma.end())
                        it = tp.activity_by_gamma
                                 .emplace(spec.gamma,
                                          activity_summary(graph, {t, window, window}, spec.gamma))
                                 .first;
                    act = &it->second;
                }
                const MetricsReport report = evaluate_spec(tp, spec, *act, pr, cfg.top_n, cfg.tau);
                row.precision = report.precision;
                row.novelty = report.novelty;
                row.auc = report.auc;
                row.tau = report.tau;
                row.flags = report.flags();
            } catch (const Error& e) {
                row.flags = std::string("error=") + error_code_name(e.code());
            }
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

struct CellKey {
    double window;
    std::string predictor;
    std::string params;
    bool operator==(const CellKey&) const = default;
};

void append_aggregates(std::vector<SweepRow>& rows) {
    // rows is sorted; walk cell groups of raw rows and push mean/std rows
    std::vector<SweepRow> aggregates;
    std::size_t i = 0;
    while (i < rows.size()) {
        std::size_t j = i;
        const CellKey key{rows[i].window, rows[i].predictor, rows[i].params};
        while (j < rows.size() &&
               CellKey{rows[j].window, rows[j].predictor, rows[j].params} == key)
            ++j;

        auto aggregate = [&](auto pick) {
            std::vector<double> values;
            for (std::size_t k = i; k < j; ++k) {
                const auto& v = pick(rows[k]);
                if (v) values.push_back(*v);
            }
            double mean = 0.0, stdev = 0.0;
            if (!values.empty()) {
                for (const double v : values) mean += v;
                mean /= static_cast<double>(values.size());
                if (values.size() > 1) {
                    double ss = 0.0;
                    for (const double v : values) ss += (v - mean) * (v - mean);
                    stdev = std::sqrt(ss / static_cast<double>(values.size() - 1));
                }
            }
            struct { std::size_t n; double mean, stdev; } out{values.size(), mean, stdev};
            return out;
        };
        const auto p = aggregate([](const SweepRow& r) -> const std::optional<double>& { return r.precision; });
        const auto q = aggregate([](const SweepRow& r) -> const std::optional<double>& { return r.novelty; });
        const auto a = aggregate([](const SweepRow& r) -> const std::optional<double>& { return r.auc; });
        const auto k = aggregate([](const SweepRow& r) -> const std::optional<double>& { return r.tau; });

        std::string counts = "runs=" + std::to_string(j - i) +
                             ";precision_n=" + std::to_string(p.n) +
                             ";novelty_n=" + std::to_string(q.n) +
                             ";auc_n=" + std::to_string(a.n) + ";tau_n=" + std::to_string(k.n);

        SweepRow mean_row;
        mean_row.window = key.window;
        mean_row.t = std::numeric_limits<double>::quiet_NaN();
        mean_row.predictor = key.predictor;
        mean_row.params = key.params;
        mean_row.agg = agg_mean;
        if (p.n) mean_row.precision = p.mean;
        if (q.n) mean_row.novelty = q.mean;
        if (a.n) mean_row.auc = a.mean;
        if (k.n) mean_row.tau = k.mean;
        mean_row.flags = counts;

        SweepRow std_row = mean_row;
        std_row.agg = agg_std;
        std_row.precision.reset();
        std_row.novelty.reset();
        std_row.auc.reset();
        std_row.tau.reset();
        if (p.n) std_row.precision = p.stdev;
        if (q.n) std_row.novelty = q.stdev;
        if (a.n) std_row.auc = a.stdev;
        if (k.n) std_row.tau = k.stdev;

        aggregates.push_back(std::move(mean_row));
        aggregates.push_back(std::move(std_row));
        i = j;
    }
    rows.insert(rows.end(), std::make_move_iterator(aggregates.begin()),
                std::make_move_iterator(aggregates.end()));
}

bool row_less(const SweepRow& a, const SweepRow& b) {
    if (a.window != b.window) return a.window < b.window;
    if (a.predictor != b.predictor) return a.predictor < b.predictor;
    if (a.params != b.params) return a.params < b.params;
    if (a.agg != b.agg) return a.agg < b.agg;
    const double ta = a.agg == 0 ? a.t : 0.0;
    const double tb = b.agg == 0 ? b.t : 0.0;
    return ta < tb;
}

} // namespace

std::vector<double> sample_times(const TemporalGraph& graph, double past, double future,
                                 std::size_t num_samples, std::uint64_t seed) {
    if (!(past > 0.0) || !(future > 0.0))
        throw Error(ErrorCode::config, "windows must be positive");
    if (num_samples == 0) throw Error(ErrorCode::config, "num_samples must be >= 1");
    const double lo = graph.start_time() + past;
    const double hi = graph.end_time() - future;
    if (lo > hi) {
        const double span = graph.end_time() - graph.start_time();
        throw Error(ErrorCode::infeasible_window,
                    "window does not fit the dataset span of " + format_value(span) +
                        " days; the maximum symmetric window is " + format_value(span / 2.0) +
                        " days");
    }
    std::mt19937_64 rng(seed);
    std::vector<double> times;
    times.reserve(num_samples);
    for (std::size_t i = 0; i < num_samples; ++i) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        times.push_back(lo + u * (hi - lo));
    }
    std::sort(times.begin(), times.end());
    return times;
}

MetricsReport run_once(const TemporalGraph& graph, double t, double past, double future,
                       const PredictorSpec& spec, std::size_t top_n, TauKind tau_kind) {
    if (!(past > 0.0) || !(future > 0.0))
        throw Error(ErrorCode::config, "windows must be positive");
    if (t - past < graph.start_time() || t + future > graph.end_time())
        throw Error(ErrorCode::infeasible_window,
                    "t = " + format_value(t) + " does not leave room for the windows");
    TimePoint tp = build_time_point(graph, t, past, top_n);
    if (future != past) {
        // rebuild ground truth for an asymmetric future window
        for (const NodeIndex v : tp.snap.nodes)
            tp.future_gain[v] = static_cast<double>(graph.window_in_count(v, t, t + future));
        tp.true_top = rank_nodes(tp.future_gain, tp.snap.nodes, top_n);
    }
    std::optional<PageRankVector> pr;
    if (spec.uses_pagerank()) pr = pagerank(tp.snap, spec.pagerank);
    std::optional<ActivitySummary> act;
    if (spec.uses_decay()) act = activity_summary(graph, {t, past, past}, spec.gamma);
    return evaluate_spec(tp, spec, act ? *act : tp.counts, pr ? &*pr : nullptr, top_n, tau_kind);
}

SweepResult sweep(const TemporalGraph& graph, const ExperimentConfig& cfg) {
    if (cfg.windows.empty()) throw Error(ErrorCode::config, "no windows configured");
    if (cfg.predictors.empty()) throw Error(ErrorCode::config, "no predictors configured");

    SweepResult result;
    for (const double window : cfg.windows) {
        const std::vector<double> times =
            sample_times(graph, window, window, cfg.num_samples, cfg.seed);

        std::vector<std::vector<SweepRow>> per_time(times.size());
        const unsigned workers = std::max(1u, cfg.threads);
        if (workers == 1 || times.size() == 1) {
            for (std::size_t i = 0; i < times.size(); ++i)
                per_time[i] = rows_for_time(graph, cfg, window, times[i]);
        } else {
            std::atomic<std::size_t> next{0};
            auto worker = [&]() {
                while (true) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= times.size()) break;
                    per_time[i] = rows_for_time(graph, cfg, window, times[i]);
                }
            };
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < std::min<std::size_t>(workers, times.size()); ++w)
                pool.emplace_back(worker);
            for (auto& th : pool) th.join();
        }
        for (auto& rows : per_time)
            result.rows.insert(result.rows.end(), std::make_move_iterator(rows.begin()),
                               std::make_move_iterator(rows.end()));
    }

    std::sort(result.rows.begin(), result.rows.end(), row_less);
    append_aggregates(result.rows);
    std::sort(result.rows.begin(), result.rows.end(), row_less);
    return result;
}

std::string format_sweep_csv(const SweepResult& result) {
    std::string out = "t,T_P,T_F,predictor,params,agg,precision,novelty,auc,tau,flags\n";
    for (const SweepRow& row : result.rows) {
        if (row.agg == agg_raw) out += format_value(row.t, "%.6f");
        out += ',';
        out += format_value(row.window);
        out += ',';
        out += format_value(row.window);
        out += ',';
        out += row.predictor;
        out += ',';
        out += row.params;
        out += ',';
        if (row.agg == agg_mean) out += "mean";
        if (row.agg == agg_std) out += "std";
        out += ',';
        out += format_metric(row.precision);
        out += ',';
        out += format_metric(row.novelty);
        out += ',';
        out += format_metric(row.auc);
        out += ',';
        out += format_metric(row.tau);
        out += ',';
        out += row.flags;
        out += '\n';
    }
    return out;
}

std::string format_manifest(const TemporalGraph& graph, const ExperimentConfig& cfg) {
    nlohmann::ordered_json j;
    j["config"]["input"] = cfg.input;
    j["config"]["output"] = cfg.output;
    j["config"]["manifest"] = cfg.manifest.empty() ? cfg.output + ".manifest.json" : cfg.manifest;
    j["config"]["seed"] = cfg.seed;
    j["config"]["num_samples"] = cfg.num_samples;
    j["config"]["top_n"] = cfg.top_n;
    j["config"]["windows"] = cfg.windows;
    std::vector<std::string> names;
    for (const PredictorKind kind : cfg.predictors) names.emplace_back(predictor_name(kind));
    j["config"]["predictors"] = names;
    j["config"]["gamma"] = cfg.gammas;
    j["config"]["alpha"] = cfg.alphas;
    j["config"]["delta"] = cfg.deltas;
    j["config"]["lambda"] = cfg.lambdas;
    j["config"]["tau"] = cfg.tau == TauKind::gamma ? "gamma" : "b";
    j["config"]["tolerance"] = cfg.tolerance;
    j["config"]["max_iterations"] = cfg.max_iterations;
    j["config"]["threads"] = cfg.threads;
    j["dataset"]["edges"] = graph.edge_count();
    j["dataset"]["nodes"] = graph.node_count();
    j["dataset"]["start_day"] = graph.start_time();
    j["dataset"]["end_day"] = graph.end_time();
    char fp[32];
    std::snprintf(fp, sizeof(fp), "fnv1a64:%016llx",
                  static_cast<unsigned long long>(edge_fingerprint(graph.edges(), graph.ids())));
    j["dataset"]["fingerprint"] = fp;
    return j.dump(2) + "\n";
}

ExperimentConfig load_sweep_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::io, "cannot open '" + path + "'");

    ExperimentConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    auto parse_doubles = [&](const std::string& value) {
        std::vector<double> out;
        std::stringstream ss(value);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                out.push_back(std::stod(item));
            } catch (const std::exception&) {
                throw Error(ErrorCode::config,
                            "config line " + std::to_string(lineno) + ": bad number '" + item + "'");
            }
        }
        if (out.empty())
            throw Error(ErrorCode::config, "config line " + std::to_string(lineno) + ": empty list");
        return out;
    };

    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                throw Error(ErrorCode::config,
                            "config line " + std::to_string(lineno) + ": expected key = value");
            continue;
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        value.erase(std::remove_if(value.begin(), value.end(), [](char c) { return c == ' '; }),
                    value.end());
        if (key.empty() || value.empty())
            throw Error(ErrorCode::config,
                        "config line " + std::to_string(lineno) + ": empty key or value");

        if (key == "input") cfg.input = value;
        else if (key == "output") cfg.output = value;
        else if (key == "manifest") cfg.manifest = value;
        else if (key == "seed") cfg.seed = std::stoull(value);
        else if (key == "samples") cfg.num_samples = std::stoull(value);
        else if (key == "top_n") cfg.top_n = std::stoull(value);
        else if (key == "windows") cfg.windows = parse_doubles(value);
        else if (key == "gamma") cfg.gammas = parse_doubles(value);
        else if (key == "alpha") cfg.alphas = parse_doubles(value);
        else if (key == "delta") cfg.deltas = parse_doubles(value);
        else if (key == "lambda") cfg.lambdas = parse_doubles(value);
        else if (key == "tolerance") cfg.tolerance = std::stod(value);
        else if (key == "max_iterations") cfg.max_iterations = std::stoull(value);
        else if (key == "tau") {
            if (value == "gamma") cfg.tau = TauKind::gamma;
            else if (value == "b") cfg.tau = TauKind::tau_b;
            else
                throw Error(ErrorCode::config,
                            "config line " + std::to_string(lineno) + ": tau must be gamma or b");
        } else if (key == "predictors") {
            cfg.predictors.clear();
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ',')) {
                const auto kind = predictor_from_name(item);
                if (!kind)
                    throw Error(ErrorCode::config, "config line " + std::to_string(lineno) +
                                                       ": unknown predictor '" + item + "'");
                cfg.predictors.push_back(*kind);
            }
        } else {
            throw Error(ErrorCode::config,
                        "config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    if (cfg.input.empty()) throw Error(ErrorCode::config, "config is missing 'input'");
    return cfg;
}

} // namespace trendnet
