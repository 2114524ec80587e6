#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "trendnet/error.hpp"
#include "trendnet/experiment.hpp"
#include "trendnet/ingest.hpp"
#include "trendnet/io.hpp"
#include "trendnet/metrics.hpp"
#include "trendnet/pagerank.hpp"
#include "trendnet/predictors.hpp"
#include "trendnet/synthetic.hpp"
#include "trendnet/temporal_graph.hpp"

namespace {

constexpr const char* kExitCodeHelp =
    "Exit codes: 0 success, 2 io, 3 config, 4 parse, 5 empty-dataset,\n"
    "6 infeasible-window, 7 no-convergence; CLI11 usage errors return their\n"
    "own nonzero codes.";

char parse_delimiter(const std::string& text) {
    if (text == "tab" || text == "\\t") return '\t';
    if (text == "space") return ' ';
    if (text.size() == 1) return text[0];
    throw trendnet::Error(trendnet::ErrorCode::config,
                          "delimiter must be a single character, 'tab' or 'space'");
}

trendnet::TemporalGraph load_graph(const std::string& path) {
    return trendnet::TemporalGraph::build(trendnet::read_edge_file(path));
}

struct PredictArgs {
    std::string input;
    std::string output;
    std::string variant = "m2";
    double t = 0.0;
    double tp = 30.0;
    double gamma = 0.1;
    double delta = 0.5;
    double lambda = 1.0;
    double alpha = 0.1;
    double tolerance = 1e-10;
    std::size_t max_iterations = 1000;
    std::size_t top_n = 100;
};

void add_predict_flags(CLI::App* cmd, PredictArgs& args) {
    cmd->add_option("--input", args.input, "Canonical edge file")->required();
    cmd->add_option("--output", args.output, "Output path")->required();
    cmd->add_option("--variant", args.variant, "Predictor: m1|m2|m3|pbp|pagerank|recent")
        ->capture_default_str();
    cmd->add_option("--t", args.t, "Reference time (days)")->required();
    cmd->add_option("--tp", args.tp, "Past window length (days)")->capture_default_str();
    cmd->add_option("--gamma", args.gamma, "Activity decay rate per day")->capture_default_str();
    cmd->add_option("--delta", args.delta, "m3 structure weight in [0,1]")->capture_default_str();
    cmd->add_option("--lambda", args.lambda, "pbp recency weight in [0,1]")->capture_default_str();
    cmd->add_option("--alpha", args.alpha, "PageRank link-following probability")
        ->capture_default_str();
    cmd->add_option("--tolerance", args.tolerance, "PageRank L1 stopping threshold")
        ->capture_default_str();
    cmd->add_option("--max-iter", args.max_iterations, "PageRank iteration cap")
        ->capture_default_str();
    cmd->add_option("--top-n", args.top_n, "Ranked list size")->capture_default_str();
}

trendnet::PredictorSpec spec_from_args(const PredictArgs& args) {
    const auto kind = trendnet::predictor_from_name(args.variant);
    if (!kind)
        throw trendnet::Error(trendnet::ErrorCode::config,
                              "unknown predictor variant '" + args.variant + "'");
    trendnet::PredictorSpec spec;
    spec.kind = *kind;
    spec.gamma = args.gamma;
    spec.delta = args.delta;
    spec.lambda = args.lambda;
    spec.pagerank.alpha = args.alpha;
    spec.pagerank.tolerance = args.tolerance;
    spec.pagerank.max_iterations = args.max_iterations;
    return spec;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"trendnet - predict emerging influential nodes in evolving networks"};
    app.require_subcommand(1);
    app.footer(kExitCodeHelp);

    // ingest
    std::string in_path, out_path, delimiter = "tab", time_unit = "days";
    trendnet::IngestConfig ingest_cfg;
    auto* ingest = app.add_subcommand("ingest", "Parse a raw interaction log into canonical edges");
    ingest->add_option("--input", in_path, "Raw interaction file")->required();
    ingest->add_option("--output", out_path, "Canonical edge file to write")->required();
    ingest->add_option("--delimiter", delimiter, "Field delimiter ('tab', 'space' or one char)")
        ->capture_default_str();
    ingest->add_flag("--has-header", ingest_cfg.has_header, "Skip the first line");
    ingest->add_option("--col-source", ingest_cfg.col_source, "Source id column (0-based)")
        ->capture_default_str();
    ingest->add_option("--col-target", ingest_cfg.col_target, "Target id column")
        ->capture_default_str();
    ingest->add_option("--col-value", ingest_cfg.col_value, "Rating column, -1 for none")
        ->capture_default_str();
    ingest->add_option("--col-time", ingest_cfg.col_time, "Timestamp column")
        ->capture_default_str();
    ingest->add_option("--time-unit", time_unit, "Timestamp unit: days|seconds")
        ->capture_default_str();
    ingest->add_option("--rating-threshold", ingest_cfg.rating_threshold,
                       "Keep records rated strictly greater than this")
        ->capture_default_str();
    ingest->add_option("--min-activity", ingest_cfg.min_actor_activity,
                       "Minimum surviving records per actor")
        ->capture_default_str();
    bool keep_self = false;
    ingest->add_flag("--keep-self-links", keep_self, "Keep actor == target records");

    // generate
    trendnet::SyntheticConfig synth_cfg;
    auto* generate = app.add_subcommand("generate", "Generate a synthetic evolving network");
    generate->add_option("--output", out_path, "Canonical edge file to write")->required();
    generate->add_option("--nodes-per-day", synth_cfg.node_arrival_rate, "Node arrival rate")
        ->capture_default_str();
    generate->add_option("--events-per-day", synth_cfg.event_rate, "Link event rate")
        ->capture_default_str();
    generate->add_option("--horizon", synth_cfg.horizon, "Simulated days")->capture_default_str();
    generate->add_option("--recency-weight", synth_cfg.recency_weight,
                         "Mix of total-degree vs recent-activity attachment in [0,1]")
        ->capture_default_str();
    generate->add_option("--aging-rate", synth_cfg.aging_rate, "Recency decay per day")
        ->capture_default_str();
    generate->add_option("--seed", synth_cfg.seed, "RNG seed")->capture_default_str();
    generate->add_option("--seed-nodes", synth_cfg.seed_nodes, "Nodes present at day 0")
        ->capture_default_str();

    // pagerank
    double at_time = 0.0;
    trendnet::PageRankConfig pr_cfg;
    auto* pr_cmd = app.add_subcommand("pagerank", "Score nodes at a reference time");
    pr_cmd->add_option("--input", in_path, "Canonical edge file")->required();
    pr_cmd->add_option("--output", out_path, "Score dump to write")->required();
    pr_cmd->add_option("--at", at_time, "Reference time (days)")->required();
    pr_cmd->add_option("--alpha", pr_cfg.alpha, "Link-following probability")
        ->capture_default_str();
    pr_cmd->add_option("--tolerance", pr_cfg.tolerance, "L1 stopping threshold")
        ->capture_default_str();
    pr_cmd->add_option("--max-iter", pr_cfg.max_iterations, "Iteration cap")
        ->capture_default_str();
    pr_cmd->add_option("--threads", pr_cfg.threads, "Worker count (does not change results)")
        ->capture_default_str();

    // predict
    PredictArgs predict_args;
    auto* predict = app.add_subcommand("predict", "Write a ranked node list for one predictor");
    add_predict_flags(predict, predict_args);

    // evaluate
    PredictArgs eval_args;
    double eval_tf = 30.0;
    std::string eval_tau = "gamma";
    auto* evaluate = app.add_subcommand("evaluate", "Run one prediction and score it");
    add_predict_flags(evaluate, eval_args);
    evaluate->add_option("--tf", eval_tf, "Future window length (days)")->capture_default_str();
    evaluate->add_option("--tau", eval_tau, "Rank correlation tie rule: gamma|b")
        ->capture_default_str();

    // sweep
    std::string sweep_config_path, sweep_output_override, sweep_input_override;
    unsigned sweep_threads = 0;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run the full parameter grid from a config file");
    sweep_cmd->add_option("--config", sweep_config_path, "Sweep config file")->required();
    sweep_cmd->add_option("--output", sweep_output_override, "Override the configured output path");
    sweep_cmd->add_option("--input", sweep_input_override, "Override the configured edge file");
    sweep_cmd->add_option("--threads", sweep_threads, "Worker count (does not change results)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ingest) {
            ingest_cfg.delimiter = parse_delimiter(delimiter);
            ingest_cfg.exclude_self_links = !keep_self;
            if (time_unit == "seconds" || time_unit == "epoch-seconds")
                ingest_cfg.time_unit = trendnet::IngestConfig::TimeUnit::epoch_seconds;
            else if (time_unit != "days")
                throw trendnet::Error(trendnet::ErrorCode::config,
                                      "time unit must be days or seconds");
            const trendnet::EdgeList list = trendnet::parse_interactions(in_path, ingest_cfg);
            trendnet::write_edge_file(out_path, list);
            std::printf("wrote %zu edges over %zu nodes to %s\n", list.edges.size(),
                        list.ids.size(), out_path.c_str());
        } else if (*generate) {
            const trendnet::EdgeList list = trendnet::generate_synthetic(synth_cfg);
            trendnet::write_edge_file(out_path, list);
            std::printf("wrote %zu edges over %zu nodes to %s\n", list.edges.size(),
                        list.ids.size(), out_path.c_str());
        } else if (*pr_cmd) {
            const auto graph = load_graph(in_path);
            const auto snap = graph.snapshot_at(at_time);
            const auto pr = trendnet::pagerank(snap, pr_cfg);
            trendnet::atomic_write_file(out_path, trendnet::format_pagerank_dump(graph, snap, pr));
            std::printf("pagerank over %zu nodes converged in %zu iterations\n",
                        snap.node_count(), pr.iterations);
        } else if (*predict) {
            const auto graph = load_graph(predict_args.input);
            const auto spec = spec_from_args(predict_args);
            const auto snap = graph.snapshot_at(predict_args.t);
            std::optional<trendnet::PageRankVector> pr;
            if (spec.uses_pagerank()) pr = trendnet::pagerank(snap, spec.pagerank);
            const auto activity = trendnet::activity_summary(
                graph, {predict_args.t, predict_args.tp, predict_args.tp}, spec.gamma);
            const auto scores =
                trendnet::compute_scores(spec, snap, activity, pr ? &*pr : nullptr);
            trendnet::atomic_write_file(
                predict_args.output,
                trendnet::format_ranked_dump(graph, snap, scores, predict_args.top_n));
        } else if (*evaluate) {
            const auto graph = load_graph(eval_args.input);
            const auto spec = spec_from_args(eval_args);
            trendnet::TauKind tau = trendnet::TauKind::gamma;
            if (eval_tau == "b") tau = trendnet::TauKind::tau_b;
            else if (eval_tau != "gamma")
                throw trendnet::Error(trendnet::ErrorCode::config, "tau must be gamma or b");
            const auto report = trendnet::run_once(graph, eval_args.t, eval_args.tp, eval_tf,
                                                   spec, eval_args.top_n, tau);
            trendnet::SweepResult one;
            trendnet::SweepRow row;
            row.window = eval_args.tp;
            row.t = eval_args.t;
            row.predictor = trendnet::predictor_name(spec.kind);
            row.params = spec.params_string();
            row.precision = report.precision;
            row.novelty = report.novelty;
            row.auc = report.auc;
            row.tau = report.tau;
            row.flags = report.flags();
            one.rows.push_back(std::move(row));
            trendnet::atomic_write_file(eval_args.output, trendnet::format_sweep_csv(one));
        } else if (*sweep_cmd) {
            trendnet::ExperimentConfig cfg = trendnet::load_sweep_config(sweep_config_path);
            if (!sweep_output_override.empty()) cfg.output = sweep_output_override;
            if (!sweep_input_override.empty()) cfg.input = sweep_input_override;
            if (sweep_threads > 0) cfg.threads = sweep_threads;
            const auto graph = load_graph(cfg.input);
            const trendnet::SweepResult result = trendnet::sweep(graph, cfg);
            trendnet::atomic_write_file(cfg.output, trendnet::format_sweep_csv(result));
            const std::string manifest_path =
                cfg.manifest.empty() ? cfg.output + ".manifest.json" : cfg.manifest;
            trendnet::atomic_write_file(manifest_path, trendnet::format_manifest(graph, cfg));
            std::printf("wrote %zu rows to %s\n", result.rows.size(), cfg.output.c_str());
        }
    } catch (const trendnet::Error& e) {
        std::cerr << "error: " << trendnet::error_code_name(e.code()) << ": " << e.what() << "\n";
        return static_cast<int>(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
