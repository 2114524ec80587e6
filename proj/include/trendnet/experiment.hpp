#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trendnet/metrics.hpp"
#include "trendnet/predictors.hpp"
#include "trendnet/temporal_graph.hpp"

namespace trendnet {

/// Sweep settings. Parameter grids expand per predictor: m1 and m2 over
/// gamma x alpha, m3 over gamma x alpha x delta, pbp over lambda,
/// pagerank over alpha, recent_degree has no parameters. Windows are
/// symmetric (past = future = w). Sampled times are shared by every
/// predictor and cell within a window, so comparisons are paired.
struct ExperimentConfig {
    std::string input;
    std::string output = "sweep.csv";
    std::string manifest; // empty -> output + ".manifest.json"
    std::uint64_t seed = 42;
    std::size_t num_samples = 10;
    std::size_t top_n = 100;
    std::vector<double> windows = {30.0};
    std::vector<PredictorKind> predictors = {
        PredictorKind::m1,  PredictorKind::m2,            PredictorKind::m3,
        PredictorKind::pbp, PredictorKind::pagerank_only, PredictorKind::recent_degree};
    std::vector<double> gammas = {0.1};
    std::vector<double> alphas = {0.1};
    std::vector<double> deltas = {0.5};
    std::vector<double> lambdas = {1.0};
    TauKind tau = TauKind::gamma;
    double tolerance = 1e-10;
    std::size_t max_iterations = 1000;
    unsigned threads = 1;
};

/// Flat key = value file, lists comma-separated, '#' comments. Keys match
/// the ExperimentConfig field names documented in the README.
ExperimentConfig load_sweep_config(const std::string& path);

/// num_samples times drawn uniformly from [start + past, end - future],
/// sorted ascending; deterministic for a given seed. Throws an
/// infeasible-window error naming the maximum symmetric window when the
/// interval is empty.
std::vector<double> sample_times(const TemporalGraph& graph, double past, double future,
                                 std::size_t num_samples, std::uint64_t seed);

/// One evaluation: snapshot at t, PageRank / activity as the variant
/// needs, scores, then all four metrics against the future window
/// [t, t + future) at list size top_n. The rank correlation runs over all
/// snapshot nodes. Nothing at or after t reaches any predictor input.
MetricsReport run_once(const TemporalGraph& graph, double t, double past, double future,
                       const PredictorSpec& spec, std::size_t top_n,
                       TauKind tau = TauKind::gamma);

struct SweepRow {
    double window{}; // T_P = T_F
    double t{};      // meaningless when agg != 0
    std::string predictor;
    std::string params;
    int agg = 0;     // 0 raw, 1 mean, 2 std
    std::optional<double> precision, novelty, auc, tau;
    std::string flags;
};

/// Raw rows plus per-cell mean and std rows, in a fixed order regardless
/// of thread count. Null metrics are excluded from their aggregate and
/// the exclusion shows up in the aggregate row's flags.
struct SweepResult {
    std::vector<SweepRow> rows;
};

SweepResult sweep(const TemporalGraph& graph, const ExperimentConfig& config);

std::string format_sweep_csv(const SweepResult& result);

/// JSON manifest: resolved config (every default made explicit), seed and
/// dataset fingerprint. Deterministic content, no timestamps.
std::string format_manifest(const TemporalGraph& graph, const ExperimentConfig& config);

} // namespace trendnet
