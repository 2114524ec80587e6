#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trendnet/pagerank.hpp"
#include "trendnet/temporal_graph.hpp"

namespace trendnet {

/// Scoring models. m1 multiplies structural centrality by decayed recent
/// activity; m2 boosts centrality by the activity share; m3 mixes the two
/// linearly; pbp interpolates total and recent popularity; the last two are
/// the pure baselines.
enum class PredictorKind { m1, m2, m3, pbp, pagerank_only, recent_degree };

const char* predictor_name(PredictorKind kind);
std::optional<PredictorKind> predictor_from_name(std::string_view name);

/// One scoring model instance. gamma >= 0 is the per-day decay of activity
/// weights, delta in [0,1] weights structure vs. activity in m3, lambda in
/// [0,1] interpolates total vs. recent popularity in pbp.
struct PredictorSpec {
    PredictorKind kind = PredictorKind::m2;
    double gamma = 0.1;
    double delta = 0.5;
    double lambda = 1.0;
    PageRankConfig pagerank;

    bool uses_pagerank() const;
    bool uses_decay() const;
    std::string params_string() const;
};

/// Per-node recent in-link activity over the past window [t - past, t):
/// decayed[n] is the sum of exp(gamma * (t_e - t)) over in-events in the
/// window (each term in (0, 1]), window_gain[n] the event count, and
/// degree_now / degree_past the in-degrees at t and t - past. All vectors
/// are registry-sized.
struct ActivitySummary {
    double t{};
    double past_window{};
    double gamma{};
    std::vector<double> decayed;
    std::vector<std::int64_t> window_gain;
    std::vector<std::int64_t> degree_now;
    std::vector<std::int64_t> degree_past;
};

ActivitySummary activity_summary(const TemporalGraph& graph, const WindowConfig& window, double gamma);

/// Per-node prediction scores. Normalized vectors sum to 1 over snapshot
/// nodes (norm_constant holds the factor applied); pbp and recent_degree
/// stay on their natural count scale, which ranking does not care about.
/// degenerate marks an all-zero vector (no activity anywhere in the
/// window); ranking then falls back to node-index order.
struct ScoreVector {
    std::vector<double> score; // registry-sized
    double norm_constant = 0.0;
    bool normalized = false;
    bool degenerate = false;
};

/// score = centrality * decayed activity, normalized. Nodes quiet over the
/// whole window score zero no matter how central they are.
ScoreVector score_m1(const Snapshot& snapshot, const ActivitySummary& activity,
                     const PageRankVector& pr);

/// score = centrality * (1 + activity share), normalized. Quiet nodes keep
/// their structural rank; active ones get boosted.
ScoreVector score_m2(const Snapshot& snapshot, const ActivitySummary& activity,
                     const PageRankVector& pr);

/// score = delta * centrality + (1 - delta) * activity share, normalized.
ScoreVector score_m3(const Snapshot& snapshot, const ActivitySummary& activity,
                     const PageRankVector& pr, double delta);

/// score = degree_now - lambda * degree_past (raw). lambda = 0 ranks by
/// total popularity, lambda = 1 by the past-window gain.
ScoreVector score_pbp(const Snapshot& snapshot, const ActivitySummary& activity, double lambda);

ScoreVector score_pagerank_only(const Snapshot& snapshot, const PageRankVector& pr);
ScoreVector score_recent_degree(const Snapshot& snapshot, const ActivitySummary& activity);

/// Dispatch on spec.kind. pr may be null for variants that do not use it.
ScoreVector compute_scores(const PredictorSpec& spec, const Snapshot& snapshot,
                           const ActivitySummary& activity, const PageRankVector* pr);

using RankedList = std::vector<NodeIndex>;

/// Top-n candidates by score descending, ascending node index on ties.
/// n larger than the candidate set returns the whole set.
RankedList rank_nodes(std::span<const double> score, const std::vector<NodeIndex>& candidates,
                      std::size_t n);
RankedList rank(const ScoreVector& scores, const Snapshot& snapshot, std::size_t n);

/// "id<TAB>score<TAB>rank" rows for the top-n snapshot nodes.
std::string format_ranked_dump(const TemporalGraph& graph, const Snapshot& snapshot,
                               const ScoreVector& scores, std::size_t n);

} // namespace trendnet
