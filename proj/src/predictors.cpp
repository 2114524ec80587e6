#include "trendnet/predictors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "trendnet/error.hpp"

namespace trendnet {

namespace {

std::string format_param(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

/// Normalizes raw scores over snapshot nodes to sum 1; flags the vector
/// degenerate when everything is zero.
ScoreVector normalize(const Snapshot& snap, std::vector<double> raw) {
    ScoreVector sv;
    double sum = 0.0;
    for (const NodeIndex v : snap.nodes) sum += raw[v];
    if (sum > 0.0) {
        const double k = 1.0 / sum;
        for (const NodeIndex v : snap.nodes) raw[v] *= k;
        sv.norm_constant = k;
        sv.normalized = true;
    } else {
        sv.degenerate = true;
    }
    sv.score = std::move(raw);
    return sv;
}

/// Activity share P_n = a_n / sum(a); all zeros when nothing happened in
/// the window.
std::vector<double> activity_share(const Snapshot& snap, const ActivitySummary& activity) {
    std::vector<double> share(snap.registry_size, 0.0);
    double sum = 0.0;
    for (const NodeIndex v : snap.nodes) sum += activity.decayed[v];
    if (sum > 0.0)
        for (const NodeIndex v : snap.nodes) share[v] = activity.decayed[v] / sum;
    return share;
}

} // namespace

const char* predictor_name(PredictorKind kind) {
    switch (kind) {
    case PredictorKind::m1: return "m1";
    case PredictorKind::m2: return "m2";
    case PredictorKind::m3: return "m3";
    case PredictorKind::pbp: return "pbp";
    case PredictorKind::pagerank_only: return "pagerank";
    case PredictorKind::recent_degree: return "recent";
    }
    return "unknown";
}

std::optional<PredictorKind> predictor_from_name(std::string_view name) {
    if (name == "m1") return PredictorKind::m1;
    if (name == "m2") return PredictorKind::m2;
    if (name == "m3") return PredictorKind::m3;
    if (name == "pbp") return PredictorKind::pbp;
    if (name == "pagerank") return PredictorKind::pagerank_only;
    if (name == "recent") return PredictorKind::recent_degree;
    return std::nullopt;
}

bool PredictorSpec::uses_pagerank() const {
    switch (kind) {
    case PredictorKind::m1:
    case PredictorKind::m2:
    case PredictorKind::m3:
    case PredictorKind::pagerank_only: return true;
    default: return false;
    }
}

bool PredictorSpec::uses_decay() const {
    switch (kind) {
    case PredictorKind::m1:
    case PredictorKind::m2:
    case PredictorKind::m3: return true;
    default: return false;
    }
}

std::string PredictorSpec::params_string() const {
    switch (kind) {
    case PredictorKind::m1:
    case PredictorKind::m2:
        return "gamma=" + format_param(gamma) + ";alpha=" + format_param(pagerank.alpha);
    case PredictorKind::m3:
        return "gamma=" + format_param(gamma) + ";alpha=" + format_param(pagerank.alpha) +
               ";delta=" + format_param(delta);
    case PredictorKind::pbp: return "lambda=" + format_param(lambda);
    case PredictorKind::pagerank_only: return "alpha=" + format_param(pagerank.alpha);
    case PredictorKind::recent_degree: return "";
    }
    return "";
}

ActivitySummary activity_summary(const TemporalGraph& graph, const WindowConfig& window,
                                 double gamma) {
    if (!(gamma >= 0.0)) throw Error(ErrorCode::config, "gamma must be >= 0");
    if (!(window.past > 0.0)) throw Error(ErrorCode::config, "past window must be positive");

    const std::size_t n = graph.node_count();
    ActivitySummary s;
    s.t = window.t;
    s.past_window = window.past;
    s.gamma = gamma;
    s.decayed.assign(n, 0.0);
    s.window_gain.assign(n, 0);
    s.degree_now.assign(n, 0);
    s.degree_past.assign(n, 0);

    const double from = window.t - window.past;
    for (std::size_t v = 0; v < n; ++v) {
        const auto& times = graph.in_times(static_cast<NodeIndex>(v));
        const auto lo = std::lower_bound(times.begin(), times.end(), from);
        const auto hi = std::lower_bound(times.begin(), times.end(), window.t);
        s.degree_past[v] = lo - times.begin();
        s.degree_now[v] = hi - times.begin();
        s.window_gain[v] = hi - lo;
        double a = 0.0;
        for (auto it = lo; it != hi; ++it) a += std::exp(gamma * (*it - window.t));
        s.decayed[v] = a;
    }
    return s;
}

ScoreVector score_m1(const Snapshot& snap, const ActivitySummary& activity,
                     const PageRankVector& pr) {
    std::vector<double> raw(snap.registry_size, 0.0);
    for (const NodeIndex v : snap.nodes) raw[v] = pr.score[v] * activity.decayed[v];
    return normalize(snap, std::move(raw));
}

ScoreVector score_m2(const Snapshot& snap, const ActivitySummary& activity,
                     const PageRankVector& pr) {
    const auto share = activity_share(snap, activity);
    std::vector<double> raw(snap.registry_size, 0.0);
    for (const NodeIndex v : snap.nodes) raw[v] = pr.score[v] * (1.0 + share[v]);
    return normalize(snap, std::move(raw));
}

ScoreVector score_m3(const Snapshot& snap, const ActivitySummary& activity,
                     const PageRankVector& pr, double delta) {
    if (!(delta >= 0.0 && delta <= 1.0)) throw Error(ErrorCode::config, "delta must lie in [0, 1]");
    const auto share = activity_share(snap, activity);
    std::vector<double> raw(snap.registry_size, 0.0);
    for (const NodeIndex v : snap.nodes)
        raw[v] = delta * pr.score[v] + (1.0 - delta) * share[v];
    return normalize(snap, std::move(raw));
}

ScoreVector score_pbp(const Snapshot& snap, const ActivitySummary& activity, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw Error(ErrorCode::config, "lambda must lie in [0, 1]");
    ScoreVector sv;
    sv.score.assign(snap.registry_size, 0.0);
    for (const NodeIndex v : snap.nodes)
        sv.score[v] = static_cast<double>(activity.degree_now[v]) -
                      lambda * static_cast<double>(activity.degree_past[v]);
    return sv;
}

ScoreVector score_pagerank_only(const Snapshot& snap, const PageRankVector& pr) {
    ScoreVector sv;
    sv.score.assign(snap.registry_size, 0.0);
    for (const NodeIndex v : snap.nodes) sv.score[v] = pr.score[v];
    sv.norm_constant = 1.0;
    sv.normalized = true;
    return sv;
}

ScoreVector score_recent_degree(const Snapshot& snap, const ActivitySummary& activity) {
    ScoreVector sv;
    sv.score.assign(snap.registry_size, 0.0);
    for (const NodeIndex v : snap.nodes)
        sv.score[v] = static_cast<double>(activity.window_gain[v]);
    return sv;
}

ScoreVector compute_scores(const PredictorSpec& spec, const Snapshot& snap,
                           const ActivitySummary& activity, const PageRankVector* pr) {
    if (spec.uses_pagerank() && pr == nullptr)
        throw Error(ErrorCode::config,
                    std::string(predictor_name(spec.kind)) + " needs a PageRank vector");
    switch (spec.kind) {
    case PredictorKind::m1: return score_m1(snap, activity, *pr);
    case PredictorKind::m2: return score_m2(snap, activity, *pr);
    case PredictorKind::m3: return score_m3(snap, activity, *pr, spec.delta);
    case PredictorKind::pbp: return score_pbp(snap, activity, spec.lambda);
    case PredictorKind::pagerank_only: return score_pagerank_only(snap, *pr);
    case PredictorKind::recent_degree: return score_recent_degree(snap, activity);
    }
    throw Error(ErrorCode::config, "unknown predictor");
}

RankedList rank_nodes(std::span<const double> score, const std::vector<NodeIndex>& candidates,
                      std::size_t n) {
    RankedList order(candidates);
    std::sort(order.begin(), order.end(), [&](NodeIndex a, NodeIndex b) {
        if (score[a] != score[b]) return score[a] > score[b];
        return a < b;
    });
    if (order.size() > n) order.resize(n);
    return order;
}

RankedList rank(const ScoreVector& scores, const Snapshot& snap, std::size_t n) {
    return rank_nodes(scores.score, snap.nodes, n);
}

std::string format_ranked_dump(const TemporalGraph& graph, const Snapshot& snap,
                               const ScoreVector& scores, std::size_t n) {
    const RankedList order = rank(scores, snap, n);
    std::string out;
    char buf[64];
    std::size_t position = 0;
    for (const NodeIndex v : order) {
        ++position;
        out += graph.id(v);
        out += '\t';
        const int len = std::snprintf(buf, sizeof(buf), "%.17g", scores.score[v]);
        out.append(buf, static_cast<std::size_t>(len));
        out += '\t';
        out += std::to_string(position);
        out += '\n';
    }
    return out;
}

} // namespace trendnet
