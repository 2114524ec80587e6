// Brute-force reference implementations used by the unit and acceptance
// suites. These deliberately avoid the library's optimized code paths:
// dense matrices for the random-surfer fixed point, all-pairs loops for
// the ranking metrics, linear scans for window counts.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "trendnet/temporal_graph.hpp"

namespace oracle {

inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Dense random-surfer fixed point: builds the full N x N matrix
/// M = alpha * S + (1 - alpha) / N (dangling columns uniform) and applies
/// it repeatedly from the uniform vector.
inline std::vector<double> dense_pagerank(const trendnet::Snapshot& snap, double alpha,
                                          double tol = 1e-13, std::size_t max_iter = 100000) {
    const std::size_t n = snap.node_count();
    std::vector<std::size_t> local(snap.registry_size, 0);
    for (std::size_t i = 0; i < n; ++i) local[snap.nodes[i]] = i;

    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (std::size_t j = 0; j < n; ++j) {
        std::set<std::size_t> targets;
        for (const trendnet::NodeIndex g : snap.out[snap.nodes[j]]) targets.insert(local[g]);
        if (targets.empty()) {
            for (std::size_t i = 0; i < n; ++i) m[i][j] = 1.0 / static_cast<double>(n);
        } else {
            for (const std::size_t i : targets) m[i][j] = 1.0 / static_cast<double>(targets.size());
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m[i][j] = alpha * m[i][j] + (1.0 - alpha) / static_cast<double>(n);

    std::vector<double> x(n, 1.0 / static_cast<double>(n)), y(n);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        for (std::size_t i = 0; i < n; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) acc += m[i][j] * x[j];
            y[i] = acc;
        }
        double diff = 0.0;
        for (std::size_t i = 0; i < n; ++i) diff += std::abs(y[i] - x[i]);
        x.swap(y);
        if (diff < tol) break;
    }
    double sum = 0.0;
    for (const double v : x) sum += v;
    std::vector<double> full(snap.registry_size, 0.0);
    for (std::size_t i = 0; i < n; ++i) full[snap.nodes[i]] = x[i] / sum;
    return full;
}

inline double naive_precision(const std::vector<trendnet::NodeIndex>& predicted,
                              const std::vector<trendnet::NodeIndex>& truth, std::size_t n) {
    std::int64_t common = 0;
    for (const auto p : predicted)
        for (const auto t : truth)
            if (p == t) ++common;
    return static_cast<double>(common) / static_cast<double>(n);
}

inline std::optional<double> naive_novelty(const std::vector<trendnet::NodeIndex>& predicted,
                                           const std::vector<trendnet::NodeIndex>& truth,
                                           const std::vector<trendnet::NodeIndex>& past) {
    std::vector<trendnet::NodeIndex> novel;
    for (const auto t : truth)
        if (std::find(past.begin(), past.end(), t) == past.end()) novel.push_back(t);
    if (novel.empty()) return std::nullopt;
    std::int64_t hits = 0;
    for (const auto p : predicted)
        if (std::find(novel.begin(), novel.end(), p) != novel.end()) ++hits;
    return static_cast<double>(hits) / static_cast<double>(novel.size());
}

inline std::optional<double> naive_auc(const std::vector<double>& score,
                                       const std::vector<trendnet::NodeIndex>& true_top,
                                       const std::vector<trendnet::NodeIndex>& candidates) {
    std::vector<trendnet::NodeIndex> positives, negatives;
    for (const auto v : candidates) {
        if (std::find(true_top.begin(), true_top.end(), v) != true_top.end())
            positives.push_back(v);
        else
            negatives.push_back(v);
    }
    if (positives.empty() || negatives.empty()) return std::nullopt;
    double tally = 0.0;
    for (const auto p : positives)
        for (const auto q : negatives) {
            if (score[p] > score[q]) tally += 1.0;
            else if (score[p] == score[q]) tally += 0.5;
        }
    return tally / (static_cast<double>(positives.size()) * static_cast<double>(negatives.size()));
}

inline std::optional<double> naive_tau_gamma(const std::vector<double>& x,
                                             const std::vector<double>& y,
                                             const std::vector<trendnet::NodeIndex>& candidates) {
    std::int64_t concordant = 0, discordant = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i)
        for (std::size_t j = i + 1; j < candidates.size(); ++j) {
            const double dx = x[candidates[i]] - x[candidates[j]];
            const double dy = y[candidates[i]] - y[candidates[j]];
            if (dx == 0.0 || dy == 0.0) continue;
            if ((dx > 0.0) == (dy > 0.0)) ++concordant;
            else ++discordant;
        }
    if (concordant + discordant == 0) return std::nullopt;
    return static_cast<double>(concordant - discordant) /
           static_cast<double>(concordant + discordant);
}

inline std::optional<double> naive_tau_b(const std::vector<double>& x, const std::vector<double>& y,
                                         const std::vector<trendnet::NodeIndex>& candidates) {
    std::int64_t concordant = 0, discordant = 0, ties_x = 0, ties_y = 0, ties_both = 0;
    const std::size_t n = candidates.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double dx = x[candidates[i]] - x[candidates[j]];
            const double dy = y[candidates[i]] - y[candidates[j]];
            if (dx == 0.0 && dy == 0.0) { ++ties_both; continue; }
            if (dx == 0.0) { ++ties_x; continue; }
            if (dy == 0.0) { ++ties_y; continue; }
            if ((dx > 0.0) == (dy > 0.0)) ++concordant;
            else ++discordant;
        }
    const std::int64_t n0 = static_cast<std::int64_t>(n) * (static_cast<std::int64_t>(n) - 1) / 2;
    const double denom = std::sqrt(static_cast<double>(n0 - ties_x - ties_both) *
                                   static_cast<double>(n0 - ties_y - ties_both));
    if (denom == 0.0) return std::nullopt;
    return static_cast<double>(concordant - discordant) / denom;
}

inline trendnet::TemporalGraph make_graph(std::vector<trendnet::StringEdge> rows) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const trendnet::StringEdge& a, const trendnet::StringEdge& b) {
                         if (a.time != b.time) return a.time < b.time;
                         if (a.source != b.source) return a.source < b.source;
                         return a.target < b.target;
                     });
    return trendnet::TemporalGraph::build(trendnet::make_edge_list(rows));
}

/// Random directed multigraph over n nodes with some dangling tail.
inline std::vector<trendnet::TemporalEdge> random_edges(std::mt19937_64& rng, std::size_t n,
                                                        std::size_t edges) {
    std::vector<trendnet::TemporalEdge> out;
    const std::size_t linkers = std::max<std::size_t>(1, n - n / 4); // the tail stays dangling
    for (std::size_t e = 0; e < edges; ++e) {
        const auto s = static_cast<trendnet::NodeIndex>(uniform01(rng) * linkers);
        const auto t = static_cast<trendnet::NodeIndex>(uniform01(rng) * n);
        out.push_back({s, t, uniform01(rng) * 100.0});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.time < b.time; });
    return out;
}

} // namespace oracle
