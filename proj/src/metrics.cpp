#include "trendnet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "trendnet/error.hpp"

namespace trendnet {

namespace {

std::int64_t pairs_of(std::int64_t g) { return g * (g - 1) / 2; }

/// Counts strict inversions (a[i] > a[j] for i < j) while merge-sorting.
std::int64_t merge_count(std::vector<double>& a, std::vector<double>& buf,
                         std::size_t lo, std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::int64_t count = merge_count(a, buf, lo, mid) + merge_count(a, buf, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (a[j] < a[i]) {  // strict: equal keys take the left side first
            count += static_cast<std::int64_t>(mid - i);
            buf[k++] = a[j++];
        } else {
            buf[k++] = a[i++];
        }
    }
    while (i < mid) buf[k++] = a[i++];
    while (j < hi) buf[k++] = a[j++];
    std::copy(buf.begin() + lo, buf.begin() + hi, a.begin() + lo);
    return count;
}

} // namespace

std::string MetricsReport::flags() const {
    std::string out;
    auto append = [&out](const std::string& token) {
        if (!out.empty()) out += ';';
        out += token;
    };
    if (degenerate) append("degenerate_scores");
    if (!novelty && !novelty_reason.empty()) append("novelty_null=" + novelty_reason);
    if (!auc && !auc_reason.empty()) append("auc_null=" + auc_reason);
    if (!tau && !tau_reason.empty()) append("tau_null=" + tau_reason);
    return out;
}

double precision(const RankedList& predicted_top, const RankedList& true_top, std::size_t n) {
    if (n == 0) throw Error(ErrorCode::config, "list size must be >= 1");
    const std::unordered_set<NodeIndex> truth(true_top.begin(), true_top.end());
    std::int64_t common = 0;
    for (const NodeIndex v : predicted_top) common += truth.count(v);
    return static_cast<double>(common) / static_cast<double>(n);
}

MetricResult novelty(const RankedList& predicted_top, const RankedList& true_top,
                     const RankedList& past_top) {
    const std::unordered_set<NodeIndex> past(past_top.begin(), past_top.end());
    std::unordered_set<NodeIndex> novel;
    for (const NodeIndex v : true_top)
        if (!past.count(v)) novel.insert(v);
    if (novel.empty()) return {std::nullopt, "no_novel_items"};
    std::int64_t hits = 0;
    for (const NodeIndex v : predicted_top) hits += novel.count(v);
    return {static_cast<double>(hits) / static_cast<double>(novel.size()), ""};
}

MetricResult auc(std::span<const double> predicted_score, const RankedList& true_top,
                 const std::vector<NodeIndex>& candidates) {
    if (true_top.empty()) return {std::nullopt, "true_top_empty"};
    std::unordered_set<NodeIndex> top(true_top.begin(), true_top.end());
    std::vector<std::pair<double, std::uint8_t>> pool;
    pool.reserve(candidates.size());
    std::int64_t positives = 0;
    for (const NodeIndex v : candidates) {
        const bool pos = top.count(v) != 0;
        positives += pos;
        pool.emplace_back(predicted_score[v], pos ? 1 : 0);
    }
    const std::int64_t negatives = static_cast<std::int64_t>(pool.size()) - positives;
    if (positives == 0) return {std::nullopt, "true_top_empty"};
    if (negatives == 0) return {std::nullopt, "true_top_covers_all_nodes"};

    // midrank form of the pairwise 1 / 0.5 / 0 tally
    std::sort(pool.begin(), pool.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    double positive_rank_sum = 0.0;
    std::size_t i = 0;
    while (i < pool.size()) {
        std::size_t j = i;
        std::int64_t pos_in_group = 0;
        while (j < pool.size() && pool[j].first == pool[i].first) {
            pos_in_group += pool[j].second;
            ++j;
        }
        const double midrank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        positive_rank_sum += midrank * static_cast<double>(pos_in_group);
        i = j;
    }
    const double u = positive_rank_sum -
                     static_cast<double>(positives) * (static_cast<double>(positives) + 1.0) / 2.0;
    return {u / (static_cast<double>(positives) * static_cast<double>(negatives)), ""};
}

MetricResult kendall_tau(std::span<const double> predicted_score,
                         std::span<const double> true_gain,
                         const std::vector<NodeIndex>& candidates, TauKind kind) {
    const std::size_t n = candidates.size();
    if (n < 2) return {std::nullopt, "fewer_than_two_nodes"};

    std::vector<std::pair<double, double>> xy;
    xy.reserve(n);
    for (const NodeIndex v : candidates) xy.emplace_back(predicted_score[v], true_gain[v]);
    std::sort(xy.begin(), xy.end());

    const std::int64_t n0 = pairs_of(static_cast<std::int64_t>(n));
    std::int64_t ties_x = 0, ties_both = 0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && xy[j].first == xy[i].first) ++j;
        ties_x += pairs_of(static_cast<std::int64_t>(j - i));
        for (std::size_t k = i; k < j;) {
            std::size_t m = k;
            while (m < j && xy[m].second == xy[k].second) ++m;
            ties_both += pairs_of(static_cast<std::int64_t>(m - k));
            k = m;
        }
        i = j;
    }

    std::vector<double> y(n), buf(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = xy[i].second;
    const std::int64_t discordant = merge_count(y, buf, 0, n);

    std::sort(y.begin(), y.end());
    std::int64_t ties_y = 0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && y[j] == y[i]) ++j;
        ties_y += pairs_of(static_cast<std::int64_t>(j - i));
        i = j;
    }

    const std::int64_t untied = n0 - ties_x - ties_y + ties_both; // C + D
    const std::int64_t concordant_minus_discordant = untied - 2 * discordant;

    if (kind == TauKind::gamma) {
        if (untied == 0) return {std::nullopt, "all_pairs_tied"};
        return {static_cast<double>(concordant_minus_discordant) / static_cast<double>(untied), ""};
    }
    const double denom = std::sqrt(static_cast<double>(n0 - ties_x) * static_cast<double>(n0 - ties_y));
    if (denom == 0.0) return {std::nullopt, "constant_vector"};
    return {static_cast<double>(concordant_minus_discordant) / denom, ""};
}

} // namespace trendnet
