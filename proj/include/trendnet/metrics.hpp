#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trendnet/predictors.hpp"

namespace trendnet {

/// Tie convention for the rank correlation. `gamma` drops tied pairs from
/// both numerator and denominator, (C - D) / (C + D); `tau_b` keeps the
/// tie-corrected denominator sqrt((n0 - n1)(n0 - n2)). True future gain is
/// usually tie-heavy at zero, so the choice matters.
enum class TauKind { gamma, tau_b };

/// Metric value plus the reason it is undefined (empty when defined).
struct MetricResult {
    std::optional<double> value;
    std::string reason;
};

struct MetricsReport {
    std::optional<double> precision;
    std::optional<double> novelty;
    std::optional<double> auc;
    std::optional<double> tau;
    std::string novelty_reason;
    std::string auc_reason;
    std::string tau_reason;
    bool degenerate = false;

    /// ";"-joined flag summary for CSV output, empty when clean.
    std::string flags() const;
};

/// |predicted ∩ truth| / n.
double precision(const RankedList& predicted_top, const RankedList& true_top, std::size_t n);

/// Hits over true novel entries: with R* = true_top \ past_top,
/// |predicted_top ∩ R*| / |R*|. Undefined when R* is empty.
MetricResult novelty(const RankedList& predicted_top, const RankedList& true_top,
                     const RankedList& past_top);

/// Probability that a true-top node outscores a node outside the true top
/// under the predictor, ties scoring 0.5. Undefined when either side of
/// the pair set is empty.
MetricResult auc(std::span<const double> predicted_score, const RankedList& true_top,
                 const std::vector<NodeIndex>& candidates);

/// Rank correlation between predicted scores and true future gain over the
/// candidate set. Undefined when every pair is tied (gamma) or one vector
/// is constant (tau_b).
MetricResult kendall_tau(std::span<const double> predicted_score,
                         std::span<const double> true_gain,
                         const std::vector<NodeIndex>& candidates,
                         TauKind kind = TauKind::gamma);

} // namespace trendnet
