#pragma once

#include <cstdint>

#include "trendnet/types.hpp"

namespace trendnet {

/// Growing-network generator. Node arrivals and link events are Poisson
/// processes; each link picks a uniform source and a target drawn with
/// weight
///
///   recency_weight * (in_degree + 1)
///     + (1 - recency_weight) * (sum over past in-links of
///                               exp(-aging_rate * age) + 1)
///
/// so recency_weight = 1 is plain degree-preferential attachment and lower
/// values favour recently active nodes. aging_rate is the per-day decay of
/// the recency term.
struct SyntheticConfig {
    double node_arrival_rate = 1.0; // nodes per day
    double event_rate = 10.0;       // link events per day
    double horizon = 100.0;         // days; events occur in [0, horizon)
    double recency_weight = 0.5;    // in [0, 1]
    double aging_rate = 0.1;        // >= 0, per day
    std::uint64_t seed = 0;
    std::size_t seed_nodes = 2;     // nodes present at day 0
};

/// Deterministic for a given config: mt19937_64 with an explicit
/// bits-to-double mapping, so the same seed yields the same edge list on
/// every platform. Node ids are arrival numbers ("0", "1", ...).
EdgeList generate_synthetic(const SyntheticConfig& config);

} // namespace trendnet
