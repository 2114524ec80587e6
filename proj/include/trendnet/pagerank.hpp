#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "trendnet/temporal_graph.hpp"

namespace trendnet {

/// alpha is the probability of following links; with probability 1 - alpha
/// the walker teleports to a uniform node. Note that several PageRank
/// write-ups attach the damping name to the opposite role; here alpha
/// always multiplies the link-following term.
struct PageRankConfig {
    double alpha = 0.1;
    double tolerance = 1e-10; // L1 stopping threshold
    std::size_t max_iterations = 1000;
    unsigned threads = 1;     // results are bit-identical for any worker count
};

struct PageRankVector {
    std::vector<double> score; // registry-sized; nodes outside the snapshot hold 0
    std::size_t iterations{};
    double residual{};
};

/// One column of the dangling-corrected transition matrix for source j:
/// 1/l_j on each distinct out-target (l_j = distinct out-degree), or the
/// uniform 1/N column when j has no out-links. Entries are (node, weight)
/// with node ascending; weights always sum to 1.
std::vector<std::pair<NodeIndex, double>> transition_column(const Snapshot& snapshot, NodeIndex j);

/// Matrix-free power iteration over the snapshot's node set.
///
/// Multi-edges collapse to a single transition entry; dangling mass is
/// accumulated per iteration and spread uniformly instead of materializing
/// the correction matrix. Stops when the L1 change drops below tolerance;
/// the result is normalized to sum 1 over snapshot nodes. Throws
/// ConvergenceError (carrying the last residual) if the cap is hit.
PageRankVector pagerank(const Snapshot& snapshot, const PageRankConfig& config = {});

/// "id<TAB>score" rows, score descending, ascending node index on ties.
std::string format_pagerank_dump(const TemporalGraph& graph, const Snapshot& snapshot,
                                 const PageRankVector& pr);

} // namespace trendnet
