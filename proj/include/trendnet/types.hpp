#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace trendnet {

using NodeIndex = std::uint32_t;

/// One timestamped directed link. Times are fractional days from the
/// dataset start.
struct TemporalEdge {
    NodeIndex source{};
    NodeIndex target{};
    double time{};

    friend bool operator==(const TemporalEdge&, const TemporalEdge&) = default;
};

/// Edge record keyed by original string ids, before index assignment.
struct StringEdge {
    std::string source;
    std::string target;
    double time{};
};

/// Time-sorted edges plus the dense node registry. ids[i] is the original
/// id of node index i; indices follow order of first appearance in the
/// edge stream, so earlier nodes always get smaller indices.
struct EdgeList {
    std::vector<TemporalEdge> edges;
    std::vector<std::string> ids;
};

/// Assigns dense indices by first appearance (source before target within
/// one row). rows must already be time-sorted.
EdgeList make_edge_list(const std::vector<StringEdge>& rows);

} // namespace trendnet
