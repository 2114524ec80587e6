#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "trendnet/types.hpp"

namespace trendnet {

/// Evaluation window around a reference time t. The past window covers
/// [t - past, t) and the future window [t, t + future), both half-open, so
/// the two never share a link event.
struct WindowConfig {
    double t{};
    double past{};
    double future{};
};

/// Network state strictly before a reference time. Out-adjacency keeps one
/// entry per link event; in_degree counts events. `nodes` lists the registry
/// indices that exist at this time, i.e. have an incident link earlier than
/// `time` (or were declared present by make_snapshot).
struct Snapshot {
    double time{};
    std::size_t registry_size{};
    std::vector<NodeIndex> nodes;             // present nodes, ascending
    std::vector<std::uint8_t> present;        // registry-sized mask
    std::vector<std::vector<NodeIndex>> out;  // registry-sized, multiplicity kept
    std::vector<std::int64_t> in_degree;      // registry-sized, k_n(t)
    std::size_t edge_count{};

    std::size_t node_count() const { return nodes.size(); }
    bool has(NodeIndex v) const { return v < present.size() && present[v] != 0; }
};

/// Snapshot over an explicit node set: all node_count nodes are present and
/// edges with time < t are kept. Lets callers build states (isolated or
/// all-dangling nodes) that never arise from an edge stream.
Snapshot make_snapshot(std::size_t node_count, std::span<const TemporalEdge> edges, double t);

/// Immutable time-sorted edge store with a dense node registry and
/// per-node sorted in-event times for window queries. Safe to share across
/// threads once built.
class TemporalGraph {
public:
    /// Registers in-edge indices and birth times. Edges are re-sorted by
    /// time (stably) if the input is out of order. Throws on an empty list
    /// or an edge endpoint outside the registry.
    static TemporalGraph build(EdgeList list);

    std::size_t node_count() const { return ids_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<TemporalEdge>& edges() const { return edges_; }
    const std::vector<std::string>& ids() const { return ids_; }
    const std::string& id(NodeIndex v) const { return ids_.at(v); }
    std::optional<NodeIndex> index_of(std::string_view id) const;

    double start_time() const { return edges_.front().time; }
    double end_time() const { return edges_.back().time; }

    /// Time of the node's first incident link (either direction).
    double birth_time(NodeIndex v) const { return birth_.at(v); }

    const std::vector<double>& in_times(NodeIndex v) const;

    /// All links with time strictly before t. Nodes born at or after t are
    /// absent. t before the first edge yields a valid empty snapshot.
    Snapshot snapshot_at(double t) const;

    /// In-link event times t_e with from <= t_e < to, ascending. Unknown
    /// node gives an empty list.
    std::vector<double> window_in_events(NodeIndex v, double from, double to) const;
    std::int64_t window_in_count(NodeIndex v, double from, double to) const;

private:
    TemporalGraph() = default;

    std::vector<TemporalEdge> edges_;
    std::vector<std::string> ids_;
    std::unordered_map<std::string, NodeIndex> index_;
    std::vector<std::vector<double>> in_times_;
    std::vector<double> birth_;
};

} // namespace trendnet
