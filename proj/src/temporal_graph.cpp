#include "trendnet/temporal_graph.hpp"

#include <algorithm>
#include <limits>

#include "trendnet/error.hpp"

namespace trendnet {

Snapshot make_snapshot(std::size_t node_count, std::span<const TemporalEdge> edges, double t) {
    Snapshot snap;
    snap.time = t;
    snap.registry_size = node_count;
    snap.present.assign(node_count, 1);
    snap.nodes.resize(node_count);
    for (std::size_t v = 0; v < node_count; ++v) snap.nodes[v] = static_cast<NodeIndex>(v);
    snap.out.assign(node_count, {});
    snap.in_degree.assign(node_count, 0);
    for (const auto& e : edges) {
        if (!(e.time < t)) continue;
        if (e.source >= node_count || e.target >= node_count)
            throw Error(ErrorCode::config, "snapshot edge endpoint outside node set");
        snap.out[e.source].push_back(e.target);
        ++snap.in_degree[e.target];
        ++snap.edge_count;
    }
    return snap;
}

TemporalGraph TemporalGraph::build(EdgeList list) {
    if (list.edges.empty()) throw Error(ErrorCode::empty_dataset, "edge list is empty");

    TemporalGraph g;
    g.edges_ = std::move(list.edges);
    g.ids_ = std::move(list.ids);

    const std::size_t n = g.ids_.size();
    for (const auto& e : g.edges_)
        if (e.source >= n || e.target >= n)
            throw Error(ErrorCode::config, "edge endpoint is not a registered node");

    if (!std::is_sorted(g.edges_.begin(), g.edges_.end(),
                        [](const TemporalEdge& a, const TemporalEdge& b) { return a.time < b.time; }))
        std::stable_sort(g.edges_.begin(), g.edges_.end(),
                         [](const TemporalEdge& a, const TemporalEdge& b) { return a.time < b.time; });

    g.index_.reserve(n);
    for (std::size_t v = 0; v < n; ++v) g.index_.emplace(g.ids_[v], static_cast<NodeIndex>(v));

    g.in_times_.assign(n, {});
    g.birth_.assign(n, std::numeric_limits<double>::infinity());
    for (const auto& e : g.edges_) {
        g.in_times_[e.target].push_back(e.time);
        g.birth_[e.source] = std::min(g.birth_[e.source], e.time);
        g.birth_[e.target] = std::min(g.birth_[e.target], e.time);
    }
    return g;
}

std::optional<NodeIndex> TemporalGraph::index_of(std::string_view id) const {
    const auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

const std::vector<double>& TemporalGraph::in_times(NodeIndex v) const {
    static const std::vector<double> empty;
    if (v >= in_times_.size()) return empty;
    return in_times_[v];
}

Snapshot TemporalGraph::snapshot_at(double t) const {
    Snapshot snap;
    snap.time = t;
    snap.registry_size = ids_.size();
    snap.present.assign(ids_.size(), 0);
    snap.out.assign(ids_.size(), {});
    snap.in_degree.assign(ids_.size(), 0);

    for (std::size_t v = 0; v < ids_.size(); ++v) {
        if (birth_[v] < t) {
            snap.present[v] = 1;
            snap.nodes.push_back(static_cast<NodeIndex>(v));
        }
    }
    const auto end = std::lower_bound(edges_.begin(), edges_.end(), t,
                                      [](const TemporalEdge& e, double value) { return e.time < value; });
    for (auto it = edges_.begin(); it != end; ++it) {
        snap.out[it->source].push_back(it->target);
        ++snap.in_degree[it->target];
        ++snap.edge_count;
    }
    return snap;
}

std::vector<double> TemporalGraph::window_in_events(NodeIndex v, double from, double to) const {
    if (from > to) throw Error(ErrorCode::config, "window start exceeds window end");
    if (v >= in_times_.size()) return {};
    const auto& times = in_times_[v];
    const auto lo = std::lower_bound(times.begin(), times.end(), from);
    const auto hi = std::lower_bound(times.begin(), times.end(), to);
    return std::vector<double>(lo, hi);
}

std::int64_t TemporalGraph::window_in_count(NodeIndex v, double from, double to) const {
    if (from > to) throw Error(ErrorCode::config, "window start exceeds window end");
    if (v >= in_times_.size()) return 0;
    const auto& times = in_times_[v];
    const auto lo = std::lower_bound(times.begin(), times.end(), from);
    const auto hi = std::lower_bound(times.begin(), times.end(), to);
    return hi - lo;
}

} // namespace trendnet
