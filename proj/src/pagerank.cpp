#include "trendnet/pagerank.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <thread>

#include "trendnet/error.hpp"

namespace trendnet {

namespace {

void validate(const PageRankConfig& cfg) {
    if (!(cfg.alpha >= 0.0 && cfg.alpha <= 1.0))
        throw Error(ErrorCode::config, "alpha must lie in [0, 1]");
    if (!(cfg.tolerance > 0.0)) throw Error(ErrorCode::config, "tolerance must be positive");
    if (cfg.max_iterations < 1) throw Error(ErrorCode::config, "max_iterations must be >= 1");
}

/// Transposed transition structure over snapshot nodes, multi-edges
/// collapsed. in_src/in_weight list, per target, the sources pointing at it
/// (ascending) with their 1/l_j; iteration then reads each target's sum in
/// a fixed order no matter how targets are split across workers.
struct PullCsr {
    std::size_t n{};
    std::vector<std::size_t> offset;   // n + 1
    std::vector<std::uint32_t> in_src; // local source ids, ascending per target
    std::vector<double> in_weight;     // 1 / l_j of the source
    std::vector<std::uint32_t> linked; // sources with at least one out-link

    static PullCsr build(const Snapshot& snap) {
        PullCsr csr;
        csr.n = snap.node_count();
        std::vector<std::uint32_t> local(snap.registry_size, 0);
        for (std::size_t i = 0; i < csr.n; ++i) local[snap.nodes[i]] = static_cast<std::uint32_t>(i);

        std::vector<std::uint32_t> flat;
        flat.reserve(snap.edge_count);
        std::vector<std::size_t> first(csr.n + 1, 0);
        std::vector<double> inv_out(csr.n, 0.0);
        std::vector<std::uint32_t> buf;
        for (std::size_t j = 0; j < csr.n; ++j) {
            const auto& row = snap.out[snap.nodes[j]];
            first[j] = flat.size();
            if (row.empty()) continue;
            csr.linked.push_back(static_cast<std::uint32_t>(j));
            buf.clear();
            for (const NodeIndex g : row) buf.push_back(local[g]);
            std::sort(buf.begin(), buf.end());
            buf.erase(std::unique(buf.begin(), buf.end()), buf.end());
            inv_out[j] = 1.0 / static_cast<double>(buf.size());
            flat.insert(flat.end(), buf.begin(), buf.end());
        }
        first[csr.n] = flat.size();

        csr.offset.assign(csr.n + 1, 0);
        for (const auto t : flat) ++csr.offset[t + 1];
        for (std::size_t i = 0; i < csr.n; ++i) csr.offset[i + 1] += csr.offset[i];
        csr.in_src.resize(flat.size());
        csr.in_weight.resize(flat.size());
        std::vector<std::size_t> cursor(csr.offset.begin(), csr.offset.end() - 1);
        for (std::size_t j = 0; j < csr.n; ++j) {
            for (std::size_t p = first[j]; p < first[j + 1]; ++p) {
                const auto slot = cursor[flat[p]]++;
                csr.in_src[slot] = static_cast<std::uint32_t>(j);
                csr.in_weight[slot] = inv_out[j];
            }
        }
        return csr;
    }
};

void pull_range(const PullCsr& csr, const std::vector<double>& x, std::vector<double>& y,
                double alpha, double base, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
        double acc = 0.0;
        for (std::size_t p = csr.offset[i]; p < csr.offset[i + 1]; ++p)
            acc += x[csr.in_src[p]] * csr.in_weight[p];
        y[i] = alpha * acc + base;
    }
}

} // namespace

std::vector<std::pair<NodeIndex, double>> transition_column(const Snapshot& snap, NodeIndex j) {
    if (!snap.has(j)) throw Error(ErrorCode::config, "node is not in the snapshot");
    std::vector<std::pair<NodeIndex, double>> column;
    const auto& row = snap.out[j];
    if (row.empty()) {
        const double w = 1.0 / static_cast<double>(snap.node_count());
        column.reserve(snap.node_count());
        for (const NodeIndex v : snap.nodes) column.emplace_back(v, w);
        return column;
    }
    std::vector<NodeIndex> targets(row.begin(), row.end());
    std::sort(targets.begin(), targets.end());
    targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
    const double w = 1.0 / static_cast<double>(targets.size());
    column.reserve(targets.size());
    for (const NodeIndex v : targets) column.emplace_back(v, w);
    return column;
}

PageRankVector pagerank(const Snapshot& snap, const PageRankConfig& cfg) {
    validate(cfg);
    const std::size_t n = snap.node_count();
    if (n == 0) throw Error(ErrorCode::empty_dataset, "snapshot has no nodes");

    const PullCsr csr = PullCsr::build(snap);
    const double alpha = cfg.alpha;
    std::vector<double> x(n, 1.0 / static_cast<double>(n));
    std::vector<double> y(n);

    const unsigned workers =
        std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(n)));

    std::size_t iterations = 0;
    double residual = 0.0;
    bool converged = false;
    while (iterations < cfg.max_iterations) {
        ++iterations;
        // dangling mass as the complement of the linked mass; exact when no
        // node links out, and it re-centers the sum at 1 every iteration
        double linked_mass = 0.0;
        for (const auto j : csr.linked) linked_mass += x[j];
        const double d = std::max(0.0, 1.0 - linked_mass);
        const double base = (alpha * d + (1.0 - alpha)) / static_cast<double>(n);

        if (workers == 1) {
            pull_range(csr, x, y, alpha, base, 0, n);
        } else {
            std::vector<std::thread> pool;
            pool.reserve(workers);
            const std::size_t chunk = (n + workers - 1) / workers;
            for (unsigned w = 0; w < workers; ++w) {
                const std::size_t lo = std::min<std::size_t>(n, w * chunk);
                const std::size_t hi = std::min<std::size_t>(n, lo + chunk);
                if (lo >= hi) break;
                pool.emplace_back(pull_range, std::cref(csr), std::cref(x), std::ref(y),
                                  alpha, base, lo, hi);
            }
            for (auto& th : pool) th.join();
        }

        residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) residual += std::abs(y[i] - x[i]);
        x.swap(y);
        if (residual < cfg.tolerance) {
            converged = true;
            break;
        }
    }
    if (!converged) {
        char msg[128];
        std::snprintf(msg, sizeof(msg),
                      "power iteration did not converge in %zu iterations (residual %.3e)",
                      iterations, residual);
        throw ConvergenceError(msg, residual);
    }

    double sum = 0.0;
    for (const double v : x) sum += v;
    // rescale only when the deviation exceeds the fold's own error bound;
    // below it, dividing by ~1 just injects rounding noise
    const double slack = static_cast<double>(n) * std::numeric_limits<double>::epsilon();
    if (std::abs(sum - 1.0) > slack)
        for (auto& v : x) v /= sum;

    PageRankVector result;
    result.score.assign(snap.registry_size, 0.0);
    for (std::size_t i = 0; i < n; ++i) result.score[snap.nodes[i]] = x[i];
    result.iterations = iterations;
    result.residual = residual;
    return result;
}

std::string format_pagerank_dump(const TemporalGraph& graph, const Snapshot& snap,
                                 const PageRankVector& pr) {
    std::vector<NodeIndex> order(snap.nodes);
    std::stable_sort(order.begin(), order.end(), [&](NodeIndex a, NodeIndex b) {
        if (pr.score[a] != pr.score[b]) return pr.score[a] > pr.score[b];
        return a < b;
    });
    std::string out;
    char buf[64];
    for (const NodeIndex v : order) {
        out += graph.id(v);
        out += '\t';
        const int len = std::snprintf(buf, sizeof(buf), "%.17g", pr.score[v]);
        out.append(buf, static_cast<std::size_t>(len));
        out += '\n';
    }
    return out;
}

} // namespace trendnet
