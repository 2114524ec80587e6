#include "trendnet/synthetic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "trendnet/error.hpp"

namespace trendnet {

namespace {

// Prefix-sum tree with append; supports O(log n) weighted sampling.
class WeightTree {
public:
    void push_back(double w) {
        raw_.push_back(w);
        tree_.push_back(0.0);
        const std::size_t i = raw_.size(); // 1-based
        double sum = w;
        // fold in the completed left subtrees under the new slot
        for (std::size_t k = 1; k < (i & -i); k <<= 1) sum += tree_[i - k - 1];
        tree_[i - 1] = sum;
    }

    void add(std::size_t i, double delta) {
        raw_[i] += delta;
        for (std::size_t j = i + 1; j <= tree_.size(); j += j & -j) tree_[j - 1] += delta;
    }

    double total() const {
        double sum = 0.0;
        for (std::size_t j = tree_.size(); j > 0; j -= j & -j) sum += tree_[j - 1];
        return sum;
    }

    /// Largest index whose prefix sum stays <= x; clamped to the last slot.
    std::size_t sample(double x) const {
        const std::size_t n = tree_.size();
        std::size_t idx = 0;
        std::size_t bit = std::bit_floor(n);
        for (; bit != 0; bit >>= 1) {
            const std::size_t next = idx + bit;
            if (next <= n && tree_[next - 1] <= x) {
                idx = next;
                x -= tree_[next - 1];
            }
        }
        return idx < n ? idx : n - 1;
    }

    void scale_all(double factor) {
        for (auto& w : raw_) w *= factor;
        rebuild();
    }

    std::size_t size() const { return raw_.size(); }

private:
    void rebuild() {
        std::fill(tree_.begin(), tree_.end(), 0.0);
        for (std::size_t i = 1; i <= raw_.size(); ++i) {
            double sum = raw_[i - 1];
            for (std::size_t k = 1; k < (i & -i); k <<= 1) sum += tree_[i - k - 1];
            tree_[i - 1] = sum;
        }
    }

    std::vector<double> raw_;
    std::vector<double> tree_;
};

void validate(const SyntheticConfig& cfg) {
    if (!(cfg.recency_weight >= 0.0 && cfg.recency_weight <= 1.0))
        throw Error(ErrorCode::config, "recency_weight must lie in [0, 1]");
    if (!(cfg.aging_rate >= 0.0)) throw Error(ErrorCode::config, "aging_rate must be >= 0");
    if (!(cfg.horizon > 0.0)) throw Error(ErrorCode::config, "horizon must be positive");
    if (!(cfg.event_rate > 0.0)) throw Error(ErrorCode::config, "event_rate must be positive");
    if (!(cfg.node_arrival_rate >= 0.0))
        throw Error(ErrorCode::config, "node_arrival_rate must be >= 0");
    if (cfg.seed_nodes < 2) throw Error(ErrorCode::config, "seed_nodes must be >= 2");
}

} // namespace

EdgeList generate_synthetic(const SyntheticConfig& cfg) {
    validate(cfg);

    std::mt19937_64 rng(cfg.seed);
    // explicit bits-to-double mapping; std distributions are not portable
    auto uniform01 = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    auto exp_wait = [&](double rate) {
        if (rate <= 0.0) return std::numeric_limits<double>::infinity();
        return -std::log1p(-uniform01()) / rate;
    };

    const double rho = cfg.recency_weight;
    const double theta = cfg.aging_rate;

    WeightTree degree;  // holds in_degree + 1 per node
    WeightTree recency; // holds exp(theta * (t_link - epoch)) sums per node
    double epoch = 0.0; // reference time for the recency tree
    for (std::size_t i = 0; i < cfg.seed_nodes; ++i) {
        degree.push_back(1.0);
        recency.push_back(0.0);
    }

    auto sample_target = [&](double now) {
        const double decay = std::exp(-theta * (now - epoch));
        const std::size_t n = degree.size();
        const double w_degree = degree.total();
        const double recency_sum = decay * recency.total();
        const double w_recency = recency_sum + static_cast<double>(n);
        double x = uniform01() * (rho * w_degree + (1.0 - rho) * w_recency);
        if (x < rho * w_degree) return degree.sample(x / rho);
        x = (x - rho * w_degree) / (1.0 - rho);
        if (x < recency_sum) return recency.sample(x / decay);
        const auto idx = static_cast<std::size_t>(x - recency_sum);
        return idx < n ? idx : n - 1;
    };

    std::vector<TemporalEdge> edges;
    edges.reserve(static_cast<std::size_t>(cfg.event_rate * cfg.horizon * 1.1) + 16);

    double next_node = exp_wait(cfg.node_arrival_rate);
    double next_edge = exp_wait(cfg.event_rate);
    while (std::min(next_node, next_edge) < cfg.horizon) {
        if (next_node < next_edge) {
            degree.push_back(1.0);
            recency.push_back(0.0);
            next_node += exp_wait(cfg.node_arrival_rate);
            continue;
        }
        const double now = next_edge;
        if (theta * (now - epoch) > 300.0) { // keep exp(theta * age) in range
            recency.scale_all(std::exp(-theta * (now - epoch)));
            epoch = now;
        }
        const std::size_t n = degree.size();
        const auto source = std::min<std::size_t>(static_cast<std::size_t>(uniform01() * n), n - 1);
        std::size_t target = source;
        while (target == source) target = sample_target(now);
        edges.push_back({static_cast<NodeIndex>(source), static_cast<NodeIndex>(target), now});
        degree.add(target, 1.0);
        recency.add(target, std::exp(theta * (now - epoch)));
        next_edge += exp_wait(cfg.event_rate);
    }

    // re-key by first appearance so a file round trip reproduces the list
    std::vector<StringEdge> rows;
    rows.reserve(edges.size());
    for (const auto& e : edges)
        rows.push_back({std::to_string(e.source), std::to_string(e.target), e.time});
    return make_edge_list(rows);
}

} // namespace trendnet
