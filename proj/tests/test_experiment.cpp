#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "trendnet/error.hpp"
#include "trendnet/experiment.hpp"
#include "trendnet/synthetic.hpp"
#include "trendnet/temporal_graph.hpp"

#include "oracles.hpp"

using namespace trendnet;

namespace {

TemporalGraph sample_graph(std::uint64_t seed = 7, double horizon = 120.0) {
    SyntheticConfig cfg;
    cfg.node_arrival_rate = 0.4;
    cfg.event_rate = 12.0;
    cfg.horizon = horizon;
    cfg.recency_weight = 0.3;
    cfg.aging_rate = 0.1;
    cfg.seed = seed;
    return TemporalGraph::build(generate_synthetic(cfg));
}

} // namespace

TEST_CASE("sampled times respect the feasible interval") {
    const auto g = sample_graph();
    const auto times = sample_times(g, 30.0, 30.0, 10, 42);
    CHECK(times.size() == 10);
    for (const double t : times) {
        CHECK(t >= g.start_time() + 30.0);
        CHECK(t <= g.end_time() - 30.0);
    }
    CHECK(std::is_sorted(times.begin(), times.end()));
    CHECK(times == sample_times(g, 30.0, 30.0, 10, 42));
    CHECK(times != sample_times(g, 30.0, 30.0, 10, 43));
}

TEST_CASE("oversized windows fail with the maximum feasible size") {
    const auto g = sample_graph();
    try {
        sample_times(g, 80.0, 80.0, 5, 1);
        FAIL("expected infeasible-window");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::infeasible_window);
        CHECK(std::string(e.what()).find("maximum symmetric window") != std::string::npos);
    }
}

TEST_CASE("a silent window makes m2 equal to the pure structural predictor") {
    // all activity before day 60, so [t - 5, t) at t = 100 is empty
    std::vector<StringEdge> rows;
    std::mt19937_64 rng(19);
    for (const auto& e : oracle::random_edges(rng, 15, 70))
        rows.push_back({std::to_string(e.source), std::to_string(e.target), e.time * 0.6});
    rows.push_back({"0", "1", 110.0}); // keeps t + future inside the span
    const auto g = oracle::make_graph(rows);

    PredictorSpec m2;
    m2.kind = PredictorKind::m2;
    PredictorSpec pure;
    pure.kind = PredictorKind::pagerank_only;
    const auto a = run_once(g, 100.0, 5.0, 5.0, m2, 10);
    const auto b = run_once(g, 100.0, 5.0, 5.0, pure, 10);
    CHECK(a.precision == b.precision);
    CHECK(a.novelty == b.novelty);
    CHECK(a.auc == b.auc);
    CHECK(a.tau == b.tau);
}

TEST_CASE("pbp at full recency equals the recent-degree baseline") {
    const auto g = sample_graph(11);
    PredictorSpec pbp;
    pbp.kind = PredictorKind::pbp;
    pbp.lambda = 1.0;
    PredictorSpec recent;
    recent.kind = PredictorKind::recent_degree;
    const double t = g.start_time() + 50.0;
    const auto a = run_once(g, t, 20.0, 20.0, pbp, 25);
    const auto b = run_once(g, t, 20.0, 20.0, recent, 25);
    CHECK(a.precision == b.precision);
    CHECK(a.novelty == b.novelty);
    CHECK(a.auc == b.auc);
    CHECK(a.tau == b.tau);
}

TEST_CASE("future edits never reach the predictors") {
    const auto base_graph = sample_graph(13);
    const double t = base_graph.start_time() + 60.0;
    const double window = 20.0;

    // perturb only [t, t + window): drop half the events, add new ones
    std::vector<StringEdge> rows, perturbed;
    for (const auto& e : base_graph.edges()) {
        StringEdge row{base_graph.id(e.source), base_graph.id(e.target), e.time};
        rows.push_back(row);
        if (e.time >= t && e.time < t + window && (e.source % 2 == 0)) continue;
        perturbed.push_back(row);
    }
    perturbed.push_back({"brand-new-node", "0", t + 1.0});
    perturbed.push_back({"1", "brand-new-node", t + 2.0});
    const auto g1 = oracle::make_graph(rows);
    const auto g2 = oracle::make_graph(perturbed);

    for (const auto kind : {PredictorKind::m1, PredictorKind::m2, PredictorKind::pbp}) {
        PredictorSpec spec;
        spec.kind = kind;
        const auto snap1 = g1.snapshot_at(t);
        const auto snap2 = g2.snapshot_at(t);
        std::optional<PageRankVector> pr1, pr2;
        if (spec.uses_pagerank()) {
            pr1 = pagerank(snap1, spec.pagerank);
            pr2 = pagerank(snap2, spec.pagerank);
        }
        const auto act1 = activity_summary(g1, {t, window, window}, spec.gamma);
        const auto act2 = activity_summary(g2, {t, window, window}, spec.gamma);
        const auto s1 = compute_scores(spec, snap1, act1, pr1 ? &*pr1 : nullptr);
        const auto s2 = compute_scores(spec, snap2, act2, pr2 ? &*pr2 : nullptr);
        CHECK(format_ranked_dump(g1, snap1, s1, snap1.node_count()) ==
              format_ranked_dump(g2, snap2, s2, snap2.node_count()));
    }
}

TEST_CASE("sweep emits the expected row structure and is repeatable") {
    const auto g = sample_graph(17);
    ExperimentConfig cfg;
    cfg.num_samples = 4;
    cfg.top_n = 10;
    cfg.windows = {20.0};
    cfg.predictors = {PredictorKind::m1, PredictorKind::pbp};
    cfg.gammas = {0.1};
    cfg.alphas = {0.1};
    cfg.lambdas = {0.5, 1.0};

    const auto result = sweep(g, cfg);
    // cells: m1 (1 gamma x 1 alpha) + pbp (2 lambdas) = 3; each 4 raw + 2 agg rows
    CHECK(result.rows.size() == 3 * 6);
    std::size_t raw = 0, mean = 0, stdev = 0;
    for (const auto& row : result.rows) {
        if (row.agg == 0) ++raw;
        if (row.agg == 1) ++mean;
        if (row.agg == 2) ++stdev;
    }
    CHECK(raw == 12);
    CHECK(mean == 3);
    CHECK(stdev == 3);

    CHECK(format_sweep_csv(result) == format_sweep_csv(sweep(g, cfg)));

    ExperimentConfig threaded = cfg;
    threaded.threads = 4;
    CHECK(format_sweep_csv(sweep(g, threaded)) == format_sweep_csv(result));
}

TEST_CASE("aggregate rows hold the arithmetic mean of their runs") {
    const auto g = sample_graph(23);
    ExperimentConfig cfg;
    cfg.num_samples = 5;
    cfg.top_n = 15;
    cfg.windows = {25.0};
    cfg.predictors = {PredictorKind::m2};

    const auto result = sweep(g, cfg);
    double sum = 0.0;
    std::size_t count = 0;
    std::optional<double> mean;
    for (const auto& row : result.rows) {
        if (row.agg == 0 && row.precision) {
            sum += *row.precision;
            ++count;
        }
        if (row.agg == 1) mean = row.precision;
    }
    REQUIRE(count == 5);
    REQUIRE(mean.has_value());
    CHECK(*mean == doctest::Approx(sum / 5.0).epsilon(1e-12));
    double lo = 1e9, hi = -1e9;
    for (const auto& row : result.rows)
        if (row.agg == 0 && row.precision) {
            lo = std::min(lo, *row.precision);
            hi = std::max(hi, *row.precision);
        }
    CHECK(*mean >= lo);
    CHECK(*mean <= hi);
}

TEST_CASE("run_once validates the reference time") {
    const auto g = sample_graph(31);
    PredictorSpec spec;
    spec.kind = PredictorKind::recent_degree;
    CHECK_THROWS_AS(run_once(g, g.start_time(), 10.0, 10.0, spec, 5), Error);
    CHECK_THROWS_AS(run_once(g, g.end_time(), 10.0, 10.0, spec, 5), Error);
}
