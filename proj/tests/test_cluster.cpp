#include "doctest.h"

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "rbrcd/cluster.hpp"
#include "rbrcd/solver.hpp"

using namespace rbrcd;

namespace {

FactorMatrix indicators(const std::vector<std::int32_t>& labels, int k, int p) {
    FactorMatrix U(static_cast<NodeId>(labels.size()), k, p);
    const double one = 1.0;
    for (NodeId i = 0; i < U.rows(); ++i) U.set_row(i, {&labels[i], 1}, {&one, 1});
    return U;
}

} // namespace

TEST_CASE("rounding reads indicator rows off directly") {
    FactorMatrix U = indicators({2, 0, 2, 0, 2}, 3, 3);
    auto part = recover_rounding(U);
    CHECK(part.k0 == 2); // column 1 unused, compacted away
    CHECK(part.labels == std::vector<std::int32_t>{1, 0, 1, 0, 1});
}

TEST_CASE("rounding picks the largest entry") {
    FactorMatrix U(2, 2, 2);
    const std::vector<std::int32_t> cols{0, 1};
    U.set_row(0, cols, std::vector<double>{0.6, 0.8});
    U.set_row(1, cols, std::vector<double>{0.8, 0.6});
    auto part = recover_rounding(U);
    CHECK(part.labels[0] == 1);
    CHECK(part.labels[1] == 0);
}

TEST_CASE("rounding is scale-free per row") {
    Rng rng(6);
    FactorMatrix U = FactorMatrix::random_init(20, 4, 3, rng);
    auto base = recover_rounding(U);
    FactorMatrix scaled = U;
    for (NodeId i = 0; i < U.rows(); ++i) {
        auto cols = U.row_cols(i);
        std::vector<double> vals(U.row_vals(i).begin(), U.row_vals(i).end());
        const double s = 0.3 + rng.uniform01() * 5.0;
        for (double& v : vals) v *= s;
        scaled.set_row(i, cols, vals);
    }
    CHECK(recover_rounding(scaled).labels == base.labels);
}

TEST_CASE("rounding commutes with round_in_place") {
    Rng graph_rng(11);
    Graph g = oracle::random_graph(20, 0.3, graph_rng);
    Rng rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        FactorMatrix U = FactorMatrix::random_init(20, 5, 3, rng);
        auto before = recover_rounding(U);
        round_in_place(U, g);
        CHECK(recover_rounding(U).labels == before.labels);
    }
}

TEST_CASE("kmeans on k distinct indicator rows is perfect with zero cost") {
    std::vector<std::int32_t> raw(12);
    for (int i = 0; i < 12; ++i) raw[i] = i % 3;
    FactorMatrix U = indicators(raw, 3, 3);
    Rng rng(3);
    auto part = recover_kmeans(U, 3, {}, rng);
    CHECK(part.k0 == 3);
    CHECK(kmeans_cost(U, part, {}) == doctest::Approx(0.0));
    // planted partition recovered up to label names
    for (int i = 0; i < 12; ++i) {
        for (int j = 0; j < 12; ++j) {
            CHECK((part.labels[i] == part.labels[j]) == (raw[i] == raw[j]));
        }
    }
}

TEST_CASE("kmeans matches the exhaustive two-cluster oracle on 6 points") {
    // Two well-separated groups of rows.
    FactorMatrix U(6, 2, 2);
    const std::vector<std::int32_t> cols{0, 1};
    const std::vector<std::vector<double>> pts{{0.98, 0.199}, {0.97, 0.2431},
                                               {0.99, 0.141},  {0.21, 0.9777},
                                               {0.18, 0.9837}, {0.24, 0.9708}};
    for (NodeId i = 0; i < 6; ++i) U.set_row(i, cols, pts[i]);
    Rng rng(9);
    auto part = recover_kmeans(U, 2, {}, rng);
    CHECK(kmeans_cost(U, part, {}) == doctest::Approx(oracle::best_two_cluster_cost(pts)));
}

TEST_CASE("equal weights reproduce the unweighted labels for the same seed") {
    Rng rng_pts(21);
    FactorMatrix U = FactorMatrix::random_init(30, 3, 2, rng_pts);
    const std::vector<double> w(30, 2.5);
    Rng r1(77);
    Rng r2(77);
    auto unweighted = recover_kmeans(U, 3, {}, r1);
    auto weighted = recover_kmeans(U, 3, w, r2);
    CHECK(unweighted.labels == weighted.labels);
}

TEST_CASE("lloyd objective is non-increasing within a run") {
    Rng rng_pts(31);
    FactorMatrix U = FactorMatrix::random_init(40, 4, 2, rng_pts);
    for (bool use_weights : {false, true}) {
        std::vector<double> w;
        if (use_weights) {
            w.resize(40);
            Rng wr(5);
            for (double& x : w) x = 1.0 + wr.uniform01() * 4.0;
        }
        std::vector<double> trace;
        Rng rng(13);
        recover_kmeans(U, 4, w, rng, /*restarts=*/1, &trace);
        REQUIRE(trace.size() >= 2);
        for (std::size_t t = 1; t < trace.size(); ++t) {
            CHECK(trace[t] <= trace[t - 1] + 1e-9);
        }
    }
}

TEST_CASE("more clusters than distinct rows compacts degenerate clusters") {
    FactorMatrix U = indicators({0, 0, 1, 1}, 2, 2);
    Rng rng(17);
    auto part = recover_kmeans(U, 4, {}, rng, 1);
    CHECK(part.k0 <= 2);
    CHECK(part.labels[0] == part.labels[1]);
    CHECK(part.labels[2] == part.labels[3]);
}

TEST_CASE("all three recovery schemes return a planted indicator partition") {
    std::vector<std::int32_t> raw(15);
    for (int i = 0; i < 15; ++i) raw[i] = i / 5;
    FactorMatrix U = indicators(raw, 3, 3);
    std::vector<double> w(15);
    for (int i = 0; i < 15; ++i) w[i] = 1.0 + (i % 4);

    Rng rng(8);
    auto by_round = recover_rounding(U);
    auto by_kmeans = recover_kmeans(U, 3, {}, rng);
    auto by_wkmeans = recover_kmeans(U, 3, w, rng);
    for (const auto& part : {by_round, by_kmeans, by_wkmeans}) {
        REQUIRE(part.k0 == 3);
        for (int i = 0; i < 15; ++i) {
            for (int j = 0; j < 15; ++j) {
                CHECK((part.labels[i] == part.labels[j]) == (raw[i] == raw[j]));
            }
        }
    }
}

TEST_CASE("compact_labels invariants") {
    const std::vector<std::int32_t> raw{7, 3, 7, 9, 3};
    auto part = compact_labels(raw);
    CHECK(part.k0 == 3);
    CHECK(part.labels == std::vector<std::int32_t>{1, 0, 1, 2, 0});
}
