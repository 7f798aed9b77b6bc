#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ecq/cost.hpp"
#include "ecq/quantizer.hpp"

#include "test_support.hpp"

using namespace ecq;

TEST_CASE("single_cluster_cost on a symmetric single output") {
    // joint row (0.25, 0.25): W = 0.5, H(X|z) = 1 bit, -W log2 W = 0.5
    const auto sc = sort_by_posterior(validate_channel({{0.25, 0.25}, {0.25, 0.25}}));
    REQUIRE(single_cluster_cost(sc, 0, 1, 2.0) == Catch::Approx(1.5).margin(1e-12));
    REQUIRE(single_cluster_cost(sc, 1, 1, 2.0) == 0.0);  // empty cluster convention
    // full range: W = 1 so the entropy-constraint term vanishes
    REQUIRE(single_cluster_cost(sc, 0, 2, 1.0) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("prior_entropy") {
    REQUIRE(prior_entropy(validate_channel({{0.5, 0.5}})) == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(prior_entropy(validate_channel({{1.0, 0.0}})) == 0.0);
    // independently evaluated -0.25 log2 0.25 - 0.75 log2 0.75
    REQUIRE(prior_entropy(validate_channel({{0.25, 0.75}})) ==
            Catch::Approx(0.8112781244591328).margin(1e-12));
}

TEST_CASE("evaluate_quantizer on merged and identity quantizers") {
    const auto sc = sort_by_posterior(
        validate_channel({{0.20, 0.05}, {0.15, 0.10}, {0.10, 0.15}, {0.05, 0.20}}));

    const auto merged = evaluate_quantizer(sc, merge_all(sc.size()), 3.0);
    REQUIRE(merged.objective == Catch::Approx(3.0).margin(1e-12));
    REQUIRE(merged.cond_entropy == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(merged.out_entropy == Catch::Approx(0.0).margin(1e-12));
    REQUIRE(merged.mutual_info == Catch::Approx(0.0).margin(1e-12));

    // identity: H(X|Z) = H(X|Y), H(Z) = H(Y), both computed directly here
    double hxy = 0.0, hy = 0.0;
    for (const auto& row : sc.source.joint) {
        const double w = row[0] + row[1];
        for (double p : row)
            if (p > 0.0) hxy -= p * std::log2(p / w);
        hy -= w * std::log2(w);
    }
    const auto ident = evaluate_quantizer(sc, identity_quantizer(sc.size()), 1.0);
    REQUIRE(ident.cond_entropy == Catch::Approx(hxy).margin(1e-12));
    REQUIRE(ident.out_entropy == Catch::Approx(hy).margin(1e-12));
}

TEST_CASE("evaluate_quantizer matches the single-threshold enumeration oracle") {
    // brute force over the 3 single-threshold placements plus the merged option
    const auto sc = sort_by_posterior(ecq::test::four_output_channel());
    const double beta = 2.0;
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_q = 0;
    for (std::size_t q = 0; q <= 3; ++q) {
        const double obj =
            single_cluster_cost(sc, 0, q, beta) + single_cluster_cost(sc, q, 4, beta);
        if (obj < best) {
            best = obj;
            best_q = q;
        }
    }
    REQUIRE(best == Catch::Approx(2.0).margin(1e-12));  // merged wins at beta=2

    ThresholdQuantizer q{{0, best_q, 4}};
    const auto cb = evaluate_quantizer(sc, q, beta);
    REQUIRE(cb.objective == Catch::Approx(best).margin(1e-12));
}

TEST_CASE("evaluate_quantizer rejects malformed cut vectors") {
    const auto sc = sort_by_posterior(validate_channel({{0.25, 0.25}, {0.25, 0.25}}));
    for (const auto& cuts : {std::vector<std::size_t>{0, 1},      // wrong end
                             std::vector<std::size_t>{1, 2},      // wrong start
                             std::vector<std::size_t>{0, 2, 1, 2},  // not monotone
                             std::vector<std::size_t>{0}}) {
        ThresholdQuantizer q{cuts};
        CHECK_THROWS_MATCHES(evaluate_quantizer(sc, q, 1.0), error,
                             Catch::Matchers::Predicate<error>([](const error& e) {
                                 return e.code() == errc::invalid_quantizer;
                             }));
    }
}

TEST_CASE("cluster costs are additive and the breakdown is consistent") {
    splitmix64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t m = 2 + static_cast<std::size_t>(rng.uniform01() * 10);
        const auto sc = sort_by_posterior(ecq::test::random_channel(rng, m));
        const double beta = rng.uniform01() * 8.0;

        // random nondecreasing cuts with budget 3
        ThresholdQuantizer q;
        q.cuts = {0,
                  static_cast<std::size_t>(rng.uniform01() * (m + 1)),
                  static_cast<std::size_t>(rng.uniform01() * (m + 1)), m};
        std::sort(q.cuts.begin(), q.cuts.end());

        const auto cb = evaluate_quantizer(sc, q, beta);
        double by_cluster = 0.0;
        for (std::size_t k = 0; k + 1 < q.cuts.size(); ++k)
            by_cluster += single_cluster_cost(sc, q.cuts[k], q.cuts[k + 1], beta);
        REQUIRE(std::abs(cb.objective - by_cluster) <= 1e-10);

        REQUIRE(std::abs(cb.objective - (beta * cb.cond_entropy + cb.out_entropy)) <= 1e-12);
        REQUIRE(std::abs(cb.mutual_info - (prior_entropy(sc.source) - cb.cond_entropy)) <=
                1e-12);
        REQUIRE(cb.cond_entropy >= -1e-12);
        REQUIRE(cb.cond_entropy <= 1.0 + 1e-12);
        REQUIRE(cb.out_entropy >= -1e-12);
        REQUIRE(cb.out_entropy <= std::log2(3.0) + 1e-12);
    }
}

TEST_CASE("merging two adjacent clusters trades entropy for impurity") {
    splitmix64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t m = 2 + static_cast<std::size_t>(rng.uniform01() * 10);
        const auto sc = sort_by_posterior(ecq::test::random_channel(rng, m));
        const std::size_t cut = 1 + static_cast<std::size_t>(rng.uniform01() * (m - 1));

        ThresholdQuantizer split{{0, cut, m}};
        ThresholdQuantizer merged{{0, m, m}};
        const auto s = evaluate_quantizer(sc, split, 1.0);
        const auto g = evaluate_quantizer(sc, merged, 1.0);
        REQUIRE(g.out_entropy <= s.out_entropy + 1e-10);
        REQUIRE(g.cond_entropy >= s.cond_entropy - 1e-10);
    }
}

TEST_CASE("at beta=0 the merged quantizer is optimal") {
    splitmix64 rng(13);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t m = 2 + static_cast<std::size_t>(rng.uniform01() * 8);
        const auto sc = sort_by_posterior(ecq::test::random_channel(rng, m));
        const auto merged = evaluate_quantizer(sc, merge_all(m), 0.0);
        REQUIRE(merged.objective == Catch::Approx(0.0).margin(1e-12));
        for (std::size_t cut = 0; cut <= m; ++cut) {
            ThresholdQuantizer q{{0, cut, m}};
            REQUIRE(evaluate_quantizer(sc, q, 0.0).objective >= merged.objective - 1e-12);
        }
    }
}
