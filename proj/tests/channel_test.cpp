#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include "ecq/channel.hpp"

#include "test_support.hpp"

using namespace ecq;

TEST_CASE("validate_channel accepts the uniform symmetric channel") {
    const auto ch = validate_channel({{0.25, 0.25}, {0.25, 0.25}});
    REQUIRE(ch.size() == 2);
    REQUIRE(ch.prior[0] == Catch::Approx(0.5).margin(1e-12));
    REQUIRE(ch.prior[1] == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("validate_channel accepts a single-output channel") {
    const auto ch = validate_channel({{0.5, 0.5}});
    REQUIRE(ch.size() == 1);
    REQUIRE(ch.prior[0] == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("validate_channel rejects malformed input") {
    CHECK_THROWS_MATCHES(validate_channel({{0.6, -0.1}, {0.25, 0.25}}), error,
                         Catch::Matchers::Predicate<error>(
                             [](const error& e) { return e.code() == errc::negative_entry; }));
    CHECK_THROWS_MATCHES(validate_channel({}), error,
                         Catch::Matchers::Predicate<error>(
                             [](const error& e) { return e.code() == errc::shape_mismatch; }));
    CHECK_THROWS_MATCHES(validate_channel({{0.5, 0.25, 0.25}}), error,
                         Catch::Matchers::Predicate<error>(
                             [](const error& e) { return e.code() == errc::shape_mismatch; }));
    CHECK_THROWS_MATCHES(validate_channel({{0.4, 0.4}}), error,
                         Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::mass_not_normalizable;
                         }));
}

TEST_CASE("validate_channel rescales near-normalized mass and checks the prior") {
    const auto ch = validate_channel({{0.25, 0.25}, {0.25, 0.25 + 5e-7}});
    double total = 0.0;
    for (const auto& row : ch.joint) total += row[0] + row[1];
    REQUIRE(total == Catch::Approx(1.0).margin(1e-15));

    CHECK_NOTHROW(validate_channel({{0.25, 0.25}, {0.25, 0.25}}, mass_pair{0.5, 0.5}));
    CHECK_THROWS_MATCHES(
        validate_channel({{0.25, 0.25}, {0.25, 0.25}}, mass_pair{0.6, 0.4}), error,
        Catch::Matchers::Predicate<error>(
            [](const error& e) { return e.code() == errc::prior_inconsistent; }));
}

TEST_CASE("sort_by_posterior orders outputs by p(x1|y)") {
    const auto ch = validate_channel({{0.05, 0.20}, {0.20, 0.05}, {0.25, 0.25}});
    const auto sc = sort_by_posterior(ch);
    REQUIRE(sc.size() == 3);
    REQUIRE(sc.perm == std::vector<std::size_t>{0, 2, 1});
    REQUIRE(sc.posterior[0] == Catch::Approx(0.2).margin(1e-12));
    REQUIRE(sc.posterior[1] == Catch::Approx(0.5).margin(1e-12));
    REQUIRE(sc.posterior[2] == Catch::Approx(0.8).margin(1e-12));
}

TEST_CASE("sort_by_posterior keeps ties stable") {
    const auto sc = sort_by_posterior(validate_channel({{0.25, 0.25}, {0.25, 0.25}}));
    REQUIRE(sc.perm == std::vector<std::size_t>{0, 1});
    REQUIRE(sc.posterior[0] == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("sort_by_posterior drops zero-mass outputs") {
    // bypass validate_channel to place an exactly-zero row
    BinaryInputChannel ch;
    ch.joint = {{0.3, 0.1}, {0.0, 0.0}, {0.2, 0.4}};
    ch.prior = {0.5, 0.5};
    const auto sc = sort_by_posterior(ch);
    REQUIRE(sc.size() == 2);
    REQUIRE(sc.dropped == std::vector<std::size_t>{1});

    BinaryInputChannel dead;
    dead.joint = {{0.0, 0.0}};
    CHECK_THROWS_MATCHES(sort_by_posterior(dead), error,
                         Catch::Matchers::Predicate<error>(
                             [](const error& e) { return e.code() == errc::all_outputs_zero; }));
}

TEST_CASE("range_mass answers full, empty and single ranges") {
    const auto sc = sort_by_posterior(validate_channel({{0.25, 0.25}, {0.25, 0.25}}));
    const auto full = range_mass(sc, 0, sc.size());
    REQUIRE(full[0] == Catch::Approx(sc.source.prior[0]).margin(1e-12));
    REQUIRE(full[1] == Catch::Approx(sc.source.prior[1]).margin(1e-12));

    const auto empty = range_mass(sc, 1, 1);
    REQUIRE(empty[0] == 0.0);
    REQUIRE(empty[1] == 0.0);

    const auto one = range_mass(sc, 0, 1);
    REQUIRE(one[0] == Catch::Approx(0.25).margin(1e-12));
    REQUIRE(one[1] == Catch::Approx(0.25).margin(1e-12));

    CHECK_THROWS_MATCHES(range_mass(sc, 1, 3), error,
                         Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::index_out_of_range;
                         }));
}

TEST_CASE("sorted channel invariants hold on random instances") {
    splitmix64 rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t m = 1 + static_cast<std::size_t>(rng.uniform01() * 14);
        const auto ch = ecq::test::random_channel(rng, m);
        const auto sc = sort_by_posterior(ch);

        // permutation preserves the multiset of rows
        REQUIRE(sc.size() + sc.dropped.size() == ch.size());
        std::map<std::pair<double, double>, int> seen;
        for (std::size_t t = 0; t < sc.size(); ++t) {
            const auto row = sc.row(t);
            ++seen[{row[0], row[1]}];
        }
        for (std::size_t j = 0; j < ch.size(); ++j)
            if (ch.output_mass(j) > 0.0) --seen[{ch.joint[j][0], ch.joint[j][1]}];
        for (const auto& [k, v] : seen) REQUIRE(v == 0);

        const auto full = range_mass(sc, 0, sc.size());
        REQUIRE(std::abs(full[0] - ch.prior[0]) <= 1e-12);
        REQUIRE(std::abs(full[1] - ch.prior[1]) <= 1e-12);

        for (std::size_t t = 0; t < sc.size(); ++t) {
            if (t + 1 < sc.size()) REQUIRE(sc.posterior[t] <= sc.posterior[t + 1]);
            const auto mass = range_mass(sc, t, t + 1);
            const double posterior = mass[0] / (mass[0] + mass[1]);
            REQUIRE(std::abs(posterior - sc.posterior[t]) <= 1e-12);
        }

        REQUIRE(sc.prefix[0][0] == 0.0);
        REQUIRE(sc.prefix[0][1] == 0.0);
    }
}
