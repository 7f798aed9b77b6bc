#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "ecq/errors.hpp"

namespace ecq {

using mass_pair = std::array<double, 2>;

// Binary-input discrete channel stored as the joint distribution p(x_n, y_j).
// Row j is output y_j; column n is input x_n. Mass sums to 1, prior equals
// the column marginal.
struct BinaryInputChannel {
    mass_pair prior{};
    std::vector<mass_pair> joint;

    std::size_t size() const noexcept { return joint.size(); }  // M

    double output_mass(std::size_t j) const { return joint[j][0] + joint[j][1]; }
};

namespace detail {
constexpr double input_tolerance = 1e-6;
}

// Validates a raw M x 2 matrix and returns a normalized channel. A supplied
// prior must agree with the joint column sums; the stored prior is always the
// (post-normalization) column marginal so the two are consistent exactly.
inline BinaryInputChannel validate_channel(const std::vector<std::vector<double>>& raw,
                                           std::optional<mass_pair> prior = std::nullopt) {
    require(!raw.empty(), errc::shape_mismatch, "channel needs at least one output row");
    for (std::size_t j = 0; j < raw.size(); ++j) {
        require(raw[j].size() == 2, errc::shape_mismatch,
                "row " + std::to_string(j) + " has " + std::to_string(raw[j].size()) +
                    " columns, expected 2");
        for (double v : raw[j])
            require(v >= 0.0, errc::negative_entry,
                    "row " + std::to_string(j) + " contains " + std::to_string(v));
    }

    BinaryInputChannel ch;
    ch.joint.reserve(raw.size());
    double total = 0.0;
    for (const auto& row : raw) {
        ch.joint.push_back({row[0], row[1]});
        total += row[0] + row[1];
    }
    require(std::abs(total - 1.0) <= detail::input_tolerance, errc::mass_not_normalizable,
            "joint mass sums to " + std::to_string(total));
    for (auto& row : ch.joint) {
        row[0] /= total;
        row[1] /= total;
    }

    for (int n = 0; n < 2; ++n)
        ch.prior[n] = std::accumulate(ch.joint.begin(), ch.joint.end(), 0.0,
                                      [n](double acc, const mass_pair& r) { return acc + r[n]; });
    if (prior) {
        for (int n = 0; n < 2; ++n)
            require(std::abs((*prior)[n] - ch.prior[n]) <= detail::input_tolerance,
                    errc::prior_inconsistent,
                    "supplied prior[" + std::to_string(n) + "]=" + std::to_string((*prior)[n]) +
                        " vs joint marginal " + std::to_string(ch.prior[n]));
    }
    return ch;
}

// The channel re-indexed by ascending posterior p(x_1|y), with prefix sums
// for O(1) range mass queries. Zero-mass outputs are dropped and recorded;
// posterior ties keep the original output order.
struct SortedChannel {
    BinaryInputChannel source;
    std::vector<std::size_t> perm;       // sorted position t -> original output index
    std::vector<double> posterior;       // p(x_1|y) at sorted position t, nondecreasing
    std::vector<mass_pair> prefix;       // prefix[t][n] = sum of joint over sorted positions < t
    std::vector<std::size_t> dropped;    // original indices with p(y_j) = 0

    std::size_t size() const noexcept { return perm.size(); }  // M'

    mass_pair row(std::size_t t) const { return source.joint[perm[t]]; }
};

inline SortedChannel sort_by_posterior(const BinaryInputChannel& ch) {
    SortedChannel sc;
    sc.source = ch;
    for (std::size_t j = 0; j < ch.size(); ++j) {
        if (ch.output_mass(j) > 0.0)
            sc.perm.push_back(j);
        else
            sc.dropped.push_back(j);
    }
    require(!sc.perm.empty(), errc::all_outputs_zero, "every output has zero mass");

    auto post = [&ch](std::size_t j) { return ch.joint[j][0] / ch.output_mass(j); };
    std::stable_sort(sc.perm.begin(), sc.perm.end(),
                     [&](std::size_t a, std::size_t b) { return post(a) < post(b); });

    sc.posterior.reserve(sc.perm.size());
    sc.prefix.assign(sc.perm.size() + 1, {0.0, 0.0});
    for (std::size_t t = 0; t < sc.perm.size(); ++t) {
        sc.posterior.push_back(post(sc.perm[t]));
        sc.prefix[t + 1][0] = sc.prefix[t][0] + ch.joint[sc.perm[t]][0];
        sc.prefix[t + 1][1] = sc.prefix[t][1] + ch.joint[sc.perm[t]][1];
    }
    return sc;
}

// Joint mass of each input over the half-open sorted range (i, j] in the
// paper's 1-based phrasing, i.e. sorted positions i..j-1 here.
inline mass_pair range_mass(const SortedChannel& sc, std::size_t i, std::size_t j) {
    require(i <= j && j <= sc.size(), errc::index_out_of_range,
            "range (" + std::to_string(i) + ", " + std::to_string(j) + "] with M'=" +
                std::to_string(sc.size()));
    return {sc.prefix[j][0] - sc.prefix[i][0], sc.prefix[j][1] - sc.prefix[i][1]};
}

}  // namespace ecq
