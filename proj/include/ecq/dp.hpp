#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "ecq/cost.hpp"

namespace ecq {

// Dynamic-programming tables over (prefix length j, cluster budget k).
// cost holds D(j, k) = min objective of partitioning the first j sorted
// outputs into at most k clusters; decision holds the argmin split point
// H_k(j) used for backtracking.
//
// Base cases: D(0, k) = 0 for every k (remaining budget may go unused, which
// is what permits fewer than K nonempty clusters), and D(j, 0) = +inf for
// j > 0 so the recursion can never silently discard outputs.
struct DpTables {
    std::size_t m = 0;  // M'
    int k_max = 0;
    std::vector<double> cost;
    std::vector<std::size_t> decision;

    double cost_at(std::size_t j, int k) const { return cost[j * (k_max + 1) + k]; }
    std::size_t decision_at(std::size_t j, int k) const {
        return decision[j * (k_max + 1) + k];
    }
};

struct SolveResult {
    ThresholdQuantizer quantizer;
    CostBreakdown cost;
    DpTables tables;
};

// Globally optimal quantizer of the sorted outputs into at most K clusters
// under min beta*H(X|Z) + H(Z).
//
// Recursion: D(j, k) = min_{0 <= q <= j-1} D(q, k-1) + cost of cluster (q, j],
// evaluated in O(1) from the prefix sums. Ties take the smallest q so
// backtracking is reproducible. O(K M'^2) time, O(K M') space.
inline SolveResult solve(const SortedChannel& sc, int K, double beta) {
    require(K >= 1, errc::invalid_k, "cluster budget K=" + std::to_string(K));
    require(beta >= 0.0, errc::invalid_beta, "beta=" + std::to_string(beta));

    const std::size_t m = sc.size();
    const double inf = std::numeric_limits<double>::infinity();

    DpTables t;
    t.m = m;
    t.k_max = K;
    t.cost.assign((m + 1) * (K + 1), inf);
    t.decision.assign((m + 1) * (K + 1), 0);
    auto cost_ref = [&](std::size_t j, int k) -> double& { return t.cost[j * (K + 1) + k]; };
    auto dec_ref = [&](std::size_t j, int k) -> std::size_t& {
        return t.decision[j * (K + 1) + k];
    };
    for (int k = 0; k <= K; ++k) cost_ref(0, k) = 0.0;

    for (int k = 1; k <= K; ++k) {
        for (std::size_t j = 1; j <= m; ++j) {
            double best = inf;
            std::size_t best_q = 0;
            for (std::size_t q = 0; q < j; ++q) {
                const double prev = cost_ref(q, k - 1);
                if (prev == inf) continue;
                const double c = prev + mass_cluster_cost(sc.prefix[j][0] - sc.prefix[q][0],
                                                          sc.prefix[j][1] - sc.prefix[q][1],
                                                          beta);
                if (c < best) {
                    best = c;
                    best_q = q;
                }
            }
            cost_ref(j, k) = best;
            dec_ref(j, k) = best_q;
        }
    }

    SolveResult res;
    res.quantizer.cuts.assign(K + 1, 0);
    res.quantizer.cuts[K] = m;
    for (int k = K; k >= 1; --k)
        res.quantizer.cuts[k - 1] = t.decision_at(res.quantizer.cuts[k], k);
    res.cost = evaluate_quantizer(sc, res.quantizer, beta);
    res.tables = std::move(t);
    return res;
}

// D(M', k) for k = 1..k_max out of a single DP run; nonincreasing in k since
// the feasible sets nest.
inline std::vector<double> objective_curve_in_k(const SortedChannel& sc, int k_max,
                                                double beta) {
    const SolveResult res = solve(sc, k_max, beta);
    std::vector<double> curve;
    curve.reserve(k_max);
    for (int k = 1; k <= k_max; ++k) curve.push_back(res.tables.cost_at(sc.size(), k));
    return curve;
}

}  // namespace ecq
