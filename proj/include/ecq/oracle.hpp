#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "ecq/dp.hpp"
#include "ecq/rng.hpp"

namespace ecq {

// Verification machinery independent of the DP recursion: exhaustive oracles,
// the nearest-centroid optimality condition, and stochastic-quantizer
// sampling. Shipped with the library so the CLI can expose a verify command.

namespace oracle_limits {
constexpr double max_enumerations = 1e7;
}

// "Distance" from sorted output t to cluster l of q:
//   beta * KL(p(x|y_t) || p(x|z_l)) - log2 p(z_l)
// in bits. +inf when cluster l lacks mass on a symbol y_t supports, matching
// KL semantics. Values are comparable across clusters for a fixed t only.
inline double lemma1_distance(const SortedChannel& sc, const ThresholdQuantizer& q,
                              std::size_t t, std::size_t l, double beta) {
    require(t < sc.size(), errc::index_out_of_range, "output " + std::to_string(t));
    require(l < q.clusters(), errc::index_out_of_range, "cluster " + std::to_string(l));
    const mass_pair cm = range_mass(sc, q.cuts[l], q.cuts[l + 1]);
    const double w = cm[0] + cm[1];
    require(w > 0.0, errc::empty_cluster, "cluster " + std::to_string(l) + " has no mass");
    const mass_pair row = sc.row(t);
    const double py = row[0] + row[1];
    require(py > 0.0, errc::zero_mass_output, "output " + std::to_string(t));

    double d = -std::log2(w);
    for (int n = 0; n < 2; ++n) {
        const double pxy = row[n] / py;
        if (pxy <= 0.0) continue;
        const double pxz = cm[n] / w;
        if (pxz <= 0.0) return std::numeric_limits<double>::infinity();
        d += beta * pxy * std::log2(pxy / pxz);
    }
    return d;
}

struct OutputAssignment {
    std::size_t position = 0;  // sorted position t
    std::size_t assigned = 0;  // cluster containing t
    std::size_t best = 0;      // argmin_k distance(t, k)
    double margin = 0.0;       // min_{k != assigned} D(t,k) - D(t,assigned)
};

struct OptimalityReport {
    static constexpr double tolerance = 1e-9;
    bool satisfied = true;
    double worst_violation = 0.0;  // max(0, -min margin)
    std::vector<OutputAssignment> per_output;
};

// Necessary condition at an optimum: every output is at least as close (in
// lemma1_distance) to its own cluster as to any other nonempty cluster.
// Vacuous when only one cluster is nonempty.
inline OptimalityReport check_optimality_condition(const SortedChannel& sc,
                                                   const ThresholdQuantizer& q, double beta) {
    require_valid(q, sc);
    std::vector<std::size_t> nonempty;
    for (std::size_t k = 0; k + 1 < q.cuts.size(); ++k)
        if (q.cuts[k + 1] > q.cuts[k]) nonempty.push_back(k);
    require(!nonempty.empty(), errc::empty_cluster, "quantizer has no nonempty cluster");

    OptimalityReport rep;
    const double inf = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < sc.size(); ++t) {
        OutputAssignment a;
        a.position = t;
        a.assigned = q.cluster_of(t);
        const double own = lemma1_distance(sc, q, t, a.assigned, beta);
        double best_other = inf;
        a.best = a.assigned;
        double best_dist = own;
        for (std::size_t k : nonempty) {
            if (k == a.assigned) continue;
            const double d = lemma1_distance(sc, q, t, k, beta);
            if (d < best_other) best_other = d;
            if (d < best_dist) {
                best_dist = d;
                a.best = k;
            }
        }
        a.margin = best_other - own;  // +inf when there is no alternative
        if (-a.margin > rep.worst_violation) rep.worst_violation = -a.margin;
        rep.per_output.push_back(a);
    }
    rep.satisfied = rep.worst_violation <= OptimalityReport::tolerance;
    return rep;
}

struct BruteForceResult {
    ThresholdQuantizer quantizer;
    double objective = 0.0;
};

namespace detail {

inline double count_cut_vectors(std::size_t m, int k) {
    // C(m + k - 1, k - 1): nondecreasing interior cut vectors of length k-1
    double c = 1.0;
    for (int i = 1; i <= k - 1; ++i) c *= static_cast<double>(m + i) / i;
    return c;
}

}  // namespace detail

// Exact minimum over every nondecreasing cut vector; the ground truth the DP
// is tested against. Guarded by the enumeration budget.
inline BruteForceResult brute_force_contiguous(const SortedChannel& sc, int K, double beta) {
    require(K >= 1, errc::invalid_k, "cluster budget K=" + std::to_string(K));
    const std::size_t m = sc.size();
    require(detail::count_cut_vectors(m, K) <= oracle_limits::max_enumerations,
            errc::too_large, "contiguous enumeration exceeds budget");

    BruteForceResult best;
    best.objective = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> cuts(K + 1, 0);
    cuts[K] = m;

    // odometer over nondecreasing interior cuts
    for (;;) {
        double obj = 0.0;
        for (int k = 0; k < K; ++k)
            obj += single_cluster_cost(sc, cuts[k], cuts[k + 1], beta);
        if (obj < best.objective) {
            best.objective = obj;
            best.quantizer.cuts = cuts;
        }
        int pos = K - 1;
        while (pos >= 1 && cuts[pos] == m) --pos;
        if (pos < 1) break;
        const std::size_t v = cuts[pos] + 1;
        for (int i = pos; i <= K - 1; ++i) cuts[i] = v;
    }
    return best;
}

// Exact minimum over all K^{M'} deterministic assignments, contiguous or not.
// Agreement with the contiguous oracle is the desk-scale validation that
// sorted-posterior contiguity loses nothing.
inline double brute_force_unrestricted(const SortedChannel& sc, int K, double beta) {
    require(K >= 1, errc::invalid_k, "cluster budget K=" + std::to_string(K));
    const std::size_t m = sc.size();
    double total = 1.0;
    for (std::size_t j = 0; j < m; ++j) {
        total *= K;
        require(total <= oracle_limits::max_enumerations, errc::too_large,
                "unrestricted enumeration exceeds budget");
    }

    std::vector<int> assign(m, 0);
    std::vector<mass_pair> cluster(K, {0.0, 0.0});
    double best = std::numeric_limits<double>::infinity();
    for (;;) {
        for (auto& c : cluster) c = {0.0, 0.0};
        for (std::size_t j = 0; j < m; ++j) {
            const mass_pair row = sc.row(j);
            cluster[assign[j]][0] += row[0];
            cluster[assign[j]][1] += row[1];
        }
        double obj = 0.0;
        for (const auto& c : cluster) obj += mass_cluster_cost(c[0], c[1], beta);
        if (obj < best) best = obj;

        std::size_t pos = 0;
        while (pos < m && assign[pos] == K - 1) assign[pos++] = 0;
        if (pos == m) break;
        ++assign[pos];
    }
    return best;
}

// Objective of a (possibly soft) quantizer given as a row-stochastic M' x K
// matrix Q(z|y): forms p(x, z) = sum_j p(x, y_j) Q(z_k|y_j) and evaluates
// beta*H(X|Z) + H(Z) on it.
inline double stochastic_objective(const SortedChannel& sc,
                                   const std::vector<std::vector<double>>& q, double beta) {
    require(q.size() == sc.size(), errc::shape_mismatch, "matrix rows != M'");
    const std::size_t k = q.empty() ? 0 : q[0].size();
    require(k >= 1, errc::shape_mismatch, "matrix needs at least one column");
    std::vector<mass_pair> cluster(k, {0.0, 0.0});
    for (std::size_t j = 0; j < q.size(); ++j) {
        require(q[j].size() == k, errc::shape_mismatch, "ragged matrix");
        const mass_pair row = sc.row(j);
        for (std::size_t c = 0; c < k; ++c) {
            cluster[c][0] += row[0] * q[j][c];
            cluster[c][1] += row[1] * q[j][c];
        }
    }
    double obj = 0.0;
    for (const auto& c : cluster) obj += mass_cluster_cost(c[0], c[1], beta);
    return obj;
}

// Seeded sample of random stochastic quantizers (rows drawn from the flat
// simplex); the relaxed objectives these produce can never beat the
// deterministic optimum.
inline std::vector<double> sample_stochastic_objective(const SortedChannel& sc, int K,
                                                       double beta, std::uint64_t seed,
                                                       std::size_t count) {
    require(K >= 1, errc::invalid_k, "cluster budget K=" + std::to_string(K));
    splitmix64 rng(seed);
    std::vector<double> out;
    out.reserve(count);
    std::vector<std::vector<double>> q(sc.size());
    for (std::size_t s = 0; s < count; ++s) {
        for (auto& row : q) row = sample_simplex(rng, K);
        out.push_back(stochastic_objective(sc, q, beta));
    }
    return out;
}

}  // namespace ecq
