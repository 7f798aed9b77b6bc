#pragma once

#include <cmath>
#include <cstddef>

#include "ecq/channel.hpp"
#include "ecq/quantizer.hpp"

namespace ecq {

// p * log2(p) with the 0 log 0 = 0 convention, handled explicitly rather than
// through NaN propagation.
inline double xlog2(double p) noexcept { return p > 0.0 ? p * std::log2(p) : 0.0; }

inline double prior_entropy(const BinaryInputChannel& ch) noexcept {
    return -xlog2(ch.prior[0]) - xlog2(ch.prior[1]);
}

// Lagrangian cost of one cluster given its joint masses (P_1, P_2):
//   beta * sum_n -P_n log2(P_n / W)  +  (-W log2 W),   W = P_1 + P_2.
// The first term is the cluster's weighted conditional entropy contribution,
// the second its output entropy contribution. Empty clusters cost 0.
inline double mass_cluster_cost(double p1, double p2, double beta) noexcept {
    const double w = p1 + p2;
    if (w <= 0.0) return 0.0;
    double cond = 0.0;
    if (p1 > 0.0) cond -= p1 * std::log2(p1 / w);
    if (p2 > 0.0) cond -= p2 * std::log2(p2 / w);
    return beta * cond - xlog2(w);
}

inline double single_cluster_cost(const SortedChannel& sc, std::size_t i, std::size_t j,
                                  double beta) {
    const mass_pair m = range_mass(sc, i, j);
    return mass_cluster_cost(m[0], m[1], beta);
}

// Objective value with its components, all in bits.
struct CostBreakdown {
    double objective = 0.0;     // beta * cond_entropy + out_entropy
    double cond_entropy = 0.0;  // H(X|Z)
    double out_entropy = 0.0;   // H(Z)
    double mutual_info = 0.0;   // I(X;Z) = H(X) - H(X|Z)
    double beta = 0.0;
};

inline CostBreakdown evaluate_quantizer(const SortedChannel& sc, const ThresholdQuantizer& q,
                                        double beta) {
    require_valid(q, sc);
    CostBreakdown out;
    out.beta = beta;
    for (std::size_t k = 0; k + 1 < q.cuts.size(); ++k) {
        const mass_pair m = range_mass(sc, q.cuts[k], q.cuts[k + 1]);
        const double w = m[0] + m[1];
        if (w <= 0.0) continue;
        for (double p : m)
            if (p > 0.0) out.cond_entropy -= p * std::log2(p / w);
        out.out_entropy -= xlog2(w);
    }
    out.objective = beta * out.cond_entropy + out.out_entropy;
    out.mutual_info = prior_entropy(sc.source) - out.cond_entropy;
    return out;
}

}  // namespace ecq
