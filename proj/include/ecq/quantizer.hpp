#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ecq/channel.hpp"
#include "ecq/errors.hpp"

namespace ecq {

// Contiguous quantizer over the sorted outputs: cluster k covers sorted
// positions (cuts[k-1], cuts[k]] with cuts[0] = 0 and cuts[K] = M'. Repeated
// cuts encode empty clusters, so K is a budget rather than an exact count.
struct ThresholdQuantizer {
    std::vector<std::size_t> cuts;

    std::size_t clusters() const noexcept { return cuts.empty() ? 0 : cuts.size() - 1; }

    std::size_t cluster_of(std::size_t t) const {
        for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
            if (t >= cuts[k] && t < cuts[k + 1]) return k;
        fail(errc::index_out_of_range, "position " + std::to_string(t) + " not covered");
    }
};

inline ThresholdQuantizer merge_all(std::size_t m, std::size_t k = 1) {
    ThresholdQuantizer q;
    q.cuts.assign(k + 1, m);
    q.cuts[0] = 0;
    for (std::size_t i = 1; i < k; ++i) q.cuts[i] = m;
    return q;
}

inline ThresholdQuantizer identity_quantizer(std::size_t m) {
    ThresholdQuantizer q;
    q.cuts.resize(m + 1);
    for (std::size_t i = 0; i <= m; ++i) q.cuts[i] = i;
    return q;
}

inline bool is_valid(const ThresholdQuantizer& q, std::size_t m) noexcept {
    if (q.cuts.size() < 2 || q.cuts.front() != 0 || q.cuts.back() != m) return false;
    for (std::size_t k = 0; k + 1 < q.cuts.size(); ++k)
        if (q.cuts[k] > q.cuts[k + 1]) return false;
    return true;
}

inline void require_valid(const ThresholdQuantizer& q, const SortedChannel& sc) {
    require(is_valid(q, sc.size()), errc::invalid_quantizer,
            "cuts must run 0..M'=" + std::to_string(sc.size()) + " nondecreasing");
}

// Posterior-space value of an interior cut: the midpoint between the adjacent
// sorted posteriors, with 0 and 1 at the degenerate ends. This is the view of
// the quantizer as thresholds a_k in (0,1) on p(x_1|y).
inline double posterior_cut_value(const SortedChannel& sc, std::size_t cut) {
    if (cut == 0) return 0.0;
    if (cut >= sc.size()) return 1.0;
    return 0.5 * (sc.posterior[cut - 1] + sc.posterior[cut]);
}

inline std::vector<double> posterior_cut_values(const SortedChannel& sc,
                                                const ThresholdQuantizer& q) {
    std::vector<double> vals;
    for (std::size_t k = 1; k + 1 < q.cuts.size(); ++k)
        vals.push_back(posterior_cut_value(sc, q.cuts[k]));
    return vals;
}

}  // namespace ecq
