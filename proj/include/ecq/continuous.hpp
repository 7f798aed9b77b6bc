#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ecq/channel.hpp"
#include "ecq/cost.hpp"
#include "ecq/errors.hpp"

namespace ecq {

using density_fn = std::function<double(double)>;

inline density_fn gaussian_density(double mu, double sigma) {
    require(sigma > 0.0, errc::degenerate_support, "sigma must be positive");
    const double inv = 1.0 / (sigma * std::sqrt(2.0 * 3.14159265358979323846));
    return [mu, sigma, inv](double y) {
        const double z = (y - mu) / sigma;
        return inv * std::exp(-0.5 * z * z);
    };
}

inline density_fn uniform_density(double a, double b) {
    require(a < b, errc::degenerate_support, "uniform needs a < b");
    const double h = 1.0 / (b - a);
    return [a, b, h](double y) { return (y >= a && y <= b) ? h : 0.0; };
}

inline density_fn mixture_density(std::vector<double> weights,
                                  std::vector<density_fn> components) {
    require(!weights.empty() && weights.size() == components.size(), errc::shape_mismatch,
            "mixture weights and components must match");
    double total = 0.0;
    for (double w : weights) {
        require(w >= 0.0, errc::negative_entry, "mixture weight " + std::to_string(w));
        total += w;
    }
    require(total > 0.0, errc::mass_not_normalizable, "mixture weights sum to zero");
    for (auto& w : weights) w /= total;
    return [weights = std::move(weights), components = std::move(components)](double y) {
        double v = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) v += weights[i] * components[i](y);
        return v;
    };
}

// Binary-input continuous-output channel: p(y|x_1) = density1, p(y|x_2) =
// density2, truncated to [lo, hi] and later discretized into `bins` equal
// cells. Densities must integrate to ~1 over the support (midpoint rule,
// tolerance 1e-3, truncation expected).
struct ContinuousChannelSpec {
    mass_pair prior{0.5, 0.5};
    density_fn density1;
    density_fn density2;
    double lo = -1.0;
    double hi = 1.0;
    std::size_t bins = 2;
};

// Discretization output: the channel plus the grid needed to map sorted-order
// cuts back to y space.
struct DiscretizedChannel {
    BinaryInputChannel channel;
    std::vector<double> edges;      // bins + 1 cell boundaries
    std::vector<double> midpoints;  // bins cell centers
    double width = 0.0;
};

// Midpoint-rule binning. Each column is scaled so its mass equals the prior
// exactly, which both renormalizes the total joint mass to 1 and absorbs the
// truncated tails symmetrically per input.
inline DiscretizedChannel discretize(const ContinuousChannelSpec& spec) {
    require(spec.lo < spec.hi, errc::degenerate_support,
            "support [" + std::to_string(spec.lo) + ", " + std::to_string(spec.hi) + "]");
    require(spec.bins >= 2, errc::degenerate_support, "need at least 2 bins");
    require(spec.prior[0] >= 0.0 && spec.prior[1] >= 0.0 &&
                std::abs(spec.prior[0] + spec.prior[1] - 1.0) <= detail::input_tolerance,
            errc::prior_inconsistent, "prior must be a distribution over 2 inputs");

    DiscretizedChannel out;
    const std::size_t m = spec.bins;
    out.width = (spec.hi - spec.lo) / static_cast<double>(m);
    out.edges.resize(m + 1);
    out.midpoints.resize(m);
    for (std::size_t j = 0; j <= m; ++j)
        out.edges[j] = spec.lo + static_cast<double>(j) * out.width;
    for (std::size_t j = 0; j < m; ++j)
        out.midpoints[j] = spec.lo + (static_cast<double>(j) + 0.5) * out.width;

    std::vector<mass_pair> cells(m);
    mass_pair integral = {0.0, 0.0};
    const density_fn* density[2] = {&spec.density1, &spec.density2};
    for (std::size_t j = 0; j < m; ++j) {
        for (int n = 0; n < 2; ++n) {
            const double phi = (*density[n])(out.midpoints[j]);
            require(phi >= 0.0, errc::density_negative,
                    "density " + std::to_string(n + 1) + " at y=" +
                        std::to_string(out.midpoints[j]));
            cells[j][n] = phi * out.width;
            integral[n] += cells[j][n];
        }
    }
    for (int n = 0; n < 2; ++n)
        require(std::abs(integral[n] - 1.0) <= 1e-3, errc::density_not_normalized,
                "density " + std::to_string(n + 1) + " integrates to " +
                    std::to_string(integral[n]) + " over the support");

    out.channel.joint.resize(m);
    out.channel.prior = spec.prior;
    for (std::size_t j = 0; j < m; ++j)
        for (int n = 0; n < 2; ++n)
            out.channel.joint[j][n] = spec.prior[n] * cells[j][n] / integral[n];
    return out;
}

// r(y) = p(x_1|y) = p_1 phi_1(y) / (p_1 phi_1(y) + p_2 phi_2(y))
inline double posterior_ratio(const ContinuousChannelSpec& spec, double y) {
    const double a = spec.prior[0] * spec.density1(y);
    const double b = spec.prior[1] * spec.density2(y);
    require(a + b > 0.0, errc::zero_density_point, "both densities vanish at y=" +
                                                       std::to_string(y));
    return a / (a + b);
}

enum class lr_direction { increasing, decreasing, none };

// Sampled monotonicity check. A true result is evidence from `grid` sample
// points, not a proof; strictness uses a relative tolerance of 1e-12 so that
// exponentially small ratio values in distribution tails still register as
// strict steps.
struct MonotonicityReport {
    bool monotone = false;
    lr_direction direction = lr_direction::none;
    std::size_t skipped = 0;  // sample points with phi_1 = 0
};

inline MonotonicityReport is_monotone_lr(const ContinuousChannelSpec& spec,
                                         std::size_t grid) {
    require(grid >= 3, errc::config_error, "monotonicity grid needs >= 3 points");
    MonotonicityReport rep;
    std::vector<double> ratios;
    ratios.reserve(grid);
    const double step = (spec.hi - spec.lo) / static_cast<double>(grid - 1);
    for (std::size_t i = 0; i < grid; ++i) {
        const double y = spec.lo + static_cast<double>(i) * step;
        const double p1 = spec.density1(y);
        if (p1 <= 0.0) {
            ++rep.skipped;
            continue;
        }
        ratios.push_back(spec.density2(y) / p1);
    }
    if (ratios.size() < 2) return rep;

    constexpr double tol = 1e-12;
    bool up = true, down = true;
    for (std::size_t i = 0; i + 1 < ratios.size(); ++i) {
        const double a = ratios[i], b = ratios[i + 1];
        const double gap = tol * std::max(std::abs(a), std::abs(b));
        if (!(b - a > gap)) up = false;
        if (!(a - b > gap)) down = false;
    }
    if (up) {
        rep.monotone = true;
        rep.direction = lr_direction::increasing;
    } else if (down) {
        rep.monotone = true;
        rep.direction = lr_direction::decreasing;
    }
    return rep;
}

struct ThresholdSearchResult {
    double a_star = 0.0;                  // best posterior-space threshold
    std::optional<double> y_star;         // single y boundary when the level set is one-sided
    std::vector<std::size_t> low_bins;    // bins with r(midpoint) <= a_star and positive mass
    CostBreakdown cost;
};

// Exhaustive scalar-threshold search for K = 2: tries a = i/steps for
// i = 1..steps-1, splits the bins into {r <= a} and {r > a}, and evaluates
// the discretized objective. Ties keep the smallest a. When the winning level
// set is a prefix or suffix of the bin order the split is a single y
// threshold and y_star reports the separating cell edge.
inline ThresholdSearchResult scalar_threshold_search(const ContinuousChannelSpec& spec,
                                                     double beta, std::size_t steps) {
    require(steps >= 2, errc::config_error, "threshold search needs steps >= 2");
    require(beta >= 0.0, errc::invalid_beta, "beta=" + std::to_string(beta));
    const DiscretizedChannel dc = discretize(spec);
    const std::size_t m = dc.channel.size();

    std::vector<double> ratio(m);
    std::vector<bool> has_mass(m);
    for (std::size_t j = 0; j < m; ++j) {
        const double w = dc.channel.output_mass(j);
        has_mass[j] = w > 0.0;
        ratio[j] = has_mass[j] ? posterior_ratio(spec, dc.midpoints[j]) : 0.0;
    }

    const double hx = prior_entropy(dc.channel);
    ThresholdSearchResult best;
    best.cost.objective = std::numeric_limits<double>::infinity();
    std::vector<bool> low(m);
    for (std::size_t i = 1; i < steps; ++i) {
        const double a = static_cast<double>(i) / static_cast<double>(steps);
        mass_pair lo_mass = {0.0, 0.0}, hi_mass = {0.0, 0.0};
        for (std::size_t j = 0; j < m; ++j) {
            low[j] = has_mass[j] && ratio[j] <= a;
            auto& side = low[j] ? lo_mass : hi_mass;
            side[0] += dc.channel.joint[j][0];
            side[1] += dc.channel.joint[j][1];
        }
        CostBreakdown cb;
        cb.beta = beta;
        for (const mass_pair& mp : {lo_mass, hi_mass}) {
            const double w = mp[0] + mp[1];
            if (w <= 0.0) continue;
            for (double p : mp)
                if (p > 0.0) cb.cond_entropy -= p * std::log2(p / w);
            cb.out_entropy -= xlog2(w);
        }
        cb.objective = beta * cb.cond_entropy + cb.out_entropy;
        cb.mutual_info = hx - cb.cond_entropy;
        if (cb.objective < best.cost.objective) {
            best.cost = cb;
            best.a_star = a;
            best.low_bins.clear();
            for (std::size_t j = 0; j < m; ++j)
                if (low[j]) best.low_bins.push_back(j);
        }
    }

    // one-sided level set -> single y threshold at the separating edge
    if (best.low_bins.empty()) {
        best.y_star = dc.edges.front();
    } else {
        const std::size_t first = best.low_bins.front(), last = best.low_bins.back();
        if (last - first + 1 == best.low_bins.size()) {
            if (first == 0)
                best.y_star = dc.edges[last + 1];
            else if (last == m - 1)
                best.y_star = dc.edges[first];
        }
    }
    return best;
}

}  // namespace ecq
