#pragma once

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "ecq/channel_io.hpp"
#include "ecq/continuous.hpp"
#include "ecq/dp.hpp"
#include "ecq/oracle.hpp"

namespace ecq {

// A channel ready for solving, with the discretization grid kept around when
// the channel came from a continuous spec.
struct ProblemInput {
    SortedChannel sorted;
    std::optional<DiscretizedChannel> grid;
};

inline ProblemInput make_problem(const ChannelSource& src) {
    ProblemInput p;
    if (src.continuous) {
        p.grid = discretize(*src.continuous);
        p.sorted = sort_by_posterior(p.grid->channel);
    } else {
        require(src.discrete.has_value(), errc::config_error, "empty channel source");
        p.sorted = sort_by_posterior(*src.discrete);
    }
    return p;
}

// One interior cut of a quantizer: its sorted-index position, its
// posterior-space value, and the single separating y edge when the cut splits
// the original bins into two contiguous blocks.
struct CutView {
    std::size_t index = 0;
    double posterior_value = 0.0;
    std::optional<double> y_edge;
};

namespace run_detail {

inline bool is_original_interval(const SortedChannel& sc, std::size_t lo, std::size_t hi,
                                 std::size_t count) {
    // interval over retained original indices; dropped bins inside don't count
    const auto& d = sc.dropped;
    const auto inside = std::upper_bound(d.begin(), d.end(), hi) -
                        std::lower_bound(d.begin(), d.end(), lo);
    return hi - lo + 1 - static_cast<std::size_t>(inside) == count;
}

inline std::optional<double> single_y_edge(const SortedChannel& sc,
                                           const DiscretizedChannel& grid, std::size_t cut) {
    if (cut == 0 || cut >= sc.size()) return std::nullopt;
    std::size_t lmin = sc.perm[0], lmax = sc.perm[0];
    for (std::size_t t = 1; t < cut; ++t) {
        lmin = std::min(lmin, sc.perm[t]);
        lmax = std::max(lmax, sc.perm[t]);
    }
    std::size_t rmin = sc.perm[cut], rmax = sc.perm[cut];
    for (std::size_t t = cut + 1; t < sc.size(); ++t) {
        rmin = std::min(rmin, sc.perm[t]);
        rmax = std::max(rmax, sc.perm[t]);
    }
    if (!is_original_interval(sc, lmin, lmax, cut) ||
        !is_original_interval(sc, rmin, rmax, sc.size() - cut))
        return std::nullopt;
    if (lmax < rmin) return grid.edges[rmin];
    if (rmax < lmin) return grid.edges[lmin];
    return std::nullopt;
}

}  // namespace run_detail

inline std::vector<CutView> cut_views(const ProblemInput& input, const ThresholdQuantizer& q) {
    std::vector<CutView> views;
    for (std::size_t k = 1; k + 1 < q.cuts.size(); ++k) {
        CutView v;
        v.index = q.cuts[k];
        v.posterior_value = posterior_cut_value(input.sorted, q.cuts[k]);
        if (input.grid)
            v.y_edge = run_detail::single_y_edge(input.sorted, *input.grid, q.cuts[k]);
        views.push_back(v);
    }
    return views;
}

struct SolveReport {
    SolveResult result;
    OptimalityReport optimality;
    std::vector<CutView> interior_cuts;
};

inline SolveReport run_solve(const ProblemInput& input, int K, double beta) {
    SolveReport rep;
    rep.result = solve(input.sorted, K, beta);
    rep.optimality = check_optimality_condition(input.sorted, rep.result.quantizer, beta);
    rep.interior_cuts = cut_views(input, rep.result.quantizer);
    return rep;
}

// One sample of the rate-information trade-off curve.
struct TradeoffPoint {
    double beta = 0.0;
    double mutual_info = 0.0;
    double out_entropy = 0.0;
    double objective = 0.0;
    std::vector<CutView> cuts;
};

inline std::vector<TradeoffPoint> run_sweep(const ProblemInput& input, int K,
                                            const std::vector<double>& betas) {
    require(!betas.empty(), errc::config_error, "sweep needs at least one beta");
    std::vector<double> ordered = betas;
    std::sort(ordered.begin(), ordered.end());
    std::vector<TradeoffPoint> points;
    points.reserve(ordered.size());
    for (double beta : ordered) {
        const SolveResult res = solve(input.sorted, K, beta);
        TradeoffPoint p;
        p.beta = beta;
        p.mutual_info = res.cost.mutual_info;
        p.out_entropy = res.cost.out_entropy;
        p.objective = res.cost.objective;
        p.cuts = cut_views(input, res.quantizer);
        points.push_back(std::move(p));
    }
    return points;
}

enum class check_status { pass, fail, skipped };

struct VerifyCheck {
    std::string name;
    check_status status = check_status::skipped;
    std::string detail;
};

struct VerifyReport {
    int K = 0;
    double beta = 0.0;
    std::uint64_t seed = 0;
    std::vector<VerifyCheck> checks;

    bool all_passed() const {
        return std::none_of(checks.begin(), checks.end(), [](const VerifyCheck& c) {
            return c.status == check_status::fail;
        });
    }
};

// Runs every applicable verification against the DP solution. Oracles that
// would blow the enumeration budget are reported as skipped, never as hard
// failures.
inline VerifyReport run_verify(const ProblemInput& input, int K, double beta,
                               std::uint64_t seed, std::size_t stochastic_count = 1000) {
    constexpr double tol = 1e-9;
    VerifyReport rep;
    rep.K = K;
    rep.beta = beta;
    rep.seed = seed;
    const SolveResult res = solve(input.sorted, K, beta);

    {
        VerifyCheck c{"contiguous oracle", check_status::skipped, ""};
        try {
            const BruteForceResult bf = brute_force_contiguous(input.sorted, K, beta);
            const double gap = std::abs(bf.objective - res.cost.objective);
            c.status = gap <= tol ? check_status::pass : check_status::fail;
            c.detail = "|dp - bf| = " + std::to_string(gap);
        } catch (const error& e) {
            if (e.code() != errc::too_large) throw;
            c.detail = "enumeration over budget";
        }
        rep.checks.push_back(std::move(c));
    }
    {
        VerifyCheck c{"unrestricted oracle", check_status::skipped, ""};
        try {
            const double bf = brute_force_unrestricted(input.sorted, K, beta);
            const double gap = std::abs(bf - res.cost.objective);
            c.status = gap <= tol ? check_status::pass : check_status::fail;
            c.detail = "|dp - bf| = " + std::to_string(gap);
        } catch (const error& e) {
            if (e.code() != errc::too_large) throw;
            c.detail = "enumeration over budget";
        }
        rep.checks.push_back(std::move(c));
    }
    {
        VerifyCheck c{"stochastic dominance", check_status::skipped, ""};
        const auto samples =
            sample_stochastic_objective(input.sorted, K, beta, seed, stochastic_count);
        const double worst = *std::min_element(samples.begin(), samples.end());
        c.status = worst >= res.cost.objective - tol ? check_status::pass : check_status::fail;
        c.detail = "min of " + std::to_string(samples.size()) +
                   " samples - dp = " + std::to_string(worst - res.cost.objective);
        rep.checks.push_back(std::move(c));
    }
    {
        VerifyCheck c{"optimality condition", check_status::skipped, ""};
        const OptimalityReport opt =
            check_optimality_condition(input.sorted, res.quantizer, beta);
        c.status = opt.satisfied ? check_status::pass : check_status::fail;
        c.detail = "worst violation = " + std::to_string(opt.worst_violation);
        rep.checks.push_back(std::move(c));
    }
    return rep;
}

// ---------------------------------------------------------------------------
// rendering

// shortest round-trip decimal form; used everywhere bit-stable output matters
inline std::string full_precision(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// human-readable form, 6 significant digits
inline std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline std::string cut_field(const std::vector<CutView>& cuts) {
    std::string s;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
        if (i) s += ';';
        s += full_precision(cuts[i].posterior_value);
        if (cuts[i].y_edge) s += "@" + full_precision(*cuts[i].y_edge);
    }
    return s;
}

inline std::string sweep_csv(const std::vector<TradeoffPoint>& points) {
    std::string out = "beta,I,HZ,objective,cuts\n";
    for (const auto& p : points) {
        out += full_precision(p.beta) + "," + full_precision(p.mutual_info) + "," +
               full_precision(p.out_entropy) + "," + full_precision(p.objective) + "," +
               cut_field(p.cuts) + "\n";
    }
    return out;
}

inline nlohmann::json to_json(const CutView& v) {
    nlohmann::json j{{"index", v.index}, {"posterior", v.posterior_value}};
    if (v.y_edge)
        j["y_edge"] = *v.y_edge;
    else
        j["y_edge"] = nullptr;
    return j;
}

inline nlohmann::json solve_report_json(const ProblemInput& input, const SolveReport& rep) {
    const auto& sc = input.sorted;
    nlohmann::json cuts = nlohmann::json::array();
    for (const auto& v : rep.interior_cuts) cuts.push_back(to_json(v));
    return nlohmann::json{
        {"channel",
         {{"outputs", sc.source.size()},
          {"retained", sc.size()},
          {"dropped", sc.dropped},
          {"prior", sc.source.prior}}},
        {"K", rep.result.quantizer.clusters()},
        {"beta", rep.result.cost.beta},
        {"objective", rep.result.cost.objective},
        {"cond_entropy", rep.result.cost.cond_entropy},
        {"out_entropy", rep.result.cost.out_entropy},
        {"mutual_info", rep.result.cost.mutual_info},
        {"cut_indices", rep.result.quantizer.cuts},
        {"cuts", cuts},
        {"optimality",
         {{"satisfied", rep.optimality.satisfied},
          {"worst_violation", rep.optimality.worst_violation}}}};
}

inline nlohmann::json sweep_json(const std::vector<TradeoffPoint>& points) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : points) {
        nlohmann::json cuts = nlohmann::json::array();
        for (const auto& v : p.cuts) cuts.push_back(to_json(v));
        arr.push_back({{"beta", p.beta},
                       {"mutual_info", p.mutual_info},
                       {"out_entropy", p.out_entropy},
                       {"objective", p.objective},
                       {"cuts", cuts}});
    }
    return arr;
}

inline const char* status_name(check_status s) {
    switch (s) {
        case check_status::pass: return "pass";
        case check_status::fail: return "FAIL";
        case check_status::skipped: return "skipped";
    }
    return "?";
}

inline nlohmann::json verify_report_json(const VerifyReport& rep) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : rep.checks)
        checks.push_back(
            {{"name", c.name}, {"status", status_name(c.status)}, {"detail", c.detail}});
    return nlohmann::json{{"K", rep.K},
                          {"beta", rep.beta},
                          {"seed", rep.seed},
                          {"all_passed", rep.all_passed()},
                          {"checks", checks}};
}

inline void print_solve_text(std::ostream& os, const ProblemInput& input,
                             const SolveReport& rep) {
    const auto& sc = input.sorted;
    const auto& cb = rep.result.cost;
    os << "channel: M=" << sc.source.size() << " outputs, " << sc.size() << " retained ("
       << sc.dropped.size() << " dropped), prior = (" << fmt6(sc.source.prior[0]) << ", "
       << fmt6(sc.source.prior[1]) << ")\n";
    os << "solve:   K=" << rep.result.quantizer.clusters() << "  beta=" << fmt6(cb.beta)
       << "\n";
    os << "  objective  " << fmt6(cb.objective) << "   (beta*H(X|Z) + H(Z))\n";
    os << "  H(X|Z)     " << fmt6(cb.cond_entropy) << "\n";
    os << "  H(Z)       " << fmt6(cb.out_entropy) << "\n";
    os << "  I(X;Z)     " << fmt6(cb.mutual_info) << "\n";
    os << "  cut indices:";
    for (std::size_t c : rep.result.quantizer.cuts) os << ' ' << c;
    os << "\n";
    if (!rep.interior_cuts.empty()) {
        os << "  cut posteriors:";
        for (const auto& v : rep.interior_cuts) os << ' ' << fmt6(v.posterior_value);
        os << "\n";
        if (input.grid) {
            os << "  cut y edges:";
            for (const auto& v : rep.interior_cuts) {
                if (v.y_edge)
                    os << ' ' << fmt6(*v.y_edge);
                else
                    os << " (level set)";
            }
            os << "\n";
        }
    }
    os << "  optimality condition: " << (rep.optimality.satisfied ? "satisfied" : "VIOLATED")
       << " (worst violation " << fmt6(rep.optimality.worst_violation) << ")\n";
}

inline void print_sweep_text(std::ostream& os, const std::vector<TradeoffPoint>& points) {
    os << "  beta        I(X;Z)      H(Z)        objective\n";
    for (const auto& p : points) {
        char line[128];
        std::snprintf(line, sizeof line, "  %-11.6g %-11.6g %-11.6g %-11.6g\n", p.beta,
                      p.mutual_info, p.out_entropy, p.objective);
        os << line;
    }
}

inline void print_verify_text(std::ostream& os, const VerifyReport& rep) {
    os << "verify: K=" << rep.K << " beta=" << fmt6(rep.beta) << " seed=" << rep.seed << "\n";
    for (const auto& c : rep.checks)
        os << "  [" << status_name(c.status) << "] " << c.name << ": " << c.detail << "\n";
    os << (rep.all_passed() ? "all checks passed\n" : "CHECKS FAILED\n");
}

}  // namespace ecq
