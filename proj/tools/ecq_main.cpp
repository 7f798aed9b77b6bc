#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ecq/ecq.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_verify_failed = 1;
constexpr int exit_config = 2;      // flag/file/JSON parse problems
constexpr int exit_validation = 3;  // channel math rejected the input

ecq::ChannelSource gaussian_source(const std::vector<double>& g,
                                   const std::vector<double>& prior,
                                   const std::vector<double>& range, std::size_t bins) {
    ecq::require(g.size() == 4, ecq::errc::config_error,
                 "--gaussian needs mu1,sigma1,mu2,sigma2");
    ecq::require(prior.size() == 2, ecq::errc::config_error, "--prior needs p1,p2");
    ecq::require(range.size() == 2, ecq::errc::config_error, "--range needs lo,hi");
    ecq::ChannelSource src;
    ecq::ContinuousChannelSpec spec;
    spec.prior = {prior[0], prior[1]};
    spec.density1 = ecq::gaussian_density(g[0], g[1]);
    spec.density2 = ecq::gaussian_density(g[2], g[3]);
    spec.lo = range[0];
    spec.hi = range[1];
    spec.bins = bins;
    src.continuous = std::move(spec);
    return src;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "ecq - globally optimal entropy-constrained quantizers for binary-input channels\n"
        "Solves min beta*H(X|Z) + H(Z) over quantizers of the channel output into at\n"
        "most K clusters; supports single solves, beta sweeps and self-verification."};

    std::string channel_file, preset;
    std::vector<double> gaussian, prior{0.5, 0.5}, range{-10.0, 10.0}, sweep;
    std::size_t bins = 200;
    int K = 0;
    double beta = 1.0;
    bool verify = false, json_out = false, csv_out = false;
    std::uint64_t seed = 0;

    app.add_option("--channel", channel_file, "channel JSON file (joint, likelihood or continuous)");
    app.add_option("--preset", preset, "built-in instance; currently: fig2")
        ->check(CLI::IsMember({"fig2"}));
    app.add_option("--gaussian", gaussian, "continuous Gaussian pair mu1,sigma1,mu2,sigma2")
        ->delimiter(',')
        ->expected(4);
    app.add_option("--prior", prior, "input prior p1,p2 (default 0.5,0.5)")
        ->delimiter(',')
        ->expected(2);
    app.add_option("--range", range, "continuous support lo,hi (default -10,10)")
        ->delimiter(',')
        ->expected(2);
    app.add_option("--bins", bins, "discretization bins (default 200)");
    app.add_option("--K", K, "cluster budget (default 4 with --preset fig2, else required)");
    app.add_option("--beta", beta, "trade-off weight for a single solve (default 1)");
    app.add_option("--sweep", sweep, "comma-separated beta list; emits the trade-off curve")
        ->delimiter(',');
    app.add_flag("--verify", verify, "run oracle/optimality checks instead of reporting");
    app.add_option("--seed", seed, "seed for the stochastic-quantizer check (default 0)");
    app.add_flag("--json", json_out, "machine-readable JSON on stdout");
    app.add_flag("--csv", csv_out, "CSV on stdout (sweep mode)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config;
    }

    try {
        ecq::ChannelSource src;
        if (!channel_file.empty()) {
            src = ecq::load_channel_file(channel_file);
        } else if (preset == "fig2") {
            src = gaussian_source({-2.0, 1.0, 2.0, 1.0}, {0.5, 0.5}, {-10.0, 10.0}, 200);
            if (K == 0) K = 4;
        } else if (!gaussian.empty()) {
            src = gaussian_source(gaussian, prior, range, bins);
        } else {
            ecq::fail(ecq::errc::config_error,
                      "no channel source; give --channel, --gaussian or --preset");
        }
        ecq::require(K >= 1, ecq::errc::config_error, "--K must be at least 1");
        for (double b : sweep)
            ecq::require(b >= 0.0, ecq::errc::config_error, "sweep betas must be >= 0");

        const ecq::ProblemInput input = ecq::make_problem(src);

        if (verify) {
            const ecq::VerifyReport rep = ecq::run_verify(input, K, beta, seed);
            if (json_out)
                std::cout << ecq::verify_report_json(rep).dump(2) << "\n";
            else
                ecq::print_verify_text(std::cout, rep);
            return rep.all_passed() ? exit_ok : exit_verify_failed;
        }
        if (!sweep.empty()) {
            const auto points = ecq::run_sweep(input, K, sweep);
            if (json_out)
                std::cout << ecq::sweep_json(points).dump(2) << "\n";
            else if (csv_out)
                std::cout << ecq::sweep_csv(points);
            else
                ecq::print_sweep_text(std::cout, points);
            return exit_ok;
        }
        const ecq::SolveReport rep = ecq::run_solve(input, K, beta);
        if (json_out) {
            std::cout << ecq::solve_report_json(input, rep).dump(2) << "\n";
        } else if (csv_out) {
            ecq::TradeoffPoint p;
            p.beta = beta;
            p.mutual_info = rep.result.cost.mutual_info;
            p.out_entropy = rep.result.cost.out_entropy;
            p.objective = rep.result.cost.objective;
            p.cuts = rep.interior_cuts;
            std::cout << ecq::sweep_csv({p});
        } else {
            ecq::print_solve_text(std::cout, input, rep);
        }
        return exit_ok;
    } catch (const ecq::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == ecq::errc::config_error ? exit_config : exit_validation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_validation;
    }
}
