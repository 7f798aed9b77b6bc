#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "ecq/channel.hpp"
#include "ecq/continuous.hpp"
#include "ecq/errors.hpp"

namespace ecq {

// A parsed channel description: either a discrete channel or a continuous
// spec to be discretized.
struct ChannelSource {
    std::optional<BinaryInputChannel> discrete;
    std::optional<ContinuousChannelSpec> continuous;
};

namespace io_detail {

inline double num_field(const nlohmann::json& j, const char* key) {
    require(j.contains(key) && j[key].is_number(), errc::config_error,
            std::string("expected numeric field \"") + key + "\"");
    return j[key].get<double>();
}

inline density_fn parse_density(const nlohmann::json& j) {
    require(j.is_object() && j.contains("type"), errc::config_error,
            "density must be an object with a \"type\"");
    const std::string type = j["type"].get<std::string>();
    if (type == "gaussian") return gaussian_density(num_field(j, "mu"), num_field(j, "sigma"));
    if (type == "uniform") return uniform_density(num_field(j, "a"), num_field(j, "b"));
    if (type == "mixture") {
        require(j.contains("weights") && j.contains("components"), errc::config_error,
                "mixture needs \"weights\" and \"components\"");
        std::vector<double> weights = j["weights"].get<std::vector<double>>();
        std::vector<density_fn> comps;
        for (const auto& c : j["components"]) comps.push_back(parse_density(c));
        return mixture_density(std::move(weights), std::move(comps));
    }
    fail(errc::config_error, "unknown density type \"" + type + "\"");
}

inline mass_pair parse_prior(const nlohmann::json& j) {
    const auto v = j.get<std::vector<double>>();
    require(v.size() == 2, errc::config_error, "prior must have exactly 2 entries");
    return {v[0], v[1]};
}

}  // namespace io_detail

// Accepted layouts:
//   {"prior": [p1,p2]?, "joint": [[m, 2] rows]}
//   {"prior": [p1,p2], "likelihood": [[M p(y|x1)...], [M p(y|x2)...]]}
//   {"continuous": {"prior": [...], "density1": {...}, "density2": {...},
//                   "range": [lo,hi], "bins": M}}
inline ChannelSource parse_channel_json(const nlohmann::json& j) {
    require(j.is_object(), errc::config_error, "channel document must be a JSON object");
    ChannelSource src;

    if (j.contains("continuous")) {
        const auto& c = j["continuous"];
        ContinuousChannelSpec spec;
        require(c.contains("prior"), errc::config_error, "continuous spec needs a prior");
        spec.prior = io_detail::parse_prior(c["prior"]);
        require(c.contains("density1") && c.contains("density2"), errc::config_error,
                "continuous spec needs density1 and density2");
        spec.density1 = io_detail::parse_density(c["density1"]);
        spec.density2 = io_detail::parse_density(c["density2"]);
        require(c.contains("range") && c["range"].is_array() && c["range"].size() == 2,
                errc::config_error, "continuous spec needs \"range\": [lo, hi]");
        spec.lo = c["range"][0].get<double>();
        spec.hi = c["range"][1].get<double>();
        require(c.contains("bins") && c["bins"].is_number_unsigned(), errc::config_error,
                "continuous spec needs an unsigned \"bins\"");
        spec.bins = c["bins"].get<std::size_t>();
        src.continuous = std::move(spec);
        return src;
    }

    std::optional<mass_pair> prior;
    if (j.contains("prior")) prior = io_detail::parse_prior(j["prior"]);

    if (j.contains("joint")) {
        require(!j.contains("likelihood"), errc::config_error,
                "give either \"joint\" or \"likelihood\", not both");
        const auto raw = j["joint"].get<std::vector<std::vector<double>>>();
        src.discrete = validate_channel(raw, prior);
        return src;
    }
    if (j.contains("likelihood")) {
        require(prior.has_value(), errc::config_error,
                "\"likelihood\" form requires an explicit prior");
        const auto lik = j["likelihood"].get<std::vector<std::vector<double>>>();
        require(lik.size() == 2, errc::config_error,
                "likelihood must have 2 rows (one per input)");
        require(!lik[0].empty() && lik[0].size() == lik[1].size(), errc::config_error,
                "likelihood rows must be nonempty and equal length");
        std::vector<std::vector<double>> raw(lik[0].size(), std::vector<double>(2));
        for (std::size_t m = 0; m < lik[0].size(); ++m)
            for (int n = 0; n < 2; ++n) raw[m][n] = (*prior)[n] * lik[n][m];
        src.discrete = validate_channel(raw, prior);
        return src;
    }
    fail(errc::config_error, "channel document needs \"joint\", \"likelihood\" or \"continuous\"");
}

inline ChannelSource load_channel_file(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), errc::config_error, "cannot open channel file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        fail(errc::config_error, "invalid JSON in " + path + ": " + e.what());
    }
    return parse_channel_json(j);
}

}  // namespace ecq
