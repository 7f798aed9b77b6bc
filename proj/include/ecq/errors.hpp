#pragma once

#include <stdexcept>
#include <string>

namespace ecq {

enum class errc {
    negative_entry,
    shape_mismatch,
    mass_not_normalizable,
    prior_inconsistent,
    all_outputs_zero,
    index_out_of_range,
    invalid_quantizer,
    invalid_k,
    invalid_beta,
    empty_cluster,
    zero_mass_output,
    too_large,
    density_negative,
    density_not_normalized,
    degenerate_support,
    zero_density_point,
    config_error,
};

inline const char* errc_name(errc c) noexcept {
    switch (c) {
        case errc::negative_entry:         return "negative_entry";
        case errc::shape_mismatch:         return "shape_mismatch";
        case errc::mass_not_normalizable:  return "mass_not_normalizable";
        case errc::prior_inconsistent:     return "prior_inconsistent";
        case errc::all_outputs_zero:       return "all_outputs_zero";
        case errc::index_out_of_range:     return "index_out_of_range";
        case errc::invalid_quantizer:      return "invalid_quantizer";
        case errc::invalid_k:              return "invalid_k";
        case errc::invalid_beta:           return "invalid_beta";
        case errc::empty_cluster:          return "empty_cluster";
        case errc::zero_mass_output:       return "zero_mass_output";
        case errc::too_large:              return "too_large";
        case errc::density_negative:       return "density_negative";
        case errc::density_not_normalized: return "density_not_normalized";
        case errc::degenerate_support:     return "degenerate_support";
        case errc::zero_density_point:     return "zero_density_point";
        case errc::config_error:           return "config_error";
    }
    return "unknown";
}

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) {
    throw error(code, msg);
}

inline void require(bool ok, errc code, const std::string& msg) {
    if (!ok) fail(code, msg);
}

}  // namespace ecq
