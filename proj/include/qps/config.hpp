// config.hpp — run configuration: flat `key = value` text, `#` comments,
// dotted keys for nesting. All model values are ratios to omega (omega is
// fixed at 1 internally). Omitted keys take the documented defaults; the
// default parameter set is the strongly coupled quasi-Bell run
// (delta 0.15, epsilon 0.03, lambda 0.3, alpha 3, parity plus).

#pragma once

#include <string>
#include <vector>

#include "qps/model.hpp"

namespace qps {

struct GridConfig {
    double half_width = 0.0;  // resolved at parse time when omitted
    double spacing = 0.05;
    bool operator==(const GridConfig&) const = default;
};

struct TimesConfig {
    double start = 0.0;
    double stop = 100.0;
    double step = 1.0;  // all in units of omega t
    bool operator==(const TimesConfig&) const = default;
};

struct TruncationConfig {
    double tail_tol = 1e-12;
    int n = 0;  // explicit level count override; 0 = automatic
    bool operator==(const TruncationConfig&) const = default;
};

struct OutputConfig {
    std::string directory = "out";
    bool emit_fields = true;
    bool emit_heatmaps = false;
    bool operator==(const OutputConfig&) const = default;
};

struct RunConfig {
    ModelParams model;
    GridConfig grid;
    TimesConfig times;
    TruncationConfig truncation;
    OutputConfig outputs;
    bool operator==(const RunConfig&) const = default;

    std::vector<double> time_list() const;
    int resolve_truncation() const;  // explicit n or choose_truncation
};

RunConfig default_config();

// Throws ParseError (with 1-based line), UnknownKey, RangeError.
RunConfig parse_config(const std::string& text);

RunConfig load_config_file(const std::string& path);

// Writes every key explicitly with round-trip precision;
// parse_config(emit_config(c)) == c.
std::string emit_config(const RunConfig& c);

} // namespace qps
