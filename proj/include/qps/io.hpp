// io.hpp — field dumps, time-series CSV, and graymap heatmaps
//
// Field dump: five `#` header lines (kind, time, half_width, spacing,
// nx ny), then ny rows of nx space-separated values; rows run over
// increasing Im(beta), columns over increasing Re(beta). All numbers are
// locale-independent decimal text.

#pragma once

#include <string>

#include "qps/measures.hpp"

namespace qps {

void write_field(const std::string& path, const Field& f);
Field read_field(const std::string& path);

// CSV with header omega_t,negativity,wigner_entropy,wehrl_entropy,
// trace_defect,w_norm_defect,q_norm_defect; 12 significant digits.
void write_timeseries_csv(const std::string& path, const TimeSeries& series);
std::string timeseries_csv(const TimeSeries& series);

// 8-bit text graymap (P2). Wigner fields use a fixed symmetric scale
// [-2/pi, 2/pi] so negativity shows as dark regions; Husimi fields use
// [0, 1/pi]. Top row is max Im(beta).
void write_pgm(const std::string& path, const Field& f);

} // namespace qps
