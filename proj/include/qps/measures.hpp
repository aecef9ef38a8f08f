// measures.hpp — quadrature, negativity, entropies, and the time sweep

#pragma once

#include <span>
#include <vector>

#include "qps/phasespace.hpp"

namespace qps {

// Midpoint-rule quadrature h^2 * sum(values), deterministic pairwise order.
double integrate(const Field& f);

// Negativity volume: integral of |W| minus 1. Throws KindMismatch unless
// f is a Wigner field.
double negativity(const Field& w);

// -integral Q log Q (nats); values below 1e-300 contribute nothing.
double wehrl_entropy(const Field& q);

// -integral |W| log |W| (nats), same clamping convention.
double wigner_entropy(const Field& w);

struct TimeRecord {
    double time = 0.0;  // in units of 1/omega
    double negativity = 0.0;
    double wigner_entropy = 0.0;
    double wehrl_entropy = 0.0;
    double trace_defect = 0.0;
    double w_norm_defect = 0.0;
    double q_norm_defect = 0.0;
    bool flagged = false;  // any defect >= 2e-3
};

struct TimeSeries {
    std::vector<TimeRecord> records;
};

// Evaluates the reduced state, Wigner and Husimi fields and all scalar
// measures at each time. times must be strictly increasing. n_max = 0
// selects the automatic truncation (tail tolerance 1e-12).
TimeSeries sweep(const ModelParams& p, const std::vector<double>& times,
                 const PhaseGrid& g, int n_max = 0);

// Sample Pearson correlation; used by the qualitative series checks.
double pearson(std::span<const double> a, std::span<const double> b);

} // namespace qps
