#include "qps/measures.hpp"

#include <cmath>

#include "qps/parallel.hpp"

namespace qps {

double integrate(const Field& f) {
    const double h = f.grid.spacing;
    return h * h * pairwise_sum(f.values);
}

double negativity(const Field& w) {
    if (w.kind != FieldKind::wigner)
        throw KindMismatch("negativity: input must be a Wigner field");
    std::vector<double> mag(w.values.size());
    for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::abs(w.values[i]);
    const double h = w.grid.spacing;
    return h * h * pairwise_sum(mag) - 1.0;
}

namespace {

double entropy_of(const std::vector<double>& values, double h) {
    std::vector<double> terms(values.size());
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const double v = std::abs(values[i]);
        terms[i] = (v < 1e-300) ? 0.0 : -v * std::log(v);
    }
    return h * h * pairwise_sum(terms);
}

} // namespace

double wehrl_entropy(const Field& q) {
    if (q.kind != FieldKind::husimi)
        throw KindMismatch("wehrl_entropy: input must be a Husimi field");
    return entropy_of(q.values, q.grid.spacing);
}

double wigner_entropy(const Field& w) {
    if (w.kind != FieldKind::wigner)
        throw KindMismatch("wigner_entropy: input must be a Wigner field");
    return entropy_of(w.values, w.grid.spacing);
}

TimeSeries sweep(const ModelParams& p, const std::vector<double>& times,
                 const PhaseGrid& g, int n_max) {
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("sweep: times must be strictly increasing");
    if (n_max <= 0)
        n_max = choose_truncation(derive_params(p), 1e-12);

    TimeSeries series;
    series.records.reserve(times.size());
    for (double t : times) {
        const BranchedDensity b = reduced_density(p, t, n_max);
        const Field w = wigner_field(b, g);
        const Field q = husimi_field(b, g);
        TimeRecord r;
        r.time = t;
        r.negativity = negativity(w);
        r.wigner_entropy = wigner_entropy(w);
        r.wehrl_entropy = wehrl_entropy(q);
        r.trace_defect = std::abs(branched_trace(b) - 1.0);
        r.w_norm_defect = std::abs(integrate(w) - 1.0);
        r.q_norm_defect = std::abs(integrate(q) - 1.0);
        r.flagged = r.trace_defect >= 2e-3 || r.w_norm_defect >= 2e-3 ||
                    r.q_norm_defect >= 2e-3;
        series.records.push_back(r);
    }
    return series;
}

double pearson(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty())
        throw std::invalid_argument("pearson: equal nonzero lengths required");
    const double n = static_cast<double>(a.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0, saa = 0.0, sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma, db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    return sab / std::sqrt(saa * sbb);
}

} // namespace qps
