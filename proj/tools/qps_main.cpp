// qps — phase-space dynamics of the quasi-Bell qubit-oscillator state.
//
// Subcommands:
//   snapshot --config FILE --time T [--out DIR]   W and Q field dumps at T
//   sweep    --config FILE [--out DIR]            time-series CSV
//   validate [--config FILE]                      self-check table
//
// Exit codes: 0 ok, 1 configuration, 2 runtime, 3 validation failure.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "qps/config.hpp"
#include "qps/io.hpp"
#include "qps/measures.hpp"

namespace {

using namespace qps;

std::string time_tag(double t) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", t);
    return buf;
}

std::filesystem::path ensure_out_dir(const RunConfig& cfg) {
    std::filesystem::path dir(cfg.outputs.directory);
    std::filesystem::create_directories(dir);
    return dir;
}

int cmd_snapshot(const RunConfig& cfg, double scaled_time) {
    const double t = scaled_time / cfg.model.omega;
    const int n_max = cfg.resolve_truncation();
    const PhaseGrid grid = make_grid(cfg.grid.half_width, cfg.grid.spacing);
    const BranchedDensity b = reduced_density(cfg.model, t, n_max);

    WignerStats stats;
    const Field w = wigner_field(b, grid, &stats);
    const Field q = husimi_field(b, grid);

    const auto dir = ensure_out_dir(cfg);
    const std::string tag = time_tag(scaled_time);
    if (cfg.outputs.emit_fields) {
        write_field((dir / ("W_t" + tag + ".dat")).string(), w);
        write_field((dir / ("Q_t" + tag + ".dat")).string(), q);
    }
    if (cfg.outputs.emit_heatmaps) {
        write_pgm((dir / ("W_t" + tag + ".pgm")).string(), w);
        write_pgm((dir / ("Q_t" + tag + ".pgm")).string(), q);
    }

    std::printf("snapshot omega_t=%s  n_max=%d  grid=%dx%d\n", tag.c_str(),
                n_max, grid.nx, grid.ny);
    std::printf("  trace defect    %.3e\n", std::abs(branched_trace(b) - 1.0));
    std::printf("  integral W - 1  %+.3e\n", integrate(w) - 1.0);
    std::printf("  integral Q - 1  %+.3e\n", integrate(q) - 1.0);
    std::printf("  negativity      %.6f\n", negativity(w));
    std::printf("  min W           %+.6f\n",
                *std::min_element(w.values.begin(), w.values.end()));
    std::printf("  imag residue    %.3e\n", stats.max_imag_residue);
    return 0;
}

int cmd_sweep(const RunConfig& cfg) {
    const int n_max = cfg.resolve_truncation();
    const PhaseGrid grid = make_grid(cfg.grid.half_width, cfg.grid.spacing);
    std::vector<double> times = cfg.time_list();
    for (double& t : times) t /= cfg.model.omega;

    const TimeSeries series = sweep(cfg.model, times, grid, n_max);
    const auto dir = ensure_out_dir(cfg);
    const std::string path = (dir / "timeseries.csv").string();
    write_timeseries_csv(path, series);

    int flagged = 0;
    for (const TimeRecord& r : series.records)
        if (r.flagged) ++flagged;
    std::printf("sweep: %zu records -> %s\n", series.records.size(),
                path.c_str());
    if (flagged > 0)
        std::fprintf(stderr,
                     "warning: %d record(s) exceeded the 2e-3 defect budget\n",
                     flagged);
    return 0;
}

struct CheckTable {
    bool all_ok = true;

    // pass when value <= bound
    void row(const std::string& name, double value, double bound) {
        const bool ok = value <= bound;
        all_ok = all_ok && ok;
        std::printf("%-34s %12.3e  <= %8.1e  [%s]\n", name.c_str(), value,
                    bound, ok ? "PASS" : "FAIL");
    }
};

int cmd_validate(const RunConfig& cfg) {
    const int n_max = cfg.resolve_truncation();
    const DerivedParams d = derive_params(cfg.model);
    const SpectralTable table = build_spectral_table(d, n_max);
    const PhaseGrid grid = make_grid(cfg.grid.half_width, cfg.grid.spacing);
    const double t_mid = 0.5 * (cfg.times.start + cfg.times.stop);
    const std::vector<double> samples{cfg.times.start, t_mid, cfg.times.stop};

    std::printf(
        "validate: n_max=%d grid=%dx%d (h=%g) samples omega_t = {%g, %g, %g}\n",
        n_max, grid.nx, grid.ny, grid.spacing, samples[0], samples[1],
        samples[2]);
    CheckTable tab;

    double id_defect = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        id_defect = std::max(
            id_defect, std::abs(table.a_minus[n] + table.b_plus[n] - 1.0));
        id_defect = std::max(
            id_defect, std::abs(table.a_plus[n] + table.b_minus[n] - 1.0));
    }
    tab.row("spectral identity", id_defect, 1e-12);

    double unitarity = 0.0, at_zero = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        for (double t : {0.0, 7.31, samples[1], samples[2]}) {
            const Complex cp = level_coefficient(table, n, Parity::plus, t);
            const Complex cm = level_coefficient(table, n, Parity::minus, t);
            unitarity = std::max(unitarity,
                                 std::abs(std::norm(cp) + std::norm(cm) - 2.0));
        }
        at_zero = std::max(
            at_zero,
            std::abs(level_coefficient(table, n, Parity::plus, 0.0) - 1.0));
    }
    tab.row("coefficient trace identity", unitarity, 1e-12);
    tab.row("coefficient value at t=0", at_zero, 1e-12);

    double trace_defect = 0.0, herm_defect = 0.0;
    double w_norm = 0.0, q_norm = 0.0, w_min = 0.0, w_bound = 0.0;
    double q_min_defect = 0.0, residue = 0.0;
    for (double st : samples) {
        const double t = st / cfg.model.omega;
        const BranchedDensity b = reduced_density(cfg.model, t, n_max);
        trace_defect =
            std::max(trace_defect, std::abs(branched_trace(b) - 1.0));
        herm_defect = std::max(
            herm_defect,
            (b.plus_block - b.plus_block.adjoint()).cwiseAbs().maxCoeff());
        herm_defect = std::max(
            herm_defect,
            (b.minus_block - b.minus_block.adjoint()).cwiseAbs().maxCoeff());
        WignerStats stats;
        const Field w = wigner_field(b, grid, &stats);
        const Field q = husimi_field(b, grid);
        residue = std::max(residue, stats.max_imag_residue);
        w_norm = std::max(w_norm, std::abs(integrate(w) - 1.0));
        q_norm = std::max(q_norm, std::abs(integrate(q) - 1.0));
        for (double v : w.values) {
            w_min = std::min(w_min, v);
            w_bound = std::max(w_bound, std::abs(v));
        }
        for (double v : q.values) q_min_defect = std::max(q_min_defect, -v);
    }
    tab.row("branched trace defect", trace_defect, 1e-10);
    tab.row("block hermiticity defect", herm_defect, 1e-12);
    tab.row("wigner normalization defect", w_norm, 2e-3);
    tab.row("husimi normalization defect", q_norm, 2e-3);
    tab.row("wigner imaginary residue", residue, 1e-10);
    tab.row("wigner bound excess", w_bound - 2.0 / std::numbers::pi, 1e-6);
    tab.row("husimi negativity", q_min_defect, 1e-14);

    {
        const PhaseGrid coarse =
            make_grid(cfg.grid.half_width, 2.0 * cfg.grid.half_width / 40.0);
        const BranchedDensity b =
            reduced_density(cfg.model, t_mid / cfg.model.omega, n_max);
        const Field w16 = wigner_field(b, coarse);
        const Field w11 =
            wigner_field_series(b, coarse, series_k_max(b, coarse));
        double diff = 0.0;
        for (std::size_t i = 0; i < w16.values.size(); ++i)
            diff = std::max(diff, std::abs(w16.values[i] - w11.values[i]));
        tab.row("wigner two-route max-abs", diff, 1e-6);
    }

    {
        const Complex a{2.0, 0.0};
        const PhaseGrid cg = make_grid(7.0, cfg.grid.spacing);
        const BranchedDensity cb = coherent_state_density(a, 40);
        const double sq = wehrl_entropy(husimi_field(cb, cg));
        const double sw = wigner_entropy(wigner_field(cb, cg));
        tab.row("coherent Wehrl entropy error",
                std::abs(sq - (1.0 + std::log(std::numbers::pi))), 2e-3);
        tab.row("coherent Wigner entropy error",
                std::abs(sw - (1.0 + std::log(std::numbers::pi / 2.0))), 2e-3);
    }

    {
        const BranchedDensity b =
            reduced_density(cfg.model, t_mid / cfg.model.omega, n_max);
        const Field w = wigner_field(b, grid);
        const Field smoothed = smooth_w_to_q(w);
        const Field q = husimi_field(b, grid);
        double diff = 0.0;
        for (std::size_t i = 0; i < q.values.size(); ++i)
            diff = std::max(diff, std::abs(smoothed.values[i] - q.values[i]));
        tab.row("smoothing vs direct Q max-abs", diff, 5e-3);

        const BranchedDensity b0 = reduced_density(cfg.model, 0.0, n_max);
        const Field q0 = husimi_field(b0, grid);
        const Field qw = husimi_weak_closed(cfg.model, grid, 0.0);
        double d0 = 0.0;
        for (std::size_t i = 0; i < q0.values.size(); ++i)
            d0 = std::max(d0, std::abs(q0.values[i] - qw.values[i]));
        tab.row("weak-coupling Q at t=0 max-abs", d0, 1e-8);

        tab.row("negativity at t=0",
                std::abs(negativity(wigner_field(b0, grid))), 2e-3);
    }

    if (!tab.all_ok) {
        std::printf("validation FAILED\n");
        return 3;
    }
    std::printf("validation passed\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"phase-space dynamics of a quasi-Bell qubit-oscillator state"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    double scaled_time = 0.0;

    CLI::App* snap =
        app.add_subcommand("snapshot", "write W and Q fields at one time");
    snap->add_option("--config", config_path, "config file");
    snap->add_option("--time", scaled_time, "scaled time omega*t")->required();
    snap->add_option("--out", out_dir, "output directory override");

    CLI::App* swp = app.add_subcommand("sweep", "time series CSV");
    swp->add_option("--config", config_path, "config file");
    swp->add_option("--out", out_dir, "output directory override");

    CLI::App* val = app.add_subcommand("validate", "run the invariant suite");
    val->add_option("--config", config_path, "config file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        RunConfig cfg = config_path.empty() ? default_config()
                                            : load_config_file(config_path);
        if (!out_dir.empty()) cfg.outputs.directory = out_dir;
        if (snap->parsed()) return cmd_snapshot(cfg, scaled_time);
        if (swp->parsed()) return cmd_sweep(cfg);
        return cmd_validate(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
