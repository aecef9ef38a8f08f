#include "qps/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace qps {

namespace {

std::string shortest(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string sig12(double v) {
    char buf[64];
    auto [ptr, ec] =
        std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    return std::string(buf, ptr);
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    return out;
}

} // namespace

void write_field(const std::string& path, const Field& f) {
    std::ofstream out = open_out(path);
    out << "# kind " << (f.kind == FieldKind::wigner ? "wigner" : "husimi")
        << "\n"
        << "# time " << shortest(f.time) << "\n"
        << "# half_width " << shortest(f.grid.half_width) << "\n"
        << "# spacing " << shortest(f.grid.spacing) << "\n"
        << "# nx ny " << f.grid.nx << " " << f.grid.ny << "\n";
    for (int iy = 0; iy < f.grid.ny; ++iy) {
        for (int ix = 0; ix < f.grid.nx; ++ix) {
            if (ix) out << ' ';
            out << shortest(f.at(ix, iy));
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

Field read_field(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    auto header_tail = [&](const std::string& prefix) {
        std::string line;
        if (!std::getline(in, line) || line.rfind(prefix, 0) != 0)
            throw std::runtime_error(path + ": expected header '" + prefix + "'");
        return line.substr(prefix.size());
    };
    Field f;
    const std::string kind = header_tail("# kind ");
    if (kind == "wigner") f.kind = FieldKind::wigner;
    else if (kind == "husimi") f.kind = FieldKind::husimi;
    else throw std::runtime_error(path + ": unknown field kind '" + kind + "'");
    f.time = std::stod(header_tail("# time "));
    f.grid.half_width = std::stod(header_tail("# half_width "));
    f.grid.spacing = std::stod(header_tail("# spacing "));
    {
        std::istringstream dims(header_tail("# nx ny "));
        if (!(dims >> f.grid.nx >> f.grid.ny))
            throw std::runtime_error(path + ": bad nx ny header");
    }
    f.values.resize(f.grid.size());
    for (double& v : f.values)
        if (!(in >> v)) throw std::runtime_error(path + ": truncated data");
    return f;
}

std::string timeseries_csv(const TimeSeries& series) {
    std::ostringstream out;
    out << "omega_t,negativity,wigner_entropy,wehrl_entropy,trace_defect,"
           "w_norm_defect,q_norm_defect\n";
    for (const TimeRecord& r : series.records) {
        out << sig12(r.time) << ',' << sig12(r.negativity) << ','
            << sig12(r.wigner_entropy) << ',' << sig12(r.wehrl_entropy) << ','
            << sig12(r.trace_defect) << ',' << sig12(r.w_norm_defect) << ','
            << sig12(r.q_norm_defect) << '\n';
    }
    return out.str();
}

void write_timeseries_csv(const std::string& path, const TimeSeries& series) {
    std::ofstream out = open_out(path);
    out << timeseries_csv(series);
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

void write_pgm(const std::string& path, const Field& f) {
    std::ofstream out = open_out(path);
    const double bound = (f.kind == FieldKind::wigner)
                             ? 2.0 / std::numbers::pi
                             : 1.0 / std::numbers::pi;
    const double lo = (f.kind == FieldKind::wigner) ? -bound : 0.0;
    out << "P2\n" << f.grid.nx << " " << f.grid.ny << "\n255\n";
    for (int iy = f.grid.ny - 1; iy >= 0; --iy) {
        for (int ix = 0; ix < f.grid.nx; ++ix) {
            double t = (f.at(ix, iy) - lo) / (bound - lo);
            t = std::min(1.0, std::max(0.0, t));
            if (ix) out << ' ';
            out << static_cast<int>(std::lround(t * 255.0));
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

} // namespace qps
