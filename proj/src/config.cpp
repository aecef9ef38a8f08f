#include "qps/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qps {

std::vector<double> RunConfig::time_list() const {
    std::vector<double> out;
    const long count = static_cast<long>(
        std::floor((times.stop - times.start) / times.step + 1e-9));
    out.reserve(count + 1);
    for (long i = 0; i <= count; ++i)
        out.push_back(times.start + i * times.step);
    return out;
}

int RunConfig::resolve_truncation() const {
    if (truncation.n > 0) return truncation.n;
    return choose_truncation(derive_params(model), truncation.tail_tol);
}

RunConfig default_config() {
    RunConfig c;
    c.grid.half_width = std::abs(c.model.alpha) +
                        c.model.lambda / c.model.omega + 5.0;
    return c;
}

namespace {

std::string trim(std::string_view s) {
    const char* ws = " \t\r\n";
    const auto a = s.find_first_not_of(ws);
    if (a == std::string_view::npos) return {};
    const auto b = s.find_last_not_of(ws);
    return std::string(s.substr(a, b - a + 1));
}

double parse_double(const std::string& s, int line) {
    double v = 0.0;
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end)
        throw ParseError(line, "line " + std::to_string(line) +
                                   ": invalid number '" + s + "'");
    return v;
}

int parse_int(const std::string& s, int line) {
    int v = 0;
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc{} || ptr != end)
        throw ParseError(line, "line " + std::to_string(line) +
                                   ": invalid integer '" + s + "'");
    return v;
}

bool parse_bool(const std::string& s, int line) {
    if (s == "true") return true;
    if (s == "false") return false;
    throw ParseError(line, "line " + std::to_string(line) +
                               ": expected true or false, got '" + s + "'");
}

// Accepts "a", "bi", "a+bi", "a-bi"; "i" alone stands for 1i.
Complex parse_complex(const std::string& s, int line) {
    if (s.empty())
        throw ParseError(line,
                         "line " + std::to_string(line) + ": empty complex");
    const bool has_i = s.back() == 'i';
    if (!has_i) return Complex{parse_double(s, line), 0.0};
    std::string body = s.substr(0, s.size() - 1);
    // Split at the last sign that is not an exponent sign or leading.
    std::size_t split = std::string::npos;
    for (std::size_t pos = body.size(); pos-- > 1;) {
        if ((body[pos] == '+' || body[pos] == '-') &&
            body[pos - 1] != 'e' && body[pos - 1] != 'E') {
            split = pos;
            break;
        }
    }
    auto imag_of = [&](std::string part) {
        if (part.empty() || part == "+") return 1.0;
        if (part == "-") return -1.0;
        return parse_double(part, line);
    };
    if (split == std::string::npos) return Complex{0.0, imag_of(body)};
    return Complex{parse_double(body.substr(0, split), line),
                   imag_of(body.substr(split))};
}

void range_check(const RunConfig& c, int line) {
    auto fail = [&](const std::string& msg) { throw RangeError(line, msg); };
    if (!std::isfinite(c.model.delta) || c.model.delta < 0.0)
        fail("delta must be finite and >= 0");
    if (!std::isfinite(c.model.epsilon)) fail("epsilon must be finite");
    if (!std::isfinite(c.model.lambda) || c.model.lambda < 0.0)
        fail("lambda must be finite and >= 0");
    if (!std::isfinite(c.model.alpha.real()) ||
        !std::isfinite(c.model.alpha.imag()))
        fail("alpha must be finite");
    if (!(c.grid.spacing > 0.0) || !std::isfinite(c.grid.spacing))
        fail("grid.spacing must be > 0");
    if (!(c.grid.half_width >= c.grid.spacing) ||
        !std::isfinite(c.grid.half_width))
        fail("grid.half_width must be >= grid.spacing");
    if (!(c.times.step > 0.0)) fail("times.step must be > 0");
    if (!(c.times.stop >= c.times.start)) fail("times.stop must be >= times.start");
    if (!(c.truncation.tail_tol > 0.0 && c.truncation.tail_tol < 1.0))
        fail("truncation.tail_tol must be in (0, 1)");
    if (c.truncation.n < 0) fail("truncation.n must be >= 0");
    if (c.outputs.directory.empty()) fail("outputs.directory must be nonempty");
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::string format_complex(Complex v) {
    if (v.imag() == 0.0) return format_double(v.real());
    std::string s = format_double(v.real());
    if (v.imag() >= 0.0) s += "+";
    s += format_double(v.imag());
    s += "i";
    return s;
}

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig c = default_config();
    bool half_width_set = false;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    int last_line = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        std::string body = trim(hash == std::string::npos
                                    ? std::string_view(raw)
                                    : std::string_view(raw).substr(0, hash));
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ParseError(line_no, "line " + std::to_string(line_no) +
                                          ": expected 'key = value'");
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        if (key.empty() || value.empty())
            throw ParseError(line_no, "line " + std::to_string(line_no) +
                                          ": empty key or value");
        last_line = line_no;

        if (key == "delta") c.model.delta = parse_double(value, line_no);
        else if (key == "epsilon") c.model.epsilon = parse_double(value, line_no);
        else if (key == "lambda") c.model.lambda = parse_double(value, line_no);
        else if (key == "alpha") c.model.alpha = parse_complex(value, line_no);
        else if (key == "parity") {
            if (value == "plus") c.model.parity = Parity::plus;
            else if (value == "minus") c.model.parity = Parity::minus;
            else
                throw ParseError(line_no, "line " + std::to_string(line_no) +
                                              ": parity must be plus or minus");
        }
        else if (key == "grid.half_width") {
            c.grid.half_width = parse_double(value, line_no);
            half_width_set = true;
        }
        else if (key == "grid.spacing") c.grid.spacing = parse_double(value, line_no);
        else if (key == "times.start") c.times.start = parse_double(value, line_no);
        else if (key == "times.stop") c.times.stop = parse_double(value, line_no);
        else if (key == "times.step") c.times.step = parse_double(value, line_no);
        else if (key == "truncation.tail_tol")
            c.truncation.tail_tol = parse_double(value, line_no);
        else if (key == "truncation.n") c.truncation.n = parse_int(value, line_no);
        else if (key == "outputs.directory") c.outputs.directory = value;
        else if (key == "outputs.emit_fields")
            c.outputs.emit_fields = parse_bool(value, line_no);
        else if (key == "outputs.emit_heatmaps")
            c.outputs.emit_heatmaps = parse_bool(value, line_no);
        else
            throw UnknownKey(line_no, "line " + std::to_string(line_no) +
                                          ": unknown key '" + key + "'");
    }
    if (!half_width_set)
        c.grid.half_width = std::abs(c.model.alpha) +
                            c.model.lambda / c.model.omega + 5.0;
    range_check(c, last_line);
    return c;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError(0, "cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string emit_config(const RunConfig& c) {
    std::ostringstream out;
    out << "delta = " << format_double(c.model.delta) << "\n"
        << "epsilon = " << format_double(c.model.epsilon) << "\n"
        << "lambda = " << format_double(c.model.lambda) << "\n"
        << "alpha = " << format_complex(c.model.alpha) << "\n"
        << "parity = " << (c.model.parity == Parity::plus ? "plus" : "minus")
        << "\n"
        << "grid.half_width = " << format_double(c.grid.half_width) << "\n"
        << "grid.spacing = " << format_double(c.grid.spacing) << "\n"
        << "times.start = " << format_double(c.times.start) << "\n"
        << "times.stop = " << format_double(c.times.stop) << "\n"
        << "times.step = " << format_double(c.times.step) << "\n"
        << "truncation.tail_tol = " << format_double(c.truncation.tail_tol)
        << "\n"
        << "truncation.n = " << c.truncation.n << "\n"
        << "outputs.directory = " << c.outputs.directory << "\n"
        << "outputs.emit_fields = "
        << (c.outputs.emit_fields ? "true" : "false") << "\n"
        << "outputs.emit_heatmaps = "
        << (c.outputs.emit_heatmaps ? "true" : "false") << "\n";
    return out.str();
}

} // namespace qps
