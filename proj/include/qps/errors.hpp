// errors.hpp — exception types shared across the library

#pragma once

#include <stdexcept>
#include <string>

namespace qps {

// chi_n vanished for some level: epsilon/2 = 0 together with an accidental
// zero of the Laguerre factor. The coefficient formulas divide by chi_n,
// so this configuration has no well-defined spectral split.
class DegenerateLevel : public std::runtime_error {
public:
    DegenerateLevel(int n, std::string what)
        : std::runtime_error(std::move(what)), level_(n) {}
    int level() const noexcept { return level_; }
private:
    int level_;
};

class IndexOutOfRange : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// Basis conversion lost more trace than the truncation budget allows.
class TruncationSpill : public std::runtime_error {
public:
    TruncationSpill(double defect, std::string what)
        : std::runtime_error(std::move(what)), defect_(defect) {}
    double defect() const noexcept { return defect_; }
private:
    double defect_;
};

class DimensionMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A measure was fed a field of the wrong kind (e.g. negativity of a Husimi field).
class KindMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// ---- configuration errors (line numbers are 1-based) ----

class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, std::string what)
        : std::runtime_error(std::move(what)), line_(line) {}
    int line() const noexcept { return line_; }
private:
    int line_;
};

class ParseError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class UnknownKey : public ConfigError {
public:
    using ConfigError::ConfigError;
};

class RangeError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

} // namespace qps
