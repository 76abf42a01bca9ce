#pragma once

#include "fekete/gaussian_basis.hpp"
#include "fekete/real.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace fekete::cli {

enum class Method { fekete, chebyshev, pgreedy, equispaced };
enum class Format { csv, json };

Method parse_method(const std::string& name);
std::string method_name(Method m);

struct ExperimentConfig {
    std::vector<Method> methods{Method::fekete};
    std::vector<double> eps{1.0};
    int n_min = 2;
    int n_max = 20;
    Interval interval{-1, 1};
    int grid_size = 1000;
    /// Empty means the auto policy.
    std::optional<int> digits;
    std::vector<int> m_list{5, 10, 15};
    Format format = Format::csv;

    /// Throws std::invalid_argument on an inconsistent configuration.
    void validate() const;
    int digits_for(int n) const;
};

/// One output cell. Hardware values print with 17 significant digits,
/// extended ones at their working precision; JSON keeps extended values
/// as strings so nothing is lost.
struct Cell {
    enum class Kind { empty, text, integer, hardware, extended };
    Kind kind = Kind::empty;
    std::string text;
    long integer = 0;
    double number = 0;

    static Cell none() { return {}; }
    static Cell of(std::string s) { return {Kind::text, std::move(s), 0, 0}; }
    static Cell of(long v) { return {Kind::integer, {}, v, 0}; }
    static Cell of(int v) { return of(static_cast<long>(v)); }
    static Cell of(double v) { return {Kind::hardware, {}, 0, v}; }
    static Cell of(const Real& v, int digits) { return {Kind::extended, v.to_string(digits), 0, 0}; }
};

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;

    /// Every row has status "ok" in its last column.
    bool all_ok() const;
    /// Column lookup by header name.
    const Cell& at(std::size_t row, const std::string& column) const;
};

/// One row per node: method, eps, n, index, coordinate, digits, status.
Table cmd_points(const ExperimentConfig& config);
/// Grid maxima of the power function per (eps, n), one column per method,
/// ratios against Fekete and the scaled theoretical rate.
Table cmd_power_sweep(const ExperimentConfig& config);
/// Sup-grid interpolation error of x^m exp(x - eps^2 x^2) per (eps, m, n).
Table cmd_error_sweep(const ExperimentConfig& config);
/// Tail, Lebesgue, generic, explicit-rate and fill-distance bounds per
/// (method, eps, n), for unit norm.
Table cmd_bounds(const ExperimentConfig& config);

/// Fixed header of a subcommand ("points", "power-sweep", "error-sweep", "bounds").
const std::vector<std::string>& header_for(const std::string& command);

void write_csv(const Table& table, std::ostream& out);
void write_json(const Table& table, std::ostream& out);
void write(const Table& table, Format format, std::ostream& out);

std::string format_hardware(double v);

}  // namespace fekete::cli
