#include "experiments.hpp"

#include "fekete/baselines.hpp"
#include "fekete/bounds.hpp"
#include "fekete/fekete.hpp"
#include "fekete/interpolation.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <stdexcept>

namespace fekete::cli {

namespace {

const std::vector<std::string> kPointsHeader{"method", "eps", "n", "index", "coordinate", "digits", "status"};
const std::vector<std::string> kPowerHeader{"eps",
                                            "n",
                                            "digits",
                                            "fekete",
                                            "chebyshev",
                                            "pgreedy",
                                            "equispaced",
                                            "ratio_pgreedy_fekete",
                                            "ratio_chebyshev_fekete",
                                            "theory_rate",
                                            "status"};
const std::vector<std::string> kErrorHeader{"eps",
                                            "m",
                                            "n",
                                            "digits",
                                            "norm",
                                            "fekete",
                                            "chebyshev",
                                            "pgreedy",
                                            "equispaced",
                                            "ratio_pgreedy_fekete",
                                            "ratio_chebyshev_fekete",
                                            "rate_bound",
                                            "log_rate_bound",
                                            "status"};
const std::vector<std::string> kBoundsHeader{"method",
                                             "eps",
                                             "n",
                                             "digits",
                                             "c1",
                                             "tail_sup_bound",
                                             "log_tail_sup_bound",
                                             "lebesgue",
                                             "generic_bound",
                                             "log_generic_bound",
                                             "rate_bound",
                                             "log_rate_bound",
                                             "fill_distance",
                                             "fill_distance_bound",
                                             "log_fill_distance_bound",
                                             "status"};

// Runs `body` and maps failures onto row statuses; the message goes to stderr.
std::string guarded(const std::string& where, const std::function<void()>& body) {
    auto report = [&](const std::string& status, const char* what) {
        std::cerr << where << ": " << status << ": " << what << '\n';
        return status;
    };
    try {
        body();
        return "ok";
    } catch (const PrecisionError& e) {
        return report("precision-error", e.what());
    } catch (const NonConvergence& e) {
        return report("nonconvergence", e.what());
    } catch (const std::invalid_argument& e) {
        return report("invalid", e.what());
    } catch (const std::exception& e) {
        return report("error", e.what());
    }
}

std::string first_failure(const std::vector<std::string>& statuses) {
    for (const auto& s : statuses)
        if (s != "ok") return s;
    return "ok";
}

bool wants(const ExperimentConfig& c, Method m) {
    return std::find(c.methods.begin(), c.methods.end(), m) != c.methods.end();
}

std::string where(const std::string& command, Method m, double eps, int n) {
    return command + " " + method_name(m) + " eps=" + format_hardware(eps) + " n=" + std::to_string(n);
}

// Node sets per method for one kernel scale. The P-greedy trace is computed
// once for the largest n and reused through its prefixes.
class NodeSource {
public:
    NodeSource(const ExperimentConfig& config, double eps) : config_(config), eps_(eps) {}

    PointSet nodes(Method m, int n) {
        switch (m) {
            case Method::fekete:
                return solve_fekete(EnergyProblem(n, eps_, config_.interval)).points;
            case Method::chebyshev:
                return chebyshev_points(n, config_.interval);
            case Method::equispaced:
                return equispaced_points(n, config_.interval);
            case Method::pgreedy:
                return trace(n).prefix(static_cast<std::size_t>(n));
        }
        throw std::logic_error("unknown method");
    }

    /// Digits the node selection itself used; 0 when it runs in hardware precision.
    int selection_digits(Method m, int n) { return m == Method::pgreedy ? trace(n).digits : 0; }

private:
    const GreedyTrace& trace(int n) {
        if (!full_ && !full_failed_) {
            try {
                full_ = p_greedy(config_.n_max, GaussianKernel(eps_), config_.interval, config_.grid_size,
                                 make_context(config_.digits_for(config_.n_max)));
            } catch (const PrecisionError&) {
                full_failed_ = true;
            }
        }
        if (full_) return *full_;
        // The full run lost precision: fall back to a run of exactly n steps.
        auto it = partial_.find(n);
        if (it == partial_.end())
            it = partial_
                     .emplace(n, p_greedy(n, GaussianKernel(eps_), config_.interval, config_.grid_size,
                                          make_context(config_.digits_for(n))))
                     .first;
        return it->second;
    }

    const ExperimentConfig& config_;
    double eps_;
    std::optional<GreedyTrace> full_;
    bool full_failed_ = false;
    std::map<int, GreedyTrace> partial_;
};

double ratio(const Real& num, const Real& den) { return (num / den).to_double(); }

Cell hardware_or_none(bool present, double v) { return present ? Cell::of(v) : Cell::none(); }

}  // namespace

Method parse_method(const std::string& name) {
    if (name == "fekete") return Method::fekete;
    if (name == "chebyshev") return Method::chebyshev;
    if (name == "pgreedy") return Method::pgreedy;
    if (name == "equispaced") return Method::equispaced;
    throw std::invalid_argument("unknown method '" + name + "' (fekete, chebyshev, pgreedy, equispaced)");
}

std::string method_name(Method m) {
    switch (m) {
        case Method::fekete: return "fekete";
        case Method::chebyshev: return "chebyshev";
        case Method::pgreedy: return "pgreedy";
        case Method::equispaced: return "equispaced";
    }
    return "?";
}

void ExperimentConfig::validate() const {
    if (methods.empty()) throw std::invalid_argument("at least one method is required");
    if (eps.empty()) throw std::invalid_argument("at least one eps is required");
    for (double e : eps)
        if (!(e > 0) || !std::isfinite(e)) throw std::invalid_argument("eps must be positive and finite");
    if (n_min < 1 || n_max < n_min) throw std::invalid_argument("n range must be non-empty with n_min >= 1");
    if (grid_size < n_max) throw std::invalid_argument("grid size must be at least n_max");
    if (digits && *digits < PrecisionContext::kMinDigits)
        throw std::invalid_argument("digits must be at least " + std::to_string(PrecisionContext::kMinDigits));
    if (m_list.empty()) throw std::invalid_argument("m list must be non-empty");
    for (int m : m_list)
        if (m < 0) throw std::invalid_argument("m must be non-negative");
}

int ExperimentConfig::digits_for(int n) const { return digits ? *digits : auto_digits(n); }

bool Table::all_ok() const {
    return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.back().text == "ok"; });
}

const Cell& Table::at(std::size_t row, const std::string& column) const {
    const auto it = std::find(header.begin(), header.end(), column);
    if (it == header.end()) throw std::out_of_range("no column " + column);
    return rows.at(row)[static_cast<std::size_t>(it - header.begin())];
}

const std::vector<std::string>& header_for(const std::string& command) {
    if (command == "points") return kPointsHeader;
    if (command == "power-sweep") return kPowerHeader;
    if (command == "error-sweep") return kErrorHeader;
    if (command == "bounds") return kBoundsHeader;
    throw std::invalid_argument("unknown command " + command);
}

// --- points -----------------------------------------------------------------

Table cmd_points(const ExperimentConfig& config) {
    config.validate();
    Table t{kPointsHeader, {}};
    for (Method m : config.methods)
        for (double eps : config.eps) {
            NodeSource source(config, eps);
            for (int n = config.n_min; n <= config.n_max; ++n) {
                PointSet x;
                int digits = 0;
                const auto status = guarded(where("points", m, eps, n), [&] {
                    x = source.nodes(m, n);
                    digits = source.selection_digits(m, n);
                });
                const Cell d = digits ? Cell::of(digits) : Cell::none();
                if (status != "ok") {
                    t.rows.push_back({Cell::of(method_name(m)), Cell::of(eps), Cell::of(n), Cell::none(),
                                      Cell::none(), d, Cell::of(status)});
                    continue;
                }
                for (std::size_t i = 0; i < x.size(); ++i)
                    t.rows.push_back({Cell::of(method_name(m)), Cell::of(eps), Cell::of(n),
                                      Cell::of(static_cast<long>(i)), Cell::of(x[i]), d, Cell::of(status)});
            }
        }
    return t;
}

// --- power-sweep ------------------------------------------------------------

Table cmd_power_sweep(const ExperimentConfig& config) {
    config.validate();
    Table t{kPowerHeader, {}};
    const auto grid = uniform_grid(config.grid_size, config.interval);
    const double c = config.interval.c_omega();
    const std::vector<Method> order{Method::fekete, Method::chebyshev, Method::pgreedy, Method::equispaced};

    for (double eps : config.eps) {
        NodeSource source(config, eps);
        const GaussianKernel kernel(eps);
        // log of the measured Fekete maximum at the first n where the rate applies
        std::optional<std::pair<int, double>> anchor;
        for (int n = config.n_min; n <= config.n_max; ++n) {
            const int digits = config.digits_for(n);
            const auto ctx = make_context(digits);
            std::map<Method, Real> value;
            std::vector<std::string> statuses;
            for (Method m : order) {
                if (!wants(config, m)) continue;
                statuses.push_back(guarded(where("power-sweep", m, eps, n), [&] {
                    value.emplace(m, max_power_on_grid(source.nodes(m, n), kernel, grid, ctx).value);
                }));
            }

            std::vector<Cell> row{Cell::of(eps), Cell::of(n), Cell::of(digits)};
            for (Method m : order) row.push_back(value.count(m) ? Cell::of(value.at(m), digits) : Cell::none());
            const bool has_f = value.count(Method::fekete) && value.at(Method::fekete) > 0;
            row.push_back(hardware_or_none(has_f && value.count(Method::pgreedy),
                                           has_f && value.count(Method::pgreedy)
                                               ? ratio(value.at(Method::pgreedy), value.at(Method::fekete))
                                               : 0));
            row.push_back(hardware_or_none(has_f && value.count(Method::chebyshev),
                                           has_f && value.count(Method::chebyshev)
                                               ? ratio(value.at(Method::chebyshev), value.at(Method::fekete))
                                               : 0));

            Cell theory = Cell::none();
            if (tail_bound_applies(n, eps, c)) {
                const double lr = log_gaussian_rate_bound(n, eps, c, 1);
                if (!anchor && has_f) anchor.emplace(n, log(value.at(Method::fekete)).to_double() - lr);
                if (anchor) theory = Cell::of(std::exp(anchor->second + lr));
            }
            row.push_back(theory);
            row.push_back(Cell::of(first_failure(statuses)));
            t.rows.push_back(std::move(row));
        }
    }
    return t;
}

// --- error-sweep ------------------------------------------------------------

Table cmd_error_sweep(const ExperimentConfig& config) {
    config.validate();
    Table t{kErrorHeader, {}};
    const auto grid = uniform_grid(config.grid_size, config.interval);
    const double c = config.interval.c_omega();
    const std::vector<Method> order{Method::fekete, Method::chebyshev, Method::pgreedy, Method::equispaced};

    for (double eps : config.eps) {
        NodeSource source(config, eps);
        const GaussianKernel kernel(eps);
        // errors[(m, n)][method], statuses likewise; rows are emitted by m, then n
        std::map<std::pair<int, int>, std::map<Method, Real>> errors;
        std::map<std::pair<int, int>, std::vector<std::string>> statuses;

        for (int n = config.n_min; n <= config.n_max; ++n) {
            const auto ctx = make_context(config.digits_for(n));
            std::vector<Real> grid_r;
            for (double x : grid) grid_r.push_back(ctx.real(x));
            std::map<int, std::vector<Real>> f_grid;
            for (int m : config.m_list) {
                const TestFunction f(m, eps);
                auto& v = f_grid[m];
                for (const Real& x : grid_r) v.push_back(f(x));
            }

            for (Method method : order) {
                if (!wants(config, method)) continue;
                // The Gram factor and the grid-by-node kernel matrix are shared by every m.
                std::optional<PointSet> x;
                std::optional<CholeskySolver<Real>> chol;
                MatrixR gram_x, k_grid;
                const auto setup = guarded(where("error-sweep", method, eps, n), [&] {
                    x = source.nodes(method, n);
                    gram_x = gram(*x, kernel, ctx);
                    chol.emplace(gram_x);
                    k_grid.resize(static_cast<Eigen::Index>(grid.size()), n);
                    for (std::size_t i = 0; i < grid.size(); ++i)
                        for (int j = 0; j < n; ++j)
                            k_grid(static_cast<Eigen::Index>(i), j) =
                                kernel(grid_r[i], ctx.real((*x)[static_cast<std::size_t>(j)]));
                });
                for (int m : config.m_list) {
                    if (setup != "ok") {
                        statuses[{m, n}].push_back(setup);
                        continue;
                    }
                    statuses[{m, n}].push_back(guarded(where("error-sweep", method, eps, n), [&] {
                        const TestFunction f(m, eps);
                        VectorR fx(n);
                        for (int j = 0; j < n; ++j) fx(j) = f(ctx.real((*x)[static_cast<std::size_t>(j)]));
                        const VectorR coeffs = chol->solve(fx);
                        const Real residual = (gram_x * coeffs - fx).cwiseAbs().maxCoeff();
                        if (residual > ctx.pow10(-ctx.digits() / 2.0) * fx.cwiseAbs().maxCoeff())
                            throw PrecisionError("Gram solve residual " + residual.to_string(6));
                        const VectorR s = k_grid * coeffs;
                        Real err = ctx.real(0.0);
                        const auto& fg = f_grid.at(m);
                        for (std::size_t i = 0; i < grid.size(); ++i)
                            err = std::max(err, abs(fg[i] - s(static_cast<Eigen::Index>(i))));
                        errors[{m, n}].emplace(method, err);
                    }));
                }
            }
        }

        for (int m : config.m_list) {
            const double norm = test_function_norm(TestFunction(m, eps), 1e-17, make_context(30)).to_double();
            for (int n = config.n_min; n <= config.n_max; ++n) {
                const int digits = config.digits_for(n);
                const auto& e = errors[{m, n}];
                std::vector<Cell> row{Cell::of(eps), Cell::of(m), Cell::of(n), Cell::of(digits), Cell::of(norm)};
                for (Method method : order) row.push_back(e.count(method) ? Cell::of(e.at(method), digits) : Cell::none());
                const bool has_f = e.count(Method::fekete) && e.at(Method::fekete) > 0;
                for (Method num : {Method::pgreedy, Method::chebyshev}) {
                    const bool present = has_f && e.count(num);
                    row.push_back(hardware_or_none(present, present ? ratio(e.at(num), e.at(Method::fekete)) : 0));
                }
                if (tail_bound_applies(n, eps, c)) {
                    row.push_back(Cell::of(gaussian_rate_bound(n, eps, c, norm)));
                    row.push_back(Cell::of(log_gaussian_rate_bound(n, eps, c, norm)));
                } else {
                    row.push_back(Cell::none());
                    row.push_back(Cell::none());
                }
                row.push_back(Cell::of(first_failure(statuses[{m, n}])));
                t.rows.push_back(std::move(row));
            }
        }
    }
    return t;
}

// --- bounds -----------------------------------------------------------------

Table cmd_bounds(const ExperimentConfig& config) {
    config.validate();
    Table t{kBoundsHeader, {}};
    const auto grid = uniform_grid(config.grid_size, config.interval);
    const double c = config.interval.c_omega();

    for (Method m : config.methods)
        for (double eps : config.eps) {
            NodeSource source(config, eps);
            for (int n = config.n_min; n <= config.n_max; ++n) {
                double lambda = 0;
                int digits = 0;
                std::string status = guarded(where("bounds", m, eps, n), [&] {
                    lambda = lebesgue_constant(source.nodes(m, n), eps, grid);
                    digits = source.selection_digits(m, n);
                });
                const bool measured = status == "ok";

                std::vector<Cell> row{Cell::of(method_name(m)), Cell::of(eps), Cell::of(n),
                                      digits ? Cell::of(digits) : Cell::none(), Cell::of(rate_constant_c1())};
                if (tail_bound_applies(n, eps, c)) {
                    const double log_tail = log_tail_sup_bound(n, eps, c);
                    row.push_back(Cell::of(std::exp(log_tail)));
                    row.push_back(Cell::of(log_tail));
                    row.push_back(hardware_or_none(measured, lambda));
                    row.push_back(hardware_or_none(measured, generic_uniform_bound(n, lambda, std::exp(log_tail), 1)));
                    row.push_back(hardware_or_none(measured, std::log(2.0) + std::log1p(lambda) + log_tail));
                    const double lr = log_gaussian_rate_bound(n, eps, c, 1);
                    row.push_back(Cell::of(std::exp(lr)));
                    row.push_back(Cell::of(lr));
                } else {
                    if (measured) status = "precondition-unmet";
                    row.insert(row.end(), {Cell::none(), Cell::none(), hardware_or_none(measured, lambda), Cell::none(),
                                           Cell::none(), Cell::none(), Cell::none()});
                }

                // h of the equispaced set with n nodes
                if (n >= 2) {
                    const double h = fill_distance(equispaced_points(n, config.interval), config.interval);
                    row.push_back(Cell::of(h));
                    if (h < 1) {
                        const double b = fill_distance_bound(h, config.interval, 1);
                        row.push_back(Cell::of(b));
                        row.push_back(Cell::of(std::log(b)));
                    } else {
                        row.push_back(Cell::none());
                        row.push_back(Cell::none());
                    }
                } else {
                    row.insert(row.end(), {Cell::none(), Cell::none(), Cell::none()});
                }
                row.push_back(Cell::of(status));
                t.rows.push_back(std::move(row));
            }
        }
    return t;
}

// --- output -----------------------------------------------------------------

std::string format_hardware(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string csv_field(const Cell& c) {
    switch (c.kind) {
        case Cell::Kind::empty: return "";
        case Cell::Kind::integer: return std::to_string(c.integer);
        case Cell::Kind::hardware: return format_hardware(c.number);
        case Cell::Kind::extended: return c.text;
        case Cell::Kind::text: break;
    }
    if (c.text.find_first_of(",\"\n") == std::string::npos) return c.text;
    std::string q = "\"";
    for (char ch : c.text) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
}

nlohmann::ordered_json json_value(const Cell& c) {
    switch (c.kind) {
        case Cell::Kind::empty: return nullptr;
        case Cell::Kind::integer: return c.integer;
        case Cell::Kind::hardware:
            if (std::isfinite(c.number)) return c.number;
            return format_hardware(c.number);
        case Cell::Kind::extended:
        case Cell::Kind::text: return c.text;
    }
    return nullptr;
}

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
    for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
        out << '\n';
    }
}

void write_json(const Table& table, std::ostream& out) {
    auto records = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json r;
        for (std::size_t i = 0; i < row.size(); ++i) r[table.header[i]] = json_value(row[i]);
        records.push_back(std::move(r));
    }
    out << records.dump(2) << '\n';
}

void write(const Table& table, Format format, std::ostream& out) {
    if (format == Format::csv)
        write_csv(table, out);
    else
        write_json(table, out);
}

}  // namespace fekete::cli
