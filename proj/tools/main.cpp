#include "experiments.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace fekete::cli;

namespace {

struct Options {
    std::vector<std::string> methods{"fekete"};
    std::vector<double> eps{1.0};
    std::optional<int> n;
    int n_min = 2;
    int n_max = 20;
    std::vector<double> interval{-1, 1};
    int grid_size = 1000;
    std::string digits;
    std::vector<int> m_list{5, 10, 15};
    std::string format = "csv";
    std::string out;
};

void add_common(CLI::App& cmd, Options& o, const std::string& name) {
    cmd.add_option("--method", o.methods, "fekete, chebyshev, pgreedy, equispaced (comma list)")
        ->delimiter(',')
        ->capture_default_str();
    cmd.add_option("--eps", o.eps, "kernel scale, comma list allowed")->delimiter(',')->capture_default_str();
    cmd.add_option("--n", o.n, "single n; sets both ends of the range");
    cmd.add_option("--n-min", o.n_min)->capture_default_str();
    cmd.add_option("--n-max", o.n_max)->capture_default_str();
    cmd.add_option("--interval", o.interval, "a,b")->delimiter(',')->expected(2)->capture_default_str();
    cmd.add_option("--grid-size", o.grid_size)->capture_default_str();
    cmd.add_option("--digits", o.digits, "integer or auto (default auto; FEKETE_DIGITS overrides)");
    if (name == "error-sweep") cmd.add_option("--m-list", o.m_list)->delimiter(',')->capture_default_str();
    cmd.add_option("--format", o.format)->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
    cmd.add_option("--out", o.out, "output path (default stdout)");

    std::string columns;
    for (const auto& h : header_for(name)) columns += (columns.empty() ? "" : ",") + h;
    cmd.footer("Columns: " + columns + "\nExit status is 0 iff every row has status ok.");
}

std::optional<int> parse_digits(const std::string& text) {
    if (text.empty() || text == "auto") return std::nullopt;
    std::size_t used = 0;
    const int d = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument("digits must be an integer or auto");
    return d;
}

ExperimentConfig make_config(const Options& o) {
    ExperimentConfig c;
    c.methods.clear();
    for (const auto& m : o.methods) c.methods.push_back(parse_method(m));
    c.eps = o.eps;
    c.n_min = o.n ? *o.n : o.n_min;
    c.n_max = o.n ? *o.n : o.n_max;
    if (o.interval.size() != 2) throw std::invalid_argument("--interval needs a,b");
    c.interval = fekete::Interval(o.interval[0], o.interval[1]);
    c.grid_size = o.grid_size;
    // explicit flag, then the environment, then the auto rule
    std::string digits = o.digits;
    if (digits.empty())
        if (const char* env = std::getenv("FEKETE_DIGITS")) digits = env;
    c.digits = parse_digits(digits);
    c.m_list = o.m_list;
    c.format = o.format == "json" ? Format::json : Format::csv;
    c.validate();
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Approximate Fekete points for the Gaussian kernel: node sets, power-function and error sweeps, bounds"};
    app.require_subcommand(1);

    Options o;
    const std::vector<std::pair<std::string, std::string>> commands{
        {"points", "node coordinates per method and n"},
        {"power-sweep", "grid maxima of the power function"},
        {"error-sweep", "sup-grid errors for x^m exp(x - eps^2 x^2)"},
        {"bounds", "error bounds and measured Lebesgue constants"}};
    for (const auto& [name, help] : commands) add_common(*app.add_subcommand(name, help), o, name);

    CLI11_PARSE(app, argc, argv);

    const std::string name = app.get_subcommands().front()->get_name();
    ExperimentConfig config;
    try {
        config = make_config(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }

    Table table;
    if (name == "points")
        table = cmd_points(config);
    else if (name == "power-sweep")
        table = cmd_power_sweep(config);
    else if (name == "error-sweep")
        table = cmd_error_sweep(config);
    else
        table = cmd_bounds(config);

    if (o.out.empty()) {
        write(table, config.format, std::cout);
    } else {
        std::ofstream file(o.out);
        if (!file) {
            std::cerr << "error: cannot open " << o.out << '\n';
            return 2;
        }
        write(table, config.format, file);
    }
    return table.all_ok() ? 0 : 1;
}
