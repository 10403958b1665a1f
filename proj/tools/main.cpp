#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fracstab/char_function.hpp"
#include "fracstab/critical_curve.hpp"
#include "fracstab/errors.hpp"
#include "fracstab/fde_solver.hpp"
#include "fracstab/fhn.hpp"
#include "fracstab/selftest.hpp"
#include "fracstab/stability.hpp"

namespace {

using nlohmann::json;

struct CliError {
    int code;
    std::string message;
};

[[noreturn]] void fail_validation(const std::string& message) {
    throw CliError{2, message};
}

std::string fmt_double(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    return buf;
}

// One output value: pre-rendered text plus whether JSON must quote it.
struct Cell {
    std::string text;
    bool quoted = false;
    bool null = false;
};

Cell num_cell(double v, int precision) { return {fmt_double(v, precision), false, false}; }
Cell int_cell(long v) { return {std::to_string(v), false, false}; }
Cell str_cell(std::string s) { return {std::move(s), true, false}; }
Cell bool_cell(bool b) { return {b ? "true" : "false", false, false}; }
Cell null_cell() { return {"null", false, true}; }

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<Cell>> rows;
    bool json_single_object = false;  // single-verdict commands emit one object
};

std::string render_csv(const Table& table) {
    std::string out;
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        if (i) out += ',';
        out += table.header[i];
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            if (!row[i].null) out += row[i].text;
        }
        out += '\n';
    }
    return out;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            default: out += ch;
        }
    }
    return out;
}

std::string render_json(const Table& table) {
    const auto object = [&](const std::vector<Cell>& row) {
        std::string out = "{";
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += '"' + table.header[i] + "\":";
            if (row[i].null) {
                out += "null";
            } else if (row[i].quoted) {
                out += '"' + json_escape(row[i].text) + '"';
            } else {
                out += row[i].text;
            }
        }
        out += '}';
        return out;
    };
    if (table.json_single_object && table.rows.size() == 1) {
        return object(table.rows.front()) + "\n";
    }
    std::string out = "[";
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        if (r) out += ',';
        out += "\n  " + object(table.rows[r]);
    }
    out += table.rows.empty() ? "]\n" : "\n]\n";
    return out;
}

struct CommonOpts {
    std::string output;
    std::string format;
    int precision = 12;
    std::string config;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--output", c.output, "Write the artifact to this path instead of stdout");
    cmd->add_option("--format", c.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--precision", c.precision, "Significant digits for floating-point output")
        ->check(CLI::Range(1, 17));
    cmd->add_option("--config", c.config,
                    "JSON file with parameter defaults; explicit flags take precedence");
}

struct Param {
    const char* name;
    std::optional<double>* slot;
    std::optional<double> fallback;  // value used when neither flag nor config set one
};

void add_params(CLI::App* cmd, const std::vector<Param>& params) {
    for (const Param& p : params) {
        cmd->add_option(std::string("--") + p.name, *p.slot);
    }
}

// Applies --config values to anything not set on the command line, then
// checks that every parameter has a value. Unknown keys are errors.
void resolve_params(CLI::App* cmd, CommonOpts& common, const std::vector<Param>& params) {
    if (!common.config.empty()) {
        std::ifstream in(common.config);
        if (!in) {
            fail_validation("cannot open config file '" + common.config + "'");
        }
        json doc;
        try {
            in >> doc;
        } catch (const json::exception& e) {
            fail_validation(std::string("config is not valid JSON: ") + e.what());
        }
        if (!doc.is_object()) {
            fail_validation("config root must be a JSON object");
        }
        for (const auto& [key, value] : doc.items()) {
            if (key == "output") {
                if (cmd->count("--output") == 0) common.output = value.get<std::string>();
                continue;
            }
            if (key == "format") {
                if (cmd->count("--format") == 0) {
                    const auto f = value.get<std::string>();
                    if (f != "csv" && f != "json") {
                        fail_validation("config format must be csv or json");
                    }
                    common.format = f;
                }
                continue;
            }
            if (key == "precision") {
                if (cmd->count("--precision") == 0) {
                    if (!value.is_number_integer()) fail_validation("config precision must be an integer");
                    common.precision = value.get<int>();
                }
                continue;
            }
            bool known = false;
            for (const Param& p : params) {
                if (key == p.name) {
                    known = true;
                    if (!p.slot->has_value()) {
                        if (!value.is_number()) {
                            fail_validation("config value for '" + key + "' must be a number");
                        }
                        *p.slot = value.get<double>();
                    }
                    break;
                }
            }
            if (!known) {
                fail_validation("unknown config key '" + key + "' for this command");
            }
        }
    }
    for (const Param& p : params) {
        if (!p.slot->has_value()) {
            if (p.fallback) {
                *p.slot = *p.fallback;
            } else {
                fail_validation(std::string("missing required --") + p.name);
            }
        }
    }
}

long as_count(const char* name, double v, long minimum) {
    if (std::nearbyint(v) != v || v < static_cast<double>(minimum)) {
        fail_validation(std::string("--") + name + " must be an integer >= " +
                        std::to_string(minimum));
    }
    return static_cast<long>(v);
}

void emit(const Table& table, const CommonOpts& common, const std::string& default_format) {
    const std::string& format = common.format.empty() ? default_format : common.format;
    const std::string text = format == "json" ? render_json(table) : render_csv(table);
    if (common.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(common.output, std::ios::binary);
        if (!out) {
            fail_validation("cannot write to '" + common.output + "'");
        }
        out << text;
    }
}

std::vector<Cell> verdict_row(const fracstab::StabilityVerdict& v, int precision) {
    return {str_cell(fracstab::to_string(v.kind)), str_cell(v.rule),
            v.decay_order ? num_cell(*v.decay_order, precision) : null_cell(),
            v.margin ? num_cell(*v.margin, precision) : null_cell()};
}

const char* region_label(double a, double b, double c) {
    if (c > 0.0 && a + 1.0 > 0.0 && a + b > 0.0 && b + c > 0.0) {
        return "stable-all";
    }
    if (c < 0.0 || a + b + c + 1.0 <= 0.0) {
        return "unstable-all";
    }
    return "order-dependent";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stability analysis of two-component incommensurate fractional-order systems"};
    app.require_subcommand(1);

    std::optional<double> a11, a12, a21, a22, q1, q2;      // classify
    std::optional<double> ca, cb, cc;                      // rhp-count coefficients
    std::optional<double> curve_c, b_query;                // astar
    std::optional<double> omega_min, omega_max, n_samples; // curve
    std::optional<double> a_min, a_max, b_min, b_max;      // regions
    std::optional<double> fr, fc, fd, fi, grid_n;          // fhn commands
    std::optional<double> i_min, i_max;                    // branch
    std::optional<double> t_end, step, v0, w0;             // simulate
    std::uint64_t seed = 20170403;
    long systems = 1000;

    CommonOpts common[8];

    auto* classify = app.add_subcommand(
        "classify", "Stability verdict for D^{q1}x = a11 x + a12 y, D^{q2}y = a21 x + a22 y");
    const std::vector<Param> classify_params{{"a11", &a11}, {"a12", &a12}, {"a21", &a21},
                                             {"a22", &a22}, {"q1", &q1},   {"q2", &q2}};
    add_params(classify, classify_params);
    add_common(classify, common[0]);

    auto* rhp = app.add_subcommand(
        "rhp-count", "Right-half-plane root count of s^{q1+q2} + a s^{q2} + b s^{q1} + c");
    const std::vector<Param> rhp_params{{"a", &ca}, {"b", &cb}, {"c", &cc}, {"q1", &q1}, {"q2", &q2}};
    add_params(rhp, rhp_params);
    add_common(rhp, common[1]);

    auto* astar = app.add_subcommand("astar", "Critical threshold a*(b) for fixed c, q1, q2");
    const std::vector<Param> astar_params{{"c", &curve_c}, {"q1", &q1}, {"q2", &q2}, {"b", &b_query}};
    add_params(astar, astar_params);
    add_common(astar, common[2]);

    auto* curve = app.add_subcommand(
        "curve", "Critical curve (omega, b, a) on a log-spaced frequency grid");
    const std::vector<Param> curve_params{{"c", &curve_c},         {"q1", &q1},
                                          {"q2", &q2},             {"omega-min", &omega_min},
                                          {"omega-max", &omega_max}, {"n", &n_samples}};
    add_params(curve, curve_params);
    add_common(curve, common[3]);

    auto* regions = app.add_subcommand(
        "regions", "Order-robust stability labels on an (a,b) rectangle");
    const std::vector<Param> regions_params{{"c", &curve_c},   {"a-min", &a_min}, {"a-max", &a_max},
                                            {"b-min", &b_min}, {"b-max", &b_max}, {"n", &n_samples}};
    add_params(regions, regions_params);
    add_common(regions, common[4]);

    auto* hopf = app.add_subcommand(
        "hopf", "Hopf boundary of the neuron equilibrium in the (q1,q2)-plane");
    const std::vector<Param> hopf_params{{"r", &fr}, {"c", &fc}, {"d", &fd}, {"I", &fi},
                                         {"grid", &grid_n}};
    add_params(hopf, hopf_params);
    add_common(hopf, common[5]);

    auto* branch = app.add_subcommand(
        "branch", "Equilibrium branch v*(I) with the order-robust stability flag");
    const std::vector<Param> branch_params{{"r", &fr},         {"c", &fc},         {"d", &fd},
                                           {"I-min", &i_min},  {"I-max", &i_max},  {"n", &n_samples}};
    add_params(branch, branch_params);
    add_common(branch, common[6]);

    auto* simulate = app.add_subcommand(
        "simulate", "Integrate the fractional neuron model and emit (t, v, w); "
                    "the grid defaults to step 0.01 on [0, 400]");
    const std::vector<Param> simulate_params{
        {"r", &fr}, {"c", &fc}, {"d", &fd}, {"I", &fi},     {"q1", &q1}, {"q2", &q2},
        {"t-end", &t_end, 400.0}, {"step", &step, 0.01}, {"v0", &v0}, {"w0", &w0}};
    add_params(simulate, simulate_params);
    add_common(simulate, common[7]);

    auto* selftest = app.add_subcommand(
        "selftest", "Cross-validate the classifier, curve invariants and neuron anchors");
    selftest->add_option("--seed", seed, "Seed for the randomized suites");
    selftest->add_option("--systems", systems, "Number of random systems for the oracle check")
        ->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        using namespace fracstab;

        if (classify->parsed()) {
            resolve_params(classify, common[0], classify_params);
            const LinearSystem2 sys{*a11, *a12, *a21, *a22, *q1, *q2};
            if (sys.decoupled()) {
                std::cerr << "note: a12*a21 == 0, classifying the equations separately\n";
            }
            const StabilityVerdict v = classify_matrix(sys);
            Table table;
            table.header = {"kind", "rule", "decay_order", "margin"};
            table.rows.push_back(verdict_row(v, common[0].precision));
            table.json_single_object = true;
            emit(table, common[0], "json");
            return 0;
        }

        if (rhp->parsed()) {
            resolve_params(rhp, common[1], rhp_params);
            const RhpCount rc = count_rhp_roots(CharFunction::make(*ca, *cb, *cc, *q1, *q2));
            Table table;
            table.header = {"count", "contour_radius", "winding_residual"};
            table.rows.push_back({int_cell(rc.count), num_cell(rc.contour_radius, common[1].precision),
                                  num_cell(rc.winding_residual, common[1].precision)});
            table.json_single_object = true;
            emit(table, common[1], "json");
            return 0;
        }

        if (astar->parsed()) {
            resolve_params(astar, common[2], astar_params);
            const CriticalCurve cv = CriticalCurve::make(*curve_c, *q1, *q2);
            const double omega = cv.crossing_frequency(*b_query);
            Table table;
            table.header = {"b", "a_star", "omega"};
            table.rows.push_back({num_cell(*b_query, common[2].precision),
                                  num_cell(cv.a_of(omega), common[2].precision),
                                  num_cell(omega, common[2].precision)});
            table.json_single_object = true;
            emit(table, common[2], "json");
            return 0;
        }

        if (curve->parsed()) {
            resolve_params(curve, common[3], curve_params);
            const long n = as_count("n", *n_samples, 2);
            if (!(*omega_min > 0.0) || !(*omega_max > *omega_min)) {
                fail_validation("require 0 < --omega-min < --omega-max");
            }
            const CriticalCurve cv = CriticalCurve::make(*curve_c, *q1, *q2);
            Table table;
            table.header = {"omega", "b", "a"};
            const double ratio = std::log(*omega_max / *omega_min);
            for (long k = 0; k < n; ++k) {
                const double omega =
                    *omega_min * std::exp(ratio * static_cast<double>(k) / static_cast<double>(n - 1));
                const CurveSample s = cv.sample(omega);
                table.rows.push_back({num_cell(s.omega, common[3].precision),
                                      num_cell(s.b, common[3].precision),
                                      num_cell(s.a, common[3].precision)});
            }
            emit(table, common[3], "csv");
            return 0;
        }

        if (regions->parsed()) {
            resolve_params(regions, common[4], regions_params);
            const long n = as_count("n", *n_samples, 2);
            if (*curve_c == 0.0) {
                fail_validation("--c must be nonzero");
            }
            if (!(*a_min < *a_max) || !(*b_min < *b_max)) {
                fail_validation("require --a-min < --a-max and --b-min < --b-max");
            }
            Table table;
            table.header = {"a", "b", "label"};
            for (long i = 0; i < n; ++i) {
                const double a = *a_min + (*a_max - *a_min) * static_cast<double>(i) /
                                              static_cast<double>(n - 1);
                for (long j = 0; j < n; ++j) {
                    const double b = *b_min + (*b_max - *b_min) * static_cast<double>(j) /
                                                  static_cast<double>(n - 1);
                    table.rows.push_back({num_cell(a, common[4].precision),
                                          num_cell(b, common[4].precision),
                                          str_cell(region_label(a, b, *curve_c))});
                }
            }
            emit(table, common[4], "csv");
            return 0;
        }

        if (hopf->parsed()) {
            resolve_params(hopf, common[5], hopf_params);
            const long n = as_count("grid", *grid_n, 1);
            const FhnParams params{*fr, *fc, *fd, *fi};
            const auto points = hopf_curve(params, static_cast<int>(n));
            Table table;
            table.header = {"q1", "q2"};
            for (const auto& pt : points) {
                table.rows.push_back({num_cell(pt[0], common[5].precision),
                                      num_cell(pt[1], common[5].precision)});
            }
            emit(table, common[5], "csv");
            return 0;
        }

        if (branch->parsed()) {
            resolve_params(branch, common[6], branch_params);
            const long n = as_count("n", *n_samples, 2);
            const auto points = branch_diagram(*fr, *fc, *fd, *i_min, *i_max, static_cast<int>(n));
            Table table;
            table.header = {"I", "v_star", "order_robust"};
            for (const auto& pt : points) {
                table.rows.push_back({num_cell(pt.I, common[6].precision),
                                      num_cell(pt.v_star, common[6].precision),
                                      bool_cell(pt.order_robust)});
            }
            emit(table, common[6], "csv");
            return 0;
        }

        if (simulate->parsed()) {
            resolve_params(simulate, common[7], simulate_params);
            const FhnParams params{*fr, *fc, *fd, *fi};
            const FdeProblem problem =
                make_fhn_problem(params, *q1, *q2, *v0, *w0, *t_end, *step);
            const Trajectory traj = solve(problem);
            if (traj.truncated) {
                std::cerr << "warning: trajectory overflowed and was truncated at t="
                          << traj.times.back() << "\n";
            }
            Table table;
            table.header = {"t", "v", "w"};
            for (std::size_t k = 0; k < traj.size(); ++k) {
                table.rows.push_back({num_cell(traj.times[k], common[7].precision),
                                      num_cell(traj.state(k)[0], common[7].precision),
                                      num_cell(traj.state(k)[1], common[7].precision)});
            }
            emit(table, common[7], "csv");
            return 0;
        }

        if (selftest->parsed()) {
            SelftestOptions opt;
            opt.seed = seed;
            opt.systems = static_cast<int>(systems);
            const SelftestReport report = run_selftest(opt, std::cout);
            return report.ok() ? 0 : 1;
        }
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const fracstab::BoundaryRootError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const fracstab::UnreliableWindingError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const fracstab::NoConvergenceError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const fracstab::DegenerateTailError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
