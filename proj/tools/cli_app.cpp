// Copyright 2026 The qdense Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli_app.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdense/qdense.hpp"

namespace qdense::cli {
namespace {

using nlohmann::json;

constexpr const char* kCsvHeader = "d,p,q,S_rho,S_rho_star,chi,T,chi_times_T,degenerate";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::optional<std::string> d;
    std::optional<std::string> p;
    std::optional<std::string> q;
    std::vector<std::string> grids;
    std::uint64_t trials = 1000000;
    std::uint64_t seed = 42;
    std::string format = "csv";
    std::string output;
};

std::string num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_unit(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw UsageError(what + ": cannot parse '" + text + "'");
    }
    if (used != text.size()) throw UsageError(what + ": cannot parse '" + text + "'");
    if (!(v >= 0.0 && v <= 1.0)) throw UsageError(what + " = " + text + " outside [0, 1]");
    return v;
}

/// Parsed `axis=start:stop:steps`.
std::map<std::string, Grid> parse_grids(const std::vector<std::string>& specs) {
    std::map<std::string, Grid> out;
    for (const auto& spec : specs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos) throw UsageError("grid '" + spec + "' is not axis=start:stop:steps");
        const std::string axis = spec.substr(0, eq);
        if (axis != "d" && axis != "p" && axis != "q") throw UsageError("unknown grid axis '" + axis + "'");
        if (out.count(axis)) throw UsageError("grid for axis '" + axis + "' given twice");
        std::vector<std::string> parts;
        std::stringstream ss(spec.substr(eq + 1));
        for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
        if (parts.size() != 3) throw UsageError("grid '" + spec + "' is not axis=start:stop:steps");
        Grid g;
        g.start = parse_unit(parts[0], "grid " + axis + " start");
        g.stop = parse_unit(parts[1], "grid " + axis + " stop");
        long long steps = 0;
        try {
            std::size_t used = 0;
            steps = std::stoll(parts[2], &used);
            if (used != parts[2].size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw UsageError("grid " + axis + " steps: cannot parse '" + parts[2] + "'");
        }
        if (steps < 2) throw UsageError("grid " + axis + " needs at least 2 steps");
        g.steps = static_cast<std::size_t>(steps);
        out[axis] = g;
    }
    return out;
}

/// One axis, from either a scalar flag or a grid. `auto_ok` lets the
/// scalar be the literal `auto` (reported through `is_auto`).
struct Axis {
    std::vector<double> values;
    json meta;
    bool is_auto = false;
};

Axis resolve_axis(const std::string& name, const std::optional<std::string>& scalar,
                  const std::map<std::string, Grid>& grids, bool auto_ok) {
    const auto g = grids.find(name);
    if (scalar && g != grids.end()) throw UsageError("--" + name + " and --grid " + name + "=... are exclusive");
    if (g != grids.end()) {
        return Axis{g->second.values(),
                    json{{"start", g->second.start}, {"stop", g->second.stop}, {"steps", g->second.steps}}};
    }
    if (!scalar) throw UsageError("missing --" + name + " (or --grid " + name + "=start:stop:steps)");
    if (*scalar == "auto") {
        if (!auto_ok) throw UsageError("--" + name + " does not accept 'auto'");
        return Axis{{0.0}, json("auto"), true};
    }
    const double v = parse_unit(*scalar, "--" + name);
    return Axis{{v}, json{{"value", v}}};
}

// ---------------------------------------------------------------------------
// Output

class Table {
public:
    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    /// Cells are pre-formatted numbers, or nullopt for absent values.
    void add(std::vector<std::optional<double>> cells) { rows_.push_back(std::move(cells)); }
    void add_raw(std::vector<json> cells) { raw_.push_back(std::move(cells)); }

    void write_csv(std::ostream& os) const {
        for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
        os << '\n';
        for (const auto& row : rows_) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << (row[i] ? num(*row[i]) : "");
            os << '\n';
        }
        for (const auto& row : raw_) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                os << (i ? "," : "");
                if (row[i].is_string()) {
                    os << row[i].get<std::string>();
                } else if (row[i].is_number_float()) {
                    os << num(row[i].get<double>());
                } else if (!row[i].is_null()) {
                    os << row[i].dump();
                }
            }
            os << '\n';
        }
    }

    json to_json() const {
        json rows = json::array();
        for (const auto& row : rows_) {
            json obj = json::object();
            for (std::size_t i = 0; i < row.size(); ++i) obj[columns_[i]] = row[i] ? json(*row[i]) : json(nullptr);
            rows.push_back(std::move(obj));
        }
        for (const auto& row : raw_) {
            json obj = json::object();
            for (std::size_t i = 0; i < row.size(); ++i) obj[columns_[i]] = row[i];
            rows.push_back(std::move(obj));
        }
        return rows;
    }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::optional<double>>> rows_;
    std::vector<std::vector<json>> raw_;
};

void emit(const Options& opt, const Table& table, json meta, std::ostream& out) {
    std::ofstream file;
    std::ostream* os = &out;
    if (!opt.output.empty()) {
        file.open(opt.output);
        if (!file) throw UsageError("cannot open output file '" + opt.output + "'");
        os = &file;
    }
    if (opt.format == "json") {
        meta["version"] = QDENSE_VERSION;
        json doc{{"meta", std::move(meta)}, {"rows", table.to_json()}};
        *os << doc.dump(2) << '\n';
    } else {
        table.write_csv(*os);
    }
}

Table plan_table(const SweepTable& sweep_table) {
    Table t({"d", "p", "q", "S_rho", "S_rho_star", "chi", "T", "chi_times_T", "degenerate"});
    for (const auto& row : sweep_table.rows) {
        if (row.result) {
            const PlanResult& r = *row.result;
            t.add({r.d, r.p, r.q, r.entropy_state, r.entropy_avg, r.capacity, r.success_prob, r.chi_times_t(), 0.0});
        } else {
            t.add({row.d, row.p, row.q, std::nullopt, std::nullopt, std::nullopt, std::nullopt, std::nullopt, 1.0});
        }
    }
    return t;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_plan_a(const Options& opt, std::ostream& out) {
    const auto grids = parse_grids(opt.grids);
    if (opt.p || opt.q || grids.count("p") || grids.count("q")) throw UsageError("plan-a takes only d");
    const Axis d = resolve_axis("d", opt.d, grids, false);
    SweepAxes axes;
    axes.d = d.values;
    const SweepTable table = sweep(axes, SweepMode::PlanA);
    emit(opt, plan_table(table), json{{"command", "plan-a"}, {"grids", {{"d", d.meta}}}, {"seed", nullptr}}, out);
    return kOk;
}

int cmd_plan_b(const Options& opt, std::ostream& out, std::ostream& err) {
    const auto grids = parse_grids(opt.grids);
    const Axis d = resolve_axis("d", opt.d, grids, false);
    const Axis p = resolve_axis("p", opt.p, grids, false);
    const Axis q = resolve_axis("q", opt.q, grids, true);
    SweepAxes axes;
    axes.d = d.values;
    axes.p = p.values;
    axes.q = q.values;
    const SweepTable table = sweep(axes, q.is_auto ? SweepMode::PlanBQStar : SweepMode::PlanB);
    emit(opt, plan_table(table),
         json{{"command", "plan-b"}, {"grids", {{"d", d.meta}, {"p", p.meta}, {"q", q.meta}}}, {"seed", nullptr}},
         out);
    const auto degenerate = std::count_if(table.rows.begin(), table.rows.end(),
                                          [](const SweepRow& r) { return r.degenerate(); });
    if (degenerate == static_cast<std::ptrdiff_t>(table.rows.size())) {
        err << "plan-b: post-selection probability vanishes at every requested point\n";
        return kDegenerate;
    }
    if (degenerate > 0) err << "plan-b: " << degenerate << " degenerate point(s) flagged\n";
    return kOk;
}

int cmd_optimize(const Options& opt, std::ostream& out) {
    const numerics::Minimum m = find_min_chi1();
    const double threshold = find_capacity_threshold();
    Table t({"threshold_d", "d_min", "chi_min"});
    t.add({threshold, m.x, m.value});
    emit(opt, t, json{{"command", "optimize"}, {"grids", json::object()}, {"seed", nullptr}}, out);
    return kOk;
}

int cmd_verify(const Options& opt, std::ostream& out, std::ostream& err, const Hooks& hooks) {
    const VerifyReport report = run_verification(hooks.verify);
    Table t({"check", "max_deviation", "tolerance", "pass", "detail"});
    for (const auto& c : report.checks) {
        t.add_raw({c.name, std::isfinite(c.max_deviation) ? json(c.max_deviation) : json(nullptr), c.tolerance,
                   c.passed ? 1 : 0, c.detail.empty() ? json(nullptr) : json(c.detail)});
        if (!c.passed) {
            err << "verify: FAILED " << c.name << " (max deviation " << c.max_deviation << ", tolerance "
                << c.tolerance << ")" << (c.detail.empty() ? "" : ": " + c.detail) << '\n';
        }
    }
    emit(opt, t, json{{"command", "verify"}, {"grids", json::object()}, {"seed", hooks.verify.seed}}, out);
    return report.all_passed() ? kOk : kVerifyFailed;
}

int cmd_mc(const Options& opt, std::ostream& out) {
    if (!opt.grids.empty()) throw UsageError("mc takes scalar --d/--p/--q, not grids");
    if (opt.trials == 0) throw UsageError("--trials must be at least 1");
    const std::map<std::string, Grid> none;
    const Axis d_axis = resolve_axis("d", opt.d, none, false);
    const Axis p_axis = resolve_axis("p", opt.p, none, false);
    const Axis q_axis = resolve_axis("q", opt.q, none, true);
    const DampingParam d(d_axis.values[0]);
    const double p = p_axis.values[0];
    const double q = q_axis.is_auto ? optimal_reversal_strength(d, p).q : q_axis.values[0];

    const Rho2 analytic = rho2_closed_form(d, p, q);
    const McEstimate est = simulate_plan_b(d, p, q, opt.trials, opt.seed);

    std::optional<double> dev;
    std::optional<double> bound;
    if (est.state_hat) {
        dev = max_abs_diff(est.state_hat->matrix(), analytic.state.matrix());
        bound = 5.0 / std::sqrt(static_cast<double>(est.successes));
    }
    const double sigma = est.t_stderr > 0.0 ? std::abs(est.t_hat - analytic.success_prob) / est.t_stderr
                                            : (est.t_hat == analytic.success_prob ? 0.0 : HUGE_VAL);

    Table t({"d", "p", "q", "trials", "seed", "successes", "t_hat", "t_stderr", "T_analytic", "sigma_distance",
             "state_max_dev", "state_dev_bound"});
    t.add_raw({d.value(), p, q, est.trials, est.seed, est.successes, est.t_hat, est.t_stderr, analytic.success_prob,
               sigma, dev ? json(*dev) : json(nullptr), bound ? json(*bound) : json(nullptr)});
    emit(opt, t,
         json{{"command", "mc"},
              {"grids", {{"d", d_axis.meta}, {"p", p_axis.meta}, {"q", q_axis.meta}}},
              {"seed", opt.seed}},
         out);
    return kOk;
}

void add_common(CLI::App* sub, Options& opt) {
    sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", opt.output, "Write the table to PATH instead of stdout");
}

void add_point_flags(CLI::App* sub, Options& opt, bool with_pq) {
    sub->add_option("--d", opt.d, "Damping coefficient in [0,1]");
    if (with_pq) {
        sub->add_option("--p", opt.p, "Weak measurement strength in [0,1]");
        sub->add_option("--q", opt.q, "Reversal measurement strength in [0,1], or 'auto'");
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Hooks& hooks) {
    CLI::App app{"Dense coding through amplitude damping with weak and reversal measurements", "qdense"};
    app.require_subcommand(1);
    app.set_version_flag("--version", QDENSE_VERSION);
    Options opt;

    auto* plan_a = app.add_subcommand("plan-a", "Bell pair through amplitude damping, then dense coding");
    add_point_flags(plan_a, opt, false);
    plan_a->add_option("--grid", opt.grids, "Sweep axis=start:stop:steps (repeatable)");
    add_common(plan_a, opt);

    auto* plan_b = app.add_subcommand("plan-b", "Weak measurement, damping, reversal measurement, dense coding");
    add_point_flags(plan_b, opt, true);
    plan_b->add_option("--grid", opt.grids, "Sweep axis=start:stop:steps (repeatable)");
    add_common(plan_b, opt);

    auto* optimize = app.add_subcommand("optimize", "Capacity threshold and minimum of the unprotected curve");
    add_common(optimize, opt);

    auto* verify = app.add_subcommand("verify", "Run the invariant and closed-form cross-checks");
    add_common(verify, opt);

    auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of the heralding probability and state");
    add_point_flags(mc, opt, true);
    mc->add_option("--grid", opt.grids, "Not supported; present for a clear error");
    mc->add_option("--trials", opt.trials, "Number of trials");
    mc->add_option("--seed", opt.seed, "RNG seed");
    add_common(mc, opt);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*plan_a) return cmd_plan_a(opt, out);
        if (*plan_b) return cmd_plan_b(opt, out, err);
        if (*optimize) return cmd_optimize(opt, out);
        if (*verify) return cmd_verify(opt, out, err, hooks);
        if (*mc) return cmd_mc(opt, out);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        switch (e.kind()) {
            case ErrorKind::PostSelectionImpossible: return kDegenerate;
            case ErrorKind::InvalidParameter: return kUsage;
            default: return kVerifyFailed;
        }
    }
    return kUsage;
}

}  // namespace qdense::cli
