#include "cquant/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "cquant/allocation.hpp"
#include "cquant/errors.hpp"
#include "cquant/scenarios.hpp"

namespace cquant {

namespace {

std::string read_all(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Runs `body`, mapping exceptions to a message on `err` and exit code 1.
int guarded(std::ostream& err, const std::function<int()>& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
}

int write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path == "-" || path.empty()) {
        out << text;
        return kExitOk;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    f << text;
    f.flush();
    if (!f) throw std::runtime_error("write to '" + path + "' failed");
    return kExitOk;
}

LineConstraintScenario line_scenario(const ScenarioParams& p) {
    return {p.a, p.b, p.slope, p.intercept, p.window_lo, p.window_hi};
}

}  // namespace

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names{"interval-left", "interval-right", "interval-interior",
                                                "line-constraint", "semicircle",    "triangle",
                                                "exam1"};
    return names;
}

ClosedFormResult closed_form_for(const std::string& scenario, int n, const ScenarioParams& p) {
    if (scenario == "interval-left") return interval_left_endpoint(n, p.a, p.b);
    if (scenario == "interval-right") return interval_right_endpoint(n, p.a, p.b);
    if (scenario == "interval-interior") return interval_interior(n, {p.a, p.b, p.c, p.d});
    if (scenario == "line-constraint") return line_constraint_optimal(n, line_scenario(p));
    if (scenario == "semicircle") {
        return semicircle_conditional(n, p.n1 ? *p.n1 : semicircle_allocate(n).parts[0]);
    }
    if (scenario == "triangle") return triangle_conditional(n);
    if (scenario == "exam1") return exam1_conditional(n);
    throw DomainError("unknown scenario '" + scenario + "'");
}

std::vector<Curve> scenario_support(const std::string& scenario, const ScenarioParams& p) {
    if (scenario == "semicircle") return semicircle_problem(3).measure.curves();
    if (scenario == "triangle") return triangle_problem(3).measure.curves();
    if (scenario == "exam1") return {Curve::segment({0.0, 0.0}, {1.0, 0.0})};
    for (const auto& name : scenario_names()) {
        if (name == scenario) return {Curve::segment({p.a, 0.0}, {p.b, 0.0})};
    }
    throw DomainError("unknown scenario '" + scenario + "'");
}

SolverOptions apply_globals(SolverOptions o, const GlobalOptions& global) {
    if (global.seed) o.rng_seed = *global.seed;
    if (global.restarts) o.restarts = *global.restarts;
    return o;
}

ScenarioProblem scenario_problem(const std::string& scenario, int n, const ScenarioParams& p,
                                 const GlobalOptions& global) {
    const SolverOptions base = apply_globals({}, global);
    if (scenario == "interval-left") return {interval_problem(p.a, p.b, {p.a}, n), base, 1.0};
    if (scenario == "interval-right") return {interval_problem(p.a, p.b, {p.b}, n), base, 1.0};
    if (scenario == "interval-interior") {
        if (n < 2) throw DomainError("interval-interior needs n >= 2");
        // The subinterval alone, scaled back by its share of the support.
        return {interval_problem(p.c, p.d, {p.c, p.d}, n), base, (p.d - p.c) / (p.b - p.a)};
    }
    if (scenario == "line-constraint") return {line_problem(n, line_scenario(p)), base, 1.0};
    if (scenario == "semicircle") {
        const int n1 = p.n1 ? *p.n1 : semicircle_allocate(n).parts[0];
        SolverOptions o = base;
        o.allocation = std::vector<int>{n1 - 2, n - n1};
        return {semicircle_problem(n), o, 1.0};
    }
    if (scenario == "triangle") return {triangle_problem(n), base, 1.0};
    if (scenario == "exam1") return {exam1_problem(n + 1), base, 1.0};
    throw DomainError("unknown scenario '" + scenario + "'");
}

int cmd_solve(const std::string& problem_path, const GlobalOptions& global, std::ostream& out,
              std::ostream& err) {
    return guarded(err, [&] {
        const ProblemFile pf = load_problem(problem_path);
        const SolverOptions opts = apply_globals(pf.solver, global);
        const Quantizer q = solve(pf.problem, opts);
        out << quantizer_to_json(pf.problem, q).dump(2) << '\n';
        if (!q.degenerate_points.empty()) {
            err << "degenerate instance: " << q.degenerate_points.size()
                << " point(s) with empty Voronoi cells\n";
            return kExitDegenerate;
        }
        return kExitOk;
    });
}

int cmd_closed_form(const std::string& scenario, int n, const ScenarioParams& params, std::ostream& out,
                    std::ostream& err) {
    return guarded(err, [&] {
        const auto support = scenario_support(scenario, params);
        const auto r = closed_form_for(scenario, n, params);
        out << closed_form_to_json(scenario, n, support, r).dump(2) << '\n';
        return kExitOk;
    });
}

std::vector<SweepRow> sweep_rows(const std::string& scenario, int n_from, int n_to,
                                 const ScenarioParams& params, const SweepOptions& options) {
    if (n_from > n_to) throw DomainError("sweep needs n_from <= n_to");
    std::vector<SweepRow> rows;
    for (int n = n_from; n <= n_to; ++n) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto r = closed_form_for(scenario, n, params);
        const auto t1 = std::chrono::steady_clock::now();
        SweepRow row;
        row.n = n;
        row.error = options.printed && r.printed_error ? *r.printed_error : r.error;
        row.allocation = r.allocation;
        if (options.timing) row.wall_time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        rows.push_back(std::move(row));
    }
    return rows;
}

int cmd_sweep(const std::string& scenario, int n_from, int n_to, const ScenarioParams& params,
              const SweepOptions& options, const std::string& output_path, std::ostream& out,
              std::ostream& err) {
    return guarded(err, [&] {
        const auto rows = sweep_rows(scenario, n_from, n_to, params, options);
        std::ostringstream csv;
        write_sweep_csv(csv, rows);
        return write_text(output_path, csv.str(), out);
    });
}

int cmd_asymptotics(const std::string& csv_path, double kappa, std::optional<double> v_infinity,
                    const GlobalOptions& global, DimensionMethod method, std::ostream& out,
                    std::ostream& err) {
    return guarded(err, [&] {
        std::istringstream in(read_all(csv_path));
        const auto rows = read_sweep_csv(in);
        if (rows.size() < 6) {
            err << "error: asymptotics needs at least 6 rows, got " << rows.size() << '\n';
            return kExitError;
        }
        std::vector<SequenceEntry> entries;
        for (const auto& r : rows) entries.push_back({r.n, r.error});
        const ErrorSequence seq(std::move(entries));
        const auto rep = analyze(seq, kappa, v_infinity, global.tail_window, 2.0, method);
        out << report_to_json(rep).dump(2) << '\n';
        return kExitOk;
    });
}

int cmd_render(const std::string& result_path, const std::string& svg_path, std::ostream& out,
               std::ostream& err) {
    return guarded(err, [&] {
        const Figure fig = figure_from_result(read_all(result_path));
        return write_text(svg_path, render_svg(fig), out);
    });
}

int cmd_verify(const std::string& scenario, int n_from, int n_to, const ScenarioParams& params,
               const GlobalOptions& global, double rel_tol, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (n_from > n_to) throw DomainError("verify needs n_from <= n_to");
        bool all_ok = true;
        out << "n,closed_form,solver,rel_diff,ok\n";
        char buf[160];
        for (int n = n_from; n <= n_to; ++n) {
            const auto cf = closed_form_for(scenario, n, params);
            const auto sp = scenario_problem(scenario, n, params, global);
            const double v = sp.scale * solve(sp.problem, sp.options).distortion;
            const double rel = std::abs(v - cf.error) / std::max(cf.error, 1e-300);
            const bool ok = rel <= rel_tol;
            all_ok = all_ok && ok;
            std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.3e,%s\n", n, cf.error, v, rel, ok ? "yes" : "no");
            out << buf;
        }
        return all_ok ? kExitOk : kExitError;
    });
}

}  // namespace cquant
