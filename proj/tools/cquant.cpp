#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "cquant/commands.hpp"

using namespace cquant;

namespace {

void add_scenario_params(CLI::App* cmd, ScenarioParams& p, std::optional<int>& n1,
                         std::optional<double>& lo, std::optional<double>& hi) {
    cmd->add_option("--a", p.a, "support start");
    cmd->add_option("--b", p.b, "support end");
    cmd->add_option("--c", p.c, "subinterval start (interval-interior)");
    cmd->add_option("--d", p.d, "subinterval end (interval-interior)");
    cmd->add_option("--slope", p.slope, "line slope (line-constraint)");
    cmd->add_option("--intercept", p.intercept, "line intercept (line-constraint)");
    cmd->add_option("--window-lo", lo, "line window start (line-constraint)");
    cmd->add_option("--window-hi", hi, "line window end (line-constraint)");
    cmd->add_option("--n1", n1, "force the semicircle base count");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conditional constrained quantization on plane curves"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions global;
    std::optional<std::uint64_t> seed;
    std::optional<int> restarts;
    app.add_option("--seed", seed, "solver RNG seed");
    app.add_option("--restarts", restarts, "solver restarts")->check(CLI::PositiveNumber);
    app.add_option("--tail-window", global.tail_window, "entries in the asymptotic tail window (0 = default)");

    const auto& names = scenario_names();
    const auto scenario_check = CLI::IsMember(names);

    std::string problem_path;
    auto* solve = app.add_subcommand("solve", "solve a problem file");
    solve->add_option("problem", problem_path, "problem JSON")->required();

    std::string scenario;
    int n = 0;
    ScenarioParams params;
    std::optional<int> n1;
    std::optional<double> window_lo;
    std::optional<double> window_hi;
    auto* closed = app.add_subcommand("closed-form", "closed-form optimal set and error");
    closed->add_option("scenario", scenario, "scenario name")->required()->check(scenario_check);
    closed->add_option("-n,--n", n, "number of points")->required();
    add_scenario_params(closed, params, n1, window_lo, window_hi);

    int n_from = 0;
    int n_to = 0;
    std::string output = "-";
    SweepOptions sweep_opts;
    auto* sweep = app.add_subcommand("sweep", "closed-form errors over a range of n as CSV");
    sweep->add_option("scenario", scenario, "scenario name")->required()->check(scenario_check);
    sweep->add_option("--from", n_from, "first n")->required();
    sweep->add_option("--to", n_to, "last n")->required();
    sweep->add_option("-o,--output", output, "CSV path, - for stdout");
    sweep->add_flag("--printed", sweep_opts.printed, "use the printed error formulas where they exist");
    sweep->add_flag("--timing", sweep_opts.timing, "record wall time per row");
    add_scenario_params(sweep, params, n1, window_lo, window_hi);

    std::string csv_path;
    double kappa = 0.0;
    std::optional<double> v_inf;
    std::string method = "slope";
    auto* asym = app.add_subcommand("asymptotics", "V_inf, dimension and coefficient estimates from a sweep CSV");
    asym->add_option("csv", csv_path, "sweep CSV")->required();
    asym->add_option("--kappa", kappa, "coefficient exponent: factor n^(2/kappa)")->required();
    asym->add_option("--v-inf", v_inf, "known limit, skips the V_inf fit");
    asym->add_option("--dimension-method", method, "slope or ratio")->check(CLI::IsMember({"slope", "ratio"}));

    std::string result_path;
    std::string svg_path = "-";
    auto* render = app.add_subcommand("render", "draw a result document as SVG");
    render->add_option("result", result_path, "result JSON")->required();
    render->add_option("-o,--output", svg_path, "SVG path, - for stdout");

    double rel_tol = 1e-6;
    auto* verify = app.add_subcommand("verify", "compare closed forms with the numerical solver");
    verify->add_option("scenario", scenario, "scenario name")->required()->check(scenario_check);
    verify->add_option("--from", n_from, "first n")->required();
    verify->add_option("--to", n_to, "last n")->required();
    verify->add_option("--rel-tol", rel_tol, "relative tolerance");
    add_scenario_params(verify, params, n1, window_lo, window_hi);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitError;
    }
    global.seed = seed;
    global.restarts = restarts;
    params.n1 = n1;
    params.window_lo = window_lo;
    params.window_hi = window_hi;

    if (*solve) return cmd_solve(problem_path, global, std::cout, std::cerr);
    if (*closed) return cmd_closed_form(scenario, n, params, std::cout, std::cerr);
    if (*sweep) return cmd_sweep(scenario, n_from, n_to, params, sweep_opts, output, std::cout, std::cerr);
    if (*asym) {
        const auto m = method == "ratio" ? DimensionMethod::direct_ratio : DimensionMethod::slope;
        return cmd_asymptotics(csv_path, kappa, v_inf, global, m, std::cout, std::cerr);
    }
    if (*render) return cmd_render(result_path, svg_path, std::cout, std::cerr);
    if (*verify) return cmd_verify(scenario, n_from, n_to, params, global, rel_tol, std::cout, std::cerr);
    return kExitError;
}
