#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cquant/asymptotics.hpp"
#include "cquant/closed_form.hpp"
#include "cquant/io.hpp"
#include "cquant/solver.hpp"

namespace cquant {

/// Process exit codes of every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitDegenerate = 2;

struct GlobalOptions {
    std::optional<std::uint64_t> seed;
    std::optional<int> restarts;
    std::size_t tail_window = 0;  // 0 selects the default window
};

/// Parameters shared by the closed-form scenarios; each scenario reads the
/// ones it needs.
struct ScenarioParams {
    double a = 0.0;
    double b = 1.0;
    double c = 0.0;  // interval-interior subinterval
    double d = 1.0;
    double slope = 0.0;
    double intercept = 0.0;
    std::optional<double> window_lo;
    std::optional<double> window_hi;
    std::optional<int> n1;  // forced semicircle base count
};

const std::vector<std::string>& scenario_names();

/// Closed-form result; throws DomainError for an unknown scenario name.
ClosedFormResult closed_form_for(const std::string& scenario, int n, const ScenarioParams& params);
std::vector<Curve> scenario_support(const std::string& scenario, const ScenarioParams& params);

/// Numerical problem matching a closed-form scenario, with the solver
/// options (allocation hint) and the factor that turns its distortion into
/// the closed-form error.
struct ScenarioProblem {
    Problem problem;
    SolverOptions options;
    double scale = 1.0;
};
ScenarioProblem scenario_problem(const std::string& scenario, int n, const ScenarioParams& params,
                                 const GlobalOptions& global);

SolverOptions apply_globals(SolverOptions o, const GlobalOptions& global);

/// Solves a problem file and prints the result document.
/// Exit code: 0 success, 2 degenerate instance, 1 error.
int cmd_solve(const std::string& problem_path, const GlobalOptions& global, std::ostream& out,
              std::ostream& err);

int cmd_closed_form(const std::string& scenario, int n, const ScenarioParams& params, std::ostream& out,
                    std::ostream& err);

struct SweepOptions {
    bool printed = false;  // error column from the printed formulas where they exist
    bool timing = false;   // fill wall_time_ms; otherwise 0 for reproducible files
};

std::vector<SweepRow> sweep_rows(const std::string& scenario, int n_from, int n_to,
                                 const ScenarioParams& params, const SweepOptions& options);

/// Writes the sweep CSV to `output_path` ("-" for `out`).
int cmd_sweep(const std::string& scenario, int n_from, int n_to, const ScenarioParams& params,
              const SweepOptions& options, const std::string& output_path, std::ostream& out,
              std::ostream& err);

int cmd_asymptotics(const std::string& csv_path, double kappa, std::optional<double> v_infinity,
                    const GlobalOptions& global, DimensionMethod method, std::ostream& out,
                    std::ostream& err);

/// Renders a result document to SVG at `svg_path` ("-" for `out`).
int cmd_render(const std::string& result_path, const std::string& svg_path, std::ostream& out,
               std::ostream& err);

/// Compares the closed form with the solver for n in [n_from, n_to]; exit
/// code 0 when every relative difference is within `rel_tol`.
int cmd_verify(const std::string& scenario, int n_from, int n_to, const ScenarioParams& params,
               const GlobalOptions& global, double rel_tol, std::ostream& out, std::ostream& err);

}  // namespace cquant
