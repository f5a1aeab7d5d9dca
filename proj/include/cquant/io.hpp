#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "cquant/asymptotics.hpp"
#include "cquant/closed_form.hpp"
#include "cquant/solver.hpp"

namespace cquant {

inline constexpr int kSchemaVersion = 1;

/// Malformed input document; the message carries a line/column or a field path.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ProblemFile {
    Problem problem;
    SolverOptions solver;
};

/// Parses a problem document. Unknown fields are rejected.
ProblemFile parse_problem(const std::string& text);
ProblemFile load_problem(const std::string& path);

nlohmann::ordered_json curve_to_json(const Curve& c);
Curve curve_from_json(const nlohmann::json& j, const std::string& path);

nlohmann::ordered_json problem_to_json(const Problem& problem, const SolverOptions& solver = {});

/// Result document of a numerical solve.
nlohmann::ordered_json quantizer_to_json(const Problem& problem, const Quantizer& q);

/// Result document of a closed-form evaluation.
nlohmann::ordered_json closed_form_to_json(const std::string& scenario, int n,
                                           const std::vector<Curve>& support,
                                           const ClosedFormResult& r);

struct SweepRow {
    int n = 0;
    double error = 0.0;
    std::vector<int> allocation;
    double wall_time_ms = 0.0;
};

inline constexpr const char* kSweepHeader = "n,error,alloc,wall_time_ms";

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_sweep_csv(std::istream& is);

nlohmann::ordered_json report_to_json(const AsymptoticsReport& rep);

/// Support curves and point positions of a result document.
struct Figure {
    std::vector<Curve> support;
    std::vector<Point2> points;
    std::vector<std::string> tags;
};

Figure figure_from_result(const std::string& text);

/// SVG 1.1 drawing: support, points, and Voronoi breakpoints on the support.
std::string render_svg(const Figure& fig);

/// Shortest-round-trip decimal form used for numbers in documents.
std::string format_double(double v);

}  // namespace cquant
