#pragma once

#include <optional>
#include <vector>

#include "cquant/geometry.hpp"

namespace cquant {

/// Uniform measure on [a, b] (x-axis) with a quantizer sub-block on [c, d].
struct IntervalScenario {
    double a = 0.0;
    double b = 1.0;
    double c = 0.0;
    double d = 1.0;
};

/// Uniform measure on [a, b] (x-axis); points constrained to y = slope*x + intercept,
/// optionally only between x = window_lo and x = window_hi.
struct LineConstraintScenario {
    double a = 0.0;
    double b = 1.0;
    double slope = 0.0;
    double intercept = 0.0;
    std::optional<double> window_lo;
    std::optional<double> window_hi;
};

struct ClosedFormResult {
    std::vector<Point2> points;
    double error = 0.0;
    std::vector<int> allocation;
    // The error expression exactly as published, where it differs in form
    // from `error` (line constraint and its conditional variant).
    std::optional<double> printed_error;
};

ClosedFormResult interval_interior(int m, const IntervalScenario& scen);
ClosedFormResult interval_left_endpoint(int n, double a, double b);
ClosedFormResult interval_right_endpoint(int n, double a, double b);

ClosedFormResult line_constraint_optimal(int n, const LineConstraintScenario& scen);

/// Error of the semicircle-boundary quantizer with n1 points on the base and
/// n2 on the arc (both counts include the shared corners).
double semicircle_error(int n1, int n2);
ClosedFormResult semicircle_conditional(int n, int n1);

double triangle_error(int n1, int n2, int n3);
ClosedFormResult triangle_conditional(int n);

/// Uniform [0,1] with conditional point (0,0) and n further points on
/// y = x/4 + 1/4; the result has n + 1 points.
double exam1_boundary(int n);
ClosedFormResult exam1_conditional(int n);

namespace printed {

/// Error of the line-constrained quantizer as printed (n = 2 and n >= 3 forms).
double line_constraint_error(int n, double a, double b, double slope, double intercept);
/// V_{n+1} of the y = x/4 + 1/4 conditional example as printed.
double exam1_error(int n);

}  // namespace printed

}  // namespace cquant
