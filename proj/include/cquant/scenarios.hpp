#pragma once

#include <optional>

#include "cquant/closed_form.hpp"
#include "cquant/solver.hpp"

namespace cquant {

/// Boundary of the upper unit half-disk: base [-1, 1] and the arc, with
/// conditional set {(-1, 0), (1, 0)}. Points are constrained to the boundary
/// (constraint 0 is the base, constraint 1 the arc).
Problem semicircle_problem(int n);

/// Perimeter of the unit equilateral triangle with the vertices as
/// conditional set; unconstrained unless `on_sides`, which restricts the
/// points to the three sides.
Problem triangle_problem(int n, bool on_sides = false);

/// Uniform law on [a, b] x {0}, unconstrained, with the given conditional
/// points on the x-axis.
Problem interval_problem(double a, double b, std::vector<double> beta_x, int n);

/// Uniform law on [a, b] x {0} with points restricted to the line y = m x + c.
/// The line is cut to the window when present, otherwise to the projection
/// of the support widened by b - a on each side.
Problem line_problem(int n, const LineConstraintScenario& scen);

/// Support [0, 1], conditional point (0, 0), line y = x/4 + 1/4.
/// `n` counts the conditional point.
Problem exam1_problem(int n);

/// Support [0, 1], conditional point (0, 0), line y = x + 4.
Problem exam2_problem(int n);

/// Support [0, 1], conditional point (0, 1/100), unconstrained.
Problem remark54_problem(int n);

}  // namespace cquant
