#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "cquant/geometry.hpp"

namespace cquant {

struct CurveConstraint {
    Curve curve;
};

struct PointSetConstraint {
    std::vector<Point2> points;
};

struct FreePlane {};

using ConstraintSet = std::variant<CurveConstraint, PointSetConstraint, FreePlane>;

/// Conditional constrained quantization problem of order 2.
///
/// `n` counts every point of the quantizer including the conditional set
/// `beta`. An empty constraint list means the whole plane.
struct Problem {
    UniformCurveMeasure measure;
    std::vector<ConstraintSet> constraints;
    std::vector<Point2> beta;
    int n = 0;
};

enum class PointTag { beta, constrained, free };

struct TaggedPoint {
    PointTag tag = PointTag::free;
    Point2 position;
    std::size_t constraint = 0;  // index into Problem::constraints
    double s = 0.0;              // arc length on a curve, element index on a point set
};

struct Quantizer {
    std::vector<TaggedPoint> points;
    double distortion = 0.0;
    std::vector<double> masses;
    bool converged = false;
    std::vector<std::size_t> degenerate_points;
};

struct SolverOptions {
    int restarts = 16;
    std::uint64_t rng_seed = 42;
    double param_tol = 1e-10;
    int max_iters = 10000;
    /// Number of non-conditional points per constraint; pins each point to
    /// its constraint instead of letting it move across the union.
    std::optional<std::vector<int>> allocation;
    /// Extra starting configuration of non-conditional points, run after the
    /// seeded restarts. With `allocation` set it is read in constraint order.
    std::optional<std::vector<Point2>> warm_start;
    /// Cells at or below this probability count as empty.
    double mass_tol = 1e-9;
};

struct Evaluation {
    double distortion = 0.0;
    std::vector<double> masses;
};

/// Distortion and Voronoi masses of a candidate. Constrained points are
/// re-evaluated from (constraint, s).
Evaluation evaluate(const Problem& problem, const std::vector<TaggedPoint>& candidate);

struct LloydStep {
    std::vector<TaggedPoint> points;
    std::vector<std::size_t> degenerate;
};

/// One centroid step: free points move to the mean of their cell, constrained
/// points to the nearest admissible point of that mean. Conditional points
/// and empty cells stay put; empty cells are reported.
LloydStep lloyd_step(const Problem& problem, const std::vector<TaggedPoint>& candidate);

Quantizer solve(const Problem& problem, const SolverOptions& options = {});

struct ExistenceReport {
    bool exists_with_n_points = false;
    Quantizer witness;
};

ExistenceReport existence_check(const Problem& problem, const SolverOptions& options = {});

struct SandwichReport {
    double v_n = 0.0;
    double v_cond_n = 0.0;
    double v_n_minus_l = 0.0;
    bool holds = false;
};

/// Compares the conditional error with the plain errors at n and n - card(beta).
SandwichReport sandwich_check(const Problem& problem, const SolverOptions& options = {});

/// Point positions (as offsets from the support start) of the n-th member
/// of a quantizer family on a one-dimensional support.
using PositionFamily = std::function<std::vector<double>(int n)>;

/// For n = 1..n_max, the largest gap between consecutive points of the
/// union of the first n family members, counting the support endpoints.
std::vector<std::pair<int, double>> density_gap(const PositionFamily& family, double length,
                                                int n_max);

/// Optimal n-means of the uniform law on [0, length]: (2j - 1) length / (2n).
PositionFamily interval_nmeans_family(double length);

/// n-means on a segment computed by the solver.
PositionFamily solver_nmeans_family(const Curve& segment, const SolverOptions& options = {});

}  // namespace cquant
