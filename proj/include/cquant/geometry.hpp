#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace cquant {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double k, Point2 a) { return {k * a.x, k * a.y}; }

/// Squared Euclidean distance.
inline double sq_dist(Point2 p, Point2 q) {
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    return dx * dx + dy * dy;
}

struct Segment {
    Point2 p0;
    Point2 p1;
};

/// Counterclockwise circular arc from angle theta0 to theta1 (radians).
struct Arc {
    Point2 center;
    double radius = 1.0;
    double theta0 = 0.0;
    double theta1 = 0.0;
};

/// A plane curve parametrized by arc length s in [0, length()].
///
/// Construction validates the shape: segments need distinct endpoints,
/// arcs need a positive radius and 0 < theta1 - theta0 <= 2*pi.
class Curve {
public:
    static Curve segment(Point2 p0, Point2 p1);
    static Curve arc(Point2 center, double radius, double theta0, double theta1);

    double length() const { return length_; }
    Point2 eval(double s) const;
    /// Unit tangent at arc length s.
    Point2 tangent(double s) const;

    bool is_segment() const { return std::holds_alternative<Segment>(shape_); }
    const Segment& as_segment() const { return std::get<Segment>(shape_); }
    const Arc& as_arc() const { return std::get<Arc>(shape_); }

    /// Arc-length parameter of the point of the curve nearest to p.
    double project(Point2 p) const;

private:
    explicit Curve(std::variant<Segment, Arc> shape);

    std::variant<Segment, Arc> shape_;
    double length_ = 0.0;
};

double curve_length(const Curve& c);
Point2 curve_eval(const Curve& c, double s);

struct ParamPoint {
    std::size_t curve_index = 0;
    double s = 0.0;
};

/// Uniform probability measure on a finite union of curves.
class UniformCurveMeasure {
public:
    explicit UniformCurveMeasure(std::vector<Curve> curves);

    const std::vector<Curve>& curves() const { return curves_; }
    double total_length() const { return total_length_; }
    double density() const { return 1.0 / total_length_; }

    Point2 eval(ParamPoint p) const;

private:
    std::vector<Curve> curves_;
    double total_length_ = 0.0;
};

/// Composite Gauss-Legendre rule applied on every smooth piece.
struct QuadratureRule {
    int order = 10;
    int panels = 16;
};

/// Maximal sub-interval [s0, s1] of a curve on which `site` is the nearest
/// site (ties go to the lower site index).
struct VoronoiPiece {
    double s0 = 0.0;
    double s1 = 0.0;
    std::size_t site = 0;
};

/// Partition of [0, length] into nearest-site pieces, in increasing s.
std::vector<VoronoiPiece> voronoi_pieces(const Curve& c, std::span<const Point2> sites);

/// Interior arc-length values where the nearest-site index changes.
std::vector<double> voronoi_breakpoints(const Curve& c, std::span<const Point2> sites);

/// Per-site mass, first moment and distortion contribution.
struct CellStatistics {
    std::vector<double> mass;
    std::vector<Point2> moment;  // integral of x dP over the cell
    std::vector<double> distortion;
    double total_distortion = 0.0;
};

CellStatistics cell_statistics(const UniformCurveMeasure& measure, std::span<const Point2> sites,
                               QuadratureRule rule = {});

double distortion(const UniformCurveMeasure& measure, std::span<const Point2> sites,
                  QuadratureRule rule = {});

std::vector<double> voronoi_masses(const UniformCurveMeasure& measure,
                                   std::span<const Point2> sites);

/// E(X | X in cell of sites[site_index]).
Point2 conditional_mean(const UniformCurveMeasure& measure, std::span<const Point2> sites,
                        std::size_t site_index, QuadratureRule rule = {});

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int order);

}  // namespace cquant
