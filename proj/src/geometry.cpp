#include "cquant/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "cquant/errors.hpp"

namespace cquant {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }

}  // namespace

Curve::Curve(std::variant<Segment, Arc> shape) : shape_(shape) {
    if (const auto* seg = std::get_if<Segment>(&shape_)) {
        length_ = std::sqrt(sq_dist(seg->p0, seg->p1));
    } else {
        const auto& arc = std::get<Arc>(shape_);
        length_ = arc.radius * (arc.theta1 - arc.theta0);
    }
}

Curve Curve::segment(Point2 p0, Point2 p1) {
    if (!finite(p0) || !finite(p1)) throw DomainError("segment endpoints must be finite");
    if (p0 == p1) throw DomainError("segment endpoints must be distinct");
    return Curve(Segment{p0, p1});
}

Curve Curve::arc(Point2 center, double radius, double theta0, double theta1) {
    if (!finite(center) || !std::isfinite(radius) || !std::isfinite(theta0) ||
        !std::isfinite(theta1)) {
        throw DomainError("arc parameters must be finite");
    }
    if (!(radius > 0.0)) throw DomainError("arc radius must be positive");
    const double sweep = theta1 - theta0;
    if (!(sweep > 0.0)) throw DomainError("arc needs theta0 < theta1");
    if (sweep > kTwoPi * (1.0 + 1e-12)) throw DomainError("arc sweep exceeds a full circle");
    return Curve(Arc{center, radius, theta0, theta1});
}

Point2 Curve::eval(double s) const {
    const double slack = 1e-12 * std::max(1.0, length_);
    if (!(s >= -slack && s <= length_ + slack)) {
        throw DomainError("arc-length parameter " + std::to_string(s) + " outside [0, " +
                          std::to_string(length_) + "]");
    }
    s = std::clamp(s, 0.0, length_);
    if (const auto* seg = std::get_if<Segment>(&shape_)) {
        const double t = s / length_;
        if (t == 1.0) return seg->p1;
        return seg->p0 + t * (seg->p1 - seg->p0);
    }
    const auto& arc = std::get<Arc>(shape_);
    const double theta = arc.theta0 + s / arc.radius;
    return {arc.center.x + arc.radius * std::cos(theta),
            arc.center.y + arc.radius * std::sin(theta)};
}

Point2 Curve::tangent(double s) const {
    if (const auto* seg = std::get_if<Segment>(&shape_)) {
        return (1.0 / length_) * (seg->p1 - seg->p0);
    }
    const auto& arc = std::get<Arc>(shape_);
    const double theta = arc.theta0 + s / arc.radius;
    return {-std::sin(theta), std::cos(theta)};
}

double Curve::project(Point2 p) const {
    if (const auto* seg = std::get_if<Segment>(&shape_)) {
        const Point2 d = seg->p1 - seg->p0;
        const double t = dot(p - seg->p0, d) / dot(d, d);
        return std::clamp(t, 0.0, 1.0) * length_;
    }
    const auto& arc = std::get<Arc>(shape_);
    const Point2 q = p - arc.center;
    if (q.x == 0.0 && q.y == 0.0) return 0.0;
    double phi = std::atan2(q.y, q.x) - arc.theta0;
    phi -= kTwoPi * std::floor(phi / kTwoPi);
    const double sweep = arc.theta1 - arc.theta0;
    if (phi <= sweep) return phi * arc.radius;
    // Outside the arc: the nearer endpoint wins.
    return sq_dist(p, eval(0.0)) <= sq_dist(p, eval(length_)) ? 0.0 : length_;
}

double curve_length(const Curve& c) { return c.length(); }

Point2 curve_eval(const Curve& c, double s) { return c.eval(s); }

UniformCurveMeasure::UniformCurveMeasure(std::vector<Curve> curves) : curves_(std::move(curves)) {
    if (curves_.empty()) throw DomainError("measure needs at least one curve");
    for (const auto& c : curves_) total_length_ += c.length();
}

Point2 UniformCurveMeasure::eval(ParamPoint p) const {
    if (p.curve_index >= curves_.size()) throw DomainError("curve index out of range");
    return curves_[p.curve_index].eval(p.s);
}

const GaussLegendre& gauss_legendre(int order) {
    if (order < 1 || order > 256) throw DomainError("Gauss-Legendre order must be in [1, 256]");
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<GaussLegendre>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[order];
    if (slot) return *slot;

    auto rule = std::make_unique<GaussLegendre>();
    rule->nodes.resize(order);
    rule->weights.resize(order);
    const int half = (order + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0;
            double p2 = 0.0;
            for (int j = 1; j <= order; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            dp = order * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        rule->nodes[i] = -z;
        rule->nodes[order - 1 - i] = z;
        rule->weights[i] = w;
        rule->weights[order - 1 - i] = w;
    }
    slot = std::move(rule);
    return *slot;
}

namespace {

// Squared distance from curve(s) to every site, written so that pairwise
// differences have closed-form roots: affine in s on a segment, and
// A cos(theta) + B sin(theta) + C on an arc.
class SiteDistances {
public:
    SiteDistances(const Curve& curve, std::span<const Point2> sites)
        : curve_(curve), sites_(sites), lin_(sites.size()), cos_(sites.size()),
          sin_(sites.size()), con_(sites.size()) {
        if (curve.is_segment()) {
            const auto& seg = curve.as_segment();
            const Point2 u = curve.tangent(0.0);
            for (std::size_t j = 0; j < sites.size(); ++j) {
                lin_[j] = -2.0 * dot(u, sites[j] - seg.p0);
                con_[j] = sq_dist(seg.p0, sites[j]);
            }
        } else {
            const auto& arc = curve.as_arc();
            for (std::size_t j = 0; j < sites.size(); ++j) {
                const Point2 q = sites[j] - arc.center;
                cos_[j] = -2.0 * arc.radius * q.x;
                sin_[j] = -2.0 * arc.radius * q.y;
                con_[j] = dot(q, q);
            }
        }
    }

    // Nearest site just after arc length s; near-equal distances go to the
    // lower index so that sites which coincide along the curve are stable.
    std::size_t owner_at(double s) const {
        const Point2 x = curve_.eval(s);
        std::size_t best = 0;
        double best_d = sq_dist(x, sites_[0]);
        for (std::size_t j = 1; j < sites_.size(); ++j) {
            const double d = sq_dist(x, sites_[j]);
            if (d < best_d - 1e-13 * best_d) {
                best = j;
                best_d = d;
            }
        }
        return best;
    }

    // Smallest s in (after, length) where site j becomes strictly closer than
    // site i; +inf if none.
    double next_takeover(std::size_t i, std::size_t j, double after) const {
        constexpr double inf = std::numeric_limits<double>::infinity();
        const double length = curve_.length();
        if (curve_.is_segment()) {
            const double slope = lin_[j] - lin_[i];
            if (!(slope < 0.0)) return inf;
            const double root = -(con_[j] - con_[i]) / slope;
            return (root > after && root < length) ? root : inf;
        }
        const auto& arc = curve_.as_arc();
        const double da = cos_[j] - cos_[i];
        const double db = sin_[j] - sin_[i];
        const double dc = con_[j] - con_[i];
        const double amp = std::hypot(da, db);
        const double scale = std::abs(cos_[i]) + std::abs(sin_[i]) + std::abs(con_[i]) + 1.0;
        if (amp <= 1e-15 * scale) return inf;
        const double ratio = -dc / amp;
        if (!(ratio > -1.0 && ratio < 1.0)) return inf;
        // f = amp cos(theta - psi) + dc decreases through zero at
        // theta - psi = acos(ratio).
        const double psi = std::atan2(db, da);
        const double base = psi + std::acos(ratio) - arc.theta0;
        const double after_phi = after / arc.radius;
        const double k = std::floor((after_phi - base) / kTwoPi) + 1.0;
        double phi = base + k * kTwoPi;
        if (phi - kTwoPi > after_phi) phi -= kTwoPi;
        const double root = phi * arc.radius;
        return (root > after && root < length) ? root : inf;
    }

private:
    const Curve& curve_;
    std::span<const Point2> sites_;
    std::vector<double> lin_, cos_, sin_, con_;
};

}  // namespace

std::vector<VoronoiPiece> voronoi_pieces(const Curve& c, std::span<const Point2> sites) {
    if (sites.empty()) throw DomainError("voronoi_pieces needs at least one site");
    const double length = c.length();
    std::vector<VoronoiPiece> pieces;
    if (sites.size() == 1) {
        pieces.push_back({0.0, length, 0});
        return pieces;
    }
    const SiteDistances dist(c, sites);
    // Events closer together than `nudge` are resolved by direct evaluation
    // just past the last one.
    const double nudge = 1e-10 * length;
    const double tol = 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, length);

    std::size_t owner = dist.owner_at(std::min(nudge, 0.5 * length));
    double start = 0.0;
    double search = 0.0;
    const std::size_t max_events = 4 * sites.size() * sites.size() + 64;
    for (std::size_t event = 0; event < max_events; ++event) {
        double next = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < sites.size(); ++j) {
            if (j == owner) continue;
            next = std::min(next, dist.next_takeover(owner, j, search + tol));
        }
        if (!std::isfinite(next)) break;
        const std::size_t successor = dist.owner_at(std::min(next + nudge, 0.5 * (next + length)));
        search = next;
        if (successor == owner) continue;
        if (next > start) pieces.push_back({start, next, owner});
        start = next;
        owner = successor;
    }
    pieces.push_back({start, length, owner});
    return pieces;
}

std::vector<double> voronoi_breakpoints(const Curve& c, std::span<const Point2> sites) {
    const auto pieces = voronoi_pieces(c, sites);
    std::vector<double> out;
    for (std::size_t k = 1; k < pieces.size(); ++k) out.push_back(pieces[k].s0);
    return out;
}

CellStatistics cell_statistics(const UniformCurveMeasure& measure, std::span<const Point2> sites,
                               QuadratureRule rule) {
    if (sites.empty()) throw DomainError("distortion needs at least one site");
    if (rule.panels < 1) throw DomainError("quadrature needs at least one panel");
    const auto& gl = gauss_legendre(rule.order);
    const double density = measure.density();

    CellStatistics stats;
    stats.mass.assign(sites.size(), 0.0);
    stats.moment.assign(sites.size(), Point2{});
    stats.distortion.assign(sites.size(), 0.0);

    for (const auto& curve : measure.curves()) {
        // Squared distance is a quadratic in s along a segment, so a single
        // panel of order >= 2 is already exact there.
        const int panels = (curve.is_segment() && rule.order >= 2) ? 1 : rule.panels;
        for (const auto& piece : voronoi_pieces(curve, sites)) {
            const Point2 site = sites[piece.site];
            const double width = (piece.s1 - piece.s0) / panels;
            Point2 m1{};
            double m2 = 0.0;
            for (int p = 0; p < panels; ++p) {
                const double mid = piece.s0 + (p + 0.5) * width;
                const double half = 0.5 * width;
                for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
                    const double w = gl.weights[q] * half;
                    const Point2 x = curve.eval(mid + half * gl.nodes[q]);
                    m1 = m1 + w * x;
                    m2 += w * sq_dist(x, site);
                }
            }
            stats.mass[piece.site] += density * (piece.s1 - piece.s0);
            stats.moment[piece.site] = stats.moment[piece.site] + density * m1;
            stats.distortion[piece.site] += density * m2;
        }
    }
    for (double d : stats.distortion) stats.total_distortion += d;
    return stats;
}

double distortion(const UniformCurveMeasure& measure, std::span<const Point2> sites,
                  QuadratureRule rule) {
    return cell_statistics(measure, sites, rule).total_distortion;
}

std::vector<double> voronoi_masses(const UniformCurveMeasure& measure,
                                   std::span<const Point2> sites) {
    if (sites.empty()) throw DomainError("voronoi_masses needs at least one site");
    std::vector<double> mass(sites.size(), 0.0);
    for (const auto& curve : measure.curves()) {
        for (const auto& piece : voronoi_pieces(curve, sites)) {
            mass[piece.site] += piece.s1 - piece.s0;
        }
    }
    for (double& m : mass) m *= measure.density();
    return mass;
}

Point2 conditional_mean(const UniformCurveMeasure& measure, std::span<const Point2> sites,
                        std::size_t site_index, QuadratureRule rule) {
    if (site_index >= sites.size()) throw DomainError("site index out of range");
    const auto stats = cell_statistics(measure, sites, rule);
    const double mass = stats.mass[site_index];
    if (!(mass > 0.0)) {
        throw DegenerateCellError("Voronoi cell of site " + std::to_string(site_index) +
                                  " has zero mass");
    }
    return (1.0 / mass) * stats.moment[site_index];
}

}  // namespace cquant
