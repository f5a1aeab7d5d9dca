#include "cquant/solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <random>
#include <string>

#include "cquant/errors.hpp"

namespace cquant {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMovableMass = 1e-14;
constexpr std::size_t kAndersonDepth = 5;
constexpr int kRescueAttempts = 3;
constexpr int kPolishRounds = 3;
constexpr std::size_t kRelocationTries = 3;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

bool whole_plane(const Problem& p) {
    if (p.constraints.empty()) return true;
    return std::any_of(p.constraints.begin(), p.constraints.end(),
                       [](const ConstraintSet& c) { return std::holds_alternative<FreePlane>(c); });
}

struct Placement {
    Point2 position;
    double s = 0.0;
    double d2 = kInf;
};

Placement nearest_on(const ConstraintSet& set, Point2 target) {
    if (const auto* cc = std::get_if<CurveConstraint>(&set)) {
        const double s = cc->curve.project(target);
        const Point2 p = cc->curve.eval(s);
        return {p, s, sq_dist(p, target)};
    }
    if (const auto* ps = std::get_if<PointSetConstraint>(&set)) {
        Placement best;
        for (std::size_t i = 0; i < ps->points.size(); ++i) {
            const double d = sq_dist(ps->points[i], target);
            if (d < best.d2) best = {ps->points[i], static_cast<double>(i), d};
        }
        return best;
    }
    return {target, 0.0, 0.0};
}

// Moves a non-conditional point as close to `target` as its admissible set allows.
void move_to(const Problem& problem, TaggedPoint& tp, Point2 target, bool pinned) {
    if (tp.tag == PointTag::free) {
        tp.position = target;
        return;
    }
    if (pinned) {
        const Placement pl = nearest_on(problem.constraints[tp.constraint], target);
        tp.position = pl.position;
        tp.s = pl.s;
        return;
    }
    Placement best;
    for (std::size_t j = 0; j < problem.constraints.size(); ++j) {
        const Placement pl = nearest_on(problem.constraints[j], target);
        if (pl.d2 < best.d2) {
            best = pl;
            tp.constraint = j;
        }
    }
    tp.position = best.position;
    tp.s = best.s;
}

Point2 resolve(const Problem& problem, const TaggedPoint& tp) {
    if (tp.tag != PointTag::constrained) return tp.position;
    if (tp.constraint >= problem.constraints.size()) {
        throw DomainError("constraint index out of range");
    }
    const auto& set = problem.constraints[tp.constraint];
    if (const auto* cc = std::get_if<CurveConstraint>(&set)) return cc->curve.eval(tp.s);
    if (const auto* ps = std::get_if<PointSetConstraint>(&set)) {
        const double idx = std::round(tp.s);
        if (idx != tp.s || idx < 0 || idx >= static_cast<double>(ps->points.size())) {
            throw DomainError("point-set constraint index out of range");
        }
        return ps->points[static_cast<std::size_t>(idx)];
    }
    throw DomainError("a point constrained to the free plane must be tagged free");
}

std::vector<Point2> sites_of(const std::vector<TaggedPoint>& pts) {
    std::vector<Point2> sites;
    sites.reserve(pts.size());
    for (const auto& p : pts) sites.push_back(p.position);
    return sites;
}

CellStatistics stats_of(const Problem& problem, const std::vector<TaggedPoint>& pts) {
    const auto sites = sites_of(pts);
    return cell_statistics(problem.measure, sites);
}

void validate_problem(const Problem& problem) {
    const int ell = static_cast<int>(problem.beta.size());
    if (problem.n < ell) throw DomainError("n must be at least card(beta)");
    if (problem.n < 1) throw DomainError("n must be positive");
    for (const auto& c : problem.constraints) {
        if (const auto* ps = std::get_if<PointSetConstraint>(&c); ps && ps->points.empty()) {
            throw DomainError("point-set constraint must be nonempty");
        }
    }
}

// Point at arc length t along the concatenated support curves.
Point2 support_point(const UniformCurveMeasure& m, double t) {
    const auto& curves = m.curves();
    for (std::size_t i = 0; i < curves.size(); ++i) {
        const double len = curves[i].length();
        if (t <= len || i + 1 == curves.size()) return curves[i].eval(std::clamp(t, 0.0, len));
        t -= len;
    }
    return curves.back().eval(curves.back().length());
}

struct SeedRange {
    double lo = 0.0;
    double hi = 0.0;
};

// Range of curve parameters hit by projecting the support onto the curve.
SeedRange projection_range(const UniformCurveMeasure& m, const Curve& c) {
    SeedRange r{kInf, -kInf};
    constexpr int kSamples = 256;
    for (int i = 0; i <= kSamples; ++i) {
        const double s = c.project(support_point(m, m.total_length() * i / kSamples));
        r.lo = std::min(r.lo, s);
        r.hi = std::max(r.hi, s);
    }
    return r;
}

class Anderson {
public:
    explicit Anderson(std::size_t depth) : depth_(depth) {}

    std::optional<std::vector<double>> push(const std::vector<double>& x,
                                            const std::vector<double>& g) {
        std::vector<double> f(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) f[i] = g[i] - x[i];
        f_.push_back(std::move(f));
        g_.push_back(g);
        if (f_.size() > depth_ + 1) {
            f_.pop_front();
            g_.pop_front();
        }
        if (f_.size() < 2) return std::nullopt;
        const std::size_t m = f_.size() - 1;
        const std::size_t dim = x.size();
        std::vector<std::vector<double>> df(m, std::vector<double>(dim));
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t i = 0; i < dim; ++i) df[j][i] = f_[j + 1][i] - f_[j][i];
        }
        std::vector<double> a(m * m);
        std::vector<double> rhs(m);
        double trace = 0.0;
        for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t c = 0; c < m; ++c) {
                double acc = 0.0;
                for (std::size_t i = 0; i < dim; ++i) acc += df[r][i] * df[c][i];
                a[r * m + c] = acc;
            }
            trace += a[r * m + r];
            double acc = 0.0;
            for (std::size_t i = 0; i < dim; ++i) acc += df[r][i] * f_.back()[i];
            rhs[r] = acc;
        }
        if (!(trace > 0.0) || !std::isfinite(trace)) return std::nullopt;
        for (std::size_t r = 0; r < m; ++r) a[r * m + r] += 1e-10 * trace / m;
        if (!solve_small(a, rhs, m)) return std::nullopt;
        std::vector<double> out = g_.back();
        for (std::size_t j = 0; j < m; ++j) {
            for (std::size_t i = 0; i < dim; ++i) out[i] -= rhs[j] * (g_[j + 1][i] - g_[j][i]);
        }
        for (double v : out) {
            if (!std::isfinite(v)) return std::nullopt;
        }
        return out;
    }

    void reset() {
        f_.clear();
        g_.clear();
    }

private:
    // Gaussian elimination with partial pivoting; solution left in b.
    static bool solve_small(std::vector<double>& a, std::vector<double>& b, std::size_t m) {
        for (std::size_t col = 0; col < m; ++col) {
            std::size_t piv = col;
            for (std::size_t r = col + 1; r < m; ++r) {
                if (std::abs(a[r * m + col]) > std::abs(a[piv * m + col])) piv = r;
            }
            if (a[piv * m + col] == 0.0) return false;
            if (piv != col) {
                for (std::size_t c = 0; c < m; ++c) std::swap(a[col * m + c], a[piv * m + c]);
                std::swap(b[col], b[piv]);
            }
            for (std::size_t r = col + 1; r < m; ++r) {
                const double k = a[r * m + col] / a[col * m + col];
                for (std::size_t c = col; c < m; ++c) a[r * m + c] -= k * a[col * m + c];
                b[r] -= k * b[col];
            }
        }
        for (std::size_t r = m; r-- > 0;) {
            double acc = b[r];
            for (std::size_t c = r + 1; c < m; ++c) acc -= a[r * m + c] * b[c];
            b[r] = acc / a[r * m + r];
        }
        return true;
    }

    std::size_t depth_;
    std::deque<std::vector<double>> f_;
    std::deque<std::vector<double>> g_;
};

struct RunResult {
    std::vector<TaggedPoint> points;
    double distortion = kInf;
    bool converged = false;
};

class Runner {
public:
    Runner(const Problem& problem, const SolverOptions& options)
        : problem_(problem),
          options_(options),
          ell_(problem.beta.size()),
          free_(whole_plane(problem)),
          pinned_(options.allocation.has_value()) {
        scale_ = std::max(1.0, problem.measure.total_length());
        if (!free_) {
            for (const auto& c : problem.constraints) {
                const auto* cc = std::get_if<CurveConstraint>(&c);
                ranges_.push_back(cc ? projection_range(problem.measure, cc->curve) : SeedRange{});
            }
        }
    }

    std::vector<TaggedPoint> base() const {
        std::vector<TaggedPoint> pts;
        for (const auto& b : problem_.beta) pts.push_back({PointTag::beta, b, 0, 0.0});
        return pts;
    }

    std::vector<TaggedPoint> seed(int run) const {
        const int k = problem_.n - static_cast<int>(ell_);
        std::mt19937_64 rng(splitmix64(options_.rng_seed + 0x632be59bd9b4e019ULL * (run + 1)));
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        auto jitter = [&] { return run == 0 ? 0.5 : unif(rng); };
        auto pts = base();
        const double total = problem_.measure.total_length();

        if (pinned_) {
            const auto& alloc = *options_.allocation;
            for (std::size_t j = 0; j < alloc.size(); ++j) {
                const int c = alloc[j];
                const auto& set = problem_.constraints[j];
                for (int i = 0; i < c; ++i) {
                    const double u = (i + jitter()) / c;
                    TaggedPoint tp{PointTag::constrained, {}, j, 0.0};
                    if (std::holds_alternative<CurveConstraint>(set)) {
                        tp.s = ranges_[j].lo + u * (ranges_[j].hi - ranges_[j].lo);
                    } else if (const auto* ps = std::get_if<PointSetConstraint>(&set)) {
                        tp.s = static_cast<double>(
                            std::min(ps->points.size() - 1,
                                     static_cast<std::size_t>(u * ps->points.size())));
                    } else {
                        tp.tag = PointTag::free;
                        tp.position = support_point(problem_.measure, u * total);
                    }
                    tp.position = resolve(problem_, tp);
                    pts.push_back(tp);
                }
            }
            return pts;
        }
        for (int i = 0; i < k; ++i) {
            const Point2 target = support_point(problem_.measure, (i + jitter()) / k * total);
            TaggedPoint tp{free_ ? PointTag::free : PointTag::constrained, target, 0, 0.0};
            move_to(problem_, tp, target, false);
            pts.push_back(tp);
        }
        return pts;
    }

    std::vector<TaggedPoint> warm(const std::vector<Point2>& positions) const {
        auto pts = base();
        std::size_t next = 0;
        for (std::size_t j = 0; pinned_ && j < options_.allocation->size(); ++j) {
            for (int i = 0; i < (*options_.allocation)[j]; ++i) {
                TaggedPoint tp{PointTag::constrained, {}, j, 0.0};
                if (std::holds_alternative<FreePlane>(problem_.constraints[j])) tp.tag = PointTag::free;
                move_to(problem_, tp, positions[next++], true);
                pts.push_back(tp);
            }
        }
        if (!pinned_) {
            for (const Point2 p : positions) {
                TaggedPoint tp{free_ ? PointTag::free : PointTag::constrained, p, 0, 0.0};
                move_to(problem_, tp, p, false);
                pts.push_back(tp);
            }
        }
        return pts;
    }

    RunResult run(std::vector<TaggedPoint> pts) const {
        RunResult out;
        CellStatistics stats = stats_of(problem_, pts);
        if (pts.size() == ell_) {
            out.points = std::move(pts);
            out.distortion = stats.total_distortion;
            out.converged = true;
            return out;
        }
        std::vector<int> attempts(pts.size(), 0);
        bool converged = false;
        int iters = 0;
        converged = settle(pts, stats, attempts, iters);
        const int k = static_cast<int>(pts.size() - ell_);
        for (int jump = 0; jump < k; ++jump) {
            if (!relocate(pts, stats, converged)) break;
        }
        out.points = std::move(pts);
        out.distortion = stats.total_distortion;
        out.converged = converged;
        return out;
    }

    // Centroid step for every movable point given the current cells.
    std::vector<TaggedPoint> step(const std::vector<TaggedPoint>& pts,
                                  const CellStatistics& stats, bool pinned) const {
        auto next = pts;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (pts[i].tag == PointTag::beta || stats.mass[i] <= kMovableMass) continue;
            const Point2 centroid = (1.0 / stats.mass[i]) * stats.moment[i];
            move_to(problem_, next[i], centroid, pinned);
        }
        return next;
    }

private:
    bool settle(std::vector<TaggedPoint>& pts, CellStatistics& stats, std::vector<int>& attempts,
                int& iters) const {
        bool converged = false;
        for (int round = 0; round < kPolishRounds; ++round) {
            converged = iterate(pts, stats, attempts, iters);
            if (!polish(pts, stats)) break;
        }
        return converged;
    }

    // Support point farthest from its nearest site.
    Point2 worst_served(const std::vector<Point2>& sites) const {
        Point2 worst;
        double worst_d = -1.0;
        for (const auto& c : problem_.measure.curves()) {
            for (const auto& piece : voronoi_pieces(c, sites)) {
                for (int q = 0; q <= 4; ++q) {
                    const Point2 p = c.eval(piece.s0 + (piece.s1 - piece.s0) * q / 4.0);
                    const double d = sq_dist(p, sites[piece.site]);
                    if (d > worst_d) {
                        worst_d = d;
                        worst = p;
                    }
                }
            }
        }
        return worst;
    }

    // Moves one of the cheapest-to-remove points to the worst-served part of
    // the support and re-settles; keeps the result only if it is better.
    bool relocate(std::vector<TaggedPoint>& pts, CellStatistics& stats, bool& converged) const {
        const auto sites = sites_of(pts);
        std::vector<std::pair<double, std::size_t>> cost;
        for (std::size_t i = ell_; i < pts.size(); ++i) {
            auto without = sites;
            without.erase(without.begin() + static_cast<std::ptrdiff_t>(i));
            const double d = without.empty() ? kInf : distortion(problem_.measure, without);
            cost.emplace_back(d - stats.total_distortion, i);
        }
        std::sort(cost.begin(), cost.end());
        const Point2 target = worst_served(sites);
        const std::size_t tries = std::min<std::size_t>(kRelocationTries, cost.size());
        for (std::size_t t = 0; t < tries; ++t) {
            auto trial = pts;
            move_to(problem_, trial[cost[t].second], target, pinned_);
            auto trial_stats = stats_of(problem_, trial);
            std::vector<int> attempts(trial.size(), 0);
            int iters = 0;
            const bool ok = settle(trial, trial_stats, attempts, iters);
            if (trial_stats.total_distortion < stats.total_distortion * (1.0 - 1e-12)) {
                pts = std::move(trial);
                stats = std::move(trial_stats);
                converged = ok;
                return true;
            }
        }
        return false;
    }

    bool iterate(std::vector<TaggedPoint>& pts, CellStatistics& stats, std::vector<int>& attempts,
                 int& iters) const {
        Anderson anderson(kAndersonDepth);
        const double tol = options_.param_tol * scale_;
        while (iters < options_.max_iters) {
            ++iters;
            if (rescue(pts, stats, attempts)) anderson.reset();
            auto plain = step(pts, stats, pinned_);
            auto plain_stats = stats_of(problem_, plain);
            std::vector<TaggedPoint>* chosen = &plain;
            CellStatistics* chosen_stats = &plain_stats;

            std::vector<TaggedPoint> mixed;
            CellStatistics mixed_stats;
            if (auto cand = anderson.push(flatten(pts), flatten(plain))) {
                mixed = pts;
                for (std::size_t i = ell_; i < pts.size(); ++i) {
                    const std::size_t o = 2 * (i - ell_);
                    move_to(problem_, mixed[i], {(*cand)[o], (*cand)[o + 1]}, pinned_);
                }
                mixed_stats = stats_of(problem_, mixed);
                if (mixed_stats.total_distortion < plain_stats.total_distortion) {
                    chosen = &mixed;
                    chosen_stats = &mixed_stats;
                }
            }
            double disp = 0.0;
            for (std::size_t i = ell_; i < pts.size(); ++i) {
                disp = std::max(disp, std::sqrt(sq_dist(pts[i].position, (*chosen)[i].position)));
            }
            pts = std::move(*chosen);
            stats = std::move(*chosen_stats);
            if (disp <= tol) return true;
        }
        return false;
    }

    std::vector<double> flatten(const std::vector<TaggedPoint>& pts) const {
        std::vector<double> v;
        v.reserve(2 * (pts.size() - ell_));
        for (std::size_t i = ell_; i < pts.size(); ++i) {
            v.push_back(pts[i].position.x);
            v.push_back(pts[i].position.y);
        }
        return v;
    }

    // Relocates empty non-conditional cells to the worst-served support point
    // when that lowers the distortion.
    bool rescue(std::vector<TaggedPoint>& pts, CellStatistics& stats,
                std::vector<int>& attempts) const {
        bool moved = false;
        for (std::size_t i = ell_; i < pts.size(); ++i) {
            if (stats.mass[i] > kMovableMass || attempts[i] >= kRescueAttempts) continue;
            ++attempts[i];
            auto trial = pts;
            move_to(problem_, trial[i], worst_served(sites_of(pts)), pinned_);
            auto trial_stats = stats_of(problem_, trial);
            if (trial_stats.total_distortion < stats.total_distortion * (1.0 - 1e-12)) {
                pts = std::move(trial);
                stats = std::move(trial_stats);
                moved = true;
            }
        }
        return moved;
    }

    // Golden-section search on each curve parameter in a local bracket.
    bool polish(std::vector<TaggedPoint>& pts, CellStatistics& stats) const {
        if (free_) return false;
        const double before = stats.total_distortion;
        for (std::size_t i = ell_; i < pts.size(); ++i) {
            if (stats.mass[i] <= kMovableMass) continue;
            const auto* cc = std::get_if<CurveConstraint>(&problem_.constraints[pts[i].constraint]);
            if (!cc) continue;
            const double len = cc->curve.length();
            auto trial = pts;
            auto phi = [&](double s) {
                trial[i].s = s;
                trial[i].position = cc->curve.eval(s);
                const auto sites = sites_of(trial);
                return distortion(problem_.measure, sites);
            };
            const double s0 = pts[i].s;
            const double h = std::max(1e-3 * len, 1e3 * options_.param_tol * scale_);
            double lo = std::max(0.0, s0 - h);
            double hi = std::min(len, s0 + h);
            const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
            double x1 = hi - inv_phi * (hi - lo);
            double x2 = lo + inv_phi * (hi - lo);
            double f1 = phi(x1);
            double f2 = phi(x2);
            while (hi - lo > options_.param_tol * scale_) {
                if (f1 <= f2) {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - inv_phi * (hi - lo);
                    f1 = phi(x1);
                } else {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + inv_phi * (hi - lo);
                    f2 = phi(x2);
                }
            }
            const double s_best = f1 <= f2 ? x1 : x2;
            if (std::min(f1, f2) < stats.total_distortion) {
                pts[i].s = s_best;
                pts[i].position = cc->curve.eval(s_best);
                stats = stats_of(problem_, pts);
            }
        }
        return stats.total_distortion < before * (1.0 - 1e-13);
    }

    const Problem& problem_;
    const SolverOptions& options_;
    std::size_t ell_;
    bool free_;
    bool pinned_;
    double scale_ = 1.0;
    std::vector<SeedRange> ranges_;
};

void validate_options(const Problem& problem, const SolverOptions& o) {
    if (o.restarts < 1) throw DomainError("restarts must be >= 1");
    if (!(o.param_tol > 0.0) || !(o.mass_tol >= 0.0)) throw DomainError("tolerances must be positive");
    if (o.max_iters < 1) throw DomainError("max_iters must be >= 1");
    const int k = problem.n - static_cast<int>(problem.beta.size());
    if (o.allocation) {
        if (o.allocation->size() != problem.constraints.size()) {
            throw DomainError("allocation needs one count per constraint");
        }
        int sum = 0;
        for (int c : *o.allocation) {
            if (c < 0) throw DomainError("allocation counts must be nonnegative");
            sum += c;
        }
        if (sum != k) throw DomainError("allocation must sum to n - card(beta)");
    }
    if (o.warm_start && static_cast<int>(o.warm_start->size()) != k) {
        throw DomainError("warm start must hold n - card(beta) points");
    }
}

Quantizer finish(const Problem& problem, RunResult best, double mass_tol) {
    const std::size_t ell = problem.beta.size();
    std::sort(best.points.begin() + static_cast<std::ptrdiff_t>(ell), best.points.end(),
              [](const TaggedPoint& a, const TaggedPoint& b) {
                  if (a.position.x != b.position.x) return a.position.x < b.position.x;
                  return a.position.y < b.position.y;
              });
    Quantizer q;
    const auto stats = stats_of(problem, best.points);
    q.points = std::move(best.points);
    q.distortion = stats.total_distortion;
    q.masses = stats.mass;
    q.converged = best.converged;
    for (std::size_t i = 0; i < q.masses.size(); ++i) {
        if (q.masses[i] <= mass_tol) q.degenerate_points.push_back(i);
    }
    return q;
}

}  // namespace

Evaluation evaluate(const Problem& problem, const std::vector<TaggedPoint>& candidate) {
    validate_problem(problem);
    if (candidate.empty()) throw DomainError("candidate must be nonempty");
    if (static_cast<int>(candidate.size()) > problem.n) throw DomainError("candidate has more than n points");
    for (const Point2 b : problem.beta) {
        const bool present = std::any_of(candidate.begin(), candidate.end(), [&](const TaggedPoint& t) {
            return t.tag == PointTag::beta && t.position == b;
        });
        if (!present) throw DomainError("candidate is missing a conditional point");
    }
    std::vector<Point2> sites;
    for (const auto& tp : candidate) sites.push_back(resolve(problem, tp));
    const auto stats = cell_statistics(problem.measure, sites);
    return {stats.total_distortion, stats.mass};
}

LloydStep lloyd_step(const Problem& problem, const std::vector<TaggedPoint>& candidate) {
    validate_problem(problem);
    auto pts = candidate;
    for (auto& tp : pts) tp.position = resolve(problem, tp);
    const auto stats = stats_of(problem, pts);
    const SolverOptions defaults;
    Runner runner(problem, defaults);
    LloydStep out;
    out.points = runner.step(pts, stats, true);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].tag != PointTag::beta && stats.mass[i] <= kMovableMass) out.degenerate.push_back(i);
    }
    return out;
}

Quantizer solve(const Problem& problem, const SolverOptions& options) {
    validate_problem(problem);
    validate_options(problem, options);
    Runner runner(problem, options);
    RunResult best;
    for (int r = 0; r < options.restarts; ++r) {
        RunResult res = runner.run(runner.seed(r));
        if (res.distortion < best.distortion) best = std::move(res);
        if (static_cast<int>(problem.beta.size()) == problem.n) break;
    }
    if (options.warm_start) {
        RunResult res = runner.run(runner.warm(*options.warm_start));
        if (res.distortion < best.distortion) best = std::move(res);
    }
    return finish(problem, std::move(best), options.mass_tol);
}

ExistenceReport existence_check(const Problem& problem, const SolverOptions& options) {
    ExistenceReport rep;
    rep.witness = solve(problem, options);
    rep.exists_with_n_points = static_cast<int>(rep.witness.points.size()) == problem.n &&
                               rep.witness.degenerate_points.empty();
    return rep;
}

SandwichReport sandwich_check(const Problem& problem, const SolverOptions& options) {
    validate_problem(problem);
    const int ell = static_cast<int>(problem.beta.size());
    if (problem.n <= ell) throw PreconditionError("sandwich check needs n > card(beta)");
    if (!whole_plane(problem)) {
        for (const Point2 b : problem.beta) {
            double best = kInf;
            for (const auto& c : problem.constraints) best = std::min(best, nearest_on(c, b).d2);
            if (std::sqrt(best) > 1e-9) {
                throw PreconditionError("conditional point outside the constraint union");
            }
        }
    }
    SolverOptions plain_opts = options;
    plain_opts.allocation.reset();
    plain_opts.warm_start.reset();
    Problem plain{problem.measure, problem.constraints, {}, problem.n};
    SandwichReport rep;
    rep.v_n = solve(plain, plain_opts).distortion;
    rep.v_cond_n = solve(problem, options).distortion;
    plain.n = problem.n - ell;
    rep.v_n_minus_l = solve(plain, plain_opts).distortion;
    const double tol = 1e-7;
    rep.holds = rep.v_n <= rep.v_cond_n + tol * std::max(1.0, rep.v_cond_n) &&
                rep.v_cond_n <= rep.v_n_minus_l + tol * std::max(1.0, rep.v_n_minus_l);
    return rep;
}

std::vector<std::pair<int, double>> density_gap(const PositionFamily& family, double length,
                                                int n_max) {
    if (!(length > 0.0)) throw DomainError("support length must be positive");
    if (n_max < 1) throw DomainError("n_max must be >= 1");
    std::vector<double> merged;
    std::vector<std::pair<int, double>> out;
    for (int n = 1; n <= n_max; ++n) {
        for (double s : family(n)) merged.push_back(std::clamp(s, 0.0, length));
        std::sort(merged.begin(), merged.end());
        merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
        double gap = merged.front();
        for (std::size_t i = 1; i < merged.size(); ++i) gap = std::max(gap, merged[i] - merged[i - 1]);
        gap = std::max(gap, length - merged.back());
        out.emplace_back(n, gap);
    }
    return out;
}

PositionFamily interval_nmeans_family(double length) {
    return [length](int n) {
        std::vector<double> pts;
        for (int j = 1; j <= n; ++j) pts.push_back((2.0 * j - 1.0) * length / (2.0 * n));
        return pts;
    };
}

PositionFamily solver_nmeans_family(const Curve& segment, const SolverOptions& options) {
    if (!segment.is_segment()) throw DomainError("n-means family needs a segment support");
    return [segment, options](int n) {
        const Problem p{UniformCurveMeasure({segment}), {}, {}, n};
        const Quantizer q = solve(p, options);
        std::vector<double> pts;
        for (const auto& tp : q.points) pts.push_back(segment.project(tp.position));
        return pts;
    };
}

}  // namespace cquant
