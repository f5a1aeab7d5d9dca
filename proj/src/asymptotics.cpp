#include "cquant/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include "cquant/errors.hpp"

namespace cquant {

ErrorSequence::ErrorSequence(std::vector<SequenceEntry> entries) : entries_(std::move(entries)) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& e = entries_[i];
        if (!std::isfinite(e.v) || !(e.v > 0.0)) {
            throw DomainError("sequence value at n = " + std::to_string(e.n) + " must be finite and positive");
        }
        if (i > 0) {
            if (e.n <= entries_[i - 1].n) throw DomainError("sequence n must be strictly increasing");
            if (e.v > entries_[i - 1].v) {
                throw DomainError("sequence must be nonincreasing (n = " + std::to_string(e.n) + ")");
            }
        }
    }
}

namespace {

// (a^-s - b^-s) / (b^-s - c^-s) for a < b < c.
double spacing_ratio(double a, double b, double c, double s) {
    const double pa = std::pow(a, -s);
    const double pb = std::pow(b, -s);
    const double pc = std::pow(c, -s);
    return (pa - pb) / (pb - pc);
}

std::size_t window_start(const ErrorSequence& seq, std::size_t tail_window) {
    const std::size_t w = tail_window == 0 ? default_tail_window(seq.size()) : tail_window;
    if (w > seq.size()) throw DomainError("tail window longer than the sequence");
    return seq.size() - w;
}

double deviation(const SequenceEntry& e, double v_infinity) {
    const double d = e.v - v_infinity;
    if (!(d > 0.0)) {
        throw DomainError("v_n <= V_inf at n = " + std::to_string(e.n));
    }
    return d;
}

}  // namespace

double estimate_v_infinity(const ErrorSequence& seq, int stride) {
    if (stride < 1) throw DomainError("stride must be >= 1");
    const auto& e = seq.entries();
    const std::size_t span = 2 * static_cast<std::size_t>(stride);
    if (e.size() < span + 1) throw DomainError("need at least three tail entries");
    const auto& x3 = e[e.size() - 1];
    const auto& x2 = e[e.size() - 1 - stride];
    const auto& x1 = e[e.size() - 1 - span];
    const double d12 = x1.v - x2.v;
    const double d23 = x2.v - x3.v;
    if (!(d12 > 0.0) || !(d23 > 0.0)) throw IllConditionedError("tail is not strictly decreasing");
    const double target = d12 / d23;
    const double a = x1.n;
    const double b = x2.n;
    const double c = x3.n;
    // The ratio increases with s; bracket the root in log(s).
    double lo = std::log(1e-6);
    double hi = std::log(64.0);
    auto g = [&](double ls) { return spacing_ratio(a, b, c, std::exp(ls)) - target; };
    double glo = g(lo);
    double ghi = g(hi);
    if (!(glo <= 0.0 && ghi >= 0.0)) throw IllConditionedError("tail does not fit a power law");
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) <= 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double s = std::exp(0.5 * (lo + hi));
    const double coeff = d23 / (std::pow(b, -s) - std::pow(c, -s));
    return x3.v - coeff * std::pow(c, -s);
}

std::size_t default_tail_window(std::size_t size) {
    return std::min(size, std::max<std::size_t>(10, size / 2));
}

std::pair<double, double> estimate_dimension(const ErrorSequence& seq, double v_infinity, double r,
                                             std::size_t tail_window, DimensionMethod method) {
    if (!(r > 0.0)) throw DomainError("order must be positive");
    const auto& e = seq.entries();
    const std::size_t start = window_start(seq, tail_window);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = start; i < e.size(); ++i) {
        const double dev = deviation(e[i], v_infinity);
        double dim = 0.0;
        if (method == DimensionMethod::direct_ratio) {
            dim = r * std::log(static_cast<double>(e[i].n)) / -std::log(dev);
        } else {
            // Earlier entry whose n is closest to n/2.
            const double half = 0.5 * e[i].n;
            std::size_t j = 0;
            for (std::size_t k = 1; k < i; ++k) {
                if (std::abs(e[k].n - half) < std::abs(e[j].n - half)) j = k;
            }
            if (j >= i) throw DomainError("dimension slope needs an earlier entry");
            const double dev_j = deviation(e[j], v_infinity);
            const double slope = (std::log(dev_j) - std::log(dev)) /
                                 (std::log(static_cast<double>(e[i].n)) - std::log(static_cast<double>(e[j].n)));
            dim = r / slope;
        }
        lo = std::min(lo, dim);
        hi = std::max(hi, dim);
    }
    return {lo, hi};
}

std::pair<double, double> estimate_coefficient(const ErrorSequence& seq, double v_infinity,
                                               double kappa, double r, std::size_t tail_window) {
    if (!(kappa > 0.0)) throw DomainError("kappa must be positive");
    const auto& e = seq.entries();
    const std::size_t start = window_start(seq, tail_window);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = start; i < e.size(); ++i) {
        const double c = std::pow(static_cast<double>(e[i].n), r / kappa) * deviation(e[i], v_infinity);
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    return {lo, hi};
}

AsymptoticsReport analyze(const ErrorSequence& seq, double kappa,
                          std::optional<double> v_infinity_override, std::size_t tail_window,
                          double r, DimensionMethod method) {
    AsymptoticsReport rep;
    rep.v_infinity = v_infinity_override ? *v_infinity_override : estimate_v_infinity(seq);
    rep.tail_window = tail_window == 0 ? default_tail_window(seq.size()) : tail_window;
    std::tie(rep.dim_lower, rep.dim_upper) =
        estimate_dimension(seq, rep.v_infinity, r, rep.tail_window, method);
    rep.kappa = kappa;
    std::tie(rep.coeff_lower, rep.coeff_upper) =
        estimate_coefficient(seq, rep.v_infinity, kappa, r, rep.tail_window);
    return rep;
}

TriangleReference triangle_reference() { return {}; }

std::pair<double, double> triangle_bracket(int n) {
    if (n < 3) throw DomainError("triangle bracket needs n >= 3");
    const double l = n / 3;
    return {1.0 / (12.0 * (l + 1.0) * (l + 1.0)), 1.0 / (12.0 * l * l)};
}

ExampleReferences exam_references() {
    const double r17 = std::sqrt(17.0);
    ExampleReferences out;
    out.line_quarter_constrained = {true, 1.0 / 17.0, 6.0 / 17.0, 2.0, 2.0};
    out.line_quarter_conditional = {true, (29.0 * r17 + 229.0) / 3072.0, (179.0 - 5.0 * r17) / 544.0, 2.0, 2.0};
    out.line_steep_constrained = {true, 8.0, 21.0 / 2.0, 2.0, 2.0};
    out.line_steep_conditional = {false, 0.0, 0.0, 0.0, 0.0};
    return out;
}

ExampleReferences exam_references_exact() {
    // Boundary between the conditional point and the line cells in the limit:
    // x^2 = (x + 1)^2 / 17.
    const double d = (1.0 + std::sqrt(17.0)) / 16.0;
    const double e = 1.0 + d;
    const double f = 1.0 - d;
    ExampleReferences out;
    out.line_quarter_constrained = {true, 7.0 / 51.0, 4.0 / 51.0, 1.0, 1.0};
    out.line_quarter_conditional = {true, d * d * d / 3.0 + (8.0 - e * e * e) / 51.0,
                                    4.0 * f * f * f / 51.0, 1.0, 1.0};
    out.line_steep_constrained = {true, 61.0 / 6.0, 1.0 / 24.0, 1.0, 1.0};
    out.line_steep_conditional = {false, 0.0, 0.0, 0.0, 0.0};
    return out;
}

}  // namespace cquant
