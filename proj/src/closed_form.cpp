#include "cquant/closed_form.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cquant/allocation.hpp"
#include "cquant/errors.hpp"

namespace cquant {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt3 = std::sqrt(3.0);

void require_interval(double a, double b) {
    if (!(a < b)) throw DomainError("interval needs a < b");
}

// x - sin(x) without the cancellation of the direct form for small x.
double x_minus_sin(double x) {
    if (std::abs(x) > 0.25) return x - std::sin(x);
    const double x2 = x * x;
    double term = x * x2 / 6.0;
    double sum = term;
    for (int k = 2; k < 12; ++k) {
        term *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
        sum += term;
    }
    return sum;
}

Point2 triangle_side2(double t) { return {1.0 - 0.5 * t, 0.5 * kSqrt3 * t}; }
Point2 triangle_side3(double t) { return {0.5 - 0.5 * t, 0.5 * kSqrt3 - 0.5 * kSqrt3 * t}; }

}  // namespace

ClosedFormResult interval_interior(int m, const IntervalScenario& scen) {
    if (m < 2) throw DomainError("interval_interior needs m >= 2");
    require_interval(scen.a, scen.b);
    if (!(scen.a <= scen.c && scen.c < scen.d && scen.d <= scen.b)) {
        throw DomainError("interval_interior needs a <= c < d <= b");
    }
    ClosedFormResult out;
    const double width = scen.d - scen.c;
    for (int j = 1; j <= m; ++j) {
        out.points.push_back({j == m ? scen.d : scen.c + (j - 1) * width / (m - 1), 0.0});
    }
    const double gaps = m - 1.0;
    out.error = width * width * width / (12.0 * (scen.b - scen.a) * gaps * gaps);
    return out;
}

ClosedFormResult interval_left_endpoint(int n, double a, double b) {
    if (n < 1) throw DomainError("interval_left_endpoint needs n >= 1");
    require_interval(a, b);
    ClosedFormResult out;
    const double k = 2.0 * n - 1.0;
    for (int j = 1; j <= n; ++j) out.points.push_back({a + 2.0 * (j - 1) * (b - a) / k, 0.0});
    out.error = (b - a) * (b - a) / (3.0 * k * k);
    return out;
}

ClosedFormResult interval_right_endpoint(int n, double a, double b) {
    if (n < 1) throw DomainError("interval_right_endpoint needs n >= 1");
    require_interval(a, b);
    ClosedFormResult out;
    const double k = 2.0 * n - 1.0;
    for (int j = 1; j <= n; ++j) {
        out.points.push_back({j == n ? b : a + (2.0 * j - 1.0) * (b - a) / k, 0.0});
    }
    out.error = (b - a) * (b - a) / (3.0 * k * k);
    return out;
}

ClosedFormResult line_constraint_optimal(int n, const LineConstraintScenario& scen) {
    if (n < 1) throw DomainError("line_constraint_optimal needs n >= 1");
    require_interval(scen.a, scen.b);
    const double m = scen.slope;
    const double c = scen.intercept;
    const double norm = 1.0 + m * m;
    if (scen.window_lo.has_value() != scen.window_hi.has_value()) {
        throw DomainError("line window needs both endpoints");
    }
    if (scen.window_lo) {
        const double lo = *scen.window_lo;
        const double hi = *scen.window_hi;
        if (!(lo < hi)) throw DomainError("line window needs lo < hi");
        // The projections of the support endpoints must fall inside the window.
        if (!(norm * lo + m * c <= scen.a && norm * hi + m * c >= scen.b)) {
            throw PreconditionError("line window does not cover the projection of [a, b]");
        }
    }

    ClosedFormResult out;
    const double span = scen.b - scen.a;
    for (int i = 1; i <= n; ++i) {
        const double x = (2.0 * i - 1.0) * span / (2.0 * n * norm) + (scen.a - c * m) / norm;
        out.points.push_back({x, m * x + c});
    }
    // Mean squared distance to the line, plus the n-means error of the
    // projected (uniform) measure along it.
    const double u = m * scen.a + c;
    const double w = m * span;
    const double to_line = (u * u + u * w + w * w / 3.0) / norm;
    out.error = to_line + span * span / (12.0 * n * n * norm);
    if (n >= 2) out.printed_error = printed::line_constraint_error(n, scen.a, scen.b, m, c);
    return out;
}

double semicircle_error(int n1, int n2) {
    if (n1 < 2 || n2 < 2) throw DomainError("semicircle_error needs n1, n2 >= 2");
    const double base = 1.0 / ((n1 - 1.0) * (n1 - 1.0));
    const double k = n2 - 1.0;
    // 3*pi - 6k sin(pi/2k) == 6k (x - sin x) with x = pi/2k.
    const double arc = 6.0 * k * x_minus_sin(kPi / (2.0 * k));
    return 2.0 / (3.0 * (2.0 + kPi)) * (base + arc);
}

ClosedFormResult semicircle_conditional(int n, int n1) {
    if (n < 3) throw DomainError("semicircle_conditional needs n >= 3");
    if (n1 < 2 || n1 > n) {
        throw DomainError("semicircle_conditional needs 2 <= n1 <= n, got n1 = " +
                          std::to_string(n1));
    }
    const int n2 = n - n1 + 2;
    ClosedFormResult out;
    for (int j = 1; j <= n1; ++j) {
        out.points.push_back({j == n1 ? 1.0 : -1.0 + 2.0 * (j - 1) / (n1 - 1.0), 0.0});
    }
    for (int j = 2; j <= n2 - 1; ++j) {
        const double angle = (j - 1) * kPi / (n2 - 1.0);
        out.points.push_back({std::cos(angle), std::sin(angle)});
    }
    out.error = semicircle_error(n1, n2);
    out.allocation = {n1, n2};
    return out;
}

double triangle_error(int n1, int n2, int n3) {
    if (n1 < 2 || n2 < 2 || n3 < 2) throw DomainError("triangle_error needs counts >= 2");
    auto inv_sq = [](int k) { return 1.0 / ((k - 1.0) * (k - 1.0)); };
    return (inv_sq(n1) + inv_sq(n2) + inv_sq(n3)) / 36.0;
}

ClosedFormResult triangle_conditional(int n) {
    if (n < 3) throw DomainError("triangle_conditional needs n >= 3");
    const Allocation alloc = triangle_allocate(n);
    const int n1 = alloc.parts[0];
    const int n2 = alloc.parts[1];
    const int n3 = alloc.parts[2];
    ClosedFormResult out;
    // Each side contributes its points except the far endpoint, which is the
    // first point of the next side.
    for (int j = 1; j <= n1 - 1; ++j) out.points.push_back({(j - 1) / (n1 - 1.0), 0.0});
    for (int j = 1; j <= n2 - 1; ++j) out.points.push_back(triangle_side2((j - 1) / (n2 - 1.0)));
    for (int j = 1; j <= n3 - 1; ++j) out.points.push_back(triangle_side3((j - 1) / (n3 - 1.0)));
    out.error = triangle_error(n1, n2, n3);
    out.allocation = {n1, n2, n3};
    return out;
}

double exam1_boundary(int n) {
    if (n < 1) throw DomainError("exam1_boundary needs n >= 1");
    const double k = n;
    return (k * k + k * std::sqrt(17.0 * k * k + 52.0) - 4.0) / (16.0 * k * k - 4.0);
}

ClosedFormResult exam1_conditional(int n) {
    if (n < 3) throw DomainError("exam1_conditional needs n >= 3");
    const double d = exam1_boundary(n);
    const double k = n;
    ClosedFormResult out;
    out.points.push_back({0.0, 0.0});
    for (int i = 1; i <= n; ++i) {
        const double x = -(8.0 * d * (2.0 * i - 2.0 * k - 1.0) - 16.0 * i + k + 8.0) / (17.0 * k);
        out.points.push_back({x, 0.25 * x + 0.25});
    }
    // [0, d] is served by the origin; [d, 1] by the line-constrained n-point
    // block, whose error is the line-constraint closed form on [d, 1].
    const double e = 1.0 + d;
    const double f = 1.0 - d;
    out.error = d * d * d / 3.0 + (8.0 - e * e * e) / 51.0 + 4.0 * f * f * f / (51.0 * k * k);
    out.printed_error = printed::exam1_error(n);
    return out;
}

namespace printed {

double line_constraint_error(int n, double a, double b, double m, double c) {
    if (n < 2) throw DomainError("printed line-constraint error is only given for n >= 2");
    const double m2 = m * m;
    if (n == 2) {
        return (a * a * (16 * m2 + 1) + 2 * a * b * (8 * m2 - 1) + 48 * a * c * m +
                b * b * (16 * m2 + 1) + 48 * b * c * m + 48 * c * c) /
               (48 * (m2 + 1));
    }
    const double k = n;
    const double ab = a - b;
    return (-48 * ab * ab * m2 + ab * (ab + 72 * c * m + 8 * (11 * a - 2 * b) * m2) * k -
            12 * ab * m * (5 * c + (4 * a + b) * m) * k * k + 12 * (c + a * m) * (c + a * m) * k * k * k) /
           (12 * (m2 + 1) * k * k * k);
}

double exam1_error(int n) {
    const double d = exam1_boundary(n);
    const double k = n;
    const double k2 = k * k;
    const double k3 = k2 * k;
    return d * d * d / 3.0 +
           (d * d * (3 * k3 - 12 * k2 + 26 * k - 12) + 2 * d * (3 * k3 - 3 * k2 - 8 * k + 12) +
            3 * k3 + 18 * k2 - 10 * k - 12) /
               (51 * k3);
}

}  // namespace printed

}  // namespace cquant
