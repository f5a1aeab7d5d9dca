#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace cquant {

struct SequenceEntry {
    int n = 0;
    double v = 0.0;
};

/// Error sequence (n, V_n): n strictly increasing, V_n finite, positive and
/// nonincreasing. Validated on construction.
class ErrorSequence {
public:
    explicit ErrorSequence(std::vector<SequenceEntry> entries);

    const std::vector<SequenceEntry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

private:
    std::vector<SequenceEntry> entries_;
};

/// Limit of v(n) = V + C n^(-s) fitted exactly through three tail entries
/// spaced `stride` apart (the last entry included).
double estimate_v_infinity(const ErrorSequence& seq, int stride = 1);

enum class DimensionMethod {
    /// Local log-log slope of (v_n - V) between n and the entry nearest n/2.
    slope,
    /// r log n / (-log(v_n - V)) evaluated at each n.
    direct_ratio,
};

/// Number of tail entries used by default: half the sequence, at least 10.
std::size_t default_tail_window(std::size_t size);

std::pair<double, double> estimate_dimension(const ErrorSequence& seq, double v_infinity,
                                             double r = 2.0, std::size_t tail_window = 0,
                                             DimensionMethod method = DimensionMethod::slope);

/// (min, max) of n^(r/kappa) (v_n - V) over the tail window.
std::pair<double, double> estimate_coefficient(const ErrorSequence& seq, double v_infinity,
                                               double kappa, double r = 2.0,
                                               std::size_t tail_window = 0);

struct AsymptoticsReport {
    double v_infinity = 0.0;
    double dim_lower = 0.0;
    double dim_upper = 0.0;
    double kappa = 0.0;
    double coeff_lower = 0.0;
    double coeff_upper = 0.0;
    std::size_t tail_window = 0;
};

AsymptoticsReport analyze(const ErrorSequence& seq, double kappa,
                          std::optional<double> v_infinity_override = std::nullopt,
                          std::size_t tail_window = 0, double r = 2.0,
                          DimensionMethod method = DimensionMethod::slope);

struct TriangleReference {
    double dimension = 1.0;
    double coefficient = 0.75;
    double v_infinity = 0.0;
};

TriangleReference triangle_reference();

/// Bounds 1/(12 (l+1)^2) <= V_n <= 1/(12 l^2) with l = floor(n/3), n >= 3.
std::pair<double, double> triangle_bracket(int n);

struct LimitReference {
    bool exists = true;
    double v_infinity = 0.0;
    double coefficient = 0.0;
    double kappa = 0.0;  // coefficient is the limit of n^(2/kappa) (V_n - V)
    double dimension = 0.0;
};

struct ExampleReferences {
    LimitReference line_quarter_constrained;   // support [0,1], line y = x/4 + 1/4
    LimitReference line_quarter_conditional;   // same with beta = {(0,0)}
    LimitReference line_steep_constrained;     // support [0,1], line y = x + 4
    LimitReference line_steep_conditional;     // same with beta = {(0,0)}
};

/// Limits as printed alongside the two line examples.
ExampleReferences exam_references();

/// Limits of the exact distortions of the same configurations.
ExampleReferences exam_references_exact();

}  // namespace cquant
