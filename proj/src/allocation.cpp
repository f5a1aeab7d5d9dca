#include "cquant/allocation.hpp"

#include <algorithm>

#include "cquant/closed_form.hpp"
#include "cquant/errors.hpp"

namespace cquant {

namespace {

double semicircle_objective(int n, int n1) { return semicircle_error(n1, n - n1 + 2); }

void require_at_least_three(int n, const char* what) {
    if (n < 3) throw DomainError(std::string(what) + " needs n >= 3");
}

}  // namespace

int seed_a(int n) {
    if (n < 1) throw DomainError("seed_a needs n >= 1");
    return 5 * (n + 4) / 13;
}

Allocation semicircle_allocate(int n) {
    require_at_least_three(n, "semicircle_allocate");
    int n1 = std::clamp(seed_a(n), 2, n);
    auto f = [n](int k) { return semicircle_objective(n, k); };
    bool descended = false;
    while (n1 > 2 && f(n1 - 1) < f(n1)) {
        --n1;
        descended = true;
    }
    // Reaching n1 = 2 ends the search; otherwise try climbing.
    if (n1 > 2 && !descended) {
        while (n1 < n && f(n1 + 1) < f(n1)) ++n1;
    }
    while (n1 > 2 && f(n1 - 1) == f(n1)) --n1;
    return {{n1, n - n1 + 2}, f(n1)};
}

Allocation semicircle_allocate_exhaustive(int n) {
    require_at_least_three(n, "semicircle_allocate_exhaustive");
    int best = 2;
    double best_f = semicircle_objective(n, 2);
    for (int n1 = 3; n1 <= n; ++n1) {
        const double f = semicircle_objective(n, n1);
        if (f < best_f) {
            best = n1;
            best_f = f;
        }
    }
    return {{best, n - best + 2}, best_f};
}

Allocation triangle_allocate(int n) {
    require_at_least_three(n, "triangle_allocate");
    const int k = n / 3;
    int n1 = k + 1;
    int n2 = k + 1;
    const int n3 = k + 1;
    if (n % 3 >= 1) ++n1;
    if (n % 3 == 2) ++n2;
    return {{n1, n2, n3}, triangle_error(n1, n2, n3)};
}

Allocation triangle_allocate_exhaustive(int n) {
    require_at_least_three(n, "triangle_allocate_exhaustive");
    Allocation best;
    bool have = false;
    // e_j = n_j - 1 >= 1 with e1 + e2 + e3 = n.
    for (int e1 = 1; e1 <= n - 2; ++e1) {
        for (int e2 = 1; e1 + e2 <= n - 1; ++e2) {
            const int e3 = n - e1 - e2;
            const double f = triangle_error(e1 + 1, e2 + 1, e3 + 1);
            if (!have || f < best.objective) {
                best = {{e1 + 1, e2 + 1, e3 + 1}, f};
                have = true;
            }
        }
    }
    return best;
}

}  // namespace cquant
