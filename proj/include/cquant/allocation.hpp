#pragma once

#include <vector>

namespace cquant {

/// Integer split of quantizer points across support components together with
/// the distortion it yields.
struct Allocation {
    std::vector<int> parts;
    double objective = 0.0;
};

/// Starting guess floor(5(n+4)/13) for the number of base points on the
/// semicircle.
int seed_a(int n);

/// Local search from seed_a(n) over n1 with F(n, n1) = semicircle_error(n1, n - n1 + 2).
Allocation semicircle_allocate(int n);
/// Full scan over n1 in [2, n]; ties go to the smaller n1.
Allocation semicircle_allocate_exhaustive(int n);

/// Balanced split (n1, n2, n3) of n points over the triangle sides, where
/// n_j - 1 points are owned by side j.
Allocation triangle_allocate(int n);
/// Full scan over all splits with sum(n_j - 1) = n, n_j >= 2; ties go to the
/// lexicographically smallest split.
Allocation triangle_allocate_exhaustive(int n);

}  // namespace cquant
