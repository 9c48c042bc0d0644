#pragma once

#include <vector>

#include "hermeig/domain.hpp"
#include "hermeig/solver1d.hpp"

namespace hermeig {

// One horizontal strip Omega_k = { |x| < a_k, d_k < y < p_k(x) } of the
// equal-Gaussian-measure decomposition, carrying its weight profile
// phi_k(x) = Phi(p_k(x)) - Phi(d_k).
struct Slice {
    double a_k = 0.0;     // half-width
    double d_k = 0.0;     // bottom ordinate
    double t_k = 0.0;     // top cut ordinate (p_k = min(p, t_k))
    double abar_k = 0.0;  // flat-part half-width; 0 when the top slice has none
    Profile p_k;          // top profile on (-a_k, a_k)
    double measure = 0.0; // gamma_2 of the strip

    WeightProfile phi() const;
};

struct SliceSet {
    Domain parent;        // the cap that was sliced
    int depth = 0;        // n; 2^n strips
    double parent_measure = 0.0;
    std::vector<Slice> strips;  // bottom to top
};

// The region above the profile minimum: Omega^+ = Omega intersect {y > p(a)},
// as a bounded cap domain with constant lower boundary.
Domain upper_cap(const Domain& dom);

// Theorem 1 Step 1: split the cap into 2^n horizontal strips of equal
// Gaussian measure; cut ordinates found by bisection on the strip measure.
SliceSet slice_equal_gaussian(const Domain& cap, int n);

}  // namespace hermeig
