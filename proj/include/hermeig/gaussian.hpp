#pragma once

#include <array>
#include <functional>
#include <vector>

#include "hermeig/extended_real.hpp"

namespace hermeig {

class Domain;  // domain.hpp

// Truncation abscissa for numerically-infinite Gaussian integrals and
// eigenproblems. The Gaussian mass beyond |x| = 12 is below 1e-32, far
// under double-precision noise for every tolerance in this library.
inline constexpr double kGaussTruncation = 12.0;

// Standard normal CDF, accurate in both tails (erfc-based).
double gauss_cdf(double x);

// gamma_1(a,b) = integral over (a,b) of (2*pi)^{-1/2} exp(-x^2/2) dx.
// Endpoints may be infinite. Absolute error <= 1e-14. Throws on a > b.
double gauss_cdf_interval(ExtendedReal a, ExtendedReal b);

// Quadrature rule on an interval or a reference element. For weighted rules
// the Gaussian factor exp(-x^2/2) is absorbed into the weights, so
// sum_i w_i f(x_i) approximates the weighted integral of f.
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    int order = 0;  // polynomial exactness degree of the underlying rule

    double apply(const std::function<double(double)>& f) const {
        double s = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
        return s;
    }
};

// Gauss-Legendre nodes/weights on (-1,1), n points.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Composite Gauss-Legendre rule on (a,b) with exp(-x^2/2) folded into the
// weights; integrates x^k exp(-x^2/2) to <= 1e-12 relative for k <= order.
QuadratureRule weighted_interval_rule(double a, double b, int order);

// Like weighted_interval_rule but with panel boundaries forced at the given
// abscissae (used when the integrand has kinks there).
QuadratureRule weighted_interval_rule_split(double a, double b, int order,
                                            const std::vector<double>& breakpoints);

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

// integral over the triangle (v0,v1,v2) of f(x,y) exp(-(x^2+y^2)/2) dx dy,
// fixed symmetric rule of polynomial exactness degree 6 (12 points, all
// weights positive). Throws on triangles with area below 1e-14.
double triangle_weighted_integral(const Vec2& v0, const Vec2& v1, const Vec2& v2,
                                  const std::function<double(const Vec2&)>& f);

// Plain (unweighted) degree-6 reference-triangle rule, exposed for tests and
// the FEM assembly loop: barycentric points and weights summing to one.
struct TriangleRule {
    std::array<std::array<double, 3>, 12> bary;
    std::array<double, 12> weights;
};
const TriangleRule& triangle_rule_degree6();

struct GaussianMeasure {
    double value = 0.0;
    bool degenerate = false;
    operator double() const { return value; }
};

// gamma_2(Omega): closed forms for product shapes and disks, composite
// weighted quadrature of Phi(p(x)) - Phi(q(x)) for profile-defined domains.
GaussianMeasure gaussian_measure_2d(const Domain& domain);

// integral over Omega of x^2 dgamma_2 (denominator of the odd trial-function
// Rayleigh quotient). Unbounded domains are truncated at y = -trunc_depth.
double second_moment_x(const Domain& domain, double trunc_depth = 10.0);

}  // namespace hermeig
