#include "hermeig/slicing.hpp"

#include <algorithm>
#include <cmath>

#include "hermeig/errors.hpp"

namespace hermeig {

namespace {

// gamma_2 of { |x| < a, lo < y < min(p(x), hi) } by weighted quadrature with
// panel splits at the profile kinks and at the width abscissae of the cuts.
double band_measure(const Profile& p, double a, double lo, double hi, double x_of_lo, double x_of_hi) {
    std::vector<double> breaks = p.interior_breaks();
    for (double w : {x_of_lo, x_of_hi}) {
        if (w > 0.0 && w < a) {
            breaks.push_back(w);
            breaks.push_back(-w);
        }
    }
    QuadratureRule rule = weighted_interval_rule_split(-a, a, 24, breaks);
    const double base = gauss_cdf(lo);
    const double s = rule.apply([&](double x) {
        const double top = std::min(p(x), hi);
        return std::max(0.0, gauss_cdf(top) - base);
    });
    return s / 2.5066282746310005024;
}

// Half-width at ordinate y: the abscissa where the (even, decreasing on the
// right) profile crosses y; a if the profile never dips that low.
double width_at(const Profile& p, double a, double y) {
    if (p(a) >= y) return a;
    if (p(0.0) <= y) return 0.0;
    double lo = 0.0, hi = a;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, a); ++it) {
        const double mid = 0.5 * (lo + hi);
        (p(mid) > y ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

WeightProfile Slice::phi() const {
    const Profile p = p_k;
    const double d = d_k;
    WeightProfile w;
    w.phi = [p, d](double x) { return gauss_cdf(p(x)) - gauss_cdf(d); };
    w.dphi = [p](double x) {
        const double v = p(x);
        return std::exp(-0.5 * v * v) / 2.5066282746310005024 * p.deriv(x);
    };
    w.ddphi = [p](double x) {
        const double v = p(x), d1 = p.deriv(x), d2 = p.deriv2(x);
        const double dens = std::exp(-0.5 * v * v) / 2.5066282746310005024;
        return dens * (d2 - v * d1 * d1);
    };
    w.kinks = p.interior_breaks();
    return w;
}

Domain upper_cap(const Domain& dom) {
    if (!dom.validated) throw ValidationError("upper_cap: domain not validated");
    if (!dom.bounded()) throw ValidationError("upper_cap: requires a bounded domain");
    if (!dom.upper.valid()) throw ValidationError("upper_cap: no upper profile");
    const double y0 = dom.upper(dom.a * (1.0 - 1e-15));
    const double top = dom.upper(0.0);
    if (!(top > y0 + 1e-12))
        throw ValidationError("upper_cap: flat upper profile, the cap Omega+ is empty");
    Domain cap = Domain::profile(dom.a, dom.upper, Profile::constant(y0, -dom.a, dom.a));
    cap.id = dom.id + "+";
    return build_domain(std::move(cap));
}

SliceSet slice_equal_gaussian(const Domain& cap, int n) {
    if (!cap.validated) throw ValidationError("slice_equal_gaussian: cap not validated");
    if (!cap.bounded()) throw ValidationError("slice_equal_gaussian: requires a bounded cap");
    if (n < 0) throw ValidationError("slice_equal_gaussian: depth n must be >= 0");
    const Profile& p = cap.upper;
    const double a = cap.a;
    const double y0 = cap.lower(0.0);
    const double top = p(0.0);

    const double total = band_measure(p, a, y0, top + 1.0, a, 0.0);
    if (total < 1e-13)
        throw NumericalError("slice_equal_gaussian: cap measure below the bisection floor 1e-13");

    // Cut ordinates: bisection on the measure of { y0 < y < min(p, t) },
    // monotone in t, to measure tolerance 1e-12 (or 200 iterations).
    const int pieces = 1 << n;
    std::vector<double> cuts{y0};
    for (int k = 1; k < pieces; ++k) {
        const double target = total * k / pieces;
        double lo = y0, hi = top;
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (lo + hi);
            const double m = band_measure(p, a, y0, mid, a, width_at(p, a, mid));
            if (std::abs(m - target) < 1e-12 && it > 10) { lo = hi = mid; break; }
            (m < target ? lo : hi) = mid;
        }
        cuts.push_back(0.5 * (lo + hi));
    }
    cuts.push_back(top);

    SliceSet out;
    out.parent = cap;
    out.depth = n;
    out.parent_measure = total;
    for (int k = 0; k < pieces; ++k) {
        Slice s;
        s.d_k = cuts[k];
        s.t_k = cuts[k + 1];
        s.a_k = width_at(p, a, s.d_k);
        s.abar_k = (k + 1 == pieces) ? 0.0 : width_at(p, a, s.t_k);
        // p_k = min(p, t_k) on (-a_k, a_k): flat across (-abar, abar), the
        // parent profile outside. The top slice has no flat part (abar = 0).
        if (s.abar_k > 1e-13) {
            Profile left = p.restricted(-s.a_k, -s.abar_k);
            Profile mid = Profile::constant(s.t_k, -s.abar_k, s.abar_k);
            Profile right = p.restricted(s.abar_k, s.a_k);
            s.p_k = Profile::join({std::move(left), std::move(mid), std::move(right)});
        } else {
            s.p_k = p.restricted(-s.a_k, s.a_k);
        }
        s.measure = band_measure(p, s.a_k, s.d_k, s.t_k, s.a_k, s.abar_k);
        out.strips.push_back(std::move(s));
    }
    return out;
}

}  // namespace hermeig
