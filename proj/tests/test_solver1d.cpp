#include <doctest.h>

#include <cmath>

#include "hermeig/errors.hpp"
#include "hermeig/solver1d.hpp"
#include "oracles.hpp"

using namespace hermeig;

namespace {

// Slice-style weight used across the oracle cross-check matrix: built from a
// hexagon-like linear top profile p(x) = 2 - |x|/sqrt(3) cut at 1.5 above 0.5.
WeightProfile hexagon_slice_weight() {
    constexpr double kSqrt3 = 1.7320508075688772935;
    const double kink = kSqrt3 * 0.5;  // p(x) = 1.5 there
    WeightProfile w;
    w.phi = [](double x) {
        const double p = std::min(2.0 - std::abs(x) / kSqrt3, 1.5);
        return 0.5 * (std::erf(p / std::sqrt(2.0)) - std::erf(0.5 / std::sqrt(2.0)));
    };
    w.dphi = [](double x) {
        const double p = 2.0 - std::abs(x) / kSqrt3;
        if (p >= 1.5) return 0.0;
        const double dens = std::exp(-0.5 * p * p) / std::sqrt(2.0 * M_PI);
        return dens * (x > 0 ? -1.0 : 1.0) / kSqrt3;
    };
    w.ddphi = [](double x) {
        const double p = 2.0 - std::abs(x) / kSqrt3;
        if (p >= 1.5) return 0.0;
        const double dens = std::exp(-0.5 * p * p) / std::sqrt(2.0 * M_PI);
        const double d1 = (x > 0 ? -1.0 : 1.0) / kSqrt3;
        return dens * (-p * d1 * d1);
    };
    w.kinks = {-kink, 0.0, kink};
    return w;
}

}  // namespace

TEST_CASE("mu1_interval: full line value is 1") {
    const Value1D v = mu1_interval(ExtendedReal::neg_inf(), ExtendedReal::pos_inf(), 1024);
    CHECK(v.truncated);
    CHECK(std::abs(v.value - 1.0) < 1e-6);
}

TEST_CASE("mu1 = lambda1 + 1 identity") {
    for (double a : {0.5, 1.0, 2.0, 5.0}) {
        const Value1D mu = mu1_interval(-a, a, 2048);
        const Value1D la = lambda1_interval(-a, a, 2048);
        CHECK(std::abs(mu.value - la.value - 1.0) < 1e-8);
        CHECK(mu.order_trusted);
        CHECK(la.order_trusted);
    }
}

TEST_CASE("mu1_interval: small-interval classical limit") {
    const double a = 0.05;
    const Value1D mu = mu1_interval(-a, a, 1024);
    const double classical = M_PI * M_PI / (2.0 * a) / (2.0 * a);
    CHECK(std::abs(mu.value / classical - 1.0) < 5e-3);
    // Shooting oracle agrees.
    const double sh = shooting_eigenvalue(-a, a, BoundaryCondition::Neumann, 0.9 * mu.value, 1.1 * mu.value);
    CHECK(std::abs(sh - mu.value) < 1e-8 * std::abs(mu.value));
}

TEST_CASE("lambda1: domain monotonicity and large-interval limit") {
    double prev = 1e300;
    for (double a : {0.5, 1.0, 2.0, 4.0}) {
        const double v = lambda1_interval(-a, a, 2048).value;
        CHECK(v < prev);
        prev = v;
    }
    CHECK(lambda1_interval(-12.0, 12.0, 2048).value < 1e-4);
}

TEST_CASE("mu1_interval: reflection invariance and monotone lower bound") {
    const Value1D ab = mu1_interval(0.3, 1.7, 1024);
    const Value1D ba = mu1_interval(-1.7, -0.3, 1024);
    CHECK(std::abs(ab.value - ba.value) < 1e-10 * std::abs(ab.value));

    double prev = 1e300;
    for (double a = 0.4; a <= 3.2; a += 0.4) {
        const Value1D mu = mu1_interval(-a, a, 1024);
        CHECK(mu.value < prev);
        const Value1D la = lambda1_interval(-a, a, 1024);
        CHECK(mu.value - 1.0 >= -1e-9);
        CHECK(la.value >= -1e-9);
        prev = mu.value;
    }
}

TEST_CASE("weighted_mu1: constant weights reduce to the plain problem") {
    const Value1D plain = mu1_interval(-1.0, 1.0, 1024);
    WeightProfile one = WeightProfile::one();
    const WeightedMu1Result w1 = weighted_mu1(-1.0, 1.0, one, 1024);
    CHECK(std::abs(w1.value.value - plain.value) < 1e-10 * plain.value);

    WeightProfile c;
    c.phi = [](double) { return 3.7; };
    c.dphi = [](double) { return 0.0; };
    c.ddphi = [](double) { return 0.0; };
    const WeightedMu1Result wc = weighted_mu1(-1.0, 1.0, c, 1024);
    CHECK(std::abs(wc.value.value - w1.value.value) < 1e-10 * std::abs(w1.value.value));
    CHECK(w1.pair.zero_mean_defect < 1e-8);
    CHECK(wc.pair.zero_mean_defect < 1e-8);
}

TEST_CASE("shooting vs flux-form: 12-case oracle matrix") {
    const WeightProfile hex = hexagon_slice_weight();
    for (double a : {0.5, 1.0, 2.0}) {
        for (int weighted = 0; weighted < 2; ++weighted) {
            const WeightProfile* phi = weighted ? &hex : nullptr;
            // Neumann (first nontrivial).
            double fd_n;
            if (weighted) fd_n = weighted_mu1(-a, a, hex, 2048).value.value;
            else fd_n = mu1_interval(-a, a, 2048).value;
            const double sh_n = shooting_eigenvalue(-a, a, BoundaryCondition::Neumann, 0.9 * fd_n - 0.05,
                                                    1.1 * fd_n + 0.05, phi);
            CHECK(std::abs(sh_n - fd_n) <= 1e-8 * std::max(1.0, std::abs(fd_n)));

            // Dirichlet (smallest).
            double fd_d;
            if (weighted) fd_d = weighted_lambda1(-a, a, hex, 2048).value;
            else fd_d = lambda1_interval(-a, a, 2048).value;
            const double sh_d = shooting_eigenvalue(-a, a, BoundaryCondition::Dirichlet,
                                                    0.9 * fd_d - 0.05, 1.1 * fd_d + 0.05, phi);
            CHECK(std::abs(sh_d - fd_d) <= 1e-8 * std::max(1.0, std::abs(fd_d)));
        }
    }
}

TEST_CASE("shooting: odd symmetry of the first nontrivial Neumann mode") {
    // Integrate at the converged eigenvalue and check v(0) ~ 0 by bisecting
    // the defect on a fine grid: the eigenfunction of mu1(-a,a) is odd.
    const double a = 1.0;
    const WeightedMu1Result res = weighted_mu1(-a, a, WeightProfile::one(), 2048);
    const auto& g = res.pair.grid;
    const auto& f = res.pair.function;
    // Nearest grid values around x = 0 must straddle zero antisymmetrically.
    double v_at_0 = 0.0;
    double best = 1e300;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (std::abs(g[i]) < best) {
            best = std::abs(g[i]);
            v_at_0 = f[i];
        }
    double fmax = 0.0;
    for (double v : f) fmax = std::max(fmax, std::abs(v));
    CHECK(std::abs(v_at_0) < 1e-6 * fmax);
    // Antisymmetry of the sampled eigenfunction.
    const std::size_t n = g.size();
    double asym = 0.0;
    for (std::size_t i = 0; i < n; ++i) asym = std::max(asym, std::abs(f[i] + f[n - 1 - i]));
    CHECK(asym < 1e-6 * fmax);
}

TEST_CASE("shooting: bracket without sign change throws") {
    CHECK_THROWS_AS(shooting_eigenvalue(-1.0, 1.0, BoundaryCondition::Neumann, 0.1, 0.2), NumericalError);
}

TEST_CASE("transform_check: constant weight and grid convergence") {
    const WeightedMu1Result res = weighted_mu1(-1.0, 1.0, WeightProfile::one(), 2048);
    const TransformCheckResult tc = transform_check(res.pair, WeightProfile::one());
    CHECK(tc.residual < 1e-3);
    CHECK(tc.endpoint_defect < 0.05);

    // Order under grid doubling.
    std::vector<double> residuals;
    for (int n : {512, 1024, 2048}) {
        const WeightedMu1Result rr = weighted_mu1(-1.0, 1.0, WeightProfile::one(), n);
        residuals.push_back(transform_check(rr.pair, WeightProfile::one()).residual);
    }
    CHECK(std::log2(residuals[0] / residuals[1]) > 1.5);
    CHECK(std::log2(residuals[1] / residuals[2]) > 1.5);
}

TEST_CASE("disk radial: plane limit and parameter validation") {
    const Value1D v = disk_radial_eigenvalue(12.0, 1, 1024);
    CHECK(std::abs(v.value - 1.0) < 1e-6);
    CHECK_THROWS_AS(disk_radial_eigenvalue(1.0, -1, 512), ValidationError);

    // m = 0 zero-mode deflation leaves a positive first eigenvalue.
    const Value1D m0 = disk_radial_eigenvalue(1.0, 0, 1024);
    CHECK(m0.value > 0.1);
}

TEST_CASE("neumann_spectrum_1d: zero mode and first value consistency") {
    const auto spec = neumann_spectrum_1d(-1.0, 1.0, 3, 1024);
    CHECK(std::abs(spec[0]) < 1e-9);
    const Value1D mu = mu1_interval(-1.0, 1.0, 1024);
    CHECK(std::abs(spec[1] - mu.value) < 1e-7 * std::abs(mu.value));
    CHECK(spec[2] > spec[1]);
}

TEST_CASE("resolution guard") {
    CHECK_THROWS_AS(mu1_interval(-1.0, 1.0, 8), SizeError);
}
