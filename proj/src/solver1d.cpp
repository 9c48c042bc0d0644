#include "hermeig/solver1d.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>

#include "hermeig/eigen_core.hpp"
#include "hermeig/errors.hpp"

namespace hermeig {

namespace {

double gauss_weight(double x) { return std::exp(-0.5 * x * x); }

struct Level {
    double value = 0.0;
    Eigen::VectorXd vec;       // eigenvector on the level's grid
    std::vector<double> grid;  // node abscissae
    Eigen::VectorXd mass;      // lumped masses (for defect checks)
};

// Flux-form discretization of -(v' phi gamma)' = lambda v phi gamma.
// Neumann/weighted problems use cell centers (natural zero-flux closure and
// strictly interior nodes, so vanishing endpoint weights never hit a mass
// entry); Dirichlet uses interior vertices with the boundary rows removed.
Level solve_level(double a, double b, BoundaryCondition bc, const WeightProfile* phi, int n,
                  int index /* 0 = smallest */) {
    if (n < 16) throw SizeError("solver1d: fewer than 16 points after truncation");
    if (!(a < b)) throw ValidationError("solver1d: requires a < b");
    const double h = (b - a) / n;
    auto wfn = [&](double x) {
        const double p = phi ? phi->phi(x) : 1.0;
        return p * gauss_weight(x);
    };

    Level lv;
    SymTriMatrix T;
    if (bc == BoundaryCondition::Neumann) {
        const int m = n;  // cells
        Eigen::VectorXd diagK = Eigen::VectorXd::Zero(m), off = Eigen::VectorXd::Zero(m - 1), mass(m);
        lv.grid.resize(m);
        for (int i = 0; i < m; ++i) {
            const double xc = a + (i + 0.5) * h;
            lv.grid[i] = xc;
            const double w = phi ? phi->phi(xc) : 1.0;
            if (!(w > 0.0)) throw ValidationError("solver1d: weight phi <= 0 at grid point x = " + std::to_string(xc));
            mass[i] = w * gauss_weight(xc) * h;
        }
        for (int f = 1; f < m; ++f) {
            const double xf = a + f * h;
            const double wf = wfn(xf) / h;
            off[f - 1] = -wf;
            diagK[f - 1] += wf;
            diagK[f] += wf;
        }
        T.diag.resize(m);
        T.offdiag.resize(m - 1);
        for (int i = 0; i < m; ++i) T.diag[i] = diagK[i] / mass[i];
        for (int i = 0; i + 1 < m; ++i) T.offdiag[i] = off[i] / std::sqrt(mass[i] * mass[i + 1]);
        lv.mass = mass;
    } else {
        const int m = n - 1;  // interior vertices
        Eigen::VectorXd diagK = Eigen::VectorXd::Zero(m), off = Eigen::VectorXd::Zero(m - 1), mass(m);
        lv.grid.resize(m);
        for (int i = 0; i < m; ++i) {
            const double xv = a + (i + 1) * h;
            lv.grid[i] = xv;
            const double w = phi ? phi->phi(xv) : 1.0;
            if (!(w > 0.0)) throw ValidationError("solver1d: weight phi <= 0 at grid point x = " + std::to_string(xv));
            mass[i] = w * gauss_weight(xv) * h;
        }
        for (int i = 0; i < m; ++i) {
            const double wl = wfn(a + (i + 0.5) * h) / h;
            const double wr = wfn(a + (i + 1.5) * h) / h;
            diagK[i] = wl + wr;
            if (i + 1 < m) off[i] = -wr;
        }
        T.diag.resize(m);
        T.offdiag.resize(m - 1);
        for (int i = 0; i < m; ++i) T.diag[i] = diagK[i] / mass[i];
        for (int i = 0; i + 1 < m; ++i) T.offdiag[i] = off[i] / std::sqrt(mass[i] * mass[i + 1]);
        lv.mass = mass;
    }

    EigenResult res = eigs_sym_tridiagonal(T, index + 1, true);
    if (bc == BoundaryCondition::Neumann && index >= 1) {
        // The zero mode's presence is itself a correctness signal.
        if (std::abs(res.values[0]) > 1e-9)
            throw NumericalError("solver1d: smallest Neumann eigenvalue not ~0 (got " +
                                 std::to_string(res.values[0]) + ")");
    }
    lv.value = res.values[index];
    // Map back through the diagonal mass scaling.
    const Eigen::VectorXd y = res.vectors.col(index);
    lv.vec = y.array() / lv.mass.array().sqrt();
    lv.vec /= lv.vec.norm();
    return lv;
}

struct Extrapolated {
    double value, raw_fine, order;
    bool trusted;
};

Extrapolated richardson(double v_coarse, double v_mid, double v_fine) {
    const double d1 = v_coarse - v_mid;
    const double d2 = v_mid - v_fine;
    const double scale = std::max({1.0, std::abs(v_fine)});
    if (std::abs(d2) < 1e-13 * scale) return {v_fine, v_fine, 2.0, true};  // converged to noise
    const double ratio = d1 / d2;
    const double order = (ratio > 0.0) ? std::log2(ratio) : 0.0;
    const bool trusted = order > 1.8 && order < 2.2;
    const double extrap = v_fine + (v_fine - v_mid) / 3.0;
    return {trusted ? extrap : v_fine, v_fine, order, trusted};
}

Value1D solve_extrapolated(double a, double b, BoundaryCondition bc, const WeightProfile* phi,
                           int grid_n, int index, bool truncated) {
    const Level c = solve_level(a, b, bc, phi, grid_n / 2, index);
    const Level m = solve_level(a, b, bc, phi, grid_n, index);
    const Level f = solve_level(a, b, bc, phi, 2 * grid_n, index);
    const Extrapolated e = richardson(c.value, m.value, f.value);
    Value1D out;
    out.value = e.value;
    out.raw_fine = e.raw_fine;
    out.measured_order = e.order;
    out.order_trusted = e.trusted;
    out.truncated = truncated;
    out.a = a;
    out.b = b;
    out.grid_n = grid_n;
    return out;
}

std::pair<double, double> truncate_interval(ExtendedReal a, ExtendedReal b, bool& truncated) {
    truncated = !a.finite() || !b.finite();
    return {a.truncated(kGaussTruncation), b.truncated(kGaussTruncation)};
}

}  // namespace

Value1D mu1_interval(ExtendedReal a, ExtendedReal b, int grid_n) {
    bool truncated = false;
    auto [av, bv] = truncate_interval(a, b, truncated);
    return solve_extrapolated(av, bv, BoundaryCondition::Neumann, nullptr, grid_n, 1, truncated);
}

Value1D lambda1_interval(ExtendedReal a, ExtendedReal b, int grid_n) {
    bool truncated = false;
    auto [av, bv] = truncate_interval(a, b, truncated);
    return solve_extrapolated(av, bv, BoundaryCondition::Dirichlet, nullptr, grid_n, 0, truncated);
}

WeightedMu1Result weighted_mu1(double a, double b, const WeightProfile& phi, int grid_n) {
    WeightedMu1Result out;
    out.value = solve_extrapolated(a, b, BoundaryCondition::Neumann, &phi, grid_n, 1, false);

    const Level lv = solve_level(a, b, BoundaryCondition::Neumann, &phi, grid_n, 1);
    Eigenpair1D pair;
    pair.value = lv.value;
    pair.grid = lv.grid;
    pair.function.assign(lv.vec.data(), lv.vec.data() + lv.vec.size());
    const int m = static_cast<int>(lv.grid.size());
    const double h = lv.grid[1] - lv.grid[0];
    pair.derivative.resize(m);
    for (int i = 0; i < m; ++i) {
        if (i == 0) pair.derivative[i] = (lv.vec[1] - lv.vec[0]) / h;
        else if (i == m - 1) pair.derivative[i] = (lv.vec[m - 1] - lv.vec[m - 2]) / h;
        else pair.derivative[i] = (lv.vec[i + 1] - lv.vec[i - 1]) / (2.0 * h);
    }
    // Zero-mean defect w.r.t. phi dgamma_x, normalized by the M-norms.
    double num = 0.0, vnorm = 0.0, onenorm = 0.0;
    for (int i = 0; i < m; ++i) {
        num += lv.vec[i] * lv.mass[i];
        vnorm += lv.vec[i] * lv.vec[i] * lv.mass[i];
        onenorm += lv.mass[i];
    }
    pair.zero_mean_defect = std::abs(num) / std::sqrt(vnorm * onenorm);
    out.pair = std::move(pair);
    return out;
}

Value1D weighted_lambda1(double a, double b, const WeightProfile& phi, int grid_n) {
    return solve_extrapolated(a, b, BoundaryCondition::Dirichlet, &phi, grid_n, 0, false);
}

TransformCheckResult transform_check(const Eigenpair1D& pair, const WeightProfile& phi) {
    const int m = static_cast<int>(pair.grid.size());
    if (m < 8) throw SizeError("transform_check: grid too small");
    const double h = pair.grid[1] - pair.grid[0];
    std::vector<double> w(m);
    for (int i = 0; i < m; ++i) {
        const double p = phi.phi(pair.grid[i]);
        if (!(p > 0.0) && i > 0 && i < m - 1)
            throw ValidationError("transform_check: phi vanishes at interior grid point");
        w[i] = pair.derivative[i] * std::sqrt(std::max(p, 0.0));
    }
    double wmax = 0.0, phimax = 0.0;
    for (double v : w) wmax = std::max(wmax, std::abs(v));
    for (int i = 0; i < m; ++i) phimax = std::max(phimax, phi.phi(pair.grid[i]));
    if (wmax == 0.0) throw NumericalError("transform_check: transformed function vanishes identically");

    // The transformed equation holds pointwise only where phi is C^2 and
    // bounded away from zero; skip a stencil-width neighborhood of each kink
    // (the identity holds there distributionally, the two singular jumps of
    // -w'' and bracket*w cancel) and the vanishing-weight boundary layer
    // where the bracket coefficients blow up.
    auto masked = [&](double x) {
        for (double k : phi.kinks)
            if (std::abs(x - k) <= 3.0 * h) return true;
        return phi.phi(x) < 0.02 * phimax;
    };

    TransformCheckResult out;
    double rmax = 0.0;
    int checked = 0;
    const double lam = pair.value;
    for (int i = 2; i < m - 2; ++i) {
        const double x = pair.grid[i];
        if (masked(x)) continue;
        const double p = phi.phi(x), dp = phi.dphi(x), ddp = phi.ddphi(x);
        const double bracket = -0.5 * ddp / p + 0.75 * (dp / p) * (dp / p) - 0.5 * x * dp / p;
        const double w1 = (w[i + 1] - w[i - 1]) / (2.0 * h);
        const double w2 = (w[i + 1] - 2.0 * w[i] + w[i - 1]) / (h * h);
        const double r = -w2 + x * w1 + bracket * w[i] - (lam - 1.0) * w[i];
        rmax = std::max(rmax, std::abs(r));
        ++checked;
    }
    out.residual = rmax / wmax;
    out.points_checked = checked;
    // Linear extrapolation of w to the endpoints; both natural conditions
    // force w = v' phi^{1/2} to vanish there.
    const double wa = 1.5 * w[0] - 0.5 * w[1];
    const double wb = 1.5 * w[m - 1] - 0.5 * w[m - 2];
    out.endpoint_defect = std::max(std::abs(wa), std::abs(wb)) / wmax;
    return out;
}

namespace {

// Terminal boundary defect of the shooting solution for trial eigenvalue mu.
double shooting_defect(double a, double b, BoundaryCondition bc, double mu, const WeightProfile* phi) {
    namespace odeint = boost::numeric::odeint;
    using State = std::array<double, 2>;

    auto rhs = [&](const State& y, State& dy, double x) {
        const double phi_term = phi ? phi->dphi(x) / phi->phi(x) : 0.0;
        dy[0] = y[1];
        dy[1] = (x - phi_term) * y[1] - mu * y[0];
    };

    State y = (bc == BoundaryCondition::Neumann) ? State{1.0, 0.0} : State{0.0, 1.0};

    std::vector<double> cuts{a, b};
    if (phi)
        for (double k : phi->kinks)
            if (k > a && k < b) cuts.push_back(k);
    std::sort(cuts.begin(), cuts.end());

    auto stepper = odeint::make_controlled(1e-13, 1e-13, odeint::runge_kutta_cash_karp54<State>());
    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
        const double t0 = cuts[s], t1 = cuts[s + 1];
        odeint::integrate_adaptive(stepper, rhs, y, t0, t1, (t1 - t0) / 256.0);
    }
    return (bc == BoundaryCondition::Neumann) ? y[1] : y[0];
}

}  // namespace

double shooting_eigenvalue(double a, double b, BoundaryCondition bc, double bracket_lo,
                           double bracket_hi, const WeightProfile* phi) {
    if (!(a < b)) throw ValidationError("shooting_eigenvalue: requires a < b");
    if (!(bracket_lo < bracket_hi)) throw ValidationError("shooting_eigenvalue: empty bracket");
    double flo = shooting_defect(a, b, bc, bracket_lo, phi);
    double fhi = shooting_defect(a, b, bc, bracket_hi, phi);
    if (flo * fhi > 0.0)
        throw NumericalError("shooting_eigenvalue: no sign change of the boundary defect in bracket [" +
                             std::to_string(bracket_lo) + ", " + std::to_string(bracket_hi) + "]");
    double lo = bracket_lo, hi = bracket_hi;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= 1e-11 * std::max(1.0, std::abs(mid))) break;
        const double fm = shooting_defect(a, b, bc, mid, phi);
        if (fm == 0.0) return mid;
        if (flo * fm < 0.0) { hi = mid; fhi = fm; }
        else { lo = mid; flo = fm; }
    }
    return 0.5 * (lo + hi);
}

Value1D disk_radial_eigenvalue(double R, int m, int grid_n) {
    if (m < 0) throw ValidationError("disk_radial_eigenvalue: angular index m must be >= 0");
    if (!(R > 0.0)) throw ValidationError("disk_radial_eigenvalue: R must be positive");

    auto level = [&](int n) {
        if (n < 16) throw SizeError("disk_radial_eigenvalue: grid too small");
        const double h = R / n;
        SymTriMatrix T;
        if (m == 0) {
            // Cell-centered; the r = 0 face weight vanishes, closing the flux
            // naturally, and the constant null mode stays exact.
            const int cells = n;
            Eigen::VectorXd diagK = Eigen::VectorXd::Zero(cells), off = Eigen::VectorXd::Zero(cells - 1), mass(cells);
            for (int i = 0; i < cells; ++i) {
                const double rc = (i + 0.5) * h;
                mass[i] = rc * gauss_weight(rc) * h;
            }
            for (int f = 1; f < cells; ++f) {
                const double rf = f * h;
                const double wf = rf * gauss_weight(rf) / h;
                off[f - 1] = -wf;
                diagK[f - 1] += wf;
                diagK[f] += wf;
            }
            T.diag.resize(cells);
            T.offdiag.resize(cells - 1);
            for (int i = 0; i < cells; ++i) T.diag[i] = diagK[i] / mass[i];
            for (int i = 0; i + 1 < cells; ++i) T.offdiag[i] = off[i] / std::sqrt(mass[i] * mass[i + 1]);
            EigenResult res = eigs_sym_tridiagonal(T, 2, true);
            if (std::abs(res.values[0]) > 1e-9)
                throw NumericalError("disk_radial_eigenvalue: m=0 zero mode missing");
            return res.values[1];
        }
        // m >= 1: vertex grid with the regularity row g(0) = 0 removed and a
        // natural (free) closure at r = R via the half cell.
        const int rows = n;  // vertices r_1 .. r_n
        Eigen::VectorXd diagK = Eigen::VectorXd::Zero(rows), off = Eigen::VectorXd::Zero(rows - 1), mass(rows);
        for (int i = 0; i < rows; ++i) {
            const double rv = (i + 1) * h;
            const double cell = (i + 1 == rows) ? 0.5 * h : h;
            mass[i] = rv * gauss_weight(rv) * cell;
            diagK[i] = m * static_cast<double>(m) * gauss_weight(rv) / rv * cell;
        }
        for (int f = 0; f < rows; ++f) {
            // faces at r = (i + 1/2) h between vertex i-1 and i (f indexes the
            // face left of vertex f); the face left of r_1 couples to g(0)=0.
            const double rf = (f + 0.5) * h;
            const double wf = rf * gauss_weight(rf) / h;
            diagK[f] += wf;
            if (f > 0) {
                off[f - 1] = -wf;
                diagK[f - 1] += wf;
            }
        }
        T.diag.resize(rows);
        T.offdiag.resize(rows - 1);
        for (int i = 0; i < rows; ++i) T.diag[i] = diagK[i] / mass[i];
        for (int i = 0; i + 1 < rows; ++i) T.offdiag[i] = off[i] / std::sqrt(mass[i] * mass[i + 1]);
        EigenResult res = eigs_sym_tridiagonal(T, 1, true);
        return res.values[0];
    };

    const double vc = level(grid_n / 2), vm = level(grid_n), vf = level(2 * grid_n);
    const Extrapolated e = richardson(vc, vm, vf);
    Value1D out;
    out.value = e.value;
    out.raw_fine = e.raw_fine;
    out.measured_order = e.order;
    out.order_trusted = e.trusted;
    out.a = 0.0;
    out.b = R;
    out.grid_n = grid_n;
    return out;
}

std::vector<double> neumann_spectrum_1d(double a, double b, int k, int grid_n) {
    auto levels = [&](int n) {
        const double h = (b - a) / n;
        SymTriMatrix T;
        Eigen::VectorXd diagK = Eigen::VectorXd::Zero(n), off = Eigen::VectorXd::Zero(n - 1), mass(n);
        for (int i = 0; i < n; ++i) {
            const double xc = a + (i + 0.5) * h;
            mass[i] = gauss_weight(xc) * h;
        }
        for (int f = 1; f < n; ++f) {
            const double wf = gauss_weight(a + f * h) / h;
            off[f - 1] = -wf;
            diagK[f - 1] += wf;
            diagK[f] += wf;
        }
        T.diag.resize(n);
        T.offdiag.resize(n - 1);
        for (int i = 0; i < n; ++i) T.diag[i] = diagK[i] / mass[i];
        for (int i = 0; i + 1 < n; ++i) T.offdiag[i] = off[i] / std::sqrt(mass[i] * mass[i + 1]);
        return eigs_sym_tridiagonal(T, k, false).values;
    };
    const auto vm = levels(grid_n);
    const auto vf = levels(2 * grid_n);
    std::vector<double> out(k);
    for (int i = 0; i < k; ++i) out[i] = vf[i] + (vf[i] - vm[i]) / 3.0;
    return out;
}

}  // namespace hermeig
