#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hermeig/extended_real.hpp"
#include "hermeig/gaussian.hpp"

namespace hermeig {

enum class BoundaryCondition { Neumann, Dirichlet };

// Weight profile for the Sturm-Liouville problems of the strip decomposition:
// phi(x) >= 0 with analytic derivatives and an explicit kink list.
struct WeightProfile {
    std::function<double(double)> phi;
    std::function<double(double)> dphi;
    std::function<double(double)> ddphi;
    std::vector<double> kinks;  // abscissae where phi' or phi'' jumps

    static WeightProfile one() {
        return {[](double) { return 1.0; }, [](double) { return 0.0; }, [](double) { return 0.0; }, {}};
    }
};

struct SLProblem {
    ExtendedReal a = 0.0;
    ExtendedReal b = 1.0;
    BoundaryCondition bc = BoundaryCondition::Neumann;
    std::optional<WeightProfile> weight;  // default constant 1
    int grid_n = 1024;
};

// Scalar result of a 1-D eigenvalue computation with its discretization audit.
struct Value1D {
    double value = 0.0;         // extrapolated (or raw fine value when order untrusted)
    double raw_fine = 0.0;      // finest-grid value
    double measured_order = 0.0;
    bool order_trusted = false; // measured order within (1.8, 2.2)
    bool truncated = false;     // an infinite endpoint was cut at |x| = 12
    double a = 0.0, b = 0.0;    // working interval after truncation
    int grid_n = 0;
};

struct Eigenpair1D {
    double value = 0.0;
    std::vector<double> grid;        // node abscissae
    std::vector<double> function;    // eigenfunction samples
    std::vector<double> derivative;  // central-difference derivative samples
    double zero_mean_defect = 0.0;   // |integral of v phi dgamma_x|, normalized
};

// First nontrivial Neumann eigenvalue mu_1(a,b) of -v'' + x v' = mu v,
// flux-form discretization, Richardson extrapolation over grid_n and
// 2*grid_n with the order measured on a third (coarser) level.
Value1D mu1_interval(ExtendedReal a, ExtendedReal b, int grid_n = 1024);

// First Dirichlet eigenvalue lambda_1(a,b) of the same operator.
Value1D lambda1_interval(ExtendedReal a, ExtendedReal b, int grid_n = 1024);

// First nontrivial eigenvalue of -(v' phi gamma_x)' = lambda v phi gamma_x
// with natural boundary conditions, plus the minimizing eigenpair.
struct WeightedMu1Result {
    Value1D value;
    Eigenpair1D pair;  // on the fine grid
};
WeightedMu1Result weighted_mu1(double a, double b, const WeightProfile& phi, int grid_n = 1024);

// First Dirichlet eigenvalue of the phi-weighted operator (same flux form
// with boundary rows removed); completes the shooting cross-check matrix.
Value1D weighted_lambda1(double a, double b, const WeightProfile& phi, int grid_n = 1024);

// Residual of the transformed equation satisfied by w = v' phi^{1/2}:
//   -w'' + x w' + w [ -phi''/(2 phi) + (3/4)(phi'/phi)^2 - (x/2) phi'/phi ]
//     = (lambda - 1) w,
// evaluated by central differences away from kinks of phi; returns the
// interior max-norm residual relative to ||w||_inf. Also checks the
// endpoint values w(a), w(b) against zero at grid accuracy.
struct TransformCheckResult {
    double residual = 0.0;        // relative interior max-norm
    double endpoint_defect = 0.0; // max(|w(a)|, |w(b)|) / ||w||_inf
    int points_checked = 0;
};
TransformCheckResult transform_check(const Eigenpair1D& pair, const WeightProfile& phi);

// Independent shooting oracle: integrates the ODE with an adaptive
// high-order Runge-Kutta scheme and bisects the terminal boundary defect.
// The optional weight turns it into the phi-weighted problem.
double shooting_eigenvalue(double a, double b, BoundaryCondition bc,
                           double bracket_lo, double bracket_hi,
                           const WeightProfile* phi = nullptr);

// Smallest eigenvalue of the radial reduction on (0, R) for angular index m:
//   -g'' - g'/r + m^2 g / r^2 + r g' = mu g,  g'(R) = 0, g ~ r^m at 0.
// For m = 0 the trivial zero mode is deflated.
Value1D disk_radial_eigenvalue(double R, int m, int grid_n = 1024);

// Low Neumann spectrum of the 1-D operator on (a,b) (k smallest including
// the zero mode), used by the separation-of-variables oracle for rectangles.
std::vector<double> neumann_spectrum_1d(double a, double b, int k, int grid_n = 1024);

}  // namespace hermeig
