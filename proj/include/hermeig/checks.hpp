#pragma once

#include <string>
#include <vector>

#include "hermeig/domain.hpp"
#include "hermeig/solver2d.hpp"

namespace hermeig {

enum class CheckId {
    Thm1,
    Thm2,
    SW,
    AndrewsNi,
    Gap,
    Dumbbell,
    Jacobian,
    PlaneSpectrum,
    RectangleEquality,
    TExample,
};

const char* check_id_name(CheckId id);

enum class CheckStatus { Pass, Fail, HypothesisNotMet, Inconclusive, Unsupported, Error };

const char* check_status_name(CheckStatus s);

// One inequality verification. Orientation is normalized so that pass always
// means the verified inequality holds within slack: pass <=> margin >= -tol.
struct CheckReport {
    CheckId id = CheckId::Thm1;
    std::string domain_id;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    double tolerance = 0.0;
    CheckStatus status = CheckStatus::Error;
    std::vector<ConvergenceRecord> evidence;
    std::vector<std::pair<std::string, std::string>> settings;
    std::string note;
};

// mu_1^odd(Omega) >= mu_1(-a,a) on a bounded domain.
CheckReport check_thm1(const Domain& dom, const Solver2DOptions& opt, double tol);

// Same bound through the invading-sequence truncation loop.
CheckReport check_thm2(const Domain& dom, const Solver2DOptions& opt, double tol);

// mu_1(Omega) <= mu_1(Omega#), Omega# the origin disk of equal Gaussian mass.
CheckReport check_sw(const Domain& dom, const Solver2DOptions& opt, double tol);

// mu_1(Omega) >= mu_1(-d/2, d/2), d the diameter.
CheckReport check_an(const Domain& dom, const Solver2DOptions& opt, double tol);

// mu_1(Omega) - 1 >= lambda_1(-a,a), conditional on mu_1 = mu_1^odd.
CheckReport check_gap(const Domain& dom, const Solver2DOptions& opt, double tol);

// mu_1^odd of the dumbbell family: strictly decreasing in the corridor
// width, final value below half the initial one.
CheckReport dumbbell_sweep(const std::vector<double>& eps_list, double side, double corridor_len,
                           const Solver2DOptions& opt);

// Jacobian bounds 1 <= |J| <= 3 and the weight-ratio bound on seeded collar
// samples of a truncated unbounded domain.
CheckReport check_jacobian(const Domain& unbounded, int n, int samples, unsigned long long seed,
                           const Solver2DOptions& opt);

// Truncated-plane surrogate: first five nonzero Neumann eigenvalues of
// Disk(12) against the Hermite levels (1, 1, 2, 2, 2).
CheckReport check_plane_spectrum(const Solver2DOptions& opt, double tol);

// Equality case of the bounded theorem on a rectangle, relative deviation.
CheckReport check_rectangle_equality(double a, double b, const Solver2DOptions& opt, double rel_tol);

// The T = (-1,1)x(-inf,0) example: mu_1 = 2, mu_1^odd = 3.
CheckReport check_t_example(const Solver2DOptions& opt, double rel_tol);

struct BatteryOptions {
    std::string domains_dir = "domains";
    unsigned long long seed = 7;
    double h = 0.15;
    double tol = 5e-3;
    double trunc_tol = 1e-3;
    int random_polygons = 4;
    int jacobian_samples = 1000;
};

// Runs every applicable check over the checked-in domain battery plus seeded
// random polygons; reports ordered by (check_id, domain_id). Honors the
// HERMITE_GAP_THREADS cap for concurrent execution.
std::vector<CheckReport> run_battery(const BatteryOptions& opt);

}  // namespace hermeig
