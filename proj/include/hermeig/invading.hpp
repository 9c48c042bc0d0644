#pragma once

#include <optional>

#include "hermeig/domain.hpp"

namespace hermeig {

enum class WallKind { TopProfile, BottomProfile };

// One evaluation of the normal-reflection map on the inner collar: source
// point, reflected image across the nearest wall, midpoint abscissa and the
// closed-form Jacobian magnitude of the reflection.
struct ReflectionSample {
    Vec2 source;
    Vec2 image;
    double midpoint_abscissa = 0.0;
    double jacobian_abs = 0.0;
    WallKind wall = WallKind::TopProfile;
    bool tie_broken = false;   // equidistant walls, resolved toward the top profile
    double boundary_dist = 0.0;
};

// Bounded truncation Omega_n = Omega intersect {y > -n} with the two bottom
// wedges replaced by tangent fillet arcs of radius r. Carries the fillet
// geometry needed by the reflection map.
struct TruncatedDomain {
    Domain dom;             // validated bounded profile-form domain (p_n, q_n)
    int n = 0;              // cut ordinate y = -n
    double r = 0.0;         // fillet radius r~
    double fillet_xc = 0.0; // right fillet center abscissa (left mirrored)
    double x_tan_p = 0.0;   // tangency abscissa with the upper boundary
    bool straight_sides = false;  // case b: vertical side walls x = +-a
    double p0 = 0.0;        // parent p(0), enters the weight-ratio bound
};

// Default fillet radius: half the minimal curvature radius of the parent
// boundary where curvature is present, else a quarter of the width.
double default_fillet_radius(const Domain& unbounded);

// Theorem 2 Step 1 construction. Requires n >= n~ = floor(-p(0)) + 1 and a
// fillet radius no larger than half the parent's minimal curvature radius.
TruncatedDomain invading_sequence(const Domain& unbounded, int n, double r_tilde = 0.0);

// Normal reflection of a collar point across the nearest wall with the
// closed-form Jacobian (branch chosen by y >= -n + r). Throws if the point
// is deeper than r from the boundary.
ReflectionSample reflection_jacobian(const TruncatedDomain& td, Vec2 point);

// Distance from a point to the boundary of Omega_n (nearest wall over the
// top/bottom graphs, side walls and fillet arcs).
double boundary_distance(const TruncatedDomain& td, Vec2 point);

struct JacobianAuditResult {
    int samples = 0;
    double min_jacobian = 0.0;
    double max_jacobian = 0.0;
    double max_weight_ratio = 0.0;  // exp(-|Phi(x,y)|^2/2 + |(x,y)|^2/2)
    double weight_ratio_bound = 0.0;  // max(1, exp(-2 r p(0)))
    bool jacobian_ok = false;
    bool weight_ratio_ok = false;
};

// Draws seeded uniform points in the paper-valid collar (depth capped at
// half the local curvature radius of the nearest wall, so r on straight and
// parent-profile walls and r/2 on the fillet arcs) and audits the Jacobian
// bounds 1 <= |J| <= 3 and the weight-ratio bound.
JacobianAuditResult jacobian_audit(const TruncatedDomain& td, int samples, unsigned long long seed);

}  // namespace hermeig
