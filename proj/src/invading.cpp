#include "hermeig/invading.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "hermeig/errors.hpp"

namespace hermeig {

namespace {

// Minimal curvature radius of the parent's upper boundary graph, sampled.
double min_curvature_radius(const Profile& p, double a) {
    double max_k = 0.0;
    const int N = 2000;
    for (int i = 1; i < N; ++i) {
        const double x = -a + 2.0 * a * i / N;
        const double d1 = p.deriv(x), d2 = p.deriv2(x);
        const double k = std::abs(d2) / std::pow(1.0 + d1 * d1, 1.5);
        max_k = std::max(max_k, k);
    }
    return max_k < 1e-9 ? std::numeric_limits<double>::infinity() : 1.0 / max_k;
}

}  // namespace

double default_fillet_radius(const Domain& unbounded) {
    if (!unbounded.upper.valid()) throw ValidationError("default_fillet_radius: domain has no upper profile");
    const double rad = min_curvature_radius(unbounded.upper, unbounded.a);
    if (std::isfinite(rad)) return 0.5 * rad;
    return 0.5 * unbounded.a;  // straight walls: user-tunable, fits by width
}

TruncatedDomain invading_sequence(const Domain& parent, int n, double r_tilde) {
    if (!parent.validated) throw ValidationError("invading_sequence: domain not validated");
    if (!parent.unbounded_below || parent.unbounded_above)
        throw ValidationError("invading_sequence: requires a domain unbounded below with an upper profile");
    const Profile& p = parent.upper;
    const double a = parent.a;
    const double p0 = p(0.0);

    const int n_min = static_cast<int>(std::floor(-p0)) + 1;
    if (n < n_min)
        throw GeometryError("invading_sequence: n = " + std::to_string(n) + " below n~ = " +
                            std::to_string(n_min) + ", empty interior");

    double r = r_tilde > 0.0 ? r_tilde : default_fillet_radius(parent);
    const double min_rad = min_curvature_radius(p, a);
    if (std::isfinite(min_rad) && r > 0.5 * min_rad * (1.0 + 1e-9))
        throw GeometryError("invading_sequence: fillet radius " + std::to_string(r) +
                            " exceeds half the minimal curvature radius " + std::to_string(0.5 * min_rad));
    if (!(p0 + n > 2.0 * r))
        throw GeometryError("invading_sequence: fillet radius too large for the truncation depth");

    const double yc = -static_cast<double>(n) + r;

    // Tangency of the fillet with the upper graph: g(x) = 0 where
    // g(x) = p(x) - r/sqrt(1+p'(x)^2) - yc. If g stays positive up to x = a
    // the graph never reaches the fillet zone and the side wall is vertical.
    auto g = [&](double x) { return p(x) - r / std::sqrt(1.0 + p.deriv(x) * p.deriv(x)) - yc; };

    TruncatedDomain td;
    td.n = n;
    td.r = r;
    td.p0 = p0;

    Profile pn, qn;
    double x_end;
    if (g(a * (1.0 - 1e-12)) > 0.0) {
        // Case b: two vertical half-lines; quarter-circle fillets tangent to
        // x = +-a and y = -n.
        td.straight_sides = true;
        td.fillet_xc = a - r;
        td.x_tan_p = a;
        if (td.fillet_xc <= 1e-9)
            throw GeometryError("invading_sequence: fillets overlap, r~ too large for the width");
        x_end = a;
        pn = parent.upper;  // unchanged upper boundary
        qn = Profile::join({Profile::circle_arc(-td.fillet_xc, yc, r, false, -a, -td.fillet_xc),
                            Profile::constant(-static_cast<double>(n), -td.fillet_xc, td.fillet_xc),
                            Profile::circle_arc(td.fillet_xc, yc, r, false, td.fillet_xc, a)});
    } else {
        // Case a: fillet tangent to the graph. Bisect g on (0, a).
        td.straight_sides = false;
        double lo = 0.0, hi = a * (1.0 - 1e-12);
        if (!(g(lo) > 0.0))
            throw GeometryError("invading_sequence: fillet radius too large, no tangency bracket");
        for (int it = 0; it < 200 && hi - lo > 1e-14 * a; ++it) {
            const double mid = 0.5 * (lo + hi);
            (g(mid) > 0.0 ? lo : hi) = mid;
        }
        const double xp = 0.5 * (lo + hi);
        const double s = std::sqrt(1.0 + p.deriv(xp) * p.deriv(xp));
        const double xc = xp + r * p.deriv(xp) / s;
        if (xc <= 1e-9)
            throw GeometryError("invading_sequence: fillets overlap, r~ too large for this truncation");
        td.fillet_xc = xc;
        td.x_tan_p = xp;
        x_end = xc + r;
        pn = Profile::join({Profile::circle_arc(-xc, yc, r, true, -x_end, -xp),
                            p.restricted(-xp, xp),
                            Profile::circle_arc(xc, yc, r, true, xp, x_end)});
        qn = Profile::join({Profile::circle_arc(-xc, yc, r, false, -x_end, -xc),
                            Profile::constant(-static_cast<double>(n), -xc, xc),
                            Profile::circle_arc(xc, yc, r, false, xc, x_end)});
    }

    Domain dn = Domain::profile(x_end, std::move(pn), std::move(qn));
    dn.id = parent.id + "|n=" + std::to_string(n);
    td.dom = build_domain(std::move(dn));
    return td;
}

namespace {

struct Foot {
    double dist = std::numeric_limits<double>::infinity();
    Vec2 point;        // nearest boundary point
    double x_m = 0.0;  // graph abscissa of the foot
    enum class Kind { UpperGraph, LowerGraph, SideWall } kind = Kind::UpperGraph;
    bool on_arc = false;  // nearest wall piece is a fillet arc
};

// Nearest point on the graph of g over [lo, hi]: coarse scan, then Newton on
// the stationarity equation (x - t) + (y - g(t)) g'(t) = 0.
Foot graph_foot(const Profile& g, double lo, double hi, Vec2 P) {
    const int M = 600;
    double best_t = lo, best_d = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= M; ++i) {
        const double t = lo + (hi - lo) * i / M;
        const double d = std::hypot(P.x - t, P.y - g(t));
        if (d < best_d) { best_d = d; best_t = t; }
    }
    // Ternary refinement around the best sample.
    double tl = std::max(lo, best_t - (hi - lo) / M);
    double tr = std::min(hi, best_t + (hi - lo) / M);
    for (int it = 0; it < 80; ++it) {
        const double m1 = tl + (tr - tl) / 3.0, m2 = tr - (tr - tl) / 3.0;
        const double d1 = std::hypot(P.x - m1, P.y - g(m1));
        const double d2 = std::hypot(P.x - m2, P.y - g(m2));
        if (d1 < d2) tr = m2;
        else tl = m1;
    }
    double t = 0.5 * (tl + tr);
    // Newton polish (skip if it escapes the range).
    for (int it = 0; it < 4; ++it) {
        const double gv = g(t), g1 = g.deriv(t), g2 = g.deriv2(t);
        const double F = (P.x - t) + (P.y - gv) * g1;
        const double dF = -1.0 + (P.y - gv) * g2 - g1 * g1;
        if (dF == 0.0) break;
        const double tn = t - F / dF;
        if (tn < lo || tn > hi) break;
        t = tn;
    }
    Foot f;
    f.x_m = t;
    f.point = {t, g(t)};
    f.dist = std::hypot(P.x - t, P.y - f.point.y);
    return f;
}

std::vector<Foot> wall_candidates(const TruncatedDomain& td, Vec2 P) {
    std::vector<Foot> feet;
    const Domain& d = td.dom;

    Foot up = graph_foot(d.upper, -d.a, d.a, P);
    up.kind = Foot::Kind::UpperGraph;
    if (!td.straight_sides)
        up.on_arc = std::abs(up.x_m) > td.x_tan_p;  // upper fillet arcs
    feet.push_back(up);

    Foot dn = graph_foot(d.lower, -d.a, d.a, P);
    dn.kind = Foot::Kind::LowerGraph;
    dn.on_arc = std::abs(dn.x_m) > td.fillet_xc;
    feet.push_back(dn);

    if (td.straight_sides) {
        const double y_lo = -static_cast<double>(td.n) + td.r;
        for (double side : {-d.a, d.a}) {
            Foot f;
            f.kind = Foot::Kind::SideWall;
            const double yf = std::clamp(P.y, y_lo, td.dom.upper(side));
            f.point = {side, yf};
            f.x_m = side;
            f.dist = std::hypot(P.x - side, P.y - yf);
            feet.push_back(f);
        }
    }
    return feet;
}

}  // namespace

double boundary_distance(const TruncatedDomain& td, Vec2 point) {
    double best = std::numeric_limits<double>::infinity();
    for (const Foot& f : wall_candidates(td, point)) best = std::min(best, f.dist);
    return best;
}

ReflectionSample reflection_jacobian(const TruncatedDomain& td, Vec2 point) {
    if (!td.dom.contains(point.x, point.y))
        throw GeometryError("reflection_jacobian: point outside Omega_n");
    auto feet = wall_candidates(td, point);
    std::size_t best = 0;
    for (std::size_t i = 1; i < feet.size(); ++i)
        if (feet[i].dist < feet[best].dist) best = i;
    bool tie = false;
    // Equidistant walls: resolved toward the top profile, flagged.
    for (std::size_t i = 0; i < feet.size(); ++i) {
        if (i == best) continue;
        if (std::abs(feet[i].dist - feet[best].dist) <= 1e-12) {
            tie = true;
            if (feet[i].kind != Foot::Kind::LowerGraph && feet[best].kind == Foot::Kind::LowerGraph) best = i;
        }
    }
    const Foot& f = feet[best];
    if (!(f.dist < td.r))
        throw GeometryError("reflection_jacobian: point deeper than r~ from the boundary (dist = " +
                            std::to_string(f.dist) + ")");

    ReflectionSample out;
    out.source = point;
    out.image = {2.0 * f.point.x - point.x, 2.0 * f.point.y - point.y};
    out.midpoint_abscissa = f.x_m;
    out.boundary_dist = f.dist;
    out.tie_broken = tie;
    out.wall = (point.y >= -static_cast<double>(td.n) + td.r) ? WallKind::TopProfile : WallKind::BottomProfile;

    if (f.kind == Foot::Kind::SideWall) {
        out.jacobian_abs = 1.0;  // mirror across a vertical line
        return out;
    }
    const Profile& g = (f.kind == Foot::Kind::UpperGraph) ? td.dom.upper : td.dom.lower;
    const double g1 = g.deriv(f.x_m), g2 = g.deriv2(f.x_m);
    const double t = g2 * (point.y - g(f.x_m));
    const double num = 1.0 + g1 * g1 + t;
    const double den = -1.0 - g1 * g1 + t;
    if (den == 0.0) throw NumericalError("reflection_jacobian: singular Jacobian at the collar edge");
    out.jacobian_abs = std::abs(num / den);
    return out;
}

JacobianAuditResult jacobian_audit(const TruncatedDomain& td, int samples, unsigned long long seed) {
    if (samples < 1) throw ValidationError("jacobian_audit: needs a positive sample count");
    const Domain& d = td.dom;
    double y_top = d.upper(0.0);
    for (int i = 0; i <= 100; ++i) y_top = std::max(y_top, d.upper(-d.a + 2.0 * d.a * i / 100.0));
    const double y_bot = -static_cast<double>(td.n);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(-d.a, d.a), uy(y_bot, y_top);

    JacobianAuditResult res;
    res.samples = 0;
    res.min_jacobian = std::numeric_limits<double>::infinity();
    res.max_jacobian = 0.0;
    res.max_weight_ratio = 0.0;
    res.weight_ratio_bound = std::max(1.0, std::exp(-2.0 * td.r * td.p0));

    long long draws = 0;
    const long long max_draws = 20000LL * samples;
    while (res.samples < samples) {
        if (++draws > max_draws)
            throw GeometryError("jacobian_audit: collar appears empty at this truncation level");
        const Vec2 P{ux(rng), uy(rng)};
        if (!d.contains(P.x, P.y)) continue;
        auto feet = wall_candidates(td, P);
        std::size_t best = 0;
        for (std::size_t i = 1; i < feet.size(); ++i)
            if (feet[i].dist < feet[best].dist) best = i;
        // Paper-valid collar depth: half the local curvature radius of the
        // nearest wall (r on straight walls and the parent graph whose
        // curvature radius is >= 2r by the fillet choice, r/2 on the arcs).
        const double depth_cap = feet[best].on_arc ? 0.5 * td.r : td.r;
        if (!(feet[best].dist > 1e-9 && feet[best].dist < depth_cap * (1.0 - 1e-9))) continue;
        const ReflectionSample s = reflection_jacobian(td, P);
        res.min_jacobian = std::min(res.min_jacobian, s.jacobian_abs);
        res.max_jacobian = std::max(res.max_jacobian, s.jacobian_abs);
        const double ratio = std::exp(0.5 * (P.x * P.x + P.y * P.y) -
                                      0.5 * (s.image.x * s.image.x + s.image.y * s.image.y));
        res.max_weight_ratio = std::max(res.max_weight_ratio, ratio);
        ++res.samples;
    }
    res.jacobian_ok = res.min_jacobian >= 1.0 - 1e-12 && res.max_jacobian <= 3.0 + 1e-12;
    res.weight_ratio_ok = res.max_weight_ratio <= res.weight_ratio_bound + 1e-12;
    return res;
}

}  // namespace hermeig
