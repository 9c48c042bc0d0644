#include "hermeig/domain.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace hermeig {

namespace {
std::string fmt_pt(double x, double y) {
    std::ostringstream os;
    os << "(" << x << ", " << y << ")";
    return os.str();
}
}  // namespace

const Profile::Piece& Profile::piece(double x) const {
    if (pieces_.empty()) throw Error("Profile: evaluation of empty profile");
    // Right-continuous dispatch; clamp to the outermost pieces.
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                               [](double v, const Piece& p) { return v < p.hi; });
    if (it == pieces_.end()) return pieces_.back();
    return *it;
}

std::vector<double> Profile::interior_breaks() const {
    std::vector<double> b;
    for (std::size_t i = 1; i < pieces_.size(); ++i) b.push_back(pieces_[i].lo);
    return b;
}

void Profile::append_piece(double lo, double hi, Fn f, Fn df, Fn ddf) {
    if (!(lo < hi)) throw Error("Profile: piece needs lo < hi");
    if (!pieces_.empty() && std::abs(pieces_.back().hi - lo) > 1e-12)
        throw Error("Profile: pieces must be contiguous in x");
    pieces_.push_back(Piece{lo, hi, std::move(f), std::move(df), std::move(ddf)});
}

Profile Profile::constant(double c, double lo, double hi) {
    Profile p;
    p.append_piece(lo, hi, [c](double) { return c; }, [](double) { return 0.0; }, [](double) { return 0.0; });
    return p;
}

Profile Profile::line(double x0, double y0, double slope, double lo, double hi) {
    Profile p;
    p.append_piece(lo, hi, [x0, y0, slope](double x) { return y0 + slope * (x - x0); },
                   [slope](double) { return slope; }, [](double) { return 0.0; });
    return p;
}

Profile Profile::circle_arc(double xc, double yc, double r, bool upper, double lo, double hi) {
    const double sgn = upper ? 1.0 : -1.0;
    Profile p;
    auto root = [xc, r](double x) { return std::sqrt(std::max(0.0, r * r - (x - xc) * (x - xc))); };
    p.append_piece(
        lo, hi, [yc, sgn, root](double x) { return yc + sgn * root(x); },
        [xc, sgn, root](double x) {
            const double s = std::max(root(x), 1e-150);
            return -sgn * (x - xc) / s;
        },
        [xc, r, sgn, root](double x) {
            const double s = std::max(root(x), 1e-150);
            return -sgn * r * r / (s * s * s);
        });
    return p;
}

Profile Profile::circle_upper(double R) { return circle_arc(0.0, 0.0, R, true, -R, R); }
Profile Profile::circle_lower(double R) { return circle_arc(0.0, 0.0, R, false, -R, R); }

Profile Profile::polyline(const std::vector<Vec2>& pts) {
    if (pts.size() < 2) throw Error("Profile::polyline: needs at least two points");
    Profile p;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (!(pts[i].x < pts[i + 1].x)) throw Error("Profile::polyline: x must be strictly ascending");
        const double slope = (pts[i + 1].y - pts[i].y) / (pts[i + 1].x - pts[i].x);
        const double x0 = pts[i].x, y0 = pts[i].y;
        p.append_piece(pts[i].x, pts[i + 1].x, [x0, y0, slope](double x) { return y0 + slope * (x - x0); },
                       [slope](double) { return slope; }, [](double) { return 0.0; });
    }
    return p;
}

Profile Profile::callable(Fn f, Fn df, Fn ddf, double lo, double hi) {
    Profile p;
    p.append_piece(lo, hi, std::move(f), std::move(df), std::move(ddf));
    return p;
}

Profile Profile::from_samples(const std::vector<double>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    if (n < 3 || ys.size() != n) throw Error("Profile::from_samples: needs >= 3 samples");
    std::vector<double> h(n - 1), delta(n - 1), m(n);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!(xs[i] < xs[i + 1])) throw Error("Profile::from_samples: x must be strictly ascending");
        h[i] = xs[i + 1] - xs[i];
        delta[i] = (ys[i + 1] - ys[i]) / h[i];
    }
    // Fritsch-Carlson monotone slopes.
    m[0] = delta[0];
    m[n - 1] = delta[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) m[i] = 0.0;
        else {
            const double w1 = 2.0 * h[i] + h[i - 1], w2 = h[i] + 2.0 * h[i - 1];
            m[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (delta[i] == 0.0) { m[i] = m[i + 1] = 0.0; continue; }
        const double al = m[i] / delta[i], be = m[i + 1] / delta[i];
        const double s = al * al + be * be;
        if (s > 9.0) {
            const double t = 3.0 / std::sqrt(s);
            m[i] = t * al * delta[i];
            m[i + 1] = t * be * delta[i];
        }
    }
    Profile p;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double x0 = xs[i], y0 = ys[i], hi_ = h[i], m0 = m[i], m1 = m[i + 1], d = delta[i];
        // Hermite cubic on [x0, x0+h].
        const double c2 = (3.0 * d - 2.0 * m0 - m1) / hi_;
        const double c3 = (m0 + m1 - 2.0 * d) / (hi_ * hi_);
        p.append_piece(
            xs[i], xs[i + 1],
            [x0, y0, m0, c2, c3](double x) { const double t = x - x0; return y0 + t * (m0 + t * (c2 + t * c3)); },
            [x0, m0, c2, c3](double x) { const double t = x - x0; return m0 + t * (2.0 * c2 + 3.0 * t * c3); },
            [x0, c2, c3](double x) { const double t = x - x0; return 2.0 * c2 + 6.0 * t * c3; });
    }
    return p;
}

Profile Profile::join(const std::vector<Profile>& parts) {
    Profile out;
    for (const Profile& part : parts)
        for (const Piece& pc : part.pieces_) out.append_piece(pc.lo, pc.hi, pc.f, pc.df, pc.ddf);
    return out;
}

Profile Profile::negated() const {
    Profile out;
    for (const Piece& pc : pieces_) {
        auto f = pc.f, df = pc.df, ddf = pc.ddf;
        out.append_piece(pc.lo, pc.hi, [f](double x) { return -f(x); }, [df](double x) { return -df(x); },
                         [ddf](double x) { return -ddf(x); });
    }
    return out;
}

Profile Profile::restricted(double lo, double hi) const {
    if (!(lo < hi)) throw Error("Profile::restricted: lo < hi required");
    Profile out;
    for (const Piece& pc : pieces_) {
        const double l = std::max(lo, pc.lo), h = std::min(hi, pc.hi);
        if (l < h - 1e-15) out.append_piece(out.pieces_.empty() ? lo : out.pieces_.back().hi,
                                            h >= hi - 1e-15 ? hi : h, pc.f, pc.df, pc.ddf);
    }
    if (out.pieces_.empty()) throw Error("Profile::restricted: empty restriction");
    return out;
}

const char* domain_kind_name(DomainKind k) {
    switch (k) {
        case DomainKind::Rectangle: return "rectangle";
        case DomainKind::Strip: return "strip";
        case DomainKind::HalfStrip: return "half_strip";
        case DomainKind::Disk: return "disk";
        case DomainKind::ConvexPolygon: return "convex_polygon";
        case DomainKind::Profile: return "profile";
        case DomainKind::Dumbbell: return "dumbbell";
    }
    return "?";
}

bool Domain::contains(double x, double y) const {
    const double lo = half ? 0.0 : -a;
    if (!(x > lo && x < a)) return false;
    if (!unbounded_above && upper.valid() && !(y < upper(x))) return false;
    if (kind == DomainKind::Rectangle && !(y < rect_b && y > -rect_b)) return false;
    if (!unbounded_below && lower.valid() && !(y > lower(x))) return false;
    return true;
}

Domain Domain::rectangle(double a, double b) {
    Domain d;
    d.kind = DomainKind::Rectangle;
    d.a = a;
    d.rect_b = b;
    if (a > 0.0 && b > 0.0) {
        d.upper = Profile::constant(b, -a, a);
        d.lower = Profile::constant(-b, -a, a);
    }
    std::ostringstream id;
    id << "rectangle(" << a << "," << b << ")";
    d.id = id.str();
    return d;
}

Domain Domain::strip(double a) {
    Domain d;
    d.kind = DomainKind::Strip;
    d.a = a;
    d.unbounded_below = d.unbounded_above = true;
    std::ostringstream id;
    id << "strip(" << a << ")";
    d.id = id.str();
    return d;
}

Domain Domain::half_strip(double a, double top) {
    Domain d;
    d.kind = DomainKind::HalfStrip;
    d.a = a;
    d.strip_top = top;
    d.unbounded_below = true;
    if (a > 0.0) d.upper = Profile::constant(top, -a, a);
    std::ostringstream id;
    id << "half_strip(" << a << "," << top << ")";
    d.id = id.str();
    return d;
}

Domain Domain::disk(double R) {
    Domain d;
    d.kind = DomainKind::Disk;
    d.a = R;
    d.disk_R = R;
    if (R > 0.0) {
        d.upper = Profile::circle_upper(R);
        d.lower = Profile::circle_lower(R);
    }
    std::ostringstream id;
    id << "disk(" << R << ")";
    d.id = id.str();
    return d;
}

Domain Domain::convex_polygon(std::vector<Vec2> verts) {
    Domain d;
    d.kind = DomainKind::ConvexPolygon;
    d.vertices = std::move(verts);
    d.id = "convex_polygon[" + std::to_string(d.vertices.size()) + "]";
    return d;
}

Domain Domain::profile(double a, Profile p, Profile q) {
    Domain d;
    d.kind = DomainKind::Profile;
    d.a = a;
    d.upper = std::move(p);
    d.lower = std::move(q);
    std::ostringstream id;
    id << "profile(" << a << ")";
    d.id = id.str();
    return d;
}

Domain Domain::profile_unbounded(double a, Profile p) {
    Domain d;
    d.kind = DomainKind::Profile;
    d.a = a;
    d.upper = std::move(p);
    d.unbounded_below = true;
    std::ostringstream id;
    id << "profile_unbounded(" << a << ")";
    d.id = id.str();
    return d;
}

Domain Domain::dumbbell(double side, double corridor_len, double corridor_width) {
    Domain d;
    d.kind = DomainKind::Dumbbell;
    d.dumbbell_params = {side, corridor_len, corridor_width};
    d.a = 0.5 * corridor_len + side;
    d.convex = false;
    if (side > 0.0 && corridor_len > 0.0 && corridor_width > 0.0 && corridor_width <= side) {
        const double w2 = 0.5 * corridor_len, e2 = 0.5 * corridor_width, s2 = 0.5 * side;
        d.upper = Profile::join({Profile::constant(s2, -d.a, -w2), Profile::constant(e2, -w2, w2),
                                 Profile::constant(s2, w2, d.a)});
        d.lower = d.upper.negated();
    }
    std::ostringstream id;
    id << "dumbbell(s=" << side << ",len=" << corridor_len << ",eps=" << corridor_width << ")";
    d.id = id.str();
    return d;
}

namespace {

void validate_polygon(Domain& d) {
    const auto& v = d.vertices;
    if (v.size() < 3) throw ValidationError("polygon: fewer than 3 vertices");
    const std::size_t n = v.size();
    // CCW orientation and convex position.
    double area2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& p = v[i];
        const Vec2& q = v[(i + 1) % n];
        area2 += p.x * q.y - q.x * p.y;
    }
    if (area2 <= 0.0) throw ValidationError("polygon: vertices must be in counter-clockwise order");
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& p = v[i];
        const Vec2& q = v[(i + 1) % n];
        const Vec2& r = v[(i + 2) % n];
        const double cross = (q.x - p.x) * (r.y - q.y) - (q.y - p.y) * (r.x - q.x);
        if (cross < -1e-12)
            throw ValidationError("polygon: not in convex position, witness vertex " + fmt_pt(q.x, q.y));
    }
    // Mirror invariance of the vertex set under x -> -x.
    for (const Vec2& p : v) {
        bool found = false;
        for (const Vec2& q : v)
            if (std::abs(q.x + p.x) <= 1e-9 && std::abs(q.y - p.y) <= 1e-9) { found = true; break; }
        if (!found)
            throw ValidationError("polygon: vertex set not symmetric under x -> -x, witness " + fmt_pt(p.x, p.y));
    }
    double a = 0.0;
    for (const Vec2& p : v) a = std::max(a, std::abs(p.x));
    d.a = a;

    // Upper and lower boundary chains as monotone hulls of the vertex set;
    // for a convex polygon these are exactly its two x-monotone arcs.
    std::vector<Vec2> pts = v;
    std::sort(pts.begin(), pts.end(), [](const Vec2& l, const Vec2& r) {
        if (l.x != r.x) return l.x < r.x;
        return l.y < r.y;
    });
    auto cross = [](const Vec2& o, const Vec2& p, const Vec2& q) {
        return (p.x - o.x) * (q.y - o.y) - (p.y - o.y) * (q.x - o.x);
    };
    std::vector<Vec2> upper_pts, lower_pts;
    for (const Vec2& p : pts) {
        while (upper_pts.size() >= 2 && cross(upper_pts[upper_pts.size() - 2], upper_pts.back(), p) >= 0.0)
            upper_pts.pop_back();
        upper_pts.push_back(p);
        while (lower_pts.size() >= 2 && cross(lower_pts[lower_pts.size() - 2], lower_pts.back(), p) <= 0.0)
            lower_pts.pop_back();
        lower_pts.push_back(p);
    }
    // Vertical side edges leave two vertices with equal x at the extremes:
    // keep the topmost for the upper chain, bottommost for the lower.
    auto dedup_x = [](std::vector<Vec2>& chain, bool keep_top) {
        std::vector<Vec2> out;
        for (const Vec2& p : chain) {
            if (!out.empty() && std::abs(out.back().x - p.x) <= 1e-12) {
                if (keep_top == (p.y > out.back().y)) out.back() = p;
            } else out.push_back(p);
        }
        chain = std::move(out);
    };
    dedup_x(upper_pts, true);
    dedup_x(lower_pts, false);
    if (upper_pts.size() < 2 || lower_pts.size() < 2) throw ValidationError("polygon: zero width");
    d.upper = Profile::polyline(upper_pts);
    d.lower = Profile::polyline(lower_pts);
}

void check_profile_shape(const Domain& d) {
    const double a = d.a;
    const int N = 1200;
    const double dx = a / 640.0;
    auto even_check = [&](const Profile& f, const char* name) {
        for (int i = 0; i <= N; ++i) {
            const double x = -a + (2.0 * a) * i / N;
            const double mirrored = f(-x);
            const double scale = 1.0 + std::abs(f(x));
            if (std::abs(f(x) - mirrored) > 1e-9 * scale)
                throw ValidationError(std::string(name) + ": not even, witness x = " + std::to_string(x));
        }
    };
    auto concave_check = [&](const Profile& f, bool want_concave, const char* name) {
        for (int i = 1; i < N; ++i) {
            const double x = -a + (2.0 * a) * i / N;
            const double lo = std::max(-a, x - dx), hi = std::min(a, x + dx);
            const double m = 0.5 * (lo + hi), hh = 0.5 * (hi - lo);
            if (hh < 1e-12) continue;
            const double d2 = f(m - hh) - 2.0 * f(m) + f(m + hh);
            const double tol = 1e-8 * (1.0 + std::abs(f(m)));
            if (want_concave && d2 > tol)
                throw ValidationError(std::string(name) + ": convex-not-concave, witness x = " + std::to_string(m) +
                                      " (second difference " + std::to_string(d2) + ")");
            if (!want_concave && d2 < -tol)
                throw ValidationError(std::string(name) + ": concave-not-convex, witness x = " + std::to_string(m));
        }
    };
    if (d.upper.valid() && !d.unbounded_above) {
        even_check(d.upper, "upper profile p");
        if (d.convex) concave_check(d.upper, true, "upper profile p");
    }
    if (d.lower.valid() && !d.unbounded_below) {
        even_check(d.lower, "lower profile q");
        if (d.convex) concave_check(d.lower, false, "lower profile q");
    }
    if (d.upper.valid() && d.lower.valid()) {
        for (int i = 1; i < N; ++i) {
            const double x = -a + (2.0 * a) * i / N;
            if (!(d.upper(x) > d.lower(x)))
                throw ValidationError("profiles: p <= q, witness x = " + std::to_string(x) +
                                      " (p = " + std::to_string(d.upper(x)) + ", q = " + std::to_string(d.lower(x)) + ")");
        }
    }
}

}  // namespace

Domain build_domain(Domain raw) {
    Domain d = std::move(raw);
    switch (d.kind) {
        case DomainKind::Rectangle:
            if (d.a <= 0.0 || d.rect_b <= 0.0) throw ValidationError("rectangle: requires a > 0 and b > 0");
            break;
        case DomainKind::Strip:
            if (d.a <= 0.0) throw ValidationError("strip: requires a > 0");
            break;
        case DomainKind::HalfStrip:
            if (d.a <= 0.0) throw ValidationError("half_strip: requires a > 0");
            break;
        case DomainKind::Disk:
            if (d.disk_R <= 0.0) throw ValidationError("disk: requires R > 0");
            break;
        case DomainKind::ConvexPolygon:
            validate_polygon(d);
            check_profile_shape(d);
            break;
        case DomainKind::Profile:
            if (d.a <= 0.0) throw ValidationError("profile: requires a > 0");
            if (!d.upper.valid()) throw ValidationError("profile: missing upper profile p");
            if (!d.unbounded_below && !d.lower.valid())
                throw ValidationError("profile: missing lower profile q on a bounded domain");
            check_profile_shape(d);
            break;
        case DomainKind::Dumbbell: {
            const auto& p = d.dumbbell_params;
            if (p.side <= 0.0 || p.corridor_len <= 0.0 || p.corridor_width <= 0.0)
                throw ValidationError("dumbbell: all parameters must be positive");
            if (p.corridor_width > p.side)
                throw ValidationError("dumbbell: corridor wider than the squares");
            break;
        }
    }
    d.validated = true;
    return d;
}

Domain half_domain(const Domain& dom) {
    if (!dom.validated) throw ValidationError("half_domain: domain not validated");
    if (dom.half) return dom;
    Domain d = dom;
    d.half = true;
    d.id = dom.id + "/half";
    return d;
}

double diameter(const Domain& dom) {
    if (!dom.bounded()) throw ValidationError("diameter: unsupported for unbounded domains");
    switch (dom.kind) {
        case DomainKind::Rectangle:
            return 2.0 * std::hypot(dom.a, dom.rect_b);
        case DomainKind::Disk:
            return 2.0 * dom.disk_R;
        case DomainKind::ConvexPolygon: {
            double best = 0.0;
            for (std::size_t i = 0; i < dom.vertices.size(); ++i)
                for (std::size_t j = i + 1; j < dom.vertices.size(); ++j)
                    best = std::max(best, std::hypot(dom.vertices[i].x - dom.vertices[j].x,
                                                     dom.vertices[i].y - dom.vertices[j].y));
            return best;
        }
        default: {
            // Sample the boundary chains densely; the diameter of a convex
            // body is attained at boundary points.
            const int N = 1400;
            std::vector<Vec2> pts;
            pts.reserve(2 * N + 2);
            for (int i = 0; i <= N; ++i) {
                const double x = -dom.a + 2.0 * dom.a * i / N;
                pts.push_back({x, dom.upper(x)});
                pts.push_back({x, dom.lower(x)});
            }
            double best = 0.0;
            for (std::size_t i = 0; i < pts.size(); ++i)
                for (std::size_t j = i + 1; j < pts.size(); ++j)
                    best = std::max(best, std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y));
            return best;
        }
    }
}

Domain random_convex_symmetric_polygon(unsigned long long seed, int target_vertices) {
    if (target_vertices < 4) target_vertices = 4;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> radius(0.6, 1.8);
    std::uniform_real_distribution<double> jitter(-0.12, 0.12);

    // Sample radii on a symmetric fan of angles over the right half plane,
    // mirror, and take the convex hull.
    const int m = std::max(3, target_vertices / 2 + 1);
    std::vector<Vec2> pts;
    for (int i = 0; i < m; ++i) {
        const double th = -M_PI / 2 + M_PI * (i + 0.5) / m + jitter(rng) * (M_PI / m);
        const double r = radius(rng);
        pts.push_back({r * std::cos(th), r * std::sin(th)});
    }
    std::vector<Vec2> all;
    for (const Vec2& p : pts) {
        all.push_back(p);
        all.push_back({-p.x, p.y});
    }
    // Monotone-chain convex hull.
    std::sort(all.begin(), all.end(), [](const Vec2& l, const Vec2& r) {
        if (l.x != r.x) return l.x < r.x;
        return l.y < r.y;
    });
    auto cross = [](const Vec2& o, const Vec2& a, const Vec2& b) {
        return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
    };
    std::vector<Vec2> hull;
    for (const Vec2& p : all) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 1e-12) hull.pop_back();
        hull.push_back(p);
    }
    const std::size_t lower_sz = hull.size() + 1;
    for (std::size_t i = all.size() - 1; i-- > 0;) {
        const Vec2& p = all[i];
        while (hull.size() >= lower_sz && cross(hull[hull.size() - 2], hull.back(), p) <= 1e-12) hull.pop_back();
        hull.push_back(p);
    }
    hull.pop_back();
    // Symmetrize exactly: average each vertex with its mirror partner.
    const std::vector<Vec2> frozen = hull;
    for (Vec2& p : hull) {
        double best = 1e300;
        Vec2 mate = p;
        for (const Vec2& q : frozen) {
            const double dd = std::hypot(q.x + p.x, q.y - p.y);
            if (dd < best) { best = dd; mate = q; }
        }
        p = {0.5 * (p.x - mate.x), 0.5 * (p.y + mate.y)};
    }
    Domain d = Domain::convex_polygon(hull);
    d.id = "random_polygon(seed=" + std::to_string(seed) + ")";
    return build_domain(std::move(d));
}

}  // namespace hermeig
