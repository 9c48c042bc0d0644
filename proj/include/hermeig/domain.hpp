#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hermeig/errors.hpp"
#include "hermeig/gaussian.hpp"

namespace hermeig {

// Piecewise-smooth scalar function of x with analytic first and second
// derivatives per piece. Interior piece boundaries are the published kink
// set; evaluation at a boundary uses the right piece.
class Profile {
  public:
    using Fn = std::function<double(double)>;

    Profile() = default;

    bool valid() const { return !pieces_.empty(); }
    double x_lo() const { return pieces_.front().lo; }
    double x_hi() const { return pieces_.back().hi; }

    double operator()(double x) const { return piece(x).f(x); }
    double deriv(double x) const { return piece(x).df(x); }
    double deriv2(double x) const { return piece(x).ddf(x); }

    // Abscissae of interior piece boundaries (where f' or f'' may jump).
    std::vector<double> interior_breaks() const;

    void append_piece(double lo, double hi, Fn f, Fn df, Fn ddf);

    static Profile constant(double c, double lo, double hi);
    static Profile line(double x0, double y0, double slope, double lo, double hi);
    // Upper half-circle sqrt(R^2 - x^2) on (-R, R); mirrored for lower.
    static Profile circle_upper(double R);
    static Profile circle_lower(double R);
    // Arc of the circle centered at (xc, yc) with radius r; upper = yc + sqrt,
    // lower = yc - sqrt, restricted to [lo, hi].
    static Profile circle_arc(double xc, double yc, double r, bool upper, double lo, double hi);
    // Piecewise-linear interpolant of points with strictly ascending x.
    static Profile polyline(const std::vector<Vec2>& pts);
    // Single closed-form piece.
    static Profile callable(Fn f, Fn df, Fn ddf, double lo, double hi);
    // Monotone cubic (Fritsch-Carlson) interpolant of samples; keeps the data
    // shape, C1 with piecewise-quadratic derivative.
    static Profile from_samples(const std::vector<double>& xs, const std::vector<double>& ys);
    // Glue profiles left-to-right; pieces must be contiguous in x.
    static Profile join(const std::vector<Profile>& parts);

    Profile negated() const;
    Profile restricted(double lo, double hi) const;

  private:
    struct Piece {
        double lo, hi;
        Fn f, df, ddf;
    };
    const Piece& piece(double x) const;
    std::vector<Piece> pieces_;
};

enum class DomainKind { Rectangle, Strip, HalfStrip, Disk, ConvexPolygon, Profile, Dumbbell };

const char* domain_kind_name(DomainKind k);

struct DumbbellParams {
    double side = 0.0;           // square side length
    double corridor_len = 0.0;   // full corridor length (x extent between squares)
    double corridor_width = 0.0; // epsilon
};

// Convex (except Dumbbell), y-axis-symmetric planar domain in profile form:
//   Omega = { (x,y) : -a < x < a, q(x) < y < p(x) },
// with q absent when the domain is unbounded below and p absent for the
// vertical strip. Built-in kinds carry their defining parameters alongside
// the profile view.
class Domain {
  public:
    DomainKind kind = DomainKind::Rectangle;
    std::string id;

    double a = 0.0;          // half-width in x (R for Disk)
    double rect_b = 0.0;     // Rectangle half-height
    double strip_top = 0.0;  // HalfStrip top ordinate
    double disk_R = 0.0;

    Profile upper;  // p; invalid when unbounded_above
    Profile lower;  // q; invalid when unbounded_below

    bool unbounded_below = false;
    bool unbounded_above = false;
    bool half = false;       // restricted to x in (0,a), Axis tag on x = 0
    bool validated = false;
    bool convex = true;      // Dumbbell is the one non-convex built-in

    std::vector<Vec2> vertices;  // ConvexPolygon only, CCW, mirror-symmetric
    DumbbellParams dumbbell_params;

    bool bounded() const { return !unbounded_below && !unbounded_above; }

    // Membership test for the open set (profile view; half flag respected).
    bool contains(double x, double y) const;

    static Domain rectangle(double a, double b);
    static Domain square(double l) { return rectangle(l, l); }
    static Domain strip(double a);
    static Domain half_strip(double a, double top);
    static Domain disk(double R);
    static Domain convex_polygon(std::vector<Vec2> verts);
    static Domain profile(double a, Profile p, Profile q);
    static Domain profile_unbounded(double a, Profile p);
    static Domain dumbbell(double side, double corridor_len, double corridor_width);
};

// Validates every DomainSpec invariant (positivity, convex position and
// mirror invariance for polygons, sampled concavity/evenness/ordering for
// profiles) and returns the validated domain. Throws ValidationError naming
// the violated invariant and a witness point.
Domain build_domain(Domain raw);

// Omega intersected with {x > 0}; the segment on x = 0 becomes the Axis.
Domain half_domain(const Domain& dom);

// Euclidean diameter of a bounded domain; throws on unbounded input.
double diameter(const Domain& dom);

// Deterministic convex y-symmetric polygon generator for test batteries.
Domain random_convex_symmetric_polygon(unsigned long long seed, int target_vertices);

}  // namespace hermeig
