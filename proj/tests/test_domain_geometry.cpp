#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "hermeig/domain.hpp"
#include "hermeig/errors.hpp"
#include "hermeig/invading.hpp"
#include "hermeig/mesh.hpp"
#include "hermeig/slicing.hpp"

using namespace hermeig;

namespace {

Domain hexagon() {
    const double s = std::sqrt(3.0) / 2.0;
    return build_domain(Domain::convex_polygon(
        {{0.0, -1.0}, {s, -0.5}, {s, 0.5}, {0.0, 1.0}, {-s, 0.5}, {-s, -0.5}}));
}

Domain lens() {
    Profile p = Profile::callable([](double x) { return 1.0 - x * x; }, [](double x) { return -2.0 * x; },
                                  [](double) { return -2.0; }, -1.0, 1.0);
    Profile q = p.negated();
    return build_domain(Domain::profile(1.0, std::move(p), std::move(q)));
}

Domain parabola_domain() {
    Profile p = Profile::callable([](double x) { return -x * x; }, [](double x) { return -2.0 * x; },
                                  [](double) { return -2.0; }, -12.0, 12.0);
    return build_domain(Domain::profile_unbounded(12.0, std::move(p)));
}

}  // namespace

TEST_CASE("build_domain: validation and witnesses") {
    CHECK(build_domain(Domain::rectangle(1.0, 1.0)).validated);
    CHECK_THROWS_AS(build_domain(Domain::rectangle(-1.0, 1.0)), ValidationError);

    // p(x) = x^2 is convex, not concave: rejected with a witness.
    Profile bad = Profile::callable([](double x) { return x * x + 2.0; }, [](double x) { return 2.0 * x; },
                                    [](double) { return 2.0; }, -1.0, 1.0);
    Profile low = Profile::constant(-1.0, -1.0, 1.0);
    CHECK_THROWS_WITH_AS(build_domain(Domain::profile(1.0, bad, low)),
                         doctest::Contains("convex-not-concave"), ValidationError);

    // Asymmetric polygon rejected.
    CHECK_THROWS_AS(build_domain(Domain::convex_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}})), ValidationError);

    // Hexagon with two vertices on the y-axis is valid.
    const Domain hex = hexagon();
    CHECK(hex.validated);
    CHECK(hex.a == doctest::Approx(std::sqrt(3.0) / 2.0));

    // p <= q somewhere is rejected.
    Profile tiny = Profile::constant(0.1, -1.0, 1.0);
    Profile big = Profile::constant(0.5, -1.0, 1.0);
    CHECK_THROWS_AS(build_domain(Domain::profile(1.0, tiny, big)), ValidationError);
}

TEST_CASE("half_domain and contains") {
    const Domain rect = build_domain(Domain::rectangle(1.0, 2.0));
    const Domain h = half_domain(rect);
    CHECK(h.half);
    CHECK(h.contains(0.5, 1.5));
    CHECK(!h.contains(-0.5, 1.5));
    CHECK(rect.contains(-0.5, 1.5));
    CHECK(!rect.contains(0.5, 2.5));

    const Domain hs = build_domain(Domain::half_strip(1.0, 0.0));
    CHECK(hs.contains(0.3, -100.0));
    CHECK(!hs.contains(0.3, 0.5));
}

TEST_CASE("diameter: closed forms and the brute-force oracle") {
    CHECK(diameter(build_domain(Domain::rectangle(1.0, 1.0))) == doctest::Approx(2.0 * std::sqrt(2.0)));
    CHECK(diameter(build_domain(Domain::disk(1.5))) == doctest::Approx(3.0));

    const Domain hex = hexagon();
    double brute = 0.0;
    for (const Vec2& p : hex.vertices)
        for (const Vec2& q : hex.vertices) brute = std::max(brute, std::hypot(p.x - q.x, p.y - q.y));
    CHECK(diameter(hex) == doctest::Approx(brute).epsilon(1e-12));

    CHECK_THROWS_AS(diameter(build_domain(Domain::half_strip(1.0, 0.0))), ValidationError);
}

TEST_CASE("random symmetric polygons validate for a seed sweep") {
    for (unsigned long long seed = 1; seed <= 12; ++seed) {
        const Domain d = random_convex_symmetric_polygon(seed, 8);
        CHECK(d.validated);
        CHECK(d.a > 0.0);
    }
}

TEST_CASE("slicing: identity case and equal measures") {
    // Rectangle top half as a cap domain.
    Domain cap_raw = Domain::profile(0.8, Profile::constant(1.0, -0.8, 0.8), Profile::constant(0.0, -0.8, 0.8));
    const Domain cap = build_domain(std::move(cap_raw));

    const SliceSet single = slice_equal_gaussian(cap, 0);
    REQUIRE(single.strips.size() == 1);
    CHECK(single.strips[0].measure == doctest::Approx(single.parent_measure).epsilon(1e-12));

    const SliceSet two = slice_equal_gaussian(cap, 1);
    REQUIRE(two.strips.size() == 2);
    CHECK(std::abs(two.strips[0].measure - two.strips[1].measure) < 1e-10 * single.parent_measure);

    // Sum of strip measures equals the cap measure.
    const SliceSet eight = slice_equal_gaussian(cap, 3);
    double sum = 0.0;
    for (const auto& s : eight.strips) sum += s.measure;
    CHECK(sum == doctest::Approx(single.parent_measure).epsilon(1e-9));
}

TEST_CASE("slicing: hexagon cap, phi positivity, evenness, strip heights") {
    const Domain hex = hexagon();
    const Domain cap = upper_cap(hex);

    double prev_height = 1e300;
    for (int n = 1; n <= 6; ++n) {
        const SliceSet ss = slice_equal_gaussian(cap, n);
        CHECK(static_cast<int>(ss.strips.size()) == (1 << n));
        double max_height = 0.0;
        double sum = 0.0;
        for (const auto& s : ss.strips) {
            max_height = std::max(max_height, s.t_k - s.d_k);
            sum += s.measure;
            CHECK(s.measure == doctest::Approx(ss.parent_measure / (1 << n)).epsilon(1e-8));
        }
        CHECK(sum == doctest::Approx(ss.parent_measure).epsilon(1e-9));
        CHECK(max_height < prev_height + 1e-12);
        prev_height = max_height;
    }

    const SliceSet ss = slice_equal_gaussian(cap, 3);
    // Top slice has no flat part; the others do.
    CHECK(ss.strips.back().abar_k == 0.0);
    CHECK(ss.strips.front().abar_k > 0.0);
    for (const auto& s : ss.strips) {
        const WeightProfile phi = s.phi();
        for (int i = 1; i < 64; ++i) {
            const double x = -s.a_k + 2.0 * s.a_k * i / 64.0;
            CHECK(phi.phi(x) > 0.0);
            CHECK(std::abs(phi.phi(x) - phi.phi(-x)) < 1e-12);
        }
        CHECK(phi.phi(s.a_k) >= -1e-15);
        // Sampled convexity surrogate: second differences above -1e-8.
        const double d = s.a_k / 200.0;
        for (int i = 2; i < 199; ++i) {
            const double x = -s.a_k + 2.0 * s.a_k * i / 200.0;
            const double d2 = phi.phi(x - d) - 2.0 * phi.phi(x) + phi.phi(x + d);
            CHECK(d2 > -1e-8);
        }
    }
}

TEST_CASE("invading_sequence: half-strip fillets and nesting") {
    const Domain T = build_domain(Domain::half_strip(1.0, 0.0));
    const TruncatedDomain t4 = invading_sequence(T, 4, 0.25);
    CHECK(t4.straight_sides);
    CHECK(t4.dom.a == doctest::Approx(1.0));
    CHECK(t4.r == doctest::Approx(0.25));
    // Bottom profile: flat -4 in the middle, rises to -4 + r at the walls.
    CHECK(t4.dom.lower(0.0) == doctest::Approx(-4.0));
    CHECK(t4.dom.lower(1.0 - 1e-12) == doctest::Approx(-3.75).epsilon(1e-6));
    CHECK(t4.dom.upper(0.3) == doctest::Approx(0.0));

    // Nesting on sampled points for n = 4, 5, 6.
    const TruncatedDomain t5 = invading_sequence(T, 5, 0.25);
    const TruncatedDomain t6 = invading_sequence(T, 6, 0.25);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ux(-1.0, 1.0), uy(-6.5, 0.0);
    int checked = 0;
    for (int i = 0; i < 4000 && checked < 1000; ++i) {
        const double x = ux(rng), y = uy(rng);
        if (t4.dom.contains(x, y)) {
            ++checked;
            CHECK(t5.dom.contains(x, y));
            CHECK(t6.dom.contains(x, y));
            CHECK(T.contains(x, y));
        }
    }
    CHECK(checked == 1000);

    // Measure exhaustion: gamma_2(Omega \ Omega_n) below 1e-6 by n = 6.
    const double full = gaussian_measure_2d(T);
    const double m6 = gaussian_measure_2d(t6.dom);
    CHECK(full - m6 > 0.0);
    CHECK(full - m6 < 1e-6);

    CHECK_THROWS_AS(invading_sequence(T, 0, 0.25), GeometryError);
    CHECK_THROWS_AS(invading_sequence(T, 4, 5.0), GeometryError);
}

TEST_CASE("invading_sequence: parabola (case a) tangency") {
    const Domain par = parabola_domain();
    const double r_def = default_fillet_radius(par);
    CHECK(r_def == doctest::Approx(0.25).epsilon(1e-3));

    const TruncatedDomain td = invading_sequence(par, 3, 0.0);
    CHECK(!td.straight_sides);
    // Upper profile touches the parent graph in the middle and the fillet
    // tangency point continues it C^1.
    CHECK(td.dom.upper(0.0) == doctest::Approx(0.0).epsilon(1e-12));
    const double xp = td.x_tan_p;
    CHECK(td.dom.upper(xp * (1.0 - 1e-9)) == doctest::Approx(-xp * xp).epsilon(1e-6));
    const double below = td.dom.upper(xp - 1e-6);
    const double above = td.dom.upper(xp + 1e-6);
    CHECK(std::abs((above - below) / 2e-6 - (-2.0 * xp)) < 1e-3);
    // The domain pinches at x = +-(xc + r).
    CHECK(td.dom.a == doctest::Approx(td.fillet_xc + td.r));
    CHECK(td.dom.upper(td.dom.a * (1 - 1e-14)) ==
          doctest::Approx(td.dom.lower(td.dom.a * (1 - 1e-14))).epsilon(1e-5));
}

TEST_CASE("reflection_jacobian: flat walls, fillet extreme, collar errors") {
    const Domain T = build_domain(Domain::half_strip(1.0, 0.0));
    const TruncatedDomain td = invading_sequence(T, 6, 0.5);

    // Flat side wall: |J| = 1 exactly, image mirrored.
    const ReflectionSample side = reflection_jacobian(td, {0.9, -2.0});
    CHECK(side.jacobian_abs == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(side.image.x == doctest::Approx(1.1).epsilon(1e-12));
    CHECK(side.image.y == doctest::Approx(-2.0).epsilon(1e-12));

    // Flat top wall.
    const ReflectionSample top = reflection_jacobian(td, {0.2, -0.1});
    CHECK(top.jacobian_abs == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(top.wall == WallKind::TopProfile);

    // Flat bottom wall.
    const ReflectionSample bot = reflection_jacobian(td, {0.0, -5.8});
    CHECK(bot.jacobian_abs == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(bot.wall == WallKind::BottomProfile);

    // Fillet at depth r/2: |J| = (r + r/2)/(r - r/2) = 3, the closed-form
    // circle-reflection extreme, against the paper branch formula.
    const double r = td.r;
    const Vec2 center{td.fillet_xc, -6.0 + r};
    const double rho = 0.5 * r;  // depth r/2 => distance rho = r/2 from center
    const Vec2 p{center.x + rho * std::cos(-M_PI / 4), center.y + rho * std::sin(-M_PI / 4)};
    const ReflectionSample fil = reflection_jacobian(td, p);
    CHECK(fil.jacobian_abs == doctest::Approx(3.0).epsilon(1e-9));
    const double rbar = fil.boundary_dist;
    CHECK(fil.jacobian_abs == doctest::Approx((r + rbar) / (r - rbar)).epsilon(1e-9));

    // Image lies outside the domain.
    CHECK(!td.dom.contains(fil.image.x, fil.image.y));
    CHECK(!td.dom.contains(side.image.x, side.image.y));

    // Deep interior point: not in the collar.
    CHECK_THROWS_AS(reflection_jacobian(td, {0.0, -3.0}), GeometryError);
}

TEST_CASE("jacobian_audit: bounds hold on seeded collar samples") {
    const Domain T = build_domain(Domain::half_strip(1.0, 0.0));
    const TruncatedDomain td = invading_sequence(T, 6, 0.5);
    const JacobianAuditResult audit = jacobian_audit(td, 1000, 12345);
    CHECK(audit.samples == 1000);
    CHECK(audit.jacobian_ok);
    CHECK(audit.weight_ratio_ok);
    CHECK(audit.min_jacobian >= 1.0 - 1e-12);
    CHECK(audit.max_jacobian <= 3.0 + 1e-12);
    CHECK(audit.max_jacobian > 1.5);  // fillet samples push toward the extreme
    CHECK(audit.weight_ratio_bound == doctest::Approx(1.0));
}

TEST_CASE("triangulate: rectangle orientation and axis tags") {
    const Domain rect = build_domain(Domain::rectangle(1.0, 1.0));
    const Mesh m = triangulate(rect, 0.5);
    for (const auto& t : m.triangles) {
        const Vec2& a = m.vertices[t[0]];
        const Vec2& b = m.vertices[t[1]];
        const Vec2& c = m.vertices[t[2]];
        CHECK((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y) > 0.0);
    }
    const Mesh hm = triangulate(half_domain(rect), 0.25);
    int axis_edges = 0;
    for (const auto& e : hm.boundary_edges)
        if (e.tag == EdgeTag::Axis) {
            ++axis_edges;
            CHECK(std::abs(hm.vertices[e.v0].x) <= 1e-12);
            CHECK(std::abs(hm.vertices[e.v1].x) <= 1e-12);
        }
    CHECK(axis_edges > 0);
    CHECK_THROWS_AS(triangulate(rect, 5.0), SizeError);
}

TEST_CASE("triangulate: disk area converges at second order") {
    const Domain disk = build_domain(Domain::disk(1.0));
    double err_prev = -1.0;
    for (double h : {0.4, 0.2, 0.1}) {
        const Mesh m = triangulate(disk, h);
        const double err = M_PI - m.total_area();
        CHECK(err > 0.0);  // inscribed polygon
        if (err_prev > 0.0) CHECK(err < 0.45 * err_prev);
        err_prev = err;
    }
}

TEST_CASE("triangulate: gaussian mass converges to the domain measure") {
    const Domain lens_dom = lens();
    const double target = 2.0 * M_PI * gaussian_measure_2d(lens_dom);
    double err_prev = -1.0;
    for (double h : {0.3, 0.15, 0.075}) {
        const Mesh m = triangulate(lens_dom, h);
        const double err = std::abs(m.gaussian_mass() - target);
        if (err_prev > 0.0) CHECK(err < 0.45 * err_prev);
        err_prev = err;
    }
}

TEST_CASE("triangulate: conforming meshes (every interior edge shared twice)") {
    for (const Domain& d : {build_domain(Domain::disk(1.0)), hexagon(), lens(),
                            build_domain(Domain::dumbbell(1.0, 1.0, 0.2))}) {
        const Mesh m = triangulate(d, 0.2);
        // Euler check: V - E + F = 1 for a disk-like planar triangulation
        // (F excludes the outer face).
        std::map<std::pair<int, int>, int> edges;
        for (const auto& t : m.triangles)
            for (int e = 0; e < 3; ++e) {
                int a = t[e], b = t[(e + 1) % 3];
                if (a > b) std::swap(a, b);
                ++edges[{a, b}];
            }
        for (const auto& [k, cnt] : edges) CHECK(cnt <= 2);
        const long long V = static_cast<long long>(m.vertices.size());
        const long long E = static_cast<long long>(edges.size());
        const long long F = static_cast<long long>(m.triangles.size());
        CHECK(V - E + F == 1);
    }
}

TEST_CASE("mesh export round embeds sections") {
    const Mesh m = triangulate(build_domain(Domain::rectangle(1.0, 1.0)), 0.5);
    const std::string txt = mesh_to_ascii(m);
    CHECK(txt.find("vertices") != std::string::npos);
    CHECK(txt.find("triangles") != std::string::npos);
    CHECK(txt.find("boundary_edges") != std::string::npos);
}
