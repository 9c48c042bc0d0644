// Acceptance suite: one pass/fail line per criterion, exit code = failures.
// Usage: acceptance <domains_dir> <cli_binary>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "hermeig/checks.hpp"
#include "hermeig/domain_io.hpp"
#include "hermeig/report.hpp"
#include "hermeig/slicing.hpp"
#include "hermeig/solver1d.hpp"
#include "hermeig/solver2d.hpp"

using namespace hermeig;

namespace {

int g_fail = 0;

void report(int criterion, bool pass, const std::string& detail) {
    if (!pass) ++g_fail;
    std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion, detail.c_str());
    std::fflush(stdout);
}

double now_seconds() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

std::string fmt(double v) { return format_number(v); }

// Slice-style weight for the oracle matrix: a linear profile capped by a flat
// top, the kinks of the cap placed on dyadic grid faces so the flux form
// keeps clean second order across them.
WeightProfile capped_slice_weight() {
    const double c = 4.0, t = 3.5, d = 0.3;  // p(x) = min(c - |x|, t), kinks at +-0.5
    WeightProfile w;
    w.phi = [c, t, d](double x) {
        const double p = std::min(c - std::abs(x), t);
        return gauss_cdf(p) - gauss_cdf(d);
    };
    w.dphi = [c, t](double x) {
        const double p = c - std::abs(x);
        if (p >= t) return 0.0;
        const double dens = std::exp(-0.5 * p * p) / 2.5066282746310005024;
        return dens * (x > 0 ? -1.0 : 1.0);
    };
    w.ddphi = [c, t](double x) {
        const double p = c - std::abs(x);
        if (p >= t) return 0.0;
        const double dens = std::exp(-0.5 * p * p) / 2.5066282746310005024;
        return dens * (-p);
    };
    w.kinks = {-0.5, 0.5};
    return w;
}

Domain hexagon_domain() {
    const double s = std::sqrt(3.0) / 2.0;
    Domain d = Domain::convex_polygon({{0.0, -1.0}, {s, -0.5}, {s, 0.5}, {0.0, 1.0}, {-s, 0.5}, {-s, -0.5}});
    d.id = "hexagon";
    return build_domain(std::move(d));
}

Domain lens_domain() {
    Profile p = Profile::callable([](double x) { return 1.0 - x * x; }, [](double x) { return -2.0 * x; },
                                  [](double) { return -2.0; }, -1.0, 1.0);
    Profile q = p.negated();
    Domain d = Domain::profile(1.0, std::move(p), std::move(q));
    d.id = "lens";
    return build_domain(std::move(d));
}

void criterion_1() {
    const double t0 = now_seconds();
    double worst = 0.0;
    for (double a : {0.5, 1.0, 2.0, 5.0}) {
        const double mu = mu1_interval(-a, a, 2048).value;
        const double la = lambda1_interval(-a, a, 2048).value;
        worst = std::max(worst, std::abs(mu - la - 1.0));
    }
    const double dt = now_seconds() - t0;
    report(1, worst <= 1e-8 && dt < 1.0,
           "1-D identity |mu1 - lambda1 - 1| <= 1e-8, worst = " + fmt(worst) + ", runtime " + fmt(dt) + " s");
}

void criterion_2() {
    const double v = mu1_interval(ExtendedReal::neg_inf(), ExtendedReal::pos_inf(), 2048).value;
    report(2, std::abs(v - 1.0) <= 1e-6, "full-line mu1 = " + fmt(v) + ", |mu1 - 1| = " + fmt(std::abs(v - 1.0)));
}

void criterion_3() {
    const WeightProfile slice = capped_slice_weight();
    double worst_rel = 0.0, worst_order_lo = 2.0, worst_order_hi = 2.0;
    for (double a : {0.5, 1.0, 2.0}) {
        for (int weighted = 0; weighted < 2; ++weighted) {
            const WeightProfile* phi = weighted ? &slice : nullptr;
            Value1D nv, dv;
            if (weighted) {
                nv = weighted_mu1(-a, a, slice, 2048).value;
                dv = weighted_lambda1(-a, a, slice, 2048);
            } else {
                nv = mu1_interval(-a, a, 2048);
                dv = lambda1_interval(-a, a, 2048);
            }
            const double sh_n =
                shooting_eigenvalue(-a, a, BoundaryCondition::Neumann, 0.9 * nv.value - 0.05, 1.1 * nv.value + 0.05, phi);
            const double sh_d =
                shooting_eigenvalue(-a, a, BoundaryCondition::Dirichlet, 0.9 * dv.value - 0.05, 1.1 * dv.value + 0.05, phi);
            worst_rel = std::max(worst_rel, std::abs(sh_n - nv.value) / std::max(1.0, std::abs(nv.value)));
            worst_rel = std::max(worst_rel, std::abs(sh_d - dv.value) / std::max(1.0, std::abs(dv.value)));
            worst_order_lo = std::min({worst_order_lo, nv.measured_order, dv.measured_order});
            worst_order_hi = std::max({worst_order_hi, nv.measured_order, dv.measured_order});
        }
    }
    const bool ok = worst_rel <= 1e-8 && worst_order_lo > 1.8 && worst_order_hi < 2.2;
    report(3, ok, "shooting vs flux-form (12 cases): worst rel diff = " + fmt(worst_rel) + ", measured order in [" +
                      fmt(worst_order_lo) + ", " + fmt(worst_order_hi) + "]");
}

void criterion_4() {
    const double cases[3][2] = {{1.0, 1.0}, {1.0, 2.0}, {0.5, 1.0}};
    bool ok = true;
    std::string detail = "rectangle equality:";
    for (const auto& ab : cases) {
        const double t0 = now_seconds();
        const Domain rect = build_domain(Domain::rectangle(ab[0], ab[1]));
        const Spectrum2D odd = mu1_odd(rect, 0.1);
        const double mu = mu1_interval(-ab[0], ab[0], 2048).value;
        const double rel = std::abs(odd.values[0] - mu) / mu;
        const double dt = now_seconds() - t0;
        ok = ok && rel <= 1e-3 && dt < 60.0;
        detail += " (" + fmt(ab[0]) + "," + fmt(ab[1]) + "): rel = " + fmt(rel) + " in " + fmt(dt) + " s;";
    }
    report(4, ok, detail);
}

void criterion_5() {
    Solver2DOptions opt;
    opt.h = 0.1;
    const Domain T = build_domain(Domain::half_strip(1.0, 0.0));
    const UnboundedResult res = solve_unbounded(T, opt, true);
    const double mu = res.full->values[1];
    const double mu_odd = res.odd.values[0];
    const bool ok = res.odd.record.converged && std::abs(mu - 2.0) / 2.0 <= 1e-2 &&
                    std::abs(mu_odd - 3.0) / 3.0 <= 1e-2;
    report(5, ok, "T example: mu1 = " + fmt(mu) + " (target 2), mu1_odd = " + fmt(mu_odd) + " (target 3)");
}

void criterion_6() {
    const double cases[3][2] = {{0.5, 0.0}, {1.0, 0.0}, {2.0, 1.0}};
    bool ok = true;
    std::string detail = "half-strip equality:";
    for (const auto& ab : cases) {
        Solver2DOptions opt;
        opt.h = 0.1;
        const Domain hs = build_domain(Domain::half_strip(ab[0], ab[1]));
        const UnboundedResult res = solve_unbounded(hs, opt, false);
        const double mu = mu1_interval(-ab[0], ab[0], 2048).value;
        const double rel = std::abs(res.odd.values[0] - mu) / mu;
        ok = ok && res.odd.record.converged && rel <= 1e-2;
        detail += " (" + fmt(ab[0]) + "," + fmt(ab[1]) + "): rel = " + fmt(rel) + ";";
    }
    report(6, ok, detail);
}

void criterion_7() {
    Solver2DOptions opt;
    opt.h = 0.4;
    opt.dense_cap = 7000;
    const CheckReport r = check_plane_spectrum(opt, 2e-2);
    std::string detail = "plane spectrum on disk(12): deviation = " + fmt(r.rhs) + " (tol 2e-2), values:";
    for (const auto& kv : r.settings)
        if (kv.first.rfind("value_", 0) == 0) detail += " " + kv.second;
    report(7, r.status == CheckStatus::Pass, detail);
}

void criterion_8() {
    std::vector<Domain> battery;
    battery.push_back(build_domain(Domain::rectangle(1.0, 1.0)));
    battery.push_back(build_domain(Domain::rectangle(1.0, 2.0)));
    battery.push_back(build_domain(Domain::rectangle(0.5, 1.0)));
    battery.push_back(build_domain(Domain::rectangle(1.5, 0.5)));
    battery.push_back(build_domain(Domain::rectangle(2.0, 0.75)));
    battery.push_back(build_domain(Domain::rectangle(0.8, 0.8)));
    battery.push_back(hexagon_domain());
    battery.push_back(lens_domain());
    for (int i = 0; i < 12; ++i) battery.push_back(random_convex_symmetric_polygon(7 + 100ULL * i, 7 + (i % 4)));

    Solver2DOptions opt;
    opt.h = 0.12;
    bool ok = battery.size() == 20;
    double worst_margin = 1e300;
    int passed = 0;
    for (const Domain& dom : battery) {
        const CheckReport r = check_thm1(dom, opt, 5e-3);
        worst_margin = std::min(worst_margin, r.margin);
        if (r.status == CheckStatus::Pass) ++passed;
        else ok = false;
    }
    report(8, ok, "theorem-1 battery: " + std::to_string(passed) + "/20 pass, worst margin = " + fmt(worst_margin));
}

void criterion_9() {
    const Domain hex = hexagon_domain();
    const Domain cap = upper_cap(hex);
    const SliceSet slices = slice_equal_gaussian(cap, 4);
    const double mu_a = mu1_interval(-hex.a, hex.a, 4096).value;
    double worst = 1e300;
    bool ok = slices.strips.size() == 16;
    for (const Slice& s : slices.strips) {
        const WeightedMu1Result lam = weighted_mu1(-s.a_k, s.a_k, s.phi(), 4096);
        worst = std::min(worst, lam.value.value - mu_a);
        if (!(lam.value.value >= mu_a - 1e-6)) ok = false;
        if (!(lam.pair.zero_mean_defect <= 1e-8)) ok = false;
    }
    report(9, ok, "per-slice bound on 16 hexagon strips: min(lambda_k - mu1(-a,a)) = " + fmt(worst));
}

void criterion_10() {
    const Domain hex = hexagon_domain();
    const Domain cap = upper_cap(hex);
    const SliceSet slices = slice_equal_gaussian(cap, 2);
    bool ok = true;
    std::string detail = "transform residual:";
    for (std::size_t idx : {std::size_t(0), slices.strips.size() - 1}) {
        const Slice& s = slices.strips[idx];
        std::vector<double> res;
        for (int n : {512, 1024, 2048}) {
            const WeightedMu1Result lam = weighted_mu1(-s.a_k, s.a_k, s.phi(), n);
            res.push_back(transform_check(lam.pair, s.phi()).residual);
        }
        const double order = 0.5 * (std::log2(res[0] / res[1]) + std::log2(res[1] / res[2]));
        ok = ok && order > 1.8 && order < 2.2 && res[2] <= 1e-3;
        detail += " strip" + std::to_string(idx) + ": order = " + fmt(order) + ", res@2048 = " + fmt(res[2]) + ";";
    }
    report(10, ok, detail);
}

void criterion_11() {
    const Domain T = build_domain(Domain::half_strip(1.0, 0.0));
    Solver2DOptions opt;
    const CheckReport r = check_jacobian(T, 6, 1000, 7, opt);
    std::string minj, maxj, ratio, bound;
    for (const auto& kv : r.settings) {
        if (kv.first == "min_jacobian") minj = kv.second;
        if (kv.first == "max_jacobian") maxj = kv.second;
        if (kv.first == "max_weight_ratio") ratio = kv.second;
        if (kv.first == "weight_ratio_bound") bound = kv.second;
    }
    report(11, r.status == CheckStatus::Pass,
           "jacobian bounds on 1000 collar samples: |J| in [" + minj + ", " + maxj + "], weight ratio " + ratio +
               " <= " + bound);
}

void criterion_12() {
    Solver2DOptions opt;
    opt.h = 0.12;
    const std::vector<Domain> doms = {build_domain(Domain::disk(1.0)), build_domain(Domain::square(1.0)),
                                      build_domain(Domain::rectangle(1.5, 0.5)),
                                      build_domain(Domain::rectangle(1.0, 2.0))};
    bool ok = true;
    std::string detail = "sw/an margins:";
    for (const Domain& d : doms) {
        const CheckReport sw = check_sw(d, opt, 5e-3);
        const CheckReport an = check_an(d, opt, 5e-3);
        ok = ok && sw.status == CheckStatus::Pass && an.status == CheckStatus::Pass;
        detail += " " + d.id + ": sw = " + fmt(sw.margin) + ", an = " + fmt(an.margin) + ";";
    }
    report(12, ok, detail);
}

void criterion_13() {
    Solver2DOptions opt;
    opt.h = 0.1;
    const CheckReport disk = check_gap(build_domain(Domain::disk(1.0)), opt, 5e-3);
    const CheckReport square = check_gap(build_domain(Domain::square(1.0)), opt, 5e-3);
    const CheckReport t = check_gap(build_domain(Domain::half_strip(1.0, 0.0)), opt, 5e-3);
    const bool ok = disk.status == CheckStatus::Pass && square.status == CheckStatus::Pass &&
                    t.status == CheckStatus::HypothesisNotMet;
    report(13, ok, "gap proposition: disk margin = " + fmt(disk.margin) + ", square margin = " + fmt(square.margin) +
                       ", T status = " + check_status_name(t.status));
}

void criterion_14() {
    Solver2DOptions opt;
    opt.h = 0.08;
    const CheckReport r = dumbbell_sweep({0.4, 0.2, 0.1, 0.05}, 1.0, 1.0, opt);
    std::string vals;
    if (!r.evidence.empty())
        for (const auto& s : r.evidence[0].samples) vals += " " + fmt(s.second);
    report(14, r.status == CheckStatus::Pass, "dumbbell degeneration, mu1_odd over eps:" + vals);
}

void criterion_15(const std::string& domains_dir, const std::string& cli) {
    const std::string out1 = "acceptance_battery_run1.json";
    const std::string out2 = "acceptance_battery_run2.json";
    const std::string base = "HERMITE_GAP_THREADS=2 \"" + cli + "\" battery --seed 7 --format json --domains-dir \"" +
                             domains_dir + "\" --out ";
    const int rc1 = std::system((base + out1).c_str());
    const int rc2 = std::system((base + out2).c_str());
    auto slurp = [](const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string a = slurp(out1), b = slurp(out2);
    const bool ok = rc1 == 0 && rc2 == 0 && !a.empty() && a == b;
    report(15, ok, "battery determinism: " + std::to_string(a.size()) + " bytes, runs " +
                       (a == b ? "byte-identical" : "DIFFER") + ", exit codes " + std::to_string(rc1) + "/" +
                       std::to_string(rc2));
}

}  // namespace

int main(int argc, char** argv) {
    const std::string domains_dir = argc > 1 ? argv[1] : "domains";
    const std::string cli = argc > 2 ? argv[2] : "./hermeig";
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    criterion_12();
    criterion_13();
    criterion_14();
    criterion_15(domains_dir, cli);
    std::printf("%s (%d failure%s)\n", g_fail == 0 ? "ACCEPTANCE: ALL CRITERIA PASS" : "ACCEPTANCE: FAILURES",
                g_fail, g_fail == 1 ? "" : "s");
    return g_fail;
}
