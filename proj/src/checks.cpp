#include "hermeig/checks.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <thread>

#include "hermeig/domain_io.hpp"
#include "hermeig/errors.hpp"
#include "hermeig/report.hpp"
#include "hermeig/solver1d.hpp"

namespace hermeig {

const char* check_id_name(CheckId id) {
    switch (id) {
        case CheckId::Thm1: return "thm1";
        case CheckId::Thm2: return "thm2";
        case CheckId::SW: return "sw";
        case CheckId::AndrewsNi: return "andrews_ni";
        case CheckId::Gap: return "gap";
        case CheckId::Dumbbell: return "dumbbell";
        case CheckId::Jacobian: return "jacobian";
        case CheckId::PlaneSpectrum: return "plane_spectrum";
        case CheckId::RectangleEquality: return "rectangle_equality";
        case CheckId::TExample: return "t_example";
    }
    return "?";
}

const char* check_status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::HypothesisNotMet: return "hypothesis-not-met";
        case CheckStatus::Inconclusive: return "inconclusive";
        case CheckStatus::Unsupported: return "unsupported";
        case CheckStatus::Error: return "error";
    }
    return "?";
}

namespace {

void put(CheckReport& r, const std::string& key, double v) {
    r.settings.emplace_back(key, format_number(v));
}
void put(CheckReport& r, const std::string& key, const std::string& v) {
    r.settings.emplace_back(key, v);
}

void conclude(CheckReport& r) {
    r.margin = r.lhs - r.rhs;
    r.status = (r.margin >= -r.tolerance) ? CheckStatus::Pass : CheckStatus::Fail;
}

bool origin_symmetric(const Domain& d) {
    switch (d.kind) {
        case DomainKind::Rectangle:
        case DomainKind::Disk:
            return true;
        case DomainKind::Strip:
            return true;
        default: {
            if (!d.bounded()) return false;
            for (int i = 0; i <= 64; ++i) {
                const double x = -d.a + 2.0 * d.a * i / 64.0;
                if (std::abs(d.upper(x) + d.lower(-x)) > 1e-9 * (1.0 + std::abs(d.upper(x)))) return false;
            }
            return true;
        }
    }
}

}  // namespace

CheckReport check_thm1(const Domain& dom, const Solver2DOptions& opt, double tol) {
    CheckReport r;
    r.id = CheckId::Thm1;
    r.domain_id = dom.id;
    r.tolerance = tol;
    const Spectrum2D odd = mu1_odd(dom, opt.h, opt.dense_cap);
    const Value1D one_d = mu1_interval(-dom.a, dom.a, 2048);
    r.lhs = odd.values[0];
    r.rhs = one_d.value;
    r.evidence.push_back(odd.record);
    put(r, "h", opt.h);
    put(r, "dofs", static_cast<double>(odd.dofs));
    put(r, "grid_n_1d", 2048.0);
    conclude(r);
    return r;
}

CheckReport check_thm2(const Domain& dom, const Solver2DOptions& opt, double tol) {
    CheckReport r;
    r.id = CheckId::Thm2;
    r.domain_id = dom.id;
    r.tolerance = tol;
    const UnboundedResult res = solve_unbounded(dom, opt, false);
    const Value1D one_d = mu1_interval(-dom.a, dom.a, 2048);
    r.lhs = res.odd.values[0];
    r.rhs = one_d.value;
    r.evidence.push_back(res.odd.record);
    put(r, "h", opt.h);
    put(r, "trunc_tol", opt.trunc_tol);
    put(r, "rayleigh_ub", res.odd.rayleigh_ub);
    put(r, "rayleigh_ub_ok", res.odd.ub_ok ? "true" : "false");
    if (!res.odd.record.converged) {
        r.margin = r.lhs - r.rhs;
        r.status = CheckStatus::Inconclusive;
        r.note = "truncation loop not converged by n_max";
        return r;
    }
    conclude(r);
    return r;
}

CheckReport check_sw(const Domain& dom, const Solver2DOptions& opt, double tol) {
    CheckReport r;
    r.id = CheckId::SW;
    r.domain_id = dom.id;
    r.tolerance = tol;
    if (!origin_symmetric(dom)) {
        r.status = CheckStatus::Unsupported;
        r.note = "domain not symmetric about the origin";
        return r;
    }
    const double gamma = gaussian_measure_2d(dom);
    if (gamma >= 1.0 - 1e-12) {
        r.status = CheckStatus::Unsupported;
        r.note = "plane-like domain, Omega# undefined";
        return r;
    }
    const double R = std::sqrt(-2.0 * std::log1p(-gamma));
    const Value1D disk_val = disk_radial_eigenvalue(R, 1, 1024);
    const Spectrum2D spec = neumann_spectrum(dom, opt.h, 2, opt.dense_cap);
    r.lhs = disk_val.value;   // mu_1(Omega#)
    r.rhs = spec.values[1];   // mu_1(Omega) <= lhs + tol
    r.evidence.push_back(spec.record);
    put(r, "h", opt.h);
    put(r, "gamma2", gamma);
    put(r, "sharp_radius", R);
    conclude(r);
    return r;
}

CheckReport check_an(const Domain& dom, const Solver2DOptions& opt, double tol) {
    CheckReport r;
    r.id = CheckId::AndrewsNi;
    r.domain_id = dom.id;
    r.tolerance = tol;
    if (!dom.bounded() || !dom.convex) {
        r.status = CheckStatus::Unsupported;
        r.note = "requires a bounded convex domain";
        return r;
    }
    const double d = diameter(dom);
    const Spectrum2D spec = neumann_spectrum(dom, opt.h, 2, opt.dense_cap);
    const Value1D one_d = mu1_interval(-0.5 * d, 0.5 * d, 2048);
    r.lhs = spec.values[1];
    r.rhs = one_d.value;
    r.evidence.push_back(spec.record);
    put(r, "h", opt.h);
    put(r, "diameter", d);
    conclude(r);
    return r;
}

CheckReport check_gap(const Domain& dom, const Solver2DOptions& opt, double tol) {
    CheckReport r;
    r.id = CheckId::Gap;
    r.domain_id = dom.id;
    r.tolerance = tol;

    double mu1_value = 0.0, mu1_odd_value = 0.0;
    if (dom.bounded()) {
        mu1_value = neumann_spectrum(dom, opt.h, 2, opt.dense_cap).values[1];
        const Spectrum2D odd = mu1_odd(dom, opt.h, opt.dense_cap);
        mu1_odd_value = odd.values[0];
        r.evidence.push_back(odd.record);
    } else {
        const UnboundedResult res = solve_unbounded(dom, opt, true);
        mu1_odd_value = res.odd.values[0];
        mu1_value = res.full->values[1];
        r.evidence.push_back(res.odd.record);
        if (!res.odd.record.converged) {
            r.status = CheckStatus::Inconclusive;
            r.note = "truncation loop not converged";
            return r;
        }
    }
    put(r, "mu1", mu1_value);
    put(r, "mu1_odd", mu1_odd_value);
    const Value1D lam = lambda1_interval(-dom.a, dom.a, 2048);
    const Value1D mu = mu1_interval(-dom.a, dom.a, 2048);
    put(r, "strip_consistency", std::abs(mu.value - 1.0 - lam.value));

    if (std::abs(mu1_value - mu1_odd_value) > 1e-3 * std::max(1.0, std::abs(mu1_value))) {
        r.status = CheckStatus::HypothesisNotMet;
        r.note = "mu_1(Omega) != mu_1^odd(Omega), proposition hypothesis not met";
        r.lhs = mu1_value - 1.0;
        r.rhs = lam.value;
        r.margin = r.lhs - r.rhs;
        return r;
    }
    r.lhs = mu1_value - 1.0;
    r.rhs = lam.value;
    conclude(r);
    return r;
}

CheckReport dumbbell_sweep(const std::vector<double>& eps_list, double side, double corridor_len,
                           const Solver2DOptions& opt) {
    CheckReport r;
    r.id = CheckId::Dumbbell;
    r.tolerance = 0.0;
    if (eps_list.size() < 2) throw ValidationError("dumbbell_sweep: needs at least two widths");
    for (std::size_t i = 1; i < eps_list.size(); ++i)
        if (!(eps_list[i] < eps_list[i - 1]))
            throw ValidationError("dumbbell_sweep: eps list must be strictly decreasing");

    ConvergenceRecord rec;
    rec.parameter = "eps";
    bool strictly_decreasing = true;
    std::string partial_note;
    for (double eps : eps_list) {
        Domain dom = build_domain(Domain::dumbbell(side, corridor_len, eps));
        if (r.domain_id.empty()) r.domain_id = "dumbbell(s=" + format_number(side) + ",len=" + format_number(corridor_len) + ")";
        try {
            const Spectrum2D odd = mu1_odd(dom, opt.h, opt.dense_cap);
            if (!rec.samples.empty() && !(odd.values[0] < rec.samples.back().second))
                strictly_decreasing = false;
            rec.samples.push_back({eps, odd.values[0]});
        } catch (const Error& e) {
            partial_note = std::string("partial sweep: ") + e.what();
            break;
        }
    }
    if (rec.samples.size() < 2) {
        r.status = CheckStatus::Error;
        r.note = partial_note.empty() ? "sweep produced fewer than two values" : partial_note;
        return r;
    }
    rec.converged = true;
    rec.extrapolated = rec.samples.back().second;
    r.evidence.push_back(rec);
    r.lhs = 0.5 * rec.samples.front().second;      // half the initial value
    r.rhs = rec.samples.back().second;             // final value must sit below
    r.margin = r.lhs - r.rhs;
    put(r, "h", opt.h);
    put(r, "strictly_decreasing", strictly_decreasing ? "true" : "false");
    if (!partial_note.empty()) r.note = partial_note;
    r.status = (strictly_decreasing && r.margin >= -r.tolerance) ? CheckStatus::Pass : CheckStatus::Fail;
    return r;
}

CheckReport check_jacobian(const Domain& unbounded, int n, int samples, unsigned long long seed,
                           const Solver2DOptions& opt) {
    CheckReport r;
    r.id = CheckId::Jacobian;
    r.domain_id = unbounded.id;
    r.tolerance = 1e-12;
    const TruncatedDomain td = invading_sequence(unbounded, n, opt.fillet_r);
    const JacobianAuditResult audit = jacobian_audit(td, samples, seed);
    r.lhs = 3.0;
    r.rhs = audit.max_jacobian;
    r.margin = r.lhs - r.rhs;
    put(r, "n", static_cast<double>(n));
    put(r, "r", td.r);
    put(r, "samples", static_cast<double>(audit.samples));
    put(r, "seed", static_cast<double>(seed));
    put(r, "min_jacobian", audit.min_jacobian);
    put(r, "max_jacobian", audit.max_jacobian);
    put(r, "max_weight_ratio", audit.max_weight_ratio);
    put(r, "weight_ratio_bound", audit.weight_ratio_bound);
    r.status = (audit.jacobian_ok && audit.weight_ratio_ok) ? CheckStatus::Pass : CheckStatus::Fail;
    if (!audit.weight_ratio_ok) r.note = "weight-ratio bound violated";
    return r;
}

CheckReport check_plane_spectrum(const Solver2DOptions& opt, double tol) {
    CheckReport r;
    r.id = CheckId::PlaneSpectrum;
    r.domain_id = "disk(12)";
    r.tolerance = tol;
    const Domain dom = build_domain(Domain::disk(12.0));
    const Spectrum2D spec = neumann_spectrum(dom, opt.h, 6, opt.dense_cap);
    const double target[5] = {1.0, 1.0, 2.0, 2.0, 2.0};
    double dev = 0.0;
    for (int i = 0; i < 5; ++i) dev = std::max(dev, std::abs(spec.values[i + 1] - target[i]));
    r.lhs = tol;   // pass <=> deviation <= tol
    r.rhs = dev;
    r.margin = r.lhs - r.rhs;
    r.evidence.push_back(spec.record);
    put(r, "h", opt.h);
    put(r, "dofs", static_cast<double>(spec.dofs));
    for (int i = 0; i < 5; ++i) put(r, "value_" + std::to_string(i + 1), spec.values[i + 1]);
    r.status = (r.margin >= 0.0) ? CheckStatus::Pass : CheckStatus::Fail;
    return r;
}

CheckReport check_rectangle_equality(double a, double b, const Solver2DOptions& opt, double rel_tol) {
    CheckReport r;
    r.id = CheckId::RectangleEquality;
    r.tolerance = rel_tol;
    const Domain dom = build_domain(Domain::rectangle(a, b));
    r.domain_id = dom.id;
    const Spectrum2D odd = mu1_odd(dom, opt.h, opt.dense_cap);
    const Value1D one_d = mu1_interval(-a, a, 2048);
    const double rel = std::abs(odd.values[0] - one_d.value) / one_d.value;
    r.lhs = rel_tol;
    r.rhs = rel;
    r.margin = r.lhs - r.rhs;
    r.evidence.push_back(odd.record);
    put(r, "h", opt.h);
    put(r, "mu1_odd_2d", odd.values[0]);
    put(r, "mu1_1d", one_d.value);
    r.status = (r.margin >= 0.0) ? CheckStatus::Pass : CheckStatus::Fail;
    return r;
}

CheckReport check_t_example(const Solver2DOptions& opt, double rel_tol) {
    CheckReport r;
    r.id = CheckId::TExample;
    r.tolerance = rel_tol;
    const Domain dom = build_domain(Domain::half_strip(1.0, 0.0));
    r.domain_id = dom.id;
    const UnboundedResult res = solve_unbounded(dom, opt, true);
    const double mu = res.full->values[1];
    const double mu_odd = res.odd.values[0];
    const double dev = std::max(std::abs(mu - 2.0) / 2.0, std::abs(mu_odd - 3.0) / 3.0);
    r.lhs = rel_tol;
    r.rhs = dev;
    r.margin = r.lhs - r.rhs;
    r.evidence.push_back(res.odd.record);
    r.evidence.push_back(res.full->record);
    put(r, "h", opt.h);
    put(r, "mu1", mu);
    put(r, "mu1_odd", mu_odd);
    if (!res.odd.record.converged) {
        r.status = CheckStatus::Inconclusive;
        r.note = "truncation loop not converged";
        return r;
    }
    r.status = (r.margin >= 0.0) ? CheckStatus::Pass : CheckStatus::Fail;
    return r;
}

namespace {

CheckReport guarded(CheckId id, const std::string& domain_id, const std::function<CheckReport()>& body) {
    try {
        return body();
    } catch (const std::exception& e) {
        CheckReport r;
        r.id = id;
        r.domain_id = domain_id;
        r.status = CheckStatus::Error;
        r.note = e.what();
        return r;
    }
}

int battery_threads() {
    const char* env = std::getenv("HERMITE_GAP_THREADS");
    if (!env) return 1;
    const int v = std::atoi(env);
    return std::max(1, v);
}

}  // namespace

std::vector<CheckReport> run_battery(const BatteryOptions& bopt) {
    Solver2DOptions opt;
    opt.h = bopt.h;
    opt.trunc_tol = bopt.trunc_tol;

    std::vector<Domain> domains = load_domain_dir(bopt.domains_dir);
    for (int i = 0; i < bopt.random_polygons; ++i)
        domains.push_back(random_convex_symmetric_polygon(bopt.seed + 1000ULL * i, 8));

    std::vector<std::function<CheckReport()>> jobs;
    for (const Domain& dom : domains) {
        const Domain d = dom;  // value capture per job
        if (d.kind == DomainKind::Dumbbell) {
            jobs.push_back([d, opt] {
                return guarded(CheckId::Dumbbell, d.id, [&] {
                    return dumbbell_sweep({0.4, 0.2, 0.1, 0.05}, d.dumbbell_params.side, d.dumbbell_params.corridor_len, opt);
                });
            });
            continue;
        }
        if (d.kind == DomainKind::Strip) continue;  // handled inside check_gap consistency
        if (!d.bounded()) {
            jobs.push_back([d, opt, bopt] {
                return guarded(CheckId::Thm2, d.id, [&] { return check_thm2(d, opt, bopt.tol); });
            });
            if (d.kind == DomainKind::HalfStrip && std::abs(d.a - 1.0) < 1e-12 && std::abs(d.strip_top) < 1e-12) {
                jobs.push_back([opt] {
                    return guarded(CheckId::TExample, "half_strip(1,0)", [&] { return check_t_example(opt, 1e-2); });
                });
                jobs.push_back([d, opt, bopt] {
                    return guarded(CheckId::Gap, d.id, [&] { return check_gap(d, opt, bopt.tol); });
                });
                jobs.push_back([d, opt, bopt] {
                    return guarded(CheckId::Jacobian, d.id, [&] {
                        return check_jacobian(d, 6, bopt.jacobian_samples, bopt.seed, opt);
                    });
                });
            }
            continue;
        }
        if (d.convex) {
            jobs.push_back([d, opt, bopt] {
                return guarded(CheckId::Thm1, d.id, [&] { return check_thm1(d, opt, bopt.tol); });
            });
            jobs.push_back([d, opt, bopt] {
                return guarded(CheckId::AndrewsNi, d.id, [&] { return check_an(d, opt, bopt.tol); });
            });
            if (origin_symmetric(d))
                jobs.push_back([d, opt, bopt] {
                    return guarded(CheckId::SW, d.id, [&] { return check_sw(d, opt, bopt.tol); });
                });
            if (d.kind == DomainKind::Disk || (d.kind == DomainKind::Rectangle && std::abs(d.a - d.rect_b) < 1e-12))
                jobs.push_back([d, opt, bopt] {
                    return guarded(CheckId::Gap, d.id, [&] { return check_gap(d, opt, bopt.tol); });
                });
            if (d.kind == DomainKind::Rectangle)
                jobs.push_back([d, opt] {
                    return guarded(CheckId::RectangleEquality, d.id,
                                   [&] { return check_rectangle_equality(d.a, d.rect_b, opt, 1e-3); });
                });
        }
    }
    jobs.push_back([opt] {
        return guarded(CheckId::PlaneSpectrum, "disk(12)", [&] {
            Solver2DOptions plane = opt;
            plane.h = std::max(opt.h, 0.35);
            return check_plane_spectrum(plane, 2e-2);
        });
    });

    std::vector<CheckReport> reports(jobs.size());
    const int threads = std::min<int>(battery_threads(), static_cast<int>(jobs.size()));
    if (threads <= 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i) reports[i] = jobs[i]();
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= jobs.size()) return;
                    reports[i] = jobs[i]();
                }
            });
        for (auto& th : pool) th.join();
    }
    std::sort(reports.begin(), reports.end(), [](const CheckReport& x, const CheckReport& y) {
        if (x.id != y.id) return static_cast<int>(x.id) < static_cast<int>(y.id);
        return x.domain_id < y.domain_id;
    });
    return reports;
}

}  // namespace hermeig
