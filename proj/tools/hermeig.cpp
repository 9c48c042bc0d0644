#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "hermeig/checks.hpp"
#include "hermeig/domain_io.hpp"
#include "hermeig/mesh.hpp"
#include "hermeig/report.hpp"
#include "hermeig/solver1d.hpp"
#include "hermeig/solver2d.hpp"

namespace {

using namespace hermeig;

ReportFormat parse_format(const std::string& s) {
    if (s == "json") return ReportFormat::Json;
    if (s == "csv") return ReportFormat::Csv;
    if (s == "text") return ReportFormat::Text;
    throw CLI::ValidationError("--format", "must be json, csv or text");
}

int write_out(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot write " << out_path << "\n";
        return 2;
    }
    out << content;
    return 0;
}

int finish(std::vector<CheckReport> reports, const std::string& format, const std::string& out_path) {
    const bool ok = all_checks_pass(reports);
    const int rc = write_out(emit_report(std::move(reports), parse_format(format)), out_path);
    if (rc != 0) return rc;
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Neumann spectra of the Gaussian-weighted (Ornstein-Uhlenbeck) operator on symmetric planar domains"};
    app.require_subcommand(1);

    std::string format = "text";
    std::string out_path;
    double h = 0.1;
    double tol = 5e-3;
    double trunc_tol = 1e-3;
    unsigned long long seed = 7;
    app.add_option("--format", format, "report format: json|csv|text")->capture_default_str();
    app.add_option("--out", out_path, "write the report to a file instead of stdout");
    app.add_option("--h", h, "target mesh edge length")->capture_default_str();
    app.add_option("--tol", tol, "check tolerance")->capture_default_str();
    app.add_option("--trunc-tol", trunc_tol, "relative stop tolerance of the truncation loop")->capture_default_str();
    app.add_option("--seed", seed, "seed for sampled audits and generated domains")->capture_default_str();

    // eig1d
    auto* eig1d = app.add_subcommand("eig1d", "1-D Hermite eigenvalues on an interval");
    double a1 = -1.0, b1 = 1.0;
    int grid_n = 1024;
    std::string bc = "neumann";
    bool inf_a = false, inf_b = false;
    eig1d->add_option("--a", a1, "left endpoint")->capture_default_str();
    eig1d->add_option("--b", b1, "right endpoint")->capture_default_str();
    eig1d->add_flag("--inf-a", inf_a, "left endpoint at -infinity");
    eig1d->add_flag("--inf-b", inf_b, "right endpoint at +infinity");
    eig1d->add_option("--bc", bc, "neumann|dirichlet")->capture_default_str();
    eig1d->add_option("--grid-n", grid_n, "grid points")->capture_default_str();

    // eig2d
    auto* eig2d = app.add_subcommand("eig2d", "2-D Neumann spectrum of a domain file");
    std::string domain_path;
    int k2 = 6;
    bool odd = false;
    eig2d->add_option("--domain", domain_path, "domain spec file (JSON)")->required();
    eig2d->add_option("--k", k2, "eigenvalue count")->capture_default_str();
    eig2d->add_flag("--odd", odd, "compute mu_1^odd via the half-domain reduction");

    // mesh export
    auto* meshcmd = app.add_subcommand("mesh", "triangulate a domain and export ASCII");
    std::string mesh_domain, mesh_out;
    bool mesh_half = false;
    meshcmd->add_option("--domain", mesh_domain, "domain spec file (JSON)")->required();
    meshcmd->add_option("--mesh-out", mesh_out, "output path (default stdout)");
    meshcmd->add_flag("--half", mesh_half, "mesh the half domain with Axis tags");

    // check <name>
    auto* check = app.add_subcommand("check", "run one inequality check on a domain");
    std::string check_name, check_domain;
    check->add_option("name", check_name, "thm1|thm2|sw|an|gap")->required();
    check->add_option("--domain", check_domain, "domain spec file (JSON)")->required();

    // sweep dumbbell
    auto* sweep = app.add_subcommand("sweep", "parameter sweeps");
    std::string sweep_name = "dumbbell";
    std::vector<double> eps_list{0.4, 0.2, 0.1, 0.05};
    double side = 1.0, corridor = 1.0;
    sweep->add_option("name", sweep_name, "dumbbell")->required();
    sweep->add_option("--eps", eps_list, "strictly decreasing corridor widths")->expected(-1);
    sweep->add_option("--side", side, "square side")->capture_default_str();
    sweep->add_option("--corridor-len", corridor, "corridor length")->capture_default_str();

    // audit jacobian
    auto* audit = app.add_subcommand("audit", "sampled audits");
    std::string audit_name = "jacobian", audit_domain;
    int audit_n = 6, audit_samples = 1000;
    audit->add_option("name", audit_name, "jacobian")->required();
    audit->add_option("--domain", audit_domain, "unbounded domain spec file")->required();
    audit->add_option("--n", audit_n, "truncation level")->capture_default_str();
    audit->add_option("--samples", audit_samples, "collar sample count")->capture_default_str();

    // battery
    auto* battery = app.add_subcommand("battery", "run every check over the built-in battery");
    std::string domains_dir = "domains";
    battery->add_option("--domains-dir", domains_dir, "directory of domain spec files")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    Solver2DOptions opt;
    opt.h = h;
    opt.trunc_tol = trunc_tol;

    try {
        if (*eig1d) {
            const ExtendedReal ea = inf_a ? ExtendedReal::neg_inf() : ExtendedReal(a1);
            const ExtendedReal eb = inf_b ? ExtendedReal::pos_inf() : ExtendedReal(b1);
            const bool neumann = (bc == "neumann");
            const Value1D v = neumann ? mu1_interval(ea, eb, grid_n) : lambda1_interval(ea, eb, grid_n);
            std::ostringstream os;
            os << "a,b,bc,grid_n,value,extrapolated,order,order_trusted\n";
            os << ea.str() << "," << eb.str() << "," << bc << "," << grid_n << ","
               << format_number(v.raw_fine) << "," << format_number(v.value) << ","
               << format_number(v.measured_order) << "," << (v.order_trusted ? "true" : "false") << "\n";
            return write_out(os.str(), out_path);
        }
        if (*eig2d) {
            const Domain dom = load_domain_file(domain_path);
            std::ostringstream os;
            if (odd) {
                if (dom.bounded()) {
                    const Spectrum2D s = mu1_odd(dom, opt.h, opt.dense_cap);
                    os << "domain,mu1_odd,h,dofs\n"
                       << dom.id << "," << format_number(s.values[0]) << "," << format_number(s.mesh_h)
                       << "," << s.dofs << "\n";
                } else {
                    const UnboundedResult r = solve_unbounded(dom, opt, false);
                    os << "domain,mu1_odd,truncation_n,converged\n"
                       << dom.id << "," << format_number(r.odd.values[0]) << "," << *r.odd.truncation_n
                       << "," << (r.odd.record.converged ? "true" : "false") << "\n";
                }
            } else {
                const Spectrum2D s = neumann_spectrum(dom, opt.h, k2, opt.dense_cap);
                os << "domain,index,value\n";
                for (std::size_t i = 0; i < s.values.size(); ++i)
                    os << dom.id << "," << i << "," << format_number(s.values[i]) << "\n";
            }
            return write_out(os.str(), out_path);
        }
        if (*meshcmd) {
            Domain dom = load_domain_file(mesh_domain);
            if (mesh_half) dom = half_domain(dom);
            const Mesh mesh = triangulate(dom, h);
            return write_out(mesh_to_ascii(mesh), mesh_out.empty() ? out_path : mesh_out);
        }
        if (*check) {
            const Domain dom = load_domain_file(check_domain);
            CheckReport r;
            if (check_name == "thm1") r = check_thm1(dom, opt, tol);
            else if (check_name == "thm2") r = check_thm2(dom, opt, tol);
            else if (check_name == "sw") r = check_sw(dom, opt, tol);
            else if (check_name == "an") r = check_an(dom, opt, tol);
            else if (check_name == "gap") r = check_gap(dom, opt, tol);
            else {
                std::cerr << "unknown check: " << check_name << "\n";
                return 2;
            }
            return finish({r}, format, out_path);
        }
        if (*sweep) {
            if (sweep_name != "dumbbell") {
                std::cerr << "unknown sweep: " << sweep_name << "\n";
                return 2;
            }
            return finish({dumbbell_sweep(eps_list, side, corridor, opt)}, format, out_path);
        }
        if (*audit) {
            if (audit_name != "jacobian") {
                std::cerr << "unknown audit: " << audit_name << "\n";
                return 2;
            }
            const Domain dom = load_domain_file(audit_domain);
            return finish({check_jacobian(dom, audit_n, audit_samples, seed, opt)}, format, out_path);
        }
        if (*battery) {
            BatteryOptions bopt;
            bopt.domains_dir = domains_dir;
            bopt.seed = seed;
            bopt.h = (h == 0.1) ? 0.15 : h;  // battery default favors runtime
            bopt.tol = tol;
            bopt.trunc_tol = trunc_tol;
            return finish(run_battery(bopt), format, out_path);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
