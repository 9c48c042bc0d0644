#include "hermeig/solver2d.hpp"

#include <algorithm>
#include <cmath>

#include "hermeig/errors.hpp"

namespace hermeig {

AssembledSystem assemble(Mesh mesh, bool constrain_axis) {
    const int nv = static_cast<int>(mesh.vertices.size());
    if (nv < 3 || mesh.triangles.empty()) throw ValidationError("assemble: mesh too small");

    std::vector<char> on_axis(nv, 0);
    for (const auto& e : mesh.boundary_edges)
        if (e.tag == EdgeTag::Axis) on_axis[e.v0] = on_axis[e.v1] = 1;

    AssembledSystem sys;
    sys.dof_of_vertex.assign(nv, -1);
    for (int v = 0; v < nv; ++v) {
        if (constrain_axis && on_axis[v]) continue;
        sys.dof_of_vertex[v] = static_cast<int>(sys.vertex_of_dof.size());
        sys.vertex_of_dof.push_back(v);
    }
    const int n = static_cast<int>(sys.vertex_of_dof.size());
    if (n < 3) throw ValidationError("assemble: fewer than 3 free degrees of freedom");
    if (constrain_axis && n == nv)
        throw GeometryError("assemble: no Axis edges to constrain (domain does not meet the axis)");

    sys.pair.K = Eigen::MatrixXd::Zero(n, n);
    sys.pair.M = Eigen::MatrixXd::Zero(n, n);

    const TriangleRule& rule = triangle_rule_degree6();
    for (const auto& t : mesh.triangles) {
        const Vec2& p0 = mesh.vertices[t[0]];
        const Vec2& p1 = mesh.vertices[t[1]];
        const Vec2& p2 = mesh.vertices[t[2]];
        const double det = (p1.x - p0.x) * (p2.y - p0.y) - (p2.x - p0.x) * (p1.y - p0.y);
        const double area = 0.5 * det;  // positive by mesh orientation
        if (area <= 0.0) throw ValidationError("assemble: non-positively-oriented triangle");
        // P1 gradients: grad(lambda_i) = (b_i, c_i) / (2 area).
        const double b[3] = {p1.y - p2.y, p2.y - p0.y, p0.y - p1.y};
        const double c[3] = {p2.x - p1.x, p0.x - p2.x, p1.x - p0.x};

        double wsum = 0.0;
        double me[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
        for (int q = 0; q < 12; ++q) {
            const auto& bc = rule.bary[q];
            const double x = bc[0] * p0.x + bc[1] * p1.x + bc[2] * p2.x;
            const double y = bc[0] * p0.y + bc[1] * p1.y + bc[2] * p2.y;
            const double w = rule.weights[q] * std::exp(-0.5 * (x * x + y * y));
            wsum += w;
            for (int i = 0; i < 3; ++i)
                for (int j = i; j < 3; ++j) me[i][j] += w * bc[i] * bc[j];
        }
        const double wa = wsum * area;  // integral of the weight over T
        for (int i = 0; i < 3; ++i) {
            const int gi = sys.dof_of_vertex[t[i]];
            if (gi < 0) continue;
            for (int j = 0; j < 3; ++j) {
                const int gj = sys.dof_of_vertex[t[j]];
                if (gj < 0) continue;
                const double ke = (b[i] * b[j] + c[i] * c[j]) / (4.0 * area * area) * wa;
                const double mij = (j >= i ? me[i][j] : me[j][i]) * area;
                sys.pair.K(gi, gj) += ke;
                sys.pair.M(gi, gj) += mij;
            }
        }
    }
    sys.mesh = std::move(mesh);
    return sys;
}

std::vector<double> MeshSolveResult::vertex_mode(int j) const {
    std::vector<double> out(dof_of_vertex.size(), 0.0);
    for (std::size_t v = 0; v < dof_of_vertex.size(); ++v)
        if (dof_of_vertex[v] >= 0) out[v] = dof_vectors(dof_of_vertex[v], j);
    return out;
}

MeshSolveResult solve_on_mesh(const Domain& dom, double h, bool odd, int k, int dense_cap) {
    const Domain d = odd ? half_domain(dom) : dom;
    Mesh mesh = triangulate(d, h);
    AssembledSystem sys = assemble(std::move(mesh), odd);
    const int n = static_cast<int>(sys.vertex_of_dof.size());
    const int kk = std::min(k, n);
    EigenResult res = eigs_generalized_sym(sys.pair, kk, dense_cap);
    MeshSolveResult out;
    out.mesh = std::move(sys.mesh);
    out.values = std::move(res.values);
    out.dof_vectors = std::move(res.vectors);
    out.dof_of_vertex = std::move(sys.dof_of_vertex);
    out.dofs = n;
    return out;
}

namespace {

ConvergenceRecord two_level_record(double h_coarse, double v_coarse, double h_fine, double v_fine) {
    ConvergenceRecord rec;
    rec.parameter = "h";
    rec.samples = {{h_coarse, v_coarse}, {h_fine, v_fine}};
    rec.extrapolated = v_fine + (v_fine - v_coarse) / 3.0;
    rec.order = 2.0;
    rec.order_measured = false;
    rec.converged = true;
    return rec;
}

}  // namespace

Spectrum2D neumann_spectrum(const Domain& dom, double h, int k, int dense_cap) {
    if (k < 2) throw ValidationError("neumann_spectrum: k must be >= 2");
    const MeshSolveResult coarse = solve_on_mesh(dom, h, false, k, dense_cap);
    const MeshSolveResult fine = solve_on_mesh(dom, 0.5 * h, false, k, dense_cap);
    if (std::abs(fine.values[0]) > 1e-8)
        throw NumericalError("neumann_spectrum: zero mode missing, values[0] = " +
                             std::to_string(fine.values[0]));
    Spectrum2D out;
    out.values.resize(fine.values.size());
    out.raw_fine = fine.values;
    out.values[0] = fine.values[0];
    for (std::size_t i = 1; i < fine.values.size(); ++i)
        out.values[i] = fine.values[i] + (fine.values[i] - coarse.values[i]) / 3.0;
    out.mesh_h = fine.mesh.h;
    out.dofs = fine.dofs;
    out.record = two_level_record(coarse.mesh.h, coarse.values[1], fine.mesh.h, fine.values[1]);
    return out;
}

Spectrum2D mu1_odd(const Domain& dom, double h, int dense_cap) {
    if (!dom.bounded()) throw ValidationError("mu1_odd: unbounded domains go through solve_unbounded");
    const MeshSolveResult coarse = solve_on_mesh(dom, h, true, 1, dense_cap);
    const MeshSolveResult fine = solve_on_mesh(dom, 0.5 * h, true, 1, dense_cap);
    Spectrum2D out;
    out.raw_fine = fine.values;
    out.values = {fine.values[0] + (fine.values[0] - coarse.values[0]) / 3.0};
    out.mesh_h = fine.mesh.h;
    out.dofs = fine.dofs;
    out.record = two_level_record(coarse.mesh.h, coarse.values[0], fine.mesh.h, fine.values[0]);
    return out;
}

UnboundedResult solve_unbounded(const Domain& dom, const Solver2DOptions& opt, bool want_full_mu1) {
    if (!dom.unbounded_below) throw ValidationError("solve_unbounded: domain must be unbounded below");
    const int n_min = static_cast<int>(std::floor(-dom.upper(0.0))) + 1;

    UnboundedResult out;
    ConvergenceRecord rec;
    rec.parameter = "n";
    ConvergenceRecord rec_full = rec;
    double prev = 0.0, prev_full = 0.0;
    bool have_prev = false;
    int last_n = 0;

    for (int n = n_min + 2; n <= opt.n_max; n += 2) {
        const TruncatedDomain td = invading_sequence(dom, n, opt.fillet_r);
        const Spectrum2D odd = mu1_odd(td.dom, opt.h, opt.dense_cap);
        const double v = odd.values[0];
        rec.samples.push_back({static_cast<double>(n), v});
        last_n = n;

        double vf = 0.0;
        if (want_full_mu1) {
            const Spectrum2D full = neumann_spectrum(td.dom, opt.h, 2, opt.dense_cap);
            vf = full.values[1];
            rec_full.samples.push_back({static_cast<double>(n), vf});
        }

        // Eq.-type trial-function upper bound on the truncation.
        const double ub = rayleigh_upper_bound(td.dom);
        out.odd.rayleigh_ub = ub;
        out.odd.ub_checked = true;
        out.odd.ub_ok = out.odd.ub_ok && (v <= ub + 1e-6);

        const bool done = have_prev && std::abs(v - prev) < opt.trunc_tol * std::max(1.0, std::abs(v)) &&
                          (!want_full_mu1 || std::abs(vf - prev_full) < opt.trunc_tol * std::max(1.0, std::abs(vf)));
        prev = v;
        prev_full = vf;
        have_prev = true;
        if (done) {
            rec.converged = true;
            rec_full.converged = true;
            break;
        }
    }
    if (rec.samples.empty()) throw GeometryError("solve_unbounded: no admissible truncation level");
    rec.extrapolated = rec.samples.back().second;
    rec.order = 0.0;
    out.odd.values = {rec.samples.back().second};
    out.odd.truncation_n = last_n;
    out.odd.record = rec;
    if (want_full_mu1) {
        Spectrum2D full;
        full.values = {0.0, rec_full.samples.back().second};
        full.truncation_n = last_n;
        rec_full.extrapolated = rec_full.samples.back().second;
        full.record = rec_full;
        out.full = full;
    }
    return out;
}

double rayleigh_upper_bound(const Domain& dom) {
    const GaussianMeasure num = gaussian_measure_2d(dom);
    if (num.degenerate) throw ValidationError("rayleigh_upper_bound: degenerate domain");
    const double den = second_moment_x(dom, 10.0);
    if (!(den > 0.0)) throw ValidationError("rayleigh_upper_bound: vanishing second moment");
    return num.value / den;
}

}  // namespace hermeig
