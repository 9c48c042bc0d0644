#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hermeig/domain.hpp"
#include "hermeig/eigen_core.hpp"
#include "hermeig/invading.hpp"
#include "hermeig/mesh.hpp"

namespace hermeig {

struct Solver2DOptions {
    double h = 0.1;          // target edge length (fine level = h/2)
    int k = 6;               // eigenvalues requested from full Neumann solves
    int dense_cap = 4000;
    double trunc_tol = 1e-3; // relative stop tolerance of the truncation loop
    int n_max = 14;
    double fillet_r = 0.0;   // 0 = default rule
};

struct ConvergenceRecord {
    std::string parameter;  // "h" or "n"
    std::vector<std::pair<double, double>> samples;
    double extrapolated = 0.0;
    double order = 0.0;     // measured, or 2.0 assumed on two-level records
    bool order_measured = false;
    bool converged = false;
};

struct Spectrum2D {
    std::vector<double> values;    // extrapolated, ascending
    std::vector<double> raw_fine;  // finest-level values
    double mesh_h = 0.0;           // realized fine-mesh max edge length
    int dofs = 0;
    std::optional<int> truncation_n;
    ConvergenceRecord record;
    // Trial-function upper bound audit (odd solves on truncations).
    double rayleigh_ub = 0.0;
    bool ub_checked = false;
    bool ub_ok = true;
};

struct AssembledSystem {
    DenseSymPair pair;
    Mesh mesh;
    std::vector<int> dof_of_vertex;  // -1 for eliminated axis nodes
    std::vector<int> vertex_of_dof;
};

// Weighted P1 stiffness and mass on a triangulation:
//   K_ij = integral grad(phi_i).grad(phi_j) exp(-(x^2+y^2)/2),
//   M_ij = integral phi_i phi_j exp(-(x^2+y^2)/2);
// constrain_axis eliminates the rows/columns of Axis-tagged vertices
// (essential condition on the symmetry axis for odd modes).
AssembledSystem assemble(Mesh mesh, bool constrain_axis);

struct MeshSolveResult {
    Mesh mesh;
    std::vector<double> values;
    Eigen::MatrixXd dof_vectors;
    std::vector<int> dof_of_vertex;
    int dofs = 0;

    std::vector<double> vertex_mode(int j) const;
};

// Single-mesh solve at target h (building block of the two-level operations).
MeshSolveResult solve_on_mesh(const Domain& dom, double h, bool odd, int k, int dense_cap = 4000);

// Lowest k Neumann eigenvalues of the full domain; values[0] is checked to
// vanish; two-level h-refinement with Richardson extrapolation.
Spectrum2D neumann_spectrum(const Domain& dom, double h, int k, int dense_cap = 4000);

// mu_1^odd via the half-domain reduction with the essential axis condition;
// the computed Galerkin value is an upper bound for the polygonal surrogate
// (conforming Rayleigh-Ritz), recorded as such.
Spectrum2D mu1_odd(const Domain& dom, double h, int dense_cap = 4000);

// Truncation loop of Theorem 2 Step 3 over the invading sequence; stops when
// successive values differ by less than trunc_tol relative. A loop that
// reaches n_max without converging returns record.converged = false.
struct UnboundedResult {
    Spectrum2D odd;
    std::optional<Spectrum2D> full;  // mu_1(Omega_n) when requested
};
UnboundedResult solve_unbounded(const Domain& dom, const Solver2DOptions& opt, bool want_full_mu1 = false);

// gamma_2(Omega) / integral of x^2 dgamma_2: the Rayleigh quotient of the
// odd trial function u = x, an upper bound for mu_1^odd.
double rayleigh_upper_bound(const Domain& dom);

}  // namespace hermeig
