// Bilinear Boltzmann collision operator Q(g,h) and collision frequency nu(v)
// under cutoff hard/Maxwellian-potential kernels B = C_Phi |v-v*|^gamma b(cos).
//
// Post-collision values are gathered by tensor-cubic interpolation of the
// ratio h/mu, with the exact Gaussian product identity mu(v')mu(v'*) =
// mu(v)mu(v*) carried analytically; this keeps the discrete kernel of the
// linearized operator exact for all collision invariants.
#pragma once

#include <Eigen/Dense>
#include <array>
#include <string>
#include <utility>

#include "kbolt/grid.hpp"

namespace kbolt {

struct KernelConfig {
    double gamma = 1.0;   // potential exponent in [0, 1]
    double c_phi = 1.0;   // kinetic factor constant
    std::string b_name = "constant";  // "constant" or "bump"
    double bump_base = 0.1;
    double bump_amp = 1.0;
    double bump_width = 0.5;
    int n_sigma = 16;     // quadrature points on S^{d-1} (even, d=2)

    double b_eval(double costh, int d) const;
    double c_b(int d) const;  // recorded bound on b
    bool b_even() const { return true; }  // both built-in angular functions are even
    void validate(int d) const;
};

struct SigmaQuadrature {
    Eigen::MatrixXd dirs;  // n x d unit vectors
    Eigen::VectorXd wts;   // sums to |S^{d-1}|
    bool antipodal_paired = false;  // dirs[s + n/2] == -dirs[s]
};

SigmaQuadrature build_sigma_quadrature(int d, int n_sigma);

/// sigma-representation of the post-collision pair.
std::pair<std::array<double, 3>, std::array<double, 3>> post_collision_velocities(
    const std::array<double, 3>& v, const std::array<double, 3>& vstar,
    const std::array<double, 3>& sigma, int d);

struct NuProfile {
    Eigen::VectorXd nu;  // nu(v) at grid nodes
    double nu0 = 0;      // fitted lower bound: nu0 (1+|v|^gamma) <= nu
    double nu1 = 0;      // fitted upper bound
};

NuProfile eval_nu(const KernelConfig& kernel, const PhaseGrid& grid);

/// nu at an arbitrary velocity (same v*-lattice / sigma quadrature).
double nu_at(const KernelConfig& kernel, const PhaseGrid& grid, const std::array<double, 3>& v);

/// Symmetrized bilinear collision operator, pointwise in x.
DistributionField eval_Q(const DistributionField& g, const DistributionField& h,
                         const KernelConfig& kernel, const PhaseGrid& grid);

/// Velocity-profile version (one spatial node).
Eigen::VectorXd eval_Q_profile(const Eigen::VectorXd& g, const Eigen::VectorXd& h,
                               const KernelConfig& kernel, const PhaseGrid& grid);

}  // namespace kbolt
