// Linearized collision operator L = 2Q(mu,.) as a velocity-space matrix, the
// A/B mollified splitting, kernel projectors, spectral diagnostics, and the
// weight thresholds k*_q, phi_q from the polynomial-weight theory.
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "kbolt/collision.hpp"
#include "kbolt/grid.hpp"

namespace kbolt {

enum class OpKind { L, ADelta, B2Delta, NuMult };

/// Dense matrix acting on velocity profiles, identical at every spatial node.
/// Stored unscaled; the physical operator carries an extra 1/eps^2.
struct LinearOperator {
    OpKind kind = OpKind::L;
    Eigen::MatrixXd matrix;
    double delta = 0;            // splitting parameter (A/B2 kinds)
    int epsilon_scaling = -2;
};

/// Smooth truncation Theta_delta(v, v*, sigma): equal to 1 on
///   {|v| <= 1/d, 2d <= |v-v*| <= 1/d, |cos| <= 1-2d}
/// and supported in
///   {|v| <= 2/d, d <= |v-v*| <= 2/d, |cos| <= 1-d}.
/// Built as a product of three C-infinity transitions S(t) = e^{-1/t} /
/// (e^{-1/t} + e^{-1/(1-t)}).
struct Mollifier {
    double delta = 0.25;
    double theta(double vnorm, double relnorm, double costh) const;
    static double transition(double t);
};

Mollifier build_mollifier(double delta);

LinearOperator assemble_L(const KernelConfig& kernel, const PhaseGrid& grid);

struct SplitOperators {
    LinearOperator A;    // mollified compact part, rows supported in |v| <= 2/delta
    LinearOperator B2;   // complement; B = B2 - nu - eps v.grad_x
    NuProfile nu;
    double delta = 0;
    bool support_exceeds_grid = false;  // 2/delta beyond the lattice: claim vacuous
    double a_norm_l1_linf = 0;          // ||A||_{L1_v -> Linf_v} (max |kernel|)
    double a_norm_linf = 0;             // max row sum
};

SplitOperators split_operators(const KernelConfig& kernel, const PhaseGrid& grid, double delta);

/// Orthogonal projection onto Ker(L) = span{phi_i mu} in L^2_v(mu^{-1/2}).
Eigen::VectorXd project_piL(const Eigen::VectorXd& h, const PhaseGrid& grid);

/// Projection onto Ker(G_eps): pi_L applied to the spatial mean, constant in x.
DistributionField project_PiG(const DistributionField& h);

struct SpectralReport {
    int kernel_dim = 0;
    double lambda_0 = 0;               // spectral gap
    double kernel_basis_error = 0;     // principal angle: right-nullspace vs span{phi_i mu}
    Eigen::VectorXd eigenvalues;       // symmetrized spectrum, ascending
    Eigen::VectorXd smallest_singvals; // few smallest singular values
    double plateau_lo = 0, plateau_hi = 0;  // tolerance plateau supporting kernel_dim
    bool nonkernel_all_negative = false;
    double sym_defect = 0;             // entrywise asymmetry after conjugation
    double op_norm = 0;
};

/// Eigen-decomposition of the mu^{-1/2}-symmetrized matrix plus kernel
/// diagnostics. Throws if no stable dimension-(d+2) tolerance plateau exists.
SpectralReport spectral_gap(const LinearOperator& L, const PhaseGrid& grid);

/// Weight threshold k*_q = (3+sqrt(49-48/q))/2 + gamma(1-1/q).
double k_star(double q, double gamma);

/// phi_q(k) = (4/(k+2))^{1/q} (4/(k-1))^{1-1/q}, the delta->0 limit of the
/// splitting constant Lambda_{k,q}(delta).
double phi_q(double k, double q);

struct DissipativityOptions {
    double k = 4;
    double q = 1;
    double p = 1;
    double epsilon = 1.0;
    int n_samples = 20;
    unsigned seed = 1;
    double window = 0.5;  // measurement window in units of eps^2
    int n_steps = 8;
    bool include_tail_profiles = true;
};

struct DissipativityReport {
    double worst_rate = 0;  // min over samples/records of -eps^2 d/dt log ||h||
    double best_rate = 0;
    bool guaranteed = false;  // k > k_star(q, gamma)
    std::vector<double> sample_rates;
};

/// Measures the realized decay rate of ||h|| along d_t h = B^delta_eps h
/// (B2 - nu - transport) on random + Gaussian-tail sample fields.
/// Throws if a non-dissipative sample is found inside the guaranteed regime.
DissipativityReport measure_dissipativity(const SplitOperators& B_parts, const PhaseGrid& grid,
                                          const KernelConfig& kernel,
                                          const DissipativityOptions& opts);

}  // namespace kbolt
