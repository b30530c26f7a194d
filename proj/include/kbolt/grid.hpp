// Phase-space discretization: periodic spatial lattice x truncated velocity
// lattice, quadrature weights, Maxwellian tables and weighted mixed norms.
#pragma once

#include <Eigen/Dense>
#include <array>
#include <limits>
#include <string>
#include <vector>

namespace kbolt {

constexpr double kInf = std::numeric_limits<double>::infinity();

enum class VQuad { Midpoint, Trapezoid };

struct GridConfig {
    int spatial_dim = 2;        // d
    int n_x = 16;               // points per spatial axis (even, >= 4)
    int n_v = 24;               // points per velocity axis (>= 8)
    double v_max = 6.0;         // velocity half-width
    double torus_period = 1.0;  // length of each torus axis
    VQuad v_quad = VQuad::Midpoint;
};

/// Discrete home of T^d x R^d. Immutable after construction.
struct PhaseGrid {
    GridConfig cfg;
    int d = 2;
    int nx_total = 0;  // n_x^d
    int nv_total = 0;  // n_v^d

    double dx = 0;   // spatial spacing
    double dv = 0;   // velocity spacing
    double w_x = 0;  // uniform spatial weight dx^d (sums to torus_period^d)

    std::vector<double> v_axis;       // 1D velocity node coordinates
    Eigen::MatrixXd v_nodes;          // nv_total x d
    Eigen::VectorXd w_v;              // velocity quadrature weights
    Eigen::VectorXd mu;               // Maxwellian at v_nodes
    Eigen::VectorXd vsq;              // |v|^2 at v_nodes
    Eigen::VectorXd vnorm;            // |v| at v_nodes
    Eigen::MatrixXd x_nodes;          // nx_total x d
    std::vector<std::array<int, 3>> x_modes;  // Fourier mode numbers per x index

    Eigen::MatrixXd phi;        // nv_total x (d+2): 1, v_1..v_d, (|v|^2-d)/sqrt(2d)
    Eigen::MatrixXd ker_basis;  // discrete-orthonormal basis of span{phi_i mu}
                                // w.r.t. <f,g> = sum w_v f g / mu

    double mu_quad_defect = 0;  // |sum w mu - 1|, recorded per resolution
    double tail_mass = 0;       // Gaussian mass outside [-v_max, v_max]^d

    // index helpers (last axis fastest, matching FFTW row-major layout)
    int x_index(const std::array<int, 3>& a) const;
    int v_index(const std::array<int, 3>& a) const;
    std::array<int, 3> v_multi(int iv) const;
    std::array<int, 3> x_multi(int ix) const;
};

/// h(x,v) sampled on a PhaseGrid; rows = spatial nodes, cols = velocity nodes.
struct DistributionField {
    const PhaseGrid* grid = nullptr;
    Eigen::MatrixXd values;

    DistributionField() = default;
    explicit DistributionField(const PhaseGrid& g)
        : grid(&g), values(Eigen::MatrixXd::Zero(g.nx_total, g.nv_total)) {}
    DistributionField(const PhaseGrid& g, Eigen::MatrixXd v) : grid(&g), values(std::move(v)) {}

    bool all_finite() const { return values.allFinite(); }
};

enum class WeightKind { Polynomial, InvMaxwellian, NuScaled };

/// Mixed-norm request: sum over derivative multi-indices of ||(d^j_l h) m||_{L^q_v L^p_x},
/// x-integral inside, v-integral outside. p, q in {1, 2, inf} (inf = max over nodes).
struct NormSpec {
    double p = 1;
    double q = 1;
    double k = 0;    // polynomial weight exponent
    int alpha = 0;   // velocity-derivative order, {0,1}
    int beta = 0;    // spatial-derivative order
    WeightKind weight = WeightKind::Polynomial;

    std::string label() const;
};

PhaseGrid build_phase_grid(const GridConfig& cfg);

/// mu(v) = (2 pi)^{-d/2} exp(-|v|^2/2) at an arbitrary point.
double maxwellian_at(const double* v, int d);

/// Maxwellian sampled on the grid's velocity nodes.
Eigen::VectorXd maxwellian(const PhaseGrid& grid);

/// Weighted mixed norm. `nu` is required for WeightKind::NuScaled.
double weighted_norm(const DistributionField& h, const NormSpec& spec,
                     const Eigen::VectorXd* nu = nullptr);

/// Velocity-profile version (field constant in x, single spatial node).
double weighted_norm_profile(const Eigen::VectorXd& h, const NormSpec& spec,
                             const PhaseGrid& grid, const Eigen::VectorXd* nu = nullptr);

}  // namespace kbolt
