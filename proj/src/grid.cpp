#include "kbolt/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kbolt/fourier.hpp"

namespace kbolt {

namespace {

int ipow(int b, int e) {
    int r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

}  // namespace

int PhaseGrid::x_index(const std::array<int, 3>& a) const {
    int ix = 0;
    for (int ax = 0; ax < d; ++ax) ix = ix * cfg.n_x + a[ax];
    return ix;
}

int PhaseGrid::v_index(const std::array<int, 3>& a) const {
    int iv = 0;
    for (int ax = 0; ax < d; ++ax) iv = iv * cfg.n_v + a[ax];
    return iv;
}

std::array<int, 3> PhaseGrid::v_multi(int iv) const {
    std::array<int, 3> a{0, 0, 0};
    for (int ax = d - 1; ax >= 0; --ax) {
        a[ax] = iv % cfg.n_v;
        iv /= cfg.n_v;
    }
    return a;
}

std::array<int, 3> PhaseGrid::x_multi(int ix) const {
    std::array<int, 3> a{0, 0, 0};
    for (int ax = d - 1; ax >= 0; --ax) {
        a[ax] = ix % cfg.n_x;
        ix /= cfg.n_x;
    }
    return a;
}

double maxwellian_at(const double* v, int d) {
    double s = 0;
    for (int a = 0; a < d; ++a) s += v[a] * v[a];
    return std::pow(2.0 * std::numbers::pi, -0.5 * d) * std::exp(-0.5 * s);
}

PhaseGrid build_phase_grid(const GridConfig& cfg) {
    if (cfg.spatial_dim < 1 || cfg.spatial_dim > 3)
        throw std::invalid_argument("build_phase_grid: spatial_dim must be 1, 2 or 3");
    if (cfg.n_x < 4 || cfg.n_x % 2 != 0)
        throw std::invalid_argument("build_phase_grid: n_x must be even and >= 4 (got " +
                                    std::to_string(cfg.n_x) + ")");
    if (cfg.n_v < 8)
        throw std::invalid_argument("build_phase_grid: n_v must be >= 8");
    if (cfg.torus_period <= 0) throw std::invalid_argument("build_phase_grid: torus_period <= 0");

    const int d = cfg.spatial_dim;
    // Gaussian mass outside the box [-v_max, v_max]^d
    const double inside_axis = std::erf(cfg.v_max / std::numbers::sqrt2);
    const double tail = 1.0 - std::pow(inside_axis, d);
    if (tail > 1e-4)
        throw std::invalid_argument("build_phase_grid: v_max too small, Gaussian tail mass " +
                                    std::to_string(tail) + " > 1e-4");

    PhaseGrid g;
    g.cfg = cfg;
    g.d = d;
    g.nx_total = ipow(cfg.n_x, d);
    g.nv_total = ipow(cfg.n_v, d);
    g.dx = cfg.torus_period / cfg.n_x;
    g.w_x = std::pow(g.dx, d);
    g.tail_mass = tail;

    // velocity lattice: midpoint = cell centers, trapezoid = endpoints included
    g.v_axis.resize(cfg.n_v);
    std::vector<double> w1(cfg.n_v);
    if (cfg.v_quad == VQuad::Midpoint) {
        g.dv = 2.0 * cfg.v_max / cfg.n_v;
        for (int i = 0; i < cfg.n_v; ++i) {
            g.v_axis[i] = -cfg.v_max + (i + 0.5) * g.dv;
            w1[i] = g.dv;
        }
    } else {
        g.dv = 2.0 * cfg.v_max / (cfg.n_v - 1);
        for (int i = 0; i < cfg.n_v; ++i) {
            g.v_axis[i] = -cfg.v_max + i * g.dv;
            w1[i] = (i == 0 || i == cfg.n_v - 1) ? 0.5 * g.dv : g.dv;
        }
    }

    g.v_nodes.resize(g.nv_total, d);
    g.w_v.resize(g.nv_total);
    g.mu.resize(g.nv_total);
    g.vsq.resize(g.nv_total);
    g.vnorm.resize(g.nv_total);
    for (int iv = 0; iv < g.nv_total; ++iv) {
        auto a = g.v_multi(iv);
        double w = 1, s = 0;
        for (int ax = 0; ax < d; ++ax) {
            double c = g.v_axis[a[ax]];
            g.v_nodes(iv, ax) = c;
            w *= w1[a[ax]];
            s += c * c;
        }
        g.w_v[iv] = w;
        g.vsq[iv] = s;
        g.vnorm[iv] = std::sqrt(s);
        g.mu[iv] = maxwellian_at(g.v_nodes.row(iv).data(), d);
    }
    // row(iv).data() is only contiguous for row-major; recompute safely
    for (int iv = 0; iv < g.nv_total; ++iv) {
        double vv[3] = {0, 0, 0};
        for (int ax = 0; ax < d; ++ax) vv[ax] = g.v_nodes(iv, ax);
        g.mu[iv] = maxwellian_at(vv, d);
    }
    g.mu_quad_defect = std::abs((g.w_v.array() * g.mu.array()).sum() - 1.0);

    g.x_nodes.resize(g.nx_total, d);
    g.x_modes.resize(g.nx_total);
    for (int ix = 0; ix < g.nx_total; ++ix) {
        auto a = g.x_multi(ix);
        for (int ax = 0; ax < d; ++ax) {
            g.x_nodes(ix, ax) = a[ax] * g.dx;
            g.x_modes[ix][ax] = a[ax] <= cfg.n_x / 2 ? a[ax] : a[ax] - cfg.n_x;
        }
    }

    // collision-invariant basis 1, v_1..v_d, (|v|^2-d)/sqrt(2d)
    g.phi.resize(g.nv_total, d + 2);
    g.phi.col(0).setOnes();
    for (int ax = 0; ax < d; ++ax) g.phi.col(1 + ax) = g.v_nodes.col(ax);
    g.phi.col(d + 1) = (g.vsq.array() - d) / std::sqrt(2.0 * d);

    // Gram-orthonormalize {phi_i mu} in <f,g> = sum w f g / mu so the discrete
    // projector is exactly idempotent.
    Eigen::MatrixXd V(g.nv_total, d + 2);
    for (int i = 0; i < d + 2; ++i) V.col(i) = g.phi.col(i).array() * g.mu.array();
    Eigen::VectorXd gw = g.w_v.array() / g.mu.array();
    Eigen::MatrixXd gram = V.transpose() * gw.asDiagonal() * V;
    Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("build_phase_grid: invariant Gram matrix not SPD");
    // B = V * R^{-1} with gram = R^T R  =>  B^T G B = I
    g.ker_basis = llt.matrixU().transpose().triangularView<Eigen::Lower>().solve(V.transpose()).transpose();
    return g;
}

Eigen::VectorXd maxwellian(const PhaseGrid& grid) { return grid.mu; }

std::string NormSpec::label() const {
    auto leb = [](double e) { return e == kInf ? std::string("inf") : std::to_string(int(e)); };
    std::string w = weight == WeightKind::Polynomial     ? "poly"
                    : weight == WeightKind::InvMaxwellian ? "invmax"
                                                          : "nu";
    return "Lq" + leb(q) + "Lp" + leb(p) + "_k" + std::to_string(k).substr(0, 4) + "_a" +
           std::to_string(alpha) + "b" + std::to_string(beta) + "_" + w;
}

namespace {

void check_spec(const NormSpec& s) {
    auto ok = [](double e) { return e == 1 || e == 2 || e == kInf; };
    if (!ok(s.p) || !ok(s.q))
        throw std::invalid_argument("weighted_norm: p, q must be in {1, 2, inf}");
    if (s.alpha > s.beta) throw std::invalid_argument("weighted_norm: alpha > beta");
    if (s.alpha < 0 || s.alpha > 1) throw std::invalid_argument("weighted_norm: alpha must be 0 or 1");
    if (s.k < 0) throw std::invalid_argument("weighted_norm: k < 0");
}

Eigen::VectorXd norm_weight(const NormSpec& s, const PhaseGrid& g, const Eigen::VectorXd* nu) {
    Eigen::ArrayXd m = (1.0 + g.vsq.array()).pow(0.5 * s.k);
    if (s.weight == WeightKind::InvMaxwellian) m *= g.mu.array().sqrt().inverse();
    if (s.weight == WeightKind::NuScaled) {
        if (!nu) throw std::invalid_argument("weighted_norm: NuScaled weight needs a nu profile");
        double e = s.q == kInf ? 0.0 : 1.0 / s.q;
        m *= nu->array().pow(e);
    }
    return m.matrix();
}

// d/dv along `axis`: centered second order, one-sided second order at the ends.
Eigen::MatrixXd v_derivative(const Eigen::MatrixXd& f, const PhaseGrid& g, int axis) {
    const int n = g.cfg.n_v;
    Eigen::MatrixXd out(f.rows(), f.cols());
    const double idv = 1.0 / g.dv;
    // stride pattern: iv varies along axis with step = n^(d-1-axis)
    int step = 1;
    for (int ax = g.d - 1; ax > axis; --ax) step *= n;
    for (int iv = 0; iv < g.nv_total; ++iv) {
        auto a = g.v_multi(iv);
        int i = a[axis];
        if (i == 0)
            out.col(iv) = (-3.0 * f.col(iv) + 4.0 * f.col(iv + step) - f.col(iv + 2 * step)) * (0.5 * idv);
        else if (i == n - 1)
            out.col(iv) = (3.0 * f.col(iv) - 4.0 * f.col(iv - step) + f.col(iv - 2 * step)) * (0.5 * idv);
        else
            out.col(iv) = (f.col(iv + step) - f.col(iv - step)) * (0.5 * idv);
    }
    return out;
}

// Lq_v Lp_x of a derivative block against weight m.
double mixed_norm(const Eigen::MatrixXd& f, const PhaseGrid& g, const NormSpec& s,
                  const Eigen::VectorXd& m) {
    Eigen::VectorXd inner(g.nv_total);
    for (int iv = 0; iv < g.nv_total; ++iv) {
        const auto col = f.col(iv);
        if (s.p == 1)
            inner[iv] = g.w_x * col.array().abs().sum();
        else if (s.p == 2)
            inner[iv] = std::sqrt(g.w_x * col.array().square().sum());
        else
            inner[iv] = col.array().abs().maxCoeff();
    }
    inner.array() *= m.array();
    if (s.q == 1) return (g.w_v.array() * inner.array()).sum();
    if (s.q == 2) return std::sqrt((g.w_v.array() * inner.array().square()).sum());
    return inner.array().maxCoeff();
}

// enumerate spatial multi-indices with |l| <= order
void enumerate_multi(int d, int order, std::vector<std::array<int, 3>>& out) {
    out.clear();
    std::array<int, 3> l{0, 0, 0};
    for (int l0 = 0; l0 <= order; ++l0)
        for (int l1 = 0; l1 <= (d > 1 ? order - l0 : 0); ++l1)
            for (int l2 = 0; l2 <= (d > 2 ? order - l0 - l1 : 0); ++l2) {
                l = {l0, l1, l2};
                out.push_back(l);
            }
}

}  // namespace

double weighted_norm(const DistributionField& h, const NormSpec& spec, const Eigen::VectorXd* nu) {
    check_spec(spec);
    const PhaseGrid& g = *h.grid;
    Eigen::VectorXd m = norm_weight(spec, g, nu);

    std::vector<std::array<int, 3>> lset;
    enumerate_multi(g.d, spec.beta, lset);
    const int maxo = std::max(spec.alpha, spec.beta);

    SpectralX fx(g);
    double total = 0;
    for (const auto& l : lset) {
        int labs = l[0] + l[1] + l[2];
        if (labs > spec.beta) continue;
        for (int ja = 0; ja <= spec.alpha; ++ja) {
            // velocity multi-indices: alpha <= 1 so either none or a single axis
            int nj = ja == 0 ? 1 : g.d;
            for (int jaxis = 0; jaxis < nj; ++jaxis) {
                if (ja + labs > maxo) continue;
                Eigen::MatrixXd block = h.values;
                if (labs > 0) block = fx.x_derivative(block, l);
                if (ja == 1) block = v_derivative(block, g, jaxis);
                total += mixed_norm(block, g, spec, m);
            }
        }
    }
    return total;
}

double weighted_norm_profile(const Eigen::VectorXd& h, const NormSpec& spec, const PhaseGrid& grid,
                             const Eigen::VectorXd* nu) {
    check_spec(spec);
    if (spec.beta > 0 && spec.alpha > 0)
        throw std::invalid_argument("weighted_norm_profile: derivatives need a full field");
    Eigen::VectorXd m = norm_weight(spec, grid, nu);
    // x-constant profile on the unit cell: Lp_x factor is torus_period^{d/p}
    double xfac = spec.p == kInf ? 1.0 : std::pow(grid.cfg.torus_period, grid.d / spec.p);
    Eigen::ArrayXd inner = h.array().abs() * m.array() * xfac;
    if (spec.q == 1) return (grid.w_v.array() * inner).sum();
    if (spec.q == 2) return std::sqrt((grid.w_v.array() * inner.square()).sum());
    return inner.maxCoeff();
}

}  // namespace kbolt
