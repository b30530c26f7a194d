#include "kbolt/collision.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "collision_detail.hpp"

namespace kbolt {

namespace {

double sphere_area(int d) {
    // |S^{d-1}|
    if (d == 1) return 2.0;
    if (d == 2) return 2.0 * std::numbers::pi;
    return 4.0 * std::numbers::pi;
}

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double dp = n * (t * p1 - p0) / (t * t - 1.0);
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
}

}  // namespace

void KernelConfig::validate(int d) const {
    if (gamma < 0 || gamma > 1)
        throw std::invalid_argument("KernelConfig: gamma must be in [0,1] (hard/Maxwellian potentials)");
    if (c_phi <= 0) throw std::invalid_argument("KernelConfig: c_phi must be > 0");
    if (b_name != "constant" && b_name != "bump")
        throw std::invalid_argument("KernelConfig: unknown angular function '" + b_name + "'");
    if (n_sigma < 4) throw std::invalid_argument("KernelConfig: n_sigma too small");
    if (d == 2 && n_sigma % 2 != 0)
        throw std::invalid_argument("KernelConfig: n_sigma must be even for d=2");
}

double KernelConfig::b_eval(double costh, int d) const {
    const double norm = 1.0 / sphere_area(d);
    if (b_name == "constant") return norm;
    return norm * (bump_base + bump_amp * std::exp(-(costh * costh) / (bump_width * bump_width)));
}

double KernelConfig::c_b(int d) const {
    const double norm = 1.0 / sphere_area(d);
    if (b_name == "constant") return norm;
    return norm * (bump_base + bump_amp);  // max of the even bump is at z = 0
}

SigmaQuadrature build_sigma_quadrature(int d, int n_sigma) {
    SigmaQuadrature q;
    if (d == 2) {
        q.dirs.resize(n_sigma, 2);
        q.wts = Eigen::VectorXd::Constant(n_sigma, 2.0 * std::numbers::pi / n_sigma);
        for (int s = 0; s < n_sigma; ++s) {
            double phi = 2.0 * std::numbers::pi * (s + 0.5) / n_sigma;
            q.dirs(s, 0) = std::cos(phi);
            q.dirs(s, 1) = std::sin(phi);
        }
        // midpoint angles with even count come in antipodal pairs (s, s + n/2)
        q.antipodal_paired = n_sigma % 2 == 0;
        if (q.antipodal_paired) {
            // enforce exact antipodes against trig roundoff
            for (int s = 0; s < n_sigma / 2; ++s) q.dirs.row(s + n_sigma / 2) = -q.dirs.row(s);
        }
    } else if (d == 3) {
        int np = std::max(3, int(std::lround(std::sqrt(n_sigma / 2.0))));
        int na = 2 * np;
        std::vector<double> gx, gw;
        gauss_legendre(np, gx, gw);
        q.dirs.resize(np * na, 3);
        q.wts.resize(np * na);
        int r = 0;
        for (int ip = 0; ip < np; ++ip) {
            double ct = gx[ip], st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
            for (int ia = 0; ia < na; ++ia) {
                double phi = 2.0 * std::numbers::pi * (ia + 0.5) / na;
                q.dirs(r, 0) = st * std::cos(phi);
                q.dirs(r, 1) = st * std::sin(phi);
                q.dirs(r, 2) = ct;
                q.wts[r] = gw[ip] * 2.0 * std::numbers::pi / na;
                ++r;
            }
        }
        q.antipodal_paired = false;
    } else {
        throw std::invalid_argument("build_sigma_quadrature: d must be 2 or 3");
    }
    return q;
}

std::pair<std::array<double, 3>, std::array<double, 3>> post_collision_velocities(
    const std::array<double, 3>& v, const std::array<double, 3>& vstar,
    const std::array<double, 3>& sigma, int d) {
    double r2 = 0;
    for (int a = 0; a < d; ++a) {
        double rel = v[a] - vstar[a];
        r2 += rel * rel;
    }
    double r = std::sqrt(r2);
    std::array<double, 3> vp{0, 0, 0}, vps{0, 0, 0};
    for (int a = 0; a < d; ++a) {
        double mid = 0.5 * (v[a] + vstar[a]);
        vp[a] = mid + 0.5 * r * sigma[a];
        vps[a] = mid - 0.5 * r * sigma[a];
    }
    return {vp, vps};
}

double nu_at(const KernelConfig& kernel, const PhaseGrid& grid, const std::array<double, 3>& v) {
    kernel.validate(grid.d);
    SigmaQuadrature sq = build_sigma_quadrature(grid.d, kernel.n_sigma);
    double acc = 0;
    for (int j = 0; j < grid.nv_total; ++j) {
        double r2 = 0, rel[3] = {0, 0, 0};
        for (int a = 0; a < grid.d; ++a) {
            rel[a] = v[a] - grid.v_nodes(j, a);
            r2 += rel[a] * rel[a];
        }
        double rnorm = std::sqrt(r2);
        double base = grid.w_v[j] * kernel.c_phi *
                      (kernel.gamma == 0.0 ? 1.0 : std::pow(rnorm, kernel.gamma)) * grid.mu[j];
        for (int s = 0; s < sq.wts.size(); ++s) {
            double costh;
            if (rnorm > 0) {
                double dot = 0;
                for (int a = 0; a < grid.d; ++a) dot += rel[a] * sq.dirs(s, a);
                costh = dot / rnorm;
            } else {
                costh = sq.dirs(s, 0);
            }
            acc += base * sq.wts[s] * kernel.b_eval(costh, grid.d);
        }
    }
    return acc;
}

NuProfile eval_nu(const KernelConfig& kernel, const PhaseGrid& grid) {
    kernel.validate(grid.d);
    SigmaQuadrature sq = build_sigma_quadrature(grid.d, kernel.n_sigma);
    NuProfile out;
    out.nu.resize(grid.nv_total);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < grid.nv_total; ++i) {
        double acc = 0;
        detail::for_each_term(grid, kernel, sq, i,
                              [&](int j, double c, double, double, const detail::Stencil&,
                                  const detail::Stencil&) { acc += c * grid.mu[j]; });
        out.nu[i] = acc;
    }
    Eigen::ArrayXd denom = 1.0 + grid.vnorm.array().pow(kernel.gamma);
    out.nu0 = (out.nu.array() / denom).minCoeff();
    out.nu1 = (out.nu.array() / denom).maxCoeff();
    return out;
}

namespace {

// Core gather evaluation; G and H are the ratio fields h/mu (X rows, V cols).
// Writes 1/2 * integral B mu mu* [H'G'* + H'*G' - H G* - H* G] into out.
void q_gather(const Eigen::MatrixXd& G, const Eigen::MatrixXd& H, const KernelConfig& kernel,
              const PhaseGrid& grid, Eigen::MatrixXd& out) {
    const int X = int(G.rows());
    const bool same = (&G == &H);
    SigmaQuadrature sq = build_sigma_quadrature(grid.d, kernel.n_sigma);
#pragma omp parallel
    {
        std::vector<double> hp(X), gp(X), hps(X), gps(X);
#pragma omp for schedule(dynamic, 8)
        for (int i = 0; i < grid.nv_total; ++i) {
            double* acc = out.col(i).data();
            const double* Hi = H.col(i).data();
            const double* Gi = G.col(i).data();
            const double mu_i = grid.mu[i];
            detail::for_each_term(
                grid, kernel, sq, i,
                [&](int j, double c, double, double, const detail::Stencil& sp,
                    const detail::Stencil& sps) {
                    const double m = 0.5 * c * mu_i * grid.mu[j];
                    if (m == 0.0) return;
                    // interpolate H at v' and G at v'_* (and symmetric partner)
                    for (int x = 0; x < X; ++x) hp[x] = 0.0;
                    for (int a = 0; a < sp.n; ++a) {
                        const double w = sp.wt[a];
                        const double* col = H.col(sp.idx[a]).data();
                        for (int x = 0; x < X; ++x) hp[x] += w * col[x];
                    }
                    for (int x = 0; x < X; ++x) gps[x] = 0.0;
                    for (int a = 0; a < sps.n; ++a) {
                        const double w = sps.wt[a];
                        const double* col = G.col(sps.idx[a]).data();
                        for (int x = 0; x < X; ++x) gps[x] += w * col[x];
                    }
                    const double* Hj = H.col(j).data();
                    const double* Gj = G.col(j).data();
                    if (same) {
                        for (int x = 0; x < X; ++x)
                            acc[x] += m * 2.0 * (hp[x] * gps[x] - Hi[x] * Gj[x]);
                    } else {
                        for (int x = 0; x < X; ++x) gp[x] = 0.0;
                        for (int a = 0; a < sp.n; ++a) {
                            const double w = sp.wt[a];
                            const double* col = G.col(sp.idx[a]).data();
                            for (int x = 0; x < X; ++x) gp[x] += w * col[x];
                        }
                        for (int x = 0; x < X; ++x) hps[x] = 0.0;
                        for (int a = 0; a < sps.n; ++a) {
                            const double w = sps.wt[a];
                            const double* col = H.col(sps.idx[a]).data();
                            for (int x = 0; x < X; ++x) hps[x] += w * col[x];
                        }
                        for (int x = 0; x < X; ++x)
                            acc[x] += m * (hp[x] * gps[x] + hps[x] * gp[x] - Hi[x] * Gj[x] -
                                           Hj[x] * Gi[x]);
                    }
                });
        }
    }
}

}  // namespace

DistributionField eval_Q(const DistributionField& g, const DistributionField& h,
                         const KernelConfig& kernel, const PhaseGrid& grid) {
    kernel.validate(grid.d);
    if (g.grid != h.grid || &grid != g.grid)
        throw std::invalid_argument("eval_Q: fields live on different grids");
    DistributionField out(grid);
    Eigen::MatrixXd Gr = g.values, Hr;
    for (int iv = 0; iv < grid.nv_total; ++iv) Gr.col(iv) /= grid.mu[iv];
    const bool same = (&g == &h) || (g.values.data() == h.values.data());
    if (!same) {
        Hr = h.values;
        for (int iv = 0; iv < grid.nv_total; ++iv) Hr.col(iv) /= grid.mu[iv];
    }
    q_gather(Gr, same ? Gr : Hr, kernel, grid, out.values);
    return out;
}

Eigen::VectorXd eval_Q_profile(const Eigen::VectorXd& g, const Eigen::VectorXd& h,
                               const KernelConfig& kernel, const PhaseGrid& grid) {
    kernel.validate(grid.d);
    Eigen::MatrixXd Gr = g.transpose(), Hr;
    for (int iv = 0; iv < grid.nv_total; ++iv) Gr(0, iv) /= grid.mu[iv];
    const bool same = (g.data() == h.data());
    if (!same) {
        Hr = h.transpose();
        for (int iv = 0; iv < grid.nv_total; ++iv) Hr(0, iv) /= grid.mu[iv];
    }
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(1, grid.nv_total);
    q_gather(Gr, same ? Gr : Hr, kernel, grid, out);
    return out.transpose();
}

}  // namespace kbolt
