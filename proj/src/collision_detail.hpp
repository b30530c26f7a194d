// Shared geometry/stencil machinery for collision quadrature loops. Internal.
#pragma once

#include <cmath>

#include "kbolt/collision.hpp"
#include "kbolt/grid.hpp"

namespace kbolt::detail {

// Interpolation stencil for one off-lattice velocity point. Tensor-product
// 4-point Lagrange cubic per axis; linear on the outermost cells; empty
// outside the node hull. Per-axis weights sum to 1, so constants are
// reproduced exactly wherever the stencil is nonempty.
struct Stencil {
    int n = 0;
    int idx[64];
    double wt[64];
};

struct AxisStencil {
    int base = 0;
    int len = 0;  // 0 (outside), 2 (linear), or 4 (cubic)
    double w[4];
};

inline bool axis_stencil(double coord, double v0, double inv_dv, int n_v, AxisStencil& out) {
    double t = (coord - v0) * inv_dv;
    int i1 = int(std::floor(t));
    if (i1 < 0 || i1 > n_v - 2) {
        out.len = 0;
        return false;
    }
    double f = t - i1;
    if (i1 >= 1 && i1 <= n_v - 3) {
        out.base = i1 - 1;
        out.len = 4;
        out.w[0] = -f * (f - 1.0) * (f - 2.0) / 6.0;
        out.w[1] = (f + 1.0) * (f - 1.0) * (f - 2.0) / 2.0;
        out.w[2] = -(f + 1.0) * f * (f - 2.0) / 2.0;
        out.w[3] = (f + 1.0) * f * (f - 1.0) / 6.0;
    } else {
        out.base = i1;
        out.len = 2;
        out.w[0] = 1.0 - f;
        out.w[1] = f;
    }
    return true;
}

inline void make_stencil(const double* p, const PhaseGrid& g, Stencil& s) {
    const double v0 = g.v_axis[0];
    const double inv_dv = 1.0 / g.dv;
    const int n = g.cfg.n_v;
    AxisStencil ax[3];
    for (int a = 0; a < g.d; ++a) {
        if (!axis_stencil(p[a], v0, inv_dv, n, ax[a])) {
            s.n = 0;
            return;
        }
    }
    int cnt = 0;
    if (g.d == 2) {
        for (int a = 0; a < ax[0].len; ++a) {
            const int row = (ax[0].base + a) * n;
            const double wa = ax[0].w[a];
            for (int b = 0; b < ax[1].len; ++b) {
                s.idx[cnt] = row + ax[1].base + b;
                s.wt[cnt] = wa * ax[1].w[b];
                ++cnt;
            }
        }
    } else if (g.d == 3) {
        for (int a = 0; a < ax[0].len; ++a)
            for (int b = 0; b < ax[1].len; ++b) {
                const int row = ((ax[0].base + a) * n + ax[1].base + b) * n;
                const double wab = ax[0].w[a] * ax[1].w[b];
                for (int c = 0; c < ax[2].len; ++c) {
                    s.idx[cnt] = row + ax[2].base + c;
                    s.wt[cnt] = wab * ax[2].w[c];
                    ++cnt;
                }
            }
    } else {  // d == 1
        for (int a = 0; a < ax[0].len; ++a) {
            s.idx[cnt] = ax[0].base + a;
            s.wt[cnt] = ax[0].w[a];
            ++cnt;
        }
    }
    s.n = cnt;
}

// One collision-quadrature term for output node i against (j, sigma_s):
// weight  c = w_v[j] * omega_s * C_Phi |v_i - v_j|^gamma b(cos th) * fold,
// the exact Maxwellian product mu_i mu_j, and interpolation stencils at the
// post-collision points. Callback: f(j, c, costh, rnorm, sp, sps).
template <class F>
inline void for_each_term(const PhaseGrid& g, const KernelConfig& k, const SigmaQuadrature& sq,
                          int i, F&& f) {
    const int d = g.d;
    const bool fold = sq.antipodal_paired && k.b_even();
    const int n_s = fold ? int(sq.wts.size()) / 2 : int(sq.wts.size());
    const double foldf = fold ? 2.0 : 1.0;
    double vi[3] = {0, 0, 0};
    for (int a = 0; a < d; ++a) vi[a] = g.v_nodes(i, a);
    Stencil sp, sps;
    for (int j = 0; j < g.nv_total; ++j) {
        double rel[3] = {0, 0, 0}, mid[3] = {0, 0, 0};
        double r2 = 0;
        for (int a = 0; a < d; ++a) {
            const double vj = g.v_nodes(j, a);
            rel[a] = vi[a] - vj;
            mid[a] = 0.5 * (vi[a] + vj);
            r2 += rel[a] * rel[a];
        }
        const double rnorm = std::sqrt(r2);
        const double base = g.w_v[j] * k.c_phi * (k.gamma == 0.0 ? 1.0 : std::pow(rnorm, k.gamma));
        for (int s = 0; s < n_s; ++s) {
            double costh, vp[3], vps[3];
            if (rnorm > 0) {
                double dot = 0;
                for (int a = 0; a < d; ++a) dot += rel[a] * sq.dirs(s, a);
                costh = dot / rnorm;
            } else {
                costh = sq.dirs(s, 0);  // direction convention for the diagonal term
            }
            const double half_r = 0.5 * rnorm;
            for (int a = 0; a < d; ++a) {
                vp[a] = mid[a] + half_r * sq.dirs(s, a);
                vps[a] = mid[a] - half_r * sq.dirs(s, a);
            }
            make_stencil(vp, g, sp);
            make_stencil(vps, g, sps);
            const double c = base * sq.wts[s] * k.b_eval(costh, d) * foldf;
            f(j, c, costh, rnorm, sp, sps);
        }
    }
}

}  // namespace kbolt::detail
