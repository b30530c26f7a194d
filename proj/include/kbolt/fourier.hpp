// FFTW-backed spectral machinery on the periodic spatial lattice: batched
// transforms over velocity columns, spectral x-derivatives, exact free
// transport via per-mode phase shifts.
#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <vector>

#include "kbolt/grid.hpp"

struct fftw_plan_s;

namespace kbolt {

class SpectralX {
  public:
    explicit SpectralX(const PhaseGrid& grid);
    ~SpectralX();
    SpectralX(const SpectralX&) = delete;
    SpectralX& operator=(const SpectralX&) = delete;

    /// Spectral partial derivative d^l/dx^l of every column (columns are
    /// independent spatial scalar fields).
    Eigen::MatrixXd x_derivative(const Eigen::MatrixXd& f, const std::array<int, 3>& l);

    /// Exact solution of  d_t h + a v.grad_x h = 0  over time tau, i.e. the
    /// phase shift e^{-i 2pi/T (m.v) a tau} per mode m and velocity column v.
    /// Field must have nv_total columns.
    void apply_transport(Eigen::MatrixXd& field, double a_tau);

    /// Phase table for apply_phases (cacheable when the step size is fixed).
    Eigen::MatrixXcd transport_phases(double a_tau) const;
    void apply_phases(Eigen::MatrixXd& field, const Eigen::MatrixXcd& phases);

    /// Forward/backward c2c transform of a single spatial scalar field.
    Eigen::VectorXcd forward(const Eigen::VectorXd& f);
    Eigen::VectorXd backward(const Eigen::VectorXcd& fhat);  // normalized

  private:
    const PhaseGrid& g_;
    fftw_plan_s* plan_fwd_ = nullptr;   // single-field forward
    fftw_plan_s* plan_bwd_ = nullptr;   // single-field backward
    std::vector<std::complex<double>> buf_;
    void fft_cols(Eigen::MatrixXcd& f, int sign);
};

}  // namespace kbolt
