#include "kbolt/fourier.hpp"

#include <fftw3.h>

#include <numbers>
#include <stdexcept>

namespace kbolt {

SpectralX::SpectralX(const PhaseGrid& grid) : g_(grid) {
    buf_.resize(g_.nx_total);
    int dims[3] = {g_.cfg.n_x, g_.cfg.n_x, g_.cfg.n_x};
    auto* b = reinterpret_cast<fftw_complex*>(buf_.data());
    plan_fwd_ = fftw_plan_dft(g_.d, dims, b, b, FFTW_FORWARD, FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft(g_.d, dims, b, b, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!plan_fwd_ || !plan_bwd_) throw std::runtime_error("SpectralX: fftw plan failed");
}

SpectralX::~SpectralX() {
    if (plan_fwd_) fftw_destroy_plan(plan_fwd_);
    if (plan_bwd_) fftw_destroy_plan(plan_bwd_);
}

Eigen::VectorXcd SpectralX::forward(const Eigen::VectorXd& f) {
    if (f.size() != g_.nx_total) throw std::invalid_argument("SpectralX::forward: size mismatch");
    for (int i = 0; i < g_.nx_total; ++i) buf_[i] = f[i];
    fftw_execute(plan_fwd_);
    return Eigen::Map<Eigen::VectorXcd>(buf_.data(), g_.nx_total);
}

Eigen::VectorXd SpectralX::backward(const Eigen::VectorXcd& fhat) {
    if (fhat.size() != g_.nx_total) throw std::invalid_argument("SpectralX::backward: size mismatch");
    for (int i = 0; i < g_.nx_total; ++i) buf_[i] = fhat[i];
    fftw_execute(plan_bwd_);
    Eigen::VectorXd out(g_.nx_total);
    const double s = 1.0 / g_.nx_total;
    for (int i = 0; i < g_.nx_total; ++i) out[i] = buf_[i].real() * s;
    return out;
}

void SpectralX::fft_cols(Eigen::MatrixXcd& f, int sign) {
    fftw_plan plan = sign == FFTW_FORWARD ? plan_fwd_ : plan_bwd_;
    auto* b = reinterpret_cast<fftw_complex*>(buf_.data());
    for (Eigen::Index c = 0; c < f.cols(); ++c) {
        Eigen::Map<Eigen::VectorXcd>(buf_.data(), g_.nx_total) = f.col(c);
        fftw_execute_dft(plan, b, b);
        f.col(c) = Eigen::Map<Eigen::VectorXcd>(buf_.data(), g_.nx_total);
    }
}

Eigen::MatrixXd SpectralX::x_derivative(const Eigen::MatrixXd& f, const std::array<int, 3>& l) {
    Eigen::MatrixXcd fc = f.cast<std::complex<double>>();
    fft_cols(fc, FFTW_FORWARD);
    const double k0 = 2.0 * std::numbers::pi / g_.cfg.torus_period;
    const int half = g_.cfg.n_x / 2;
    for (int ix = 0; ix < g_.nx_total; ++ix) {
        std::complex<double> fac(1.0, 0.0);
        for (int ax = 0; ax < g_.d; ++ax) {
            int m = g_.x_modes[ix][ax];
            for (int r = 0; r < l[ax]; ++r) {
                // Nyquist mode of an odd derivative has no consistent real signal
                double mm = (std::abs(m) == half && (l[ax] % 2 == 1)) ? 0.0 : double(m);
                fac *= std::complex<double>(0.0, k0 * mm);
            }
        }
        fc.row(ix) *= fac;
    }
    fft_cols(fc, FFTW_BACKWARD);
    return fc.real() / double(g_.nx_total);
}

Eigen::MatrixXcd SpectralX::transport_phases(double a_tau) const {
    Eigen::MatrixXcd ph(g_.nx_total, g_.nv_total);
    const double k0 = 2.0 * std::numbers::pi / g_.cfg.torus_period;
    for (int iv = 0; iv < g_.nv_total; ++iv) {
        for (int ix = 0; ix < g_.nx_total; ++ix) {
            double mv = 0;
            for (int ax = 0; ax < g_.d; ++ax) mv += g_.x_modes[ix][ax] * g_.v_nodes(iv, ax);
            double p = -k0 * mv * a_tau;
            ph(ix, iv) = std::complex<double>(std::cos(p), std::sin(p));
        }
    }
    return ph;
}

void SpectralX::apply_phases(Eigen::MatrixXd& field, const Eigen::MatrixXcd& phases) {
    if (field.cols() != g_.nv_total || field.rows() != g_.nx_total)
        throw std::invalid_argument("apply_phases: field shape mismatch");
    Eigen::MatrixXcd fc = field.cast<std::complex<double>>();
    fft_cols(fc, FFTW_FORWARD);
    fc.array() *= phases.array();
    fft_cols(fc, FFTW_BACKWARD);
    field = fc.real() / double(g_.nx_total);
}

void SpectralX::apply_transport(Eigen::MatrixXd& field, double a_tau) {
    apply_phases(field, transport_phases(a_tau));
}

}  // namespace kbolt
