#include "velsps/channel.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "velsps/errors.hpp"
#include "velsps/simd/kernels.hpp"

namespace velsps {

void ChannelParams::validate() const {
    if (!(bandwidth > 0.0)) throw ConfigError("channel.bandwidth", "must be > 0");
    if (!(tx_power > 0.0)) throw ConfigError("channel.tx_power", "must be > 0");
    if (!(noise_power > 0.0)) throw ConfigError("channel.noise_power", "must be > 0");
    if (!(path_loss_exponent >= 0.0)) throw ConfigError("channel.path_loss_exponent", "must be >= 0");
    if (!(wavelength > 0.0)) throw ConfigError("channel.wavelength", "must be > 0");
    if (angle_cos && !(std::fabs(*angle_cos) <= 1.0))
        throw ConfigError("channel.angle_cos", "must lie in [-1, 1]");
    if (!(step_interval > 0.0)) throw ConfigError("channel.step_interval", "must be > 0");
}

double doppler_shift(double v, double wavelength, double angle_cos) {
    if (!(wavelength > 0.0)) throw DomainError("doppler_shift: wavelength must be > 0");
    return v / wavelength * angle_cos;
}

double bessel_j0(double x) {
    if (!std::isfinite(x)) throw DomainError("bessel_j0: argument must be finite");
    return std::cyl_bessel_j(0.0, std::fabs(x));
}

double correlation(double doppler_hz, double t) {
    if (!(t >= 0.0)) throw DomainError("correlation: lag must be >= 0");
    return bessel_j0(2.0 * std::numbers::pi * doppler_hz * t);
}

Complex complex_gaussian(Rng& rng) {
    std::normal_distribution<double> n(0.0, std::sqrt(0.5));
    double re = n(rng);
    double im = n(rng);
    return {re, im};
}

Complex ar1_step(Complex h_prev, double rho, Rng& rng) {
    if (!(std::fabs(rho) <= 1.0)) throw DomainError("ar1_step: |rho| must be <= 1");
    Complex e = complex_gaussian(rng);
    double s = std::sqrt(1.0 - rho * rho);
    return {rho * h_prev.real() + s * e.real(), rho * h_prev.imag() + s * e.imag()};
}

Complex ar1_step(Complex h_prev, double rho, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    return ar1_step(h_prev, rho, rng);
}

void ar1_step_batch(std::span<double> re, std::span<double> im, double rho, Rng& rng) {
    if (!(std::fabs(rho) <= 1.0)) throw DomainError("ar1_step_batch: |rho| must be <= 1");
    if (re.size() != im.size()) throw DomainError("ar1_step_batch: size mismatch");
    std::vector<double> er(re.size());
    std::vector<double> ei(re.size());
    for (std::size_t k = 0; k < re.size(); ++k) {
        Complex e = complex_gaussian(rng);
        er[k] = e.real();
        ei[k] = e.imag();
    }
    double s = std::sqrt(1.0 - rho * rho);
    const auto& kern = simd::kernels();
    kern.ar1_update(re.data(), er.data(), re.size(), rho, s);
    kern.ar1_update(im.data(), ei.data(), im.size(), rho, s);
}

double spectral_efficiency(const ChannelParams& p, double gain2, double d) {
    if (!(d > 0.0)) throw DomainError("shannon_rate: distance must be > 0");
    double snr = p.tx_power * gain2 * std::pow(d, -p.path_loss_exponent) / p.noise_power;
    return std::log2(1.0 + snr);
}

double shannon_rate(const ChannelParams& p, Complex h, double d) {
    return p.bandwidth * spectral_efficiency(p, std::norm(h), d);
}

double geometric_angle_cos(const Vec3& pos, double v, const Vec3& rsu) {
    double dx = rsu.x - pos.x;
    double dist = distance_to_rsu(pos, rsu);
    if (dist == 0.0 || v == 0.0) return 0.0;
    return (v > 0.0 ? dx : -dx) / dist;
}

ChannelState evolve(const ChannelParams& params, const ChannelState& state, double v, const Vec3& pos,
                    const Vec3& rsu, Rng& rng) {
    double c = params.angle_cos ? *params.angle_cos : geometric_angle_cos(pos, v, rsu);
    double fd = doppler_shift(std::fabs(v), params.wavelength, c);
    double rho = correlation(fd, params.step_interval);
    return {ar1_step(state.h, rho, rng), rho};
}

}  // namespace velsps
