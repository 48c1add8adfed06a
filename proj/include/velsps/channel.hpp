#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>

#include "velsps/rng.hpp"
#include "velsps/scenario.hpp"

namespace velsps {

using Complex = std::complex<double>;

struct ChannelParams {
    double bandwidth = 10e6;          // Hz
    double tx_power = 0.2;            // W
    double noise_power = 1e-13;       // W
    double path_loss_exponent = 3.0;
    double wavelength = 299792458.0 / 5.9e9;  // m
    // Fixed cos(theta) for the Doppler shift; empty means derive it from geometry.
    std::optional<double> angle_cos{};
    double step_interval = 1e-3;      // s

    void validate() const;
};

struct ChannelState {
    Complex h{1.0, 0.0};
    double rho = 1.0;
};

double doppler_shift(double v, double wavelength, double angle_cos);
double bessel_j0(double x);
double correlation(double doppler_hz, double t);

// Circularly symmetric complex Gaussian with E|e|^2 = 1.
Complex complex_gaussian(Rng& rng);
Complex ar1_step(Complex h_prev, double rho, Rng& rng);
Complex ar1_step(Complex h_prev, double rho, std::uint64_t seed);
// Advances many independent chains sharing one rho. Draws noise in index order.
void ar1_step_batch(std::span<double> re, std::span<double> im, double rho, Rng& rng);

// log2(1 + p|h|^2 d^-a / sigma^2), the rate per hertz.
double spectral_efficiency(const ChannelParams& params, double gain2, double d);
double shannon_rate(const ChannelParams& params, Complex h, double d);

// Cosine between the direction of travel and the line of sight to the RSU.
double geometric_angle_cos(const Vec3& pos, double v, const Vec3& rsu);

// Advances the channel of a vehicle of speed v at pos by one step_interval.
ChannelState evolve(const ChannelParams& params, const ChannelState& state, double v, const Vec3& pos,
                    const Vec3& rsu, Rng& rng);

}  // namespace velsps
