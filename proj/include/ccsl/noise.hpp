#pragma once

#include <string>

namespace ccsl {

enum class NoiseKind { White, Exponential };

/// Collapse-noise time correlation. White is the flat-spectrum limit; the
/// exponential kernel f(t) = (Omega_c / 2) exp(-Omega_c |t|) has the
/// Drude-Lorentz spectrum Omega_c^2 / (Omega_c^2 + omega^2).
class NoiseSpec {
public:
    static NoiseSpec white() { return NoiseSpec(NoiseKind::White, 0.0); }
    /// omega_c in rad/s; throws Error{InvalidArgument} unless finite and > 0.
    static NoiseSpec exponential(double omega_c);

    NoiseKind kind() const noexcept { return kind_; }
    bool is_white() const noexcept { return kind_ == NoiseKind::White; }
    /// Cutoff in rad/s. Zero for white noise.
    double omega_c() const noexcept { return omega_c_; }

    bool operator==(const NoiseSpec&) const = default;

private:
    NoiseSpec(NoiseKind kind, double omega_c) : kind_(kind), omega_c_(omega_c) {}

    NoiseKind kind_;
    double omega_c_;
};

/// f(dt) in 1/s. Throws Error{WhiteKernelNotPointwise} for white noise.
double time_correlation(const NoiseSpec& n, double dt);

/// Dimensionless spectrum in (0, 1]; exactly 1 for white noise.
double spectrum(const NoiseSpec& n, double omega);

/// "inf" -> white, "exp:<omega_c>" or a bare number -> exponential (rad/s).
NoiseSpec parse_noise(const std::string& text);
std::string format_noise(const NoiseSpec& n);

}  // namespace ccsl
