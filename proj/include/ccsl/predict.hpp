#pragma once

#include "ccsl/diffusion.hpp"
#include "ccsl/geometry.hpp"
#include "ccsl/noise.hpp"
#include "ccsl/params.hpp"

#include <string>
#include <variant>
#include <vector>

namespace ccsl {

/// Harmonically trapped, damped test mass.
struct MechanicalOscillator {
    double mass;        // kg
    double omega_m;     // rad/s
    double gamma_m;     // 1/s
    double temperature; // K
    bool operator==(const MechanicalOscillator&) const = default;
};

void validate(const MechanicalOscillator& osc);
/// Non-fatal findings, e.g. an overdamped oscillator.
std::vector<std::string> warnings(const MechanicalOscillator& osc);

struct LinearDispersion {
    bool operator==(const LinearDispersion&) const = default;
};

/// Monoatomic chain: omega_L^2 = (4 C / m_A) sin^2(q a / 2).
struct FullSineDispersion {
    double force_constant; // N/m
    double atom_mass;      // kg
    double spacing;        // m
    bool operator==(const FullSineDispersion&) const = default;
};

using Dispersion = std::variant<LinearDispersion, FullSineDispersion>;

struct PhononModel {
    double v_s; // m/s
    Dispersion dispersion = LinearDispersion{};
    bool operator==(const PhononModel&) const = default;
};

/// Throws ValidationError; a FullSine model must reproduce v_s at small q to 1%.
void validate(const PhononModel& ph);
/// Longitudinal phonon frequency in rad/s at wavenumber q (1/m).
double phonon_frequency(const PhononModel& ph, double q);

struct ColdAtomDescriptor {
    double mass_number;    // A
    double atom_mass;      // kg
    double expansion_time; // s
    bool operator==(const ColdAtomDescriptor&) const = default;
};

void validate(const ColdAtomDescriptor& ca);

// ---- optomechanics --------------------------------------------------------

/// cCSL force-noise PSD hbar^2 eta f~(omega), N^2 s.
double dns_ccsl(const MassDistribution& d, const CollapseParams& p, const NoiseSpec& n,
                double omega, double tol = kDefaultEtaTol);

/// Displacement PSD in the high-temperature limit, m^2 s:
///   [2 m gamma k_B T + S_cCSL(omega)] / (m^2 [(omega_m^2 - omega^2)^2 + gamma^2 omega^2]).
/// The caller is responsible for hbar omega << k_B T.
double dns_total(const MechanicalOscillator& osc, const MassDistribution& d,
                 const CollapseParams& p, const NoiseSpec& n, double omega,
                 double tol = kDefaultEtaTol);

// ---- X-ray emission -------------------------------------------------------

/// Spontaneous photon emission rate per unit angular frequency from a free
/// electron with eta = lambda m_e^2 / (2 m0^2 r_C^2).
double xray_rate(const CollapseParams& p, const NoiseSpec& n, double omega);

/// 4 pi^2 eps0 c^3 m0^2 omega (dGamma/domega) / (e^2 hbar), in 1/(s m^2);
/// algebraically equal to lambda f~(omega) / r_C^2.
double xray_normalized(const CollapseParams& p, const NoiseSpec& n, double omega);

// ---- bulk heating ---------------------------------------------------------

/// Closed-form lambda_eff for a linear dispersion. White noise returns lambda.
double lambda_eff_closed(const CollapseParams& p, const NoiseSpec& n, const PhononModel& ph);

/// lambda_eff = (8 lambda / 3 sqrt(pi)) int_0^inf u^4 exp(-u^2) f~(omega_L(u / r_C)) du,
/// integrated numerically for either dispersion.
double lambda_eff_quad(const CollapseParams& p, const NoiseSpec& n, const PhononModel& ph,
                       double tol = 1e-10);

/// Closed form when available, quadrature otherwise.
double lambda_eff(const CollapseParams& p, const NoiseSpec& n, const PhononModel& ph);

/// Energy gain per unit mass, W/kg: (3/4) hbar^2 lambda_eff / (r_C^2 m0^2).
double heating_rate(const CollapseParams& p, const NoiseSpec& n, const PhononModel& ph);

// ---- cold atoms -----------------------------------------------------------

/// t^3/2 - t^2 tau/2 + tau^2 (tau - (t + tau) e^{-t/tau}), in s^3; tau = 0 gives t^3/2.
double cold_atom_bracket(double t, double tau);

/// Excess position variance (m^2) after free expansion for time t:
///   3 lambda A^2 hbar^2 / (2 m^2 r_C^2) * bracket(t, 1 / Omega_c).
double cold_atom_diffusion(const CollapseParams& p, const NoiseSpec& n,
                           const ColdAtomDescriptor& ca, double t);
double cold_atom_diffusion(const CollapseParams& p, const NoiseSpec& n,
                           const ColdAtomDescriptor& ca);

}  // namespace ccsl
