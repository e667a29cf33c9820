#include "ccsl/predict.hpp"

#include "ccsl/constants.hpp"
#include "ccsl/error.hpp"
#include "ccsl/quadrature.hpp"
#include "ccsl/special.hpp"

#include <algorithm>
#include <cmath>

namespace ccsl {

namespace {

void require_positive(double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw ValidationError(field, "must be > 0");
}

void require_frequency(double omega) {
    if (!std::isfinite(omega))
        throw Error(ErrorKind::InvalidArgument, "frequency must be finite");
}

} // namespace

void validate(const MechanicalOscillator& osc) {
    require_positive(osc.mass, "oscillator.mass");
    require_positive(osc.omega_m, "oscillator.omega_m");
    require_positive(osc.gamma_m, "oscillator.gamma_m");
    require_positive(osc.temperature, "oscillator.temperature");
}

std::vector<std::string> warnings(const MechanicalOscillator& osc) {
    std::vector<std::string> out;
    if (osc.gamma_m >= osc.omega_m)
        out.emplace_back("oscillator.gamma_m >= omega_m: not a resonant device");
    return out;
}

void validate(const PhononModel& ph) {
    require_positive(ph.v_s, "phonon.v_s");
    if (const auto* fs = std::get_if<FullSineDispersion>(&ph.dispersion)) {
        require_positive(fs->force_constant, "phonon.force_constant");
        require_positive(fs->atom_mass, "phonon.atom_mass");
        require_positive(fs->spacing, "phonon.spacing");
        const double v_chain = fs->spacing * std::sqrt(fs->force_constant / fs->atom_mass);
        if (std::abs(v_chain - ph.v_s) > 0.01 * ph.v_s)
            throw ValidationError("phonon.v_s", "must match a sqrt(C / m_A) to 1%");
    }
}

double phonon_frequency(const PhononModel& ph, double q) {
    q = std::abs(q);
    if (const auto* fs = std::get_if<FullSineDispersion>(&ph.dispersion))
        return 2.0 * std::sqrt(fs->force_constant / fs->atom_mass) *
               std::abs(std::sin(0.5 * q * fs->spacing));
    return ph.v_s * q;
}

void validate(const ColdAtomDescriptor& ca) {
    require_positive(ca.mass_number, "cold_atom.mass_number");
    require_positive(ca.atom_mass, "cold_atom.atom_mass");
    require_positive(ca.expansion_time, "cold_atom.expansion_time");
}

double dns_ccsl(const MassDistribution& d, const CollapseParams& p, const NoiseSpec& n,
                double omega, double tol) {
    require_frequency(omega);
    const double hbar = kConstants.hbar;
    return hbar * hbar * eta(d, p, tol).eta * spectrum(n, omega);
}

double dns_total(const MechanicalOscillator& osc, const MassDistribution& d,
                 const CollapseParams& p, const NoiseSpec& n, double omega, double tol) {
    validate(osc);
    const double thermal = 2.0 * osc.mass * osc.gamma_m * kConstants.kB * osc.temperature;
    const double detuning = osc.omega_m * osc.omega_m - omega * omega;
    const double susceptibility =
        osc.mass * osc.mass *
        (detuning * detuning + osc.gamma_m * osc.gamma_m * omega * omega);
    return (thermal + dns_ccsl(d, p, n, omega, tol)) / susceptibility;
}

double xray_rate(const CollapseParams& p, const NoiseSpec& n, double omega) {
    validate_params(p);
    if (!(omega > 0.0))
        throw Error(ErrorKind::NonPositiveFrequency, "X-ray frequency must be > 0");
    const auto& k = kConstants;
    const double eta_e = p.lambda * k.me * k.me / (2.0 * k.m0 * k.m0 * p.rc * p.rc);
    const double prefactor = k.e_charge * k.e_charge * k.hbar * eta_e /
                             (2.0 * kPi * kPi * k.eps0 * k.c_light * k.c_light * k.c_light *
                              k.me * k.me);
    return prefactor / omega * spectrum(n, omega);
}

double xray_normalized(const CollapseParams& p, const NoiseSpec& n, double omega) {
    const auto& k = kConstants;
    const double rate = xray_rate(p, n, omega);
    return 4.0 * kPi * kPi * k.eps0 * k.c_light * k.c_light * k.c_light * k.m0 * k.m0 * omega *
           rate / (k.e_charge * k.e_charge * k.hbar);
}

double lambda_eff_closed(const CollapseParams& p, const NoiseSpec& n, const PhononModel& ph) {
    validate_params(p);
    validate(ph);
    if (n.is_white())
        return p.lambda;
    if (!std::holds_alternative<LinearDispersion>(ph.dispersion))
        throw Error(ErrorKind::UnsupportedDispersion,
                    "closed-form lambda_eff needs a linear dispersion; use the quadrature");
    const double x = p.rc * n.omega_c() / ph.v_s;
    return p.lambda * special::phonon_suppression(x);
}

double lambda_eff_quad(const CollapseParams& p, const NoiseSpec& n, const PhononModel& ph,
                       double tol) {
    validate_params(p);
    validate(ph);
    if (!(tol > 0.0 && tol < 1e-2))
        throw Error(ErrorKind::InvalidArgument, "tolerance must lie in (0, 1e-2)");
    if (p.lambda == 0.0)
        return 0.0;

    constexpr double upper = 10.0;
    std::vector<double> bp{0.0, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0, upper};
    if (!n.is_white()) {
        // Feature where omega_L crosses the cutoff.
        const double x = p.rc * n.omega_c() / ph.v_s;
        for (double f : {0.1, 0.3, 1.0, 3.0, 10.0})
            if (f * x > 0.0 && f * x < upper)
                bp.push_back(f * x);
    }
    if (const auto* fs = std::get_if<FullSineDispersion>(&ph.dispersion)) {
        // Zeros of sin(q a / 2) sit at u = 2 pi n r_C / a.
        const double period = kTwoPi * p.rc / fs->spacing;
        if (period < upper) {
            if (upper / period > 1e5)
                throw Error(ErrorKind::QuadratureNotConverged, "dispersion period too short");
            for (double u = 0.5 * period; u < upper; u += 0.5 * period)
                bp.push_back(u);
        }
    }
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());

    auto integrand = [&](double u) {
        const double omega = phonon_frequency(ph, u / p.rc);
        return u * u * u * u * std::exp(-u * u) * spectrum(n, omega);
    };
    quad::Options opt;
    opt.rel_tol = tol;
    const auto res = quad::integrate(integrand, bp, opt);
    if (!res.converged)
        throw Error(ErrorKind::QuadratureNotConverged, "lambda_eff quadrature did not converge");
    return p.lambda * 8.0 / (3.0 * kSqrtPi) * res.value;
}

double lambda_eff(const CollapseParams& p, const NoiseSpec& n, const PhononModel& ph) {
    if (n.is_white() || std::holds_alternative<LinearDispersion>(ph.dispersion))
        return lambda_eff_closed(p, n, ph);
    return lambda_eff_quad(p, n, ph);
}

double heating_rate(const CollapseParams& p, const NoiseSpec& n, const PhononModel& ph) {
    const double hbar = kConstants.hbar;
    const double m0 = kConstants.m0;
    return 0.75 * hbar * hbar / (p.rc * p.rc * m0 * m0) * lambda_eff(p, n, ph);
}

double cold_atom_bracket(double t, double tau) {
    if (!(t >= 0.0) || !(tau >= 0.0))
        throw Error(ErrorKind::InvalidArgument, "time and correlation time must be >= 0");
    if (tau == 0.0)
        return 0.5 * t * t * t;
    const double z = t / tau;
    if (z < 1.0) {
        // t^3 [1/6 + sum_{n>=4} (-1)^n (n-1) z^(n-3) / n!]; the three leading
        // terms of the closed form cancel here.
        double sum = 1.0 / 6.0;
        double power = 1.0;
        double fact = 6.0;
        for (int k = 4; k < 40; ++k) {
            power *= z;
            fact *= k;
            const double term = (k - 1) * power / fact;
            sum += (k % 2 == 0) ? term : -term;
            if (term < 1e-18 * sum)
                break;
        }
        return t * t * t * sum;
    }
    return 0.5 * t * t * (t - tau) + tau * tau * (tau - (t + tau) * std::exp(-z));
}

double cold_atom_diffusion(const CollapseParams& p, const NoiseSpec& n,
                           const ColdAtomDescriptor& ca, double t) {
    validate_params(p);
    validate(ca);
    const double tau = n.is_white() ? 0.0 : 1.0 / n.omega_c();
    const double hbar = kConstants.hbar;
    const double prefactor = 3.0 * p.lambda * ca.mass_number * ca.mass_number * hbar * hbar /
                             (2.0 * ca.atom_mass * ca.atom_mass * p.rc * p.rc);
    return prefactor * cold_atom_bracket(t, tau);
}

double cold_atom_diffusion(const CollapseParams& p, const NoiseSpec& n,
                           const ColdAtomDescriptor& ca) {
    return cold_atom_diffusion(p, n, ca, ca.expansion_time);
}

} // namespace ccsl
