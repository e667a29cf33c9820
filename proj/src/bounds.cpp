#include "ccsl/bounds.hpp"

#include "ccsl/constants.hpp"
#include "ccsl/diffusion.hpp"
#include "ccsl/error.hpp"

#include <cfloat>
#include <cmath>
#include <map>

namespace ccsl {

namespace {

constexpr double kWashedOutRatio = 1e-30;

void require_kind(const Ceiling& c, CeilingKind kind) {
    validate(c);
    if (c.kind != kind)
        throw Error(ErrorKind::InvalidArgument,
                    "ceiling kind " + std::string(to_string(c.kind)) + " where " +
                        std::string(to_string(kind)) + " was expected");
}

double effective_spectrum(const Ceiling& c, const NoiseSpec& n) {
    // f~ is non-increasing in omega, so its maximum over a band is at lo.
    return spectrum(n, c.probe.lo);
}

} // namespace

std::string_view to_string(CeilingKind k) {
    switch (k) {
    case CeilingKind::ForcePSD: return "force-psd";
    case CeilingKind::XRayNormalized: return "xray-normalized";
    case CeilingKind::HeatingPower: return "heating-power";
    case CeilingKind::PositionVariance: return "position-variance";
    }
    return "unknown";
}

std::string_view to_string(ExperimentKind k) {
    switch (k) {
    case ExperimentKind::Optomechanical: return "optomechanical";
    case ExperimentKind::XRay: return "xray";
    case ExperimentKind::BulkHeating: return "bulk-heating";
    case ExperimentKind::ColdAtom: return "cold-atom";
    }
    return "unknown";
}

std::string_view to_string(GeometryTreatment t) {
    return t == GeometryTreatment::Composite ? "composite" : "single-part";
}

void validate(const Ceiling& c) {
    if (!(c.value > 0.0) || !std::isfinite(c.value))
        throw ValidationError("ceiling.value", "must be > 0");
    if (c.kind == CeilingKind::ForcePSD) {
        if (!(c.probe.lo >= 0.0) || !std::isfinite(c.probe.hi))
            throw ValidationError("ceiling.probe", "must be finite and >= 0");
        if (c.probe.hi < c.probe.lo)
            throw ValidationError("ceiling.probe", "band must satisfy lo < hi");
    } else if (c.probe.is_band()) {
        throw ValidationError("ceiling.probe", "bands apply to force-psd ceilings only");
    }
}

void validate(const ExperimentDescriptor& e) {
    if (e.id.empty())
        throw ValidationError("experiment.id", "must be non-empty");
    validate(e.ceiling);
    const bool opto = e.kind == ExperimentKind::Optomechanical;
    const bool xray = e.kind == ExperimentKind::XRay;
    const bool heat = e.kind == ExperimentKind::BulkHeating;
    const bool cold = e.kind == ExperimentKind::ColdAtom;
    auto presence = [](bool present, bool wanted, const char* field) {
        if (present && !wanted)
            throw ValidationError(field, "not allowed for this experiment kind");
        if (!present && wanted)
            throw ValidationError(field, "required for this experiment kind");
    };
    presence(e.geometry.has_value(), opto, "geometry");
    presence(e.phonon.has_value(), heat, "phonon");
    presence(e.coldatom.has_value(), cold, "cold_atom");
    if (e.oscillator && !opto)
        throw ValidationError("oscillator", "not allowed for this experiment kind");

    const CeilingKind expected = opto   ? CeilingKind::ForcePSD
                                 : xray ? CeilingKind::XRayNormalized
                                 : heat ? CeilingKind::HeatingPower
                                        : CeilingKind::PositionVariance;
    if (e.ceiling.kind != expected)
        throw ValidationError("ceiling.kind", "must be " + std::string(to_string(expected)));

    if (e.geometry)
        validate(*e.geometry);
    if (e.oscillator)
        validate(*e.oscillator);
    if (e.phonon)
        validate(*e.phonon);
    if (e.coldatom)
        validate(*e.coldatom);
    if (xray) {
        if (!(e.omega_obs > 0.0) || !std::isfinite(e.omega_obs))
            throw ValidationError("xray.omega_obs", "must be > 0");
    } else if (e.omega_obs != 0.0) {
        throw ValidationError("xray.omega_obs", "not allowed for this experiment kind");
    }
    if (e.temperature && (!(*e.temperature > 0.0) || !std::isfinite(*e.temperature)))
        throw ValidationError("temperature_k", "must be > 0");
    if (e.treatment == GeometryTreatment::SinglePart && !opto)
        throw ValidationError("geometry.treatment", "not allowed for this experiment kind");
}

MassDistribution effective_geometry(const ExperimentDescriptor& e) {
    if (!e.geometry)
        throw Error(ErrorKind::InvalidArgument, "experiment '" + e.id + "' has no geometry");
    if (e.treatment == GeometryTreatment::Composite)
        return *e.geometry;
    Body first = e.geometry->parts().front();
    first.offset = Vec3{};
    return MassDistribution({first}, e.geometry->measurement_axis());
}

double lambda_max_force(const MassDistribution& d, const Ceiling& ceiling, const NoiseSpec& n,
                        double rc) {
    require_kind(ceiling, CeilingKind::ForcePSD);
    validate_rc(rc);
    const double hbar = kConstants.hbar;
    const double unit = hbar * hbar * eta_reduced(d, rc).eta * effective_spectrum(ceiling, n);
    if (!(unit > DBL_MIN))
        throw Error(ErrorKind::WashedOut, "force-noise prediction vanishes");
    return ceiling.value / unit;
}

double lambda_max_xray(const Ceiling& ceiling, const NoiseSpec& n, double rc, double omega_obs) {
    require_kind(ceiling, CeilingKind::XRayNormalized);
    validate_rc(rc);
    if (!(omega_obs > 0.0))
        throw Error(ErrorKind::NonPositiveFrequency, "X-ray frequency must be > 0");
    return ceiling.value * rc * rc / spectrum(n, omega_obs);
}

double lambda_max_heating(const Ceiling& ceiling, const NoiseSpec& n, const PhononModel& ph,
                          double rc) {
    require_kind(ceiling, CeilingKind::HeatingPower);
    const double ratio = lambda_eff(CollapseParams{1.0, rc}, n, ph);
    if (!(ratio >= kWashedOutRatio))
        throw Error(ErrorKind::WashedOut, "lambda_eff / lambda below 1e-30");
    const double hbar = kConstants.hbar;
    const double m0 = kConstants.m0;
    return ceiling.value * 4.0 * rc * rc * m0 * m0 / (3.0 * hbar * hbar) / ratio;
}

double lambda_max_coldatom(const Ceiling& ceiling, const NoiseSpec& n,
                           const ColdAtomDescriptor& ca, double rc) {
    require_kind(ceiling, CeilingKind::PositionVariance);
    const double unit = cold_atom_diffusion(CollapseParams{1.0, rc}, n, ca);
    if (!(unit > DBL_MIN))
        throw Error(ErrorKind::WashedOut, "position diffusion at unit lambda underflows");
    return ceiling.value / unit;
}

double lambda_max(const ExperimentDescriptor& e, const NoiseSpec& n, double rc) {
    switch (e.kind) {
    case ExperimentKind::Optomechanical:
        return lambda_max_force(effective_geometry(e), e.ceiling, n, rc);
    case ExperimentKind::XRay:
        return lambda_max_xray(e.ceiling, n, rc, e.omega_obs);
    case ExperimentKind::BulkHeating:
        return lambda_max_heating(e.ceiling, n, *e.phonon, rc);
    case ExperimentKind::ColdAtom:
        return lambda_max_coldatom(e.ceiling, n, *e.coldatom, rc);
    }
    throw Error(ErrorKind::InvalidArgument, "unknown experiment kind");
}

double predict_observable(const ExperimentDescriptor& e, const CollapseParams& p,
                          const NoiseSpec& n) {
    switch (e.kind) {
    case ExperimentKind::Optomechanical:
        return dns_ccsl(effective_geometry(e), p, n, e.ceiling.probe.lo);
    case ExperimentKind::XRay:
        return xray_normalized(p, n, e.omega_obs);
    case ExperimentKind::BulkHeating:
        return heating_rate(p, n, *e.phonon);
    case ExperimentKind::ColdAtom:
        return cold_atom_diffusion(p, n, *e.coldatom);
    }
    throw Error(ErrorKind::InvalidArgument, "unknown experiment kind");
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    if (n == 0 || !(lo > 0.0) || !(hi >= lo))
        throw Error(ErrorKind::InvalidArgument, "log grid needs n >= 1 and 0 < lo <= hi");
    if (n == 1)
        return {lo};
    std::vector<double> out(n);
    const double a = std::log10(lo);
    const double b = std::log10(hi);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = std::pow(10.0, a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

std::vector<double> default_rc_grid() { return log_grid(1e-9, 1e-3, 60); }

ExclusionCurve envelope(const std::vector<ExclusionCurve>& curves) {
    if (curves.empty())
        throw Error(ErrorKind::EmptyInput, "envelope of no curves");
    std::map<double, double> best;
    for (const auto& c : curves)
        for (const auto& pt : c.points) {
            auto [it, inserted] = best.emplace(pt.rc, pt.lambda_max);
            if (!inserted && pt.lambda_max < it->second)
                it->second = pt.lambda_max;
        }
    ExclusionCurve out;
    out.experiment_id = curves.size() == 1 ? curves.front().experiment_id : "envelope";
    out.noise = curves.front().noise;
    out.points.reserve(best.size());
    for (const auto& [rc, lm] : best)
        out.points.push_back({rc, lm});
    return out;
}

} // namespace ccsl
