#pragma once

#include "ccsl/geometry.hpp"
#include "ccsl/predict.hpp"

#include <optional>
#include <string>

namespace ccsl {

enum class CeilingKind { ForcePSD, XRayNormalized, HeatingPower, PositionVariance };

/// Probe frequency in rad/s. A band has lo < hi; a single frequency has lo == hi.
struct Probe {
    double lo = 0.0;
    double hi = 0.0;
    bool is_band() const noexcept { return hi > lo; }
    bool operator==(const Probe&) const = default;
};

/// Measured upper limit on a collapse-attributable signal.
///   ForcePSD:         N^2/Hz at `probe`
///   XRayNormalized:   1/(s m^2)
///   HeatingPower:     W/kg
///   PositionVariance: m^2 at the expansion time
struct Ceiling {
    CeilingKind kind = CeilingKind::ForcePSD;
    double value = 0.0;
    Probe probe{};
    bool operator==(const Ceiling&) const = default;
};

void validate(const Ceiling& c);

enum class ExperimentKind { Optomechanical, XRay, BulkHeating, ColdAtom };

/// How a multi-part geometry enters the force formula.
enum class GeometryTreatment { Composite, SinglePart };

struct ExperimentDescriptor {
    std::string id;
    ExperimentKind kind = ExperimentKind::Optomechanical;
    Ceiling ceiling{};
    std::optional<MassDistribution> geometry;       // Optomechanical
    GeometryTreatment treatment = GeometryTreatment::Composite;
    std::optional<MechanicalOscillator> oscillator; // Optomechanical, optional
    std::optional<PhononModel> phonon;              // BulkHeating
    std::optional<ColdAtomDescriptor> coldatom;     // ColdAtom
    double omega_obs = 0.0;                         // XRay, rad/s
    std::optional<double> temperature;              // operating temperature, K
    std::string provenance;
    bool operator==(const ExperimentDescriptor&) const = default;
};

/// Checks that exactly the fields demanded by `kind` are present and valid.
void validate(const ExperimentDescriptor& e);

/// The geometry actually used for eta: the full body, or only its first part
/// moved to the origin under SinglePart.
MassDistribution effective_geometry(const ExperimentDescriptor& e);

std::string_view to_string(CeilingKind k);
std::string_view to_string(ExperimentKind k);
std::string_view to_string(GeometryTreatment t);

}  // namespace ccsl
