#pragma once

#include "ccsl/geometry.hpp"
#include "ccsl/params.hpp"

#include <atomic>
#include <cstddef>
#include <shared_mutex>
#include <string>
#include <unordered_map>

namespace ccsl {

inline constexpr double kDefaultEtaTol = 1e-8;

/// CSL diffusion coefficient along the measurement axis,
///   eta = lambda r_C^3 / (pi^{3/2} m0^2) * int d^3k |mu~(k)|^2 k_x^2 exp(-k^2 r_C^2),
/// in 1/(s m^2), so that hbar^2 eta is a force PSD in N^2 s.
struct EtaResult {
    double eta = 0.0;
    double est_error = 0.0; // relative
};

/// Geometry factor g = eta / eta_point, where eta_point = lambda m^2 / (2 m0^2 r_C^2)
/// is the value for a point particle of the same total mass. g lies in (0, 1].
///
/// Primitives use exact reductions of the k-space integral: the cuboid and
/// cylinder factor into one-dimensional Gaussian integrals with closed forms,
/// and the sphere is integrated in real space against its overlap volume.
/// Cross terms between parts of a composite are integrated in k-space and
/// dropped when the parts are separated by more than 30 r_C.
EtaResult geometry_factor(const MassDistribution& d, double rc, double tol = kDefaultEtaTol);

/// eta at lambda = 1.
EtaResult eta_reduced(const MassDistribution& d, double rc, double tol = kDefaultEtaTol);

/// eta = lambda * eta_reduced; exact zero at lambda = 0.
EtaResult eta(const MassDistribution& d, const CollapseParams& p, double tol = kDefaultEtaTol);

/// Direct k-space evaluation of eta_reduced: radial adaptive Gauss-Kronrod
/// truncated at |k| = 10 / r_C, with Gauss-Legendre angular rules (1D for a
/// centred sphere, 2D for a centred cylinder, full 3D otherwise). Costs grow
/// with (body size / r_C); throws Error{QuadratureNotConverged} when the
/// oscillation count exceeds the budget.
EtaResult eta_reduced_kspace(const MassDistribution& d, double rc, double tol = kDefaultEtaTol);

/// Thread-safe memo of eta_reduced keyed on (geometry, r_C, tol).
class EtaCache {
public:
    EtaResult eta_reduced(const MassDistribution& d, double rc, double tol = kDefaultEtaTol);
    std::size_t size() const;
    std::size_t hits() const;

private:
    mutable std::shared_mutex mutex_;
    std::unordered_map<std::string, EtaResult> entries_;
    std::atomic<std::size_t> hits_{0};
};

}  // namespace ccsl
