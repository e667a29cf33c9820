#pragma once

#include "ccsl/error.hpp"
#include "ccsl/experiment.hpp"
#include "ccsl/noise.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace ccsl {

struct CurvePoint {
    double rc;         // m
    double lambda_max; // 1/s
    bool operator==(const CurvePoint&) const = default;
};

/// Upper bound on lambda as a function of r_C. Washed-out grid points are
/// absent rather than stored as sentinels.
struct ExclusionCurve {
    std::string experiment_id;
    NoiseSpec noise = NoiseSpec::white();
    std::vector<CurvePoint> points;
    bool operator==(const ExclusionCurve&) const = default;
};

/// value / (hbar^2 eta_reduced f~), with f~ at the probe frequency or at the
/// lower band edge (its maximum over the band).
double lambda_max_force(const MassDistribution& d, const Ceiling& ceiling, const NoiseSpec& n,
                        double rc);

/// value r_C^2 / f~(omega_obs).
double lambda_max_xray(const Ceiling& ceiling, const NoiseSpec& n, double rc, double omega_obs);

/// Throws Error{WashedOut} when lambda_eff / lambda < 1e-30.
double lambda_max_heating(const Ceiling& ceiling, const NoiseSpec& n, const PhononModel& ph,
                          double rc);

/// Throws Error{WashedOut} when the diffusion at unit lambda underflows.
double lambda_max_coldatom(const Ceiling& ceiling, const NoiseSpec& n,
                           const ColdAtomDescriptor& ca, double rc);

/// Dispatches on the experiment kind.
double lambda_max(const ExperimentDescriptor& e, const NoiseSpec& n, double rc);

/// The observable an experiment bounds, predicted at (lambda, r_C); in the
/// ceiling's units.
double predict_observable(const ExperimentDescriptor& e, const CollapseParams& p,
                          const NoiseSpec& n);

/// 60 log-spaced points in [1e-9, 1e-3] m.
std::vector<double> default_rc_grid();
/// n log-spaced points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t n);

struct ScanError {
    std::string experiment_id;
    double rc;
    ErrorKind kind;
    std::string message;
    bool operator==(const ScanError&) const = default;
};

struct ScanResult {
    std::vector<ExclusionCurve> curves; // one per experiment, input order
    std::vector<ScanError> errors;      // includes washed-out points
    std::size_t attempted = 0;
};

/// Evaluates every (experiment, r_C) pair on a pool of `jobs` threads
/// (0 = hardware concurrency). The result does not depend on `jobs`.
/// rc_grid must be strictly increasing within [1e-12, 1e-1] m.
ScanResult scan(const std::vector<ExperimentDescriptor>& experiments, const NoiseSpec& n,
                const std::vector<double>& rc_grid, unsigned jobs = 0);

/// Pointwise minimum over curves sharing one r_C grid. Throws Error{EmptyInput}.
ExclusionCurve envelope(const std::vector<ExclusionCurve>& curves);

}  // namespace ccsl
