// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include "ccsl/bounds.hpp"
#include "ccsl/constants.hpp"
#include "ccsl/diffusion.hpp"
#include "ccsl/error.hpp"
#include "ccsl/predict.hpp"
#include "ccsl/registry.hpp"
#include "ccsl/special.hpp"
#include "fixtures/reference_values.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

using namespace ccsl;

namespace {

using Clock = std::chrono::steady_clock;

double rel_diff(double a, double b) {
    if (a == b)
        return 0.0;
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Outcome phonon_equivalence() {
    const auto t0 = Clock::now();
    const PhononModel cu{3000.0};
    const double rc = 1e-7;
    double worst = 0.0;
    for (int i = 0; i < 25; ++i) {
        const double x = std::pow(10.0, -3.0 + 6.0 * i / 24.0);
        const auto n = NoiseSpec::exponential(x * cu.v_s / rc);
        worst = std::max(worst, rel_diff(lambda_eff_quad({1.0, rc}, n, cu, 1e-12),
                                         lambda_eff_closed({1.0, rc}, n, cu)));
    }
    const double t = seconds_since(t0);
    return {worst <= 1e-8 && t < 10.0, fmt("max rel diff %.2e over 25 points, %.2f s", worst, t)};
}

Outcome white_limit() {
    double worst = 0.0;
    std::string where;
    auto track = [&](double colored, double white, const std::string& what) {
        const double d = rel_diff(colored, white);
        if (d > worst) {
            worst = d;
            where = what;
        }
    };
    auto near_white = [](double omega_char) { return NoiseSpec::exponential(1e6 * omega_char); };
    const auto w = NoiseSpec::white();
    const MechanicalOscillator osc{1.2e-10, kTwoPi * 8174.01, 0.1, 0.1};
    for (const auto& e : load_all_bundled()) {
        for (double rc : {1e-9, 1e-7, 1e-5, 1e-3}) {
            const CollapseParams p{1e-8, rc};
            switch (e.kind) {
            case ExperimentKind::Optomechanical: {
                const auto d = effective_geometry(e);
                const double omega = e.ceiling.probe.lo;
                track(dns_ccsl(d, p, near_white(omega), omega), dns_ccsl(d, p, w, omega), e.id + " force PSD");
                track(dns_total(osc, d, p, near_white(omega), omega), dns_total(osc, d, p, w, omega),
                      e.id + " displacement PSD");
                break;
            }
            case ExperimentKind::XRay:
                track(xray_rate(p, near_white(e.omega_obs), e.omega_obs), xray_rate(p, w, e.omega_obs),
                      "xray rate");
                break;
            case ExperimentKind::BulkHeating: {
                const auto n = near_white(e.phonon->v_s / rc);
                track(lambda_eff(p, n, *e.phonon), lambda_eff(p, w, *e.phonon), "lambda_eff");
                track(lambda_eff_quad(p, n, *e.phonon), p.lambda, "lambda_eff quadrature");
                track(heating_rate(p, n, *e.phonon), heating_rate(p, w, *e.phonon), "heating power");
                break;
            }
            case ExperimentKind::ColdAtom: {
                const auto n = near_white(1.0 / e.coldatom->expansion_time);
                track(cold_atom_diffusion(p, n, *e.coldatom), cold_atom_diffusion(p, w, *e.coldatom),
                      "cold-atom variance");
                break;
            }
            }
        }
    }
    // For the cold-atom variance the exact deviation is 1/z - 2/z^3 with
    // z = 1e6, which sits 2e-18 below the tolerance: under one ulp.
    return {worst <= 1e-6, fmt("worst rel diff %.10e (%s); exact cold-atom deviation 1e-6 - 2e-18",
                               worst, where.c_str())};
}

Outcome point_mass_identity() {
    double worst = 0.0;
    for (int i = 0; i <= 12; ++i) {
        const double rc = std::pow(10.0, -9.0 + 0.5 * i);
        for (double shrink : {100.0, 1000.0}) {
            const auto d = MassDistribution::sphere(rc / shrink, 2000.0);
            const double m = total_mass(d);
            const double lambda = 1e-8;
            const double expected = lambda * m * m / (2.0 * kConstants.m0 * kConstants.m0 * rc * rc);
            worst = std::max(worst, rel_diff(lambda * eta_reduced_kspace(d, rc).eta, expected));
        }
    }
    return {worst <= 1e-2, fmt("max rel diff %.2e at r_C >= 100 R, r_C in [1e-9, 1e-3] m", worst)};
}

Outcome xray_point() {
    const double v = lambda_max(load("xray"), NoiseSpec::white(), 1e-7);
    return {rel_diff(v, 8.03e-12) <= 1e-3, fmt("lambda_max = %.6e s^-1", v)};
}

Outcome cutoff_ratios() {
    const auto cant = load("cantilever");
    const double r1 = lambda_max(cant, NoiseSpec::exponential(1e4), 1e-7) / lambda_max(cant, NoiseSpec::white(), 1e-7);
    const double e1 = 1.0 + std::pow(kTwoPi * 8174.01 / 1e4, 2);
    const auto xr = load("xray");
    const double r2 = lambda_max(xr, NoiseSpec::exponential(1e15), 1e-7) / lambda_max(xr, NoiseSpec::white(), 1e-7);
    const double e2 = 1.0 + 1e8;
    return {rel_diff(r1, e1) <= 1e-3 && rel_diff(r1, 27.38) <= 1e-3 && rel_diff(r2, e2) <= 1e-3,
            fmt("cantilever %.4f (expected %.4f), xray %.6e (expected %.6e)", r1, e1, r2, e2)};
}

Outcome round_trip() {
    std::mt19937_64 rng(20240101);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    int draws = 0;
    int washed = 0;
    for (const auto& e : load_all_bundled()) {
        int done = 0;
        while (done < 20) {
            const double rc = std::pow(10.0, -9.0 + 6.0 * u(rng));
            const auto n = NoiseSpec::exponential(std::pow(10.0, 1.0 + 15.0 * u(rng)));
            double lm;
            try {
                lm = lambda_max(e, n, rc);
            } catch (const Error& err) {
                if (err.kind() != ErrorKind::WashedOut)
                    throw;
                ++washed;
                continue;
            }
            worst = std::max(worst, rel_diff(predict_observable(e, {lm, rc}, n), e.ceiling.value));
            ++done;
            ++draws;
        }
    }
    return {worst <= 1e-10, fmt("%d draws, %d washed-out redraws, max rel diff %.2e", draws, washed, worst)};
}

Outcome monotonicity() {
    int violations = 0;
    for (const auto& e : load_all_bundled()) {
        for (double rc : {1e-9, 1e-7, 1e-5, 1e-3}) {
            double prev = HUGE_VAL;
            for (int i = 0; i < 30; ++i) {
                const double wc = std::pow(10.0, -2.0 + 20.0 * i / 29.0);
                double v;
                try {
                    v = lambda_max(e, NoiseSpec::exponential(wc), rc);
                } catch (const Error& err) {
                    if (err.kind() != ErrorKind::WashedOut)
                        throw;
                    v = HUGE_VAL;
                }
                if (v > prev * (1.0 + 1e-12))
                    ++violations;
                prev = v;
            }
            if (lambda_max(e, NoiseSpec::white(), rc) > prev * (1.0 + 1e-12))
                ++violations;
        }
    }
    // Spectrum: decreasing in omega, increasing in the cutoff, bounded by 1.
    for (int i = 0; i < 60; ++i) {
        const auto n = NoiseSpec::exponential(std::pow(10.0, -3.0 + 0.35 * i));
        double prev = 2.0;
        for (int j = 0; j < 60; ++j) {
            const double s = spectrum(n, std::pow(10.0, -4.0 + 0.4 * j));
            if (!(s <= prev) || !(s > 0.0 && s <= 1.0))
                ++violations;
            prev = s;
        }
        if (i > 0 && spectrum(n, 1e3) < spectrum(NoiseSpec::exponential(std::pow(10.0, -3.0 + 0.35 * (i - 1))), 1e3))
            ++violations;
    }
    const auto ca = *load("cold-atom").coldatom;
    for (double wc : {1e-4, 1e-1, 0.5, 1.0, 10.0, 1e5}) {
        double prev = 0.0;
        for (int i = 1; i <= 400; ++i) {
            const double v = cold_atom_diffusion({1e-8, 1e-7}, NoiseSpec::exponential(wc), ca, 0.01 * i);
            if (!(v > prev))
                ++violations;
            prev = v;
        }
    }
    return {violations == 0, fmt("%d violations", violations)};
}

Outcome figure_scan() {
    const auto t0 = Clock::now();
    const auto ex = load_all_bundled();
    const auto grid = default_rc_grid();
    const std::vector<NoiseSpec> panels{NoiseSpec::white(), NoiseSpec::exponential(1e15),
                                        NoiseSpec::exponential(1e4), NoiseSpec::exponential(1e1)};
    std::vector<ScanResult> results;
    for (const auto& n : panels)
        results.push_back(scan(ex, n, grid));
    const double t = seconds_since(t0);

    bool ok = t < 300.0;
    double weakest = HUGE_VAL;
    int checked = 0;
    for (std::size_t i = 0; i < ex.size(); ++i) {
        if (ex[i].ceiling.kind != CeilingKind::ForcePSD || !(ex[i].ceiling.probe.lo > 1e3))
            continue;
        const auto& white = results[0].curves[i].points;
        const auto& low = results[3].curves[i].points;
        if (white.size() != grid.size() || low.size() != grid.size()) {
            ok = false;
            continue;
        }
        for (std::size_t j = 0; j < grid.size(); ++j)
            weakest = std::min(weakest, low[j].lambda_max / white[j].lambda_max);
        ++checked;
    }
    ok = ok && checked > 0 && weakest >= 1e4;
    return {ok, fmt("4 x %zu points in %.1f s; %d high-frequency force experiments, min weakening %.3e",
                    grid.size(), t, checked, weakest)};
}

Outcome erfcx_stability() {
    double prev = special::erfcx(0.0);
    bool ok = prev == 1.0;
    for (int i = 1; i <= 1200; ++i) {
        const double x = std::pow(10.0, -3.0 + 12.0 * i / 1200.0);
        const double v = special::erfcx(x);
        ok = ok && std::isfinite(v) && v > 0.0 && v < prev;
        prev = v;
    }
    double worst = 0.0;
    for (const auto& [x, ref] : fixtures::kErfcx)
        worst = std::max(worst, rel_diff(special::erfcx(x), ref));
    return {ok && worst <= 1e-12,
            fmt("finite, positive, decreasing to x = 1e9: %s; fixture max rel diff %.2e", ok ? "yes" : "no", worst)};
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"phonon closed form vs quadrature", phonon_equivalence},
        {"white-limit recovery", white_limit},
        {"point-mass eta identity", point_mass_identity},
        {"X-ray bound at r_C = 1e-7 m", xray_point},
        {"cutoff weakening ratios", cutoff_ratios},
        {"round-trip identity", round_trip},
        {"monotonicity", monotonicity},
        {"four-panel scan", figure_scan},
        {"erfcx stability", erfcx_stability},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
        std::fflush(stdout);
        failed += o.pass ? 0 : 1;
    }
    return failed == 0 ? 0 : 1;
}
