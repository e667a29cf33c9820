#include "ccsl/diffusion.hpp"

#include "ccsl/constants.hpp"
#include "ccsl/error.hpp"
#include "ccsl/quadrature.hpp"
#include "ccsl/special.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <vector>

namespace ccsl {

namespace {

constexpr double kRadialCutoff = 10.0;      // |k| r_C
constexpr double kSeparationCutoff = 30.0;  // gap / r_C beyond which cross terms vanish
constexpr std::size_t kMaxRadialBreakpoints = 50000;
constexpr std::size_t kMaxAngularOrder = 2048;

void validate_tol(double tol) {
    if (!(tol > 0.0 && tol < 1e-2))
        throw Error(ErrorKind::InvalidArgument, "tolerance must lie in (0, 1e-2)");
}

// int sinc^2(kL/2) exp(-s^2 k^2) dk in units of sqrt(pi)/s, z = L / (2 s).
double slab_a0(double z) {
    if (z < 1.0) {
        // sum_n (-1)^n z^{2n} / ((n+1)! (2n+1))
        const double z2 = z * z;
        double power = 1.0, fact = 1.0, sum = 0.0;
        for (int n = 0; n < 40; ++n) {
            fact *= (n + 1);
            const double term = power / (fact * (2 * n + 1));
            sum += (n % 2 == 0) ? term : -term;
            if (term < 1e-18)
                break;
            power *= z2;
        }
        return sum;
    }
    return kSqrtPi / z * std::erf(z) + std::expm1(-z * z) / (z * z);
}

// int k^2 sinc^2(kL/2) exp(-s^2 k^2) dk in units of sqrt(pi)/(2 s^3).
double slab_a2(double z) {
    if (z == 0.0)
        return 1.0;
    const double z2 = z * z;
    return -std::expm1(-z2) / z2;
}

// 2 pi int k [2 J1(kR)/(kR)]^2 exp(-s^2 k^2) dk in units of pi / s^2, x = R^2 / (2 s^2).
double disc_b0(double x) {
    if (x < 1e-8)
        return 1.0 - 0.5 * x;
    return 2.0 / x * special::one_minus_i0e_plus_i1e(x);
}

// 2 pi int k^3 [2 J1(kR)/(kR)]^2 exp(-s^2 k^2) dk in units of pi / s^4.
double disc_b2(double x) {
    if (x < 1e-8)
        return 1.0 - x;
    return 2.0 / x * special::bessel_i1e(x);
}

double cuboid_factor(const Cuboid& c, const Vec3& n, double s) {
    const Vec3 ez = cross(c.ex, c.ey);
    const double n1 = dot(n, c.ex), n2 = dot(n, c.ey), n3 = dot(n, ez);
    const double z1 = 0.5 * c.lx / s, z2 = 0.5 * c.ly / s, z3 = 0.5 * c.lz / s;
    const double a01 = slab_a0(z1), a02 = slab_a0(z2), a03 = slab_a0(z3);
    return n1 * n1 * slab_a2(z1) * a02 * a03 + n2 * n2 * a01 * slab_a2(z2) * a03 +
           n3 * n3 * a01 * a02 * slab_a2(z3);
}

double cylinder_factor(const Cylinder& c, const Vec3& n, double s) {
    const double cos_a = dot(n, c.axis);
    const double cos2 = std::min(1.0, cos_a * cos_a);
    const double sin2 = 1.0 - cos2;
    const double z = 0.5 * c.length / s;
    const double x = 0.5 * (c.radius / s) * (c.radius / s);
    return cos2 * slab_a2(z) * disc_b0(x) + sin2 * slab_a0(z) * disc_b2(x);
}

// Real-space form: g = (2 s^3 / V^2) int_0^{2R/s} 4 pi t^2 V(s t) w(t) dt with the
// overlap volume V(r) = V - pi R^2 r + pi r^3 / 12 and w(t) = exp(-t^2/4)(1/2 - t^2/12).
EtaResult sphere_factor(const Sphere& sp, double s, double tol) {
    const double r = sp.radius;
    const double vol = 4.0 / 3.0 * kPi * r * r * r;
    const double t_max = 2.0 * r / s;
    const double upper = std::min(t_max, 40.0);
    auto w = [](double t) { return std::exp(-0.25 * t * t) * (0.5 - t * t / 12.0); };

    quad::Options opt;
    opt.rel_tol = std::min(tol * 1e-2, 1e-12);
    // For small spheres the overlap volume is integrated whole; for large ones the
    // constant term is handled analytically so the remainder does not cancel.
    const bool split = t_max > 4.0;
    auto integrand = [&](double t) {
        const double rr = s * t;
        const double overlap = split ? (-kPi * r * r * rr + kPi * rr * rr * rr / 12.0)
                                     : (vol - kPi * r * r * rr + kPi * rr * rr * rr / 12.0);
        return 4.0 * kPi * t * t * (overlap / vol) * w(t);
    };
    std::vector<double> bp{0.0};
    for (double t : {1.0, 2.449489742783178, 5.0, 10.0, 20.0})
        if (t < upper)
            bp.push_back(t);
    bp.push_back(upper);
    const auto res = quad::integrate(integrand, bp, opt);
    const double scale = 2.0 * (s / r) * (s / r) * (s / r) * (3.0 / (4.0 * kPi));
    double g = scale * res.value;
    double err = scale * res.abs_error;
    if (split)
        g += 8.0 * std::exp(-(r / s) * (r / s));
    if (!res.converged || !(g > 0.0))
        throw Error(ErrorKind::QuadratureNotConverged, "sphere eta quadrature did not converge");
    return {g, err / g};
}

EtaResult primitive_factor(const Body& b, const Vec3& n, double s, double tol) {
    if (const auto* sp = std::get_if<Sphere>(&b.shape))
        return sphere_factor(*sp, s, tol);
    if (const auto* c = std::get_if<Cuboid>(&b.shape))
        return {cuboid_factor(*c, n, s), 1e-14};
    if (const auto* c = std::get_if<Cylinder>(&b.shape))
        return {cylinder_factor(*c, n, s), 1e-14};
    return {1.0, 0.0};
}

// ---- k-space cubature ----------------------------------------------------

// Orthonormal frame with n as the polar axis.
struct Frame {
    Vec3 n, e1, e2;
};

Frame frame_around(const Vec3& n) {
    const Vec3 trial = std::abs(n.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    const Vec3 e1 = normalized(cross(n, trial));
    return {n, e1, cross(n, e1)};
}

double max_extent(const MassDistribution& d) {
    double extent = 0.0;
    for (const auto& b : d.parts())
        extent = std::max(extent, norm(b.offset) + bounding_radius(b.shape));
    return extent;
}

// Integrates h(c) over c in [-1, 1] (c = cos theta) with Gauss-Legendre,
// doubling the order until two successive estimates agree.
template <class F>
double angular_gl(F&& h, std::size_t start, double tol) {
    auto rule_sum = [&](std::size_t n) {
        const auto& gl = quad::gauss_legendre(n);
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            sum += gl.weights[i] * h(gl.nodes[i]);
        return sum;
    };
    double prev = rule_sum(start);
    for (std::size_t n = 2 * start; n <= kMaxAngularOrder; n *= 2) {
        const double cur = rule_sum(n);
        if (std::abs(cur - prev) <= tol * std::abs(cur) || std::abs(cur - prev) < 1e-300)
            return cur;
        prev = cur;
    }
    throw Error(ErrorKind::QuadratureNotConverged, "angular rule did not converge");
}

// (2 / pi^{3/2}) int_0^10 u^4 exp(-u^2) A(u) du, with A the angular integral at |k| = u / s.
EtaResult radial_integral(const std::function<double(double)>& angular, std::vector<double> bp,
                          double tol) {
    quad::Options opt;
    opt.rel_tol = tol * 0.5;
    opt.abs_tol = 0.0;
    auto integrand = [&](double u) { return u * u * u * u * std::exp(-u * u) * angular(u); };
    const auto res = quad::integrate(integrand, bp, opt);
    const double scale = 2.0 / kPi32;
    if (!res.converged)
        throw Error(ErrorKind::QuadratureNotConverged, "radial quadrature did not converge");
    const double v = scale * res.value;
    return {v, v != 0.0 ? res.abs_error / std::abs(res.value) : 0.0};
}

std::vector<double> radial_breakpoints(double spacing) {
    std::vector<double> bp{0.0};
    if (spacing > 0.0 && kRadialCutoff / spacing > static_cast<double>(kMaxRadialBreakpoints))
        throw Error(ErrorKind::QuadratureNotConverged,
                    "form factor too oscillatory for k-space quadrature at this r_C");
    if (spacing > 0.0 && spacing < kRadialCutoff)
        for (double u = spacing; u < kRadialCutoff; u += spacing)
            bp.push_back(u);
    for (double u : {1.0, 2.0, 3.0, 5.0})
        if (spacing <= 0.0 || spacing >= kRadialCutoff)
            bp.push_back(u);
    bp.push_back(kRadialCutoff);
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    return bp;
}

std::size_t start_order(double k_extent) {
    std::size_t n = 16;
    while (n < kMaxAngularOrder / 2 && static_cast<double>(n) < 1.5 * k_extent + 16.0)
        n *= 2;
    return n;
}

// Full 3D angular integral of F(k) (k . n)^2 / k^2 over directions.
template <class F>
double angular_3d(F&& value_at, const Frame& fr, double k, double extent, double tol) {
    const std::size_t n_theta = start_order(k * extent);
    auto over_theta = [&](double c) {
        const double sn = std::sqrt(std::max(0.0, 1.0 - c * c));
        // Trapezoid in phi is spectrally accurate for periodic integrands.
        auto phi_sum = [&](std::size_t m) {
            double sum = 0.0;
            for (std::size_t j = 0; j < m; ++j) {
                const double phi = kTwoPi * (j + 0.5) / m;
                const Vec3 dir = fr.n * c + fr.e1 * (sn * std::cos(phi)) + fr.e2 * (sn * std::sin(phi));
                sum += value_at(dir * k);
            }
            return sum * kTwoPi / m;
        };
        std::size_t m = 2 * start_order(k * extent * sn);
        double prev = phi_sum(m);
        for (m *= 2; m <= 2 * kMaxAngularOrder; m *= 2) {
            const double cur = phi_sum(m);
            if (std::abs(cur - prev) <= 0.1 * tol * std::abs(cur) || std::abs(cur - prev) < 1e-300)
                return cur * c * c;
            prev = cur;
        }
        throw Error(ErrorKind::QuadratureNotConverged, "azimuthal rule did not converge");
    };
    return angular_gl(over_theta, n_theta, 0.1 * tol);
}

EtaResult kspace_sphere(const Body& b, double s, double tol) {
    const double r = std::get<Sphere>(b.shape).radius;
    auto angular = [&](double u) {
        const double f = special::sphere_kernel(u * r / s);
        return 4.0 * kPi / 3.0 * f * f;
    };
    return radial_integral(angular, radial_breakpoints(kPi * s / r), tol);
}

EtaResult kspace_cylinder(const Body& b, const Vec3& n, double s, double tol) {
    const auto& cy = std::get<Cylinder>(b.shape);
    const double cos_a = dot(n, cy.axis);
    const double cos2 = std::min(1.0, cos_a * cos_a);
    const double sin2 = 1.0 - cos2;
    const double extent = std::max(cy.radius, 0.5 * cy.length);
    auto angular = [&](double u) {
        const double k = u / s;
        auto h = [&](double c) {
            const double sn2 = std::max(0.0, 1.0 - c * c);
            const double f = special::jinc(k * std::sqrt(sn2) * cy.radius) *
                             special::sinc(0.5 * k * c * cy.length);
            // phi averaged: (k.n)^2 / k^2 -> cos^2(alpha) c^2 + sin^2(alpha) (1 - c^2) / 2
            return f * f * kTwoPi * (cos2 * c * c + 0.5 * sin2 * sn2);
        };
        return angular_gl(h, start_order(k * extent), 0.1 * tol);
    };
    return radial_integral(angular, radial_breakpoints(kPi * s / extent), tol);
}

EtaResult kspace_generic(const std::function<double(const Vec3&)>& weight, const MassDistribution& d,
                         double s, double tol) {
    const Frame fr = frame_around(d.measurement_axis());
    const double extent = max_extent(d);
    auto angular = [&](double u) { return angular_3d(weight, fr, u / s, extent, tol); };
    return radial_integral(angular, radial_breakpoints(extent > 0 ? kPi * s / extent : 0.0), tol);
}

} // namespace

EtaResult eta_reduced_kspace(const MassDistribution& d, double rc, double tol) {
    validate(d);
    validate_rc(rc);
    validate_tol(tol);
    const double m = total_mass(d);
    EtaResult g;
    if (!d.is_composite() && std::holds_alternative<Sphere>(d.parts()[0].shape)) {
        g = kspace_sphere(d.parts()[0], rc, tol);
    } else if (!d.is_composite() && std::holds_alternative<Cylinder>(d.parts()[0].shape)) {
        g = kspace_cylinder(d.parts()[0], d.measurement_axis(), rc, tol);
    } else if (!d.is_composite() && std::holds_alternative<PointMass>(d.parts()[0].shape)) {
        g = {1.0, 0.0};
    } else {
        auto weight = [&](const Vec3& k) { return form_factor_sq(d, k) / (m * m); };
        g = kspace_generic(weight, d, rc, tol);
    }
    const double point = m * m / (2.0 * kConstants.m0 * kConstants.m0 * rc * rc);
    return {point * g.eta, g.est_error};
}

EtaResult geometry_factor(const MassDistribution& d, double rc, double tol) {
    validate(d);
    validate_rc(rc);
    validate_tol(tol);
    const auto& parts = d.parts();
    const Vec3& n = d.measurement_axis();

    // Accumulate in units of (total mass)^2.
    const double m_total = total_mass(d);
    double weighted = 0.0;
    double abs_err = 0.0;
    for (const auto& b : parts) {
        const double frac = mass(b) / m_total;
        const auto g = primitive_factor(b, n, rc, tol);
        weighted += frac * frac * g.eta;
        abs_err += frac * frac * g.eta * g.est_error;
    }

    for (std::size_t i = 0; i < parts.size(); ++i) {
        for (std::size_t j = i + 1; j < parts.size(); ++j) {
            const Body& a = parts[i];
            const Body& b = parts[j];
            const Vec3 sep = a.offset - b.offset;
            const double gap = norm(sep) - bounding_radius(a.shape) - bounding_radius(b.shape);
            if (gap > kSeparationCutoff * rc)
                continue; // cross-correlation support lies where the kernel is below e^-225
            auto weight = [&](const Vec3& k) {
                const double amp = primitive_amplitude(a, k) * primitive_amplitude(b, k);
                return 2.0 * amp * std::cos(dot(k, sep)) / (m_total * m_total);
            };
            const MassDistribution pair({a, b}, n);
            const auto cross_term = kspace_generic(weight, pair, rc, tol);
            weighted += cross_term.eta;
            abs_err += std::abs(cross_term.eta) * cross_term.est_error;
        }
    }
    if (!(weighted > 0.0))
        throw Error(ErrorKind::QuadratureNotConverged, "non-positive eta from cross terms");
    return {weighted, abs_err / weighted};
}

EtaResult eta_reduced(const MassDistribution& d, double rc, double tol) {
    const auto g = geometry_factor(d, rc, tol);
    const double m = total_mass(d);
    const double point = m * m / (2.0 * kConstants.m0 * kConstants.m0 * rc * rc);
    return {point * g.eta, g.est_error};
}

EtaResult eta(const MassDistribution& d, const CollapseParams& p, double tol) {
    validate_params(p);
    const auto reduced = eta_reduced(d, p.rc, tol);
    return {p.lambda * reduced.eta, reduced.est_error};
}

EtaResult EtaCache::eta_reduced(const MassDistribution& d, double rc, double tol) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "#%a#%a", rc, tol);
    std::string key = canonical_key(d) + buf;
    {
        std::shared_lock lock(mutex_);
        if (auto it = entries_.find(key); it != entries_.end()) {
            hits_.fetch_add(1, std::memory_order_relaxed);
            return it->second;
        }
    }
    const auto value = ccsl::eta_reduced(d, rc, tol);
    std::unique_lock lock(mutex_);
    entries_.emplace(std::move(key), value);
    return value;
}

std::size_t EtaCache::size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
}

std::size_t EtaCache::hits() const { return hits_.load(std::memory_order_relaxed); }

} // namespace ccsl
