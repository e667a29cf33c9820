#include "ccsl/geometry.hpp"

#include "ccsl/constants.hpp"
#include "ccsl/error.hpp"
#include "ccsl/special.hpp"

#include <cmath>
#include <cstdio>

namespace ccsl {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};

bool is_unit(const Vec3& v) { return std::abs(norm(v) - 1.0) < 1e-9; }

void require_positive(double v, const std::string& field) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw ValidationError(field, "must be > 0");
}

} // namespace

MassDistribution::MassDistribution(std::vector<Body> parts, Vec3 measurement_axis)
    : parts_(std::move(parts)), axis_(measurement_axis) {}

MassDistribution MassDistribution::sphere(double radius, double density, Vec3 axis) {
    return MassDistribution({Body{Sphere{radius}, density}}, axis);
}

MassDistribution MassDistribution::cuboid(double lx, double ly, double lz, double density,
                                          Vec3 axis) {
    return MassDistribution({Body{Cuboid{lx, ly, lz}, density}}, axis);
}

MassDistribution MassDistribution::cylinder(double radius, double length, double density,
                                            Vec3 cylinder_axis, Vec3 axis) {
    return MassDistribution({Body{Cylinder{radius, length, cylinder_axis}, density}}, axis);
}

MassDistribution MassDistribution::point_mass(double mass, Vec3 axis) {
    return MassDistribution({Body{PointMass{}, mass}}, axis);
}

bool MassDistribution::is_composite() const noexcept {
    return parts_.size() > 1 || (parts_.size() == 1 && !(parts_[0].offset == Vec3{}));
}

void validate(const MassDistribution& d) {
    if (d.parts().empty())
        throw ValidationError("geometry", "must contain at least one part");
    if (!is_unit(d.measurement_axis()))
        throw ValidationError("geometry.measurement_axis", "must be a unit vector");
    const bool single = d.parts().size() == 1;
    for (std::size_t i = 0; i < d.parts().size(); ++i) {
        const Body& b = d.parts()[i];
        const std::string prefix =
            single ? std::string("geometry.") : "geometry.part[" + std::to_string(i) + "].";
        std::visit(overloaded{
                       [&](const Sphere& s) { require_positive(s.radius, prefix + "radius"); },
                       [&](const Cuboid& c) {
                           require_positive(c.lx, prefix + "lx");
                           require_positive(c.ly, prefix + "ly");
                           require_positive(c.lz, prefix + "lz");
                           if (!is_unit(c.ex) || !is_unit(c.ey) || std::abs(dot(c.ex, c.ey)) > 1e-9)
                               throw ValidationError(prefix + "frame", "must be orthonormal");
                       },
                       [&](const Cylinder& c) {
                           require_positive(c.radius, prefix + "radius");
                           require_positive(c.length, prefix + "length");
                           if (!is_unit(c.axis))
                               throw ValidationError(prefix + "axis", "must be a unit vector");
                       },
                       [&](const PointMass&) {},
                   },
                   b.shape);
        const bool point = std::holds_alternative<PointMass>(b.shape);
        require_positive(b.density, prefix + (point ? "mass" : "density"));
        if (!std::isfinite(b.offset.x) || !std::isfinite(b.offset.y) || !std::isfinite(b.offset.z))
            throw ValidationError(prefix + "offset", "must be finite");
    }
}

double volume(const Primitive& shape) {
    return std::visit(overloaded{
                          [](const Sphere& s) { return 4.0 / 3.0 * kPi * s.radius * s.radius * s.radius; },
                          [](const Cuboid& c) { return c.lx * c.ly * c.lz; },
                          [](const Cylinder& c) { return kPi * c.radius * c.radius * c.length; },
                          [](const PointMass&) { return 0.0; },
                      },
                      shape);
}

double mass(const Body& body) {
    if (std::holds_alternative<PointMass>(body.shape))
        return body.density;
    return body.density * volume(body.shape);
}

double total_mass(const MassDistribution& d) {
    double m = 0.0;
    for (const auto& b : d.parts())
        m += mass(b);
    return m;
}

double bounding_radius(const Primitive& shape) {
    return std::visit(overloaded{
                          [](const Sphere& s) { return s.radius; },
                          [](const Cuboid& c) {
                              return 0.5 * std::sqrt(c.lx * c.lx + c.ly * c.ly + c.lz * c.lz);
                          },
                          [](const Cylinder& c) {
                              return std::sqrt(c.radius * c.radius + 0.25 * c.length * c.length);
                          },
                          [](const PointMass&) { return 0.0; },
                      },
                      shape);
}

double primitive_amplitude(const Body& body, const Vec3& k) {
    const double m = mass(body);
    return std::visit(
        overloaded{
            [&](const Sphere& s) { return m * special::sphere_kernel(norm(k) * s.radius); },
            [&](const Cuboid& c) {
                const Vec3 ez = cross(c.ex, c.ey);
                return m * special::sinc(0.5 * dot(k, c.ex) * c.lx) *
                       special::sinc(0.5 * dot(k, c.ey) * c.ly) *
                       special::sinc(0.5 * dot(k, ez) * c.lz);
            },
            [&](const Cylinder& c) {
                const double kpar = dot(k, c.axis);
                const double kperp = std::sqrt(std::max(0.0, dot(k, k) - kpar * kpar));
                return m * special::jinc(kperp * c.radius) * special::sinc(0.5 * kpar * c.length);
            },
            [&](const PointMass&) { return m; },
        },
        body.shape);
}

std::complex<double> form_factor(const MassDistribution& d, const Vec3& k) {
    std::complex<double> sum{0.0, 0.0};
    for (const auto& b : d.parts()) {
        const double amp = primitive_amplitude(b, k);
        const double phase = -dot(k, b.offset);
        sum += amp * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    return sum;
}

double form_factor_sq(const MassDistribution& d, const Vec3& k) {
    if (d.parts().size() == 1) {
        const double a = primitive_amplitude(d.parts()[0], k);
        return a * a;
    }
    return std::norm(form_factor(d, k));
}

MassDistribution rotated(const MassDistribution& d, const Mat3& r) {
    std::vector<Body> parts;
    parts.reserve(d.parts().size());
    for (const auto& b : d.parts()) {
        Body out = b;
        out.offset = r * b.offset;
        std::visit(overloaded{
                       [](Sphere&) {},
                       [&](Cuboid& c) {
                           c.ex = r * c.ex;
                           c.ey = r * c.ey;
                       },
                       [&](Cylinder& c) { c.axis = r * c.axis; },
                       [](PointMass&) {},
                   },
                   out.shape);
        parts.push_back(out);
    }
    return MassDistribution(std::move(parts), r * d.measurement_axis());
}

std::string canonical_key(const MassDistribution& d) {
    std::string key;
    char buf[96];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%a,", v);
        key += buf;
    };
    auto put_vec = [&](const Vec3& v) {
        put(v.x);
        put(v.y);
        put(v.z);
    };
    put_vec(d.measurement_axis());
    for (const auto& b : d.parts()) {
        key += '|';
        std::visit(overloaded{
                       [&](const Sphere& s) {
                           key += "S:";
                           put(s.radius);
                       },
                       [&](const Cuboid& c) {
                           key += "C:";
                           put(c.lx);
                           put(c.ly);
                           put(c.lz);
                           put_vec(c.ex);
                           put_vec(c.ey);
                       },
                       [&](const Cylinder& c) {
                           key += "Y:";
                           put(c.radius);
                           put(c.length);
                           put_vec(c.axis);
                       },
                       [&](const PointMass&) { key += "P:"; },
                   },
                   b.shape);
        put(b.density);
        put_vec(b.offset);
    }
    return key;
}

} // namespace ccsl
