#pragma once

#include "ccsl/vec3.hpp"

#include <complex>
#include <string>
#include <variant>
#include <vector>

namespace ccsl {

struct Sphere {
    double radius; // m
    bool operator==(const Sphere&) const = default;
};

/// Rectangular block with edges lx, ly, lz along the orthonormal frame
/// (ex, ey, ex x ey).
struct Cuboid {
    double lx, ly, lz; // m
    Vec3 ex{1, 0, 0};
    Vec3 ey{0, 1, 0};
    bool operator==(const Cuboid&) const = default;
};

struct Cylinder {
    double radius; // m
    double length; // m
    Vec3 axis{0, 0, 1};
    bool operator==(const Cylinder&) const = default;
};

struct PointMass {
    bool operator==(const PointMass&) const = default;
};

using Primitive = std::variant<Sphere, Cuboid, Cylinder, PointMass>;

/// One homogeneous primitive centred at `offset`. For PointMass `density`
/// holds the total mass in kg; otherwise it is kg/m^3.
struct Body {
    Primitive shape;
    double density;
    Vec3 offset{};
    bool operator==(const Body&) const = default;
};

/// A rigid body built from one or more homogeneous primitives, together with
/// the direction along which its displacement is measured.
class MassDistribution {
public:
    MassDistribution() = default;
    MassDistribution(std::vector<Body> parts, Vec3 measurement_axis = {1, 0, 0});

    static MassDistribution sphere(double radius, double density, Vec3 axis = {1, 0, 0});
    static MassDistribution cuboid(double lx, double ly, double lz, double density,
                                   Vec3 axis = {1, 0, 0});
    static MassDistribution cube(double side, double density, Vec3 axis = {1, 0, 0}) {
        return cuboid(side, side, side, density, axis);
    }
    static MassDistribution cylinder(double radius, double length, double density,
                                     Vec3 cylinder_axis = {0, 0, 1}, Vec3 axis = {1, 0, 0});
    static MassDistribution point_mass(double mass, Vec3 axis = {1, 0, 0});

    const std::vector<Body>& parts() const noexcept { return parts_; }
    const Vec3& measurement_axis() const noexcept { return axis_; }
    bool is_composite() const noexcept;

    bool operator==(const MassDistribution&) const = default;

private:
    std::vector<Body> parts_;
    Vec3 axis_{1, 0, 0};
};

/// Throws ValidationError on non-positive lengths/density, non-unit axes or
/// an empty part list.
void validate(const MassDistribution& d);

double volume(const Primitive& shape);
double mass(const Body& body);
double total_mass(const MassDistribution& d);

/// Radius of the smallest origin-centred ball containing the primitive.
double bounding_radius(const Primitive& shape);

/// mu~(k) = integral of mu(x) exp(-i k.x) over the body, kg.
std::complex<double> form_factor(const MassDistribution& d, const Vec3& k);
/// |mu~(k)|^2 in kg^2.
double form_factor_sq(const MassDistribution& d, const Vec3& k);
/// Real amplitude of a primitive centred at the origin.
double primitive_amplitude(const Body& body, const Vec3& k);

/// Applies the rotation to every offset, orientation and the measurement axis.
MassDistribution rotated(const MassDistribution& d, const Mat3& r);

/// Stable textual key (hex floats) identifying the distribution exactly.
std::string canonical_key(const MassDistribution& d);

}  // namespace ccsl
