#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace ccsl::quad {

struct Result {
    double value = 0.0;
    double abs_error = 0.0;
    std::size_t panels = 0;
    bool converged = false;
};

struct Options {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    std::size_t max_panels = 20000;
};

/// Globally adaptive 21-point Gauss-Kronrod quadrature of f over the
/// partition given by `breakpoints` (sorted, at least two entries). The
/// panel with the largest error estimate is bisected until
/// error <= max(abs_tol, rel_tol |value|) or max_panels bisections beyond the
/// initial partition have been spent.
/// Deterministic: the same inputs always yield bit-identical output.
Result integrate(const std::function<double(double)>& f, std::span<const double> breakpoints,
                 const Options& options = {});

Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& options = {});

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Nodes and weights of the n-point rule; cached per n, thread-safe.
const GaussLegendre& gauss_legendre(std::size_t n);

}  // namespace ccsl::quad
