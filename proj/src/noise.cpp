#include "ccsl/noise.hpp"

#include "ccsl/error.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace ccsl {

NoiseSpec NoiseSpec::exponential(double omega_c) {
    if (!(omega_c > 0.0) || !std::isfinite(omega_c))
        throw Error(ErrorKind::InvalidArgument, "omega_c must be finite and > 0");
    return NoiseSpec(NoiseKind::Exponential, omega_c);
}

double time_correlation(const NoiseSpec& n, double dt) {
    if (n.is_white())
        throw Error(ErrorKind::WhiteKernelNotPointwise,
                    "white-noise correlation is a delta function");
    const double wc = n.omega_c();
    return 0.5 * wc * std::exp(-wc * std::abs(dt));
}

double spectrum(const NoiseSpec& n, double omega) {
    if (n.is_white())
        return 1.0;
    const double r = omega / n.omega_c();
    return 1.0 / (1.0 + r * r);
}

NoiseSpec parse_noise(const std::string& text) {
    if (text == "inf" || text == "white" || text == "+inf")
        return NoiseSpec::white();
    std::string_view body = text;
    if (body.starts_with("exp:"))
        body.remove_prefix(4);
    if (body == "inf")
        return NoiseSpec::white();
    double value = 0.0;
    const auto* first = body.data();
    const auto* last = body.data() + body.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw Error(ErrorKind::InvalidArgument, "invalid noise spec '" + text + "'");
    return NoiseSpec::exponential(value);
}

std::string format_noise(const NoiseSpec& n) {
    if (n.is_white())
        return "inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.8e", n.omega_c());
    return buf;
}

}  // namespace ccsl
