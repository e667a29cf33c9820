#include "ccsl/special.hpp"

#include "ccsl/constants.hpp"

#include <cmath>
#include <limits>

namespace ccsl::special {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

double j1_series(double x) {
    // sum_k (-1)^k (x/2)^(2k+1) / (k! (k+1)!)
    const double h = 0.5 * x;
    const double h2 = h * h;
    double term = h;
    double sum = term;
    for (int k = 1; k < 60; ++k) {
        term *= -h2 / (static_cast<double>(k) * (k + 1));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum))
            break;
    }
    return sum;
}

// Miller's backward recurrence, normalized with J0 + 2 sum J_2k = 1.
double j1_miller(double x) {
    const int start = 2 * static_cast<int>((x + 30.0 + 3.0 * std::sqrt(x)) / 2.0);
    const double two_over_x = 2.0 / x;
    double jp = 0.0;   // J_{k+1}
    double jk = 1e-30; // J_k
    double norm = 0.0;
    double j1 = 0.0;
    for (int k = start; k > 0; --k) {
        const double jm = k * two_over_x * jk - jp; // J_{k-1}
        jp = jk;
        jk = jm;
        if (k - 1 == 1)
            j1 = jk;
        if ((k - 1) % 2 == 0 && k - 1 > 0)
            norm += 2.0 * jk;
        if (std::abs(jk) > 1e250) {
            jk *= 1e-250;
            jp *= 1e-250;
            j1 *= 1e-250;
            norm *= 1e-250;
        }
    }
    norm += jk; // J_0
    return j1 / norm;
}

// Hankel expansion; phases use sin/cos of x directly to avoid reducing x - 3pi/4.
double j1_asymptotic(double x) {
    constexpr double mu = 4.0;
    double p = 1.0;
    double q = 0.0;
    double term = 1.0;
    const double eightx = 8.0 * x;
    double last = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (k * eightx);
        if (std::abs(term) >= last)
            break;
        last = std::abs(term);
        switch (k % 4) {
        case 1: q += term; break;
        case 2: p -= term; break;
        case 3: q -= term; break;
        case 0: p += term; break;
        }
        if (last < 1e-18)
            break;
    }
    const double s = std::sin(x);
    const double c = std::cos(x);
    const double cos_chi = (s - c) * kInvSqrt2;  // cos(x - 3pi/4)
    const double sin_chi = -(s + c) * kInvSqrt2; // sin(x - 3pi/4)
    return std::sqrt(2.0 / (kPi * x)) * (p * cos_chi - q * sin_chi);
}

double scaled_i_series(int nu, double x) {
    const double h = 0.5 * x;
    const double h2 = h * h;
    double term = nu == 0 ? 1.0 : h;
    double sum = term;
    for (int k = 1; k < 500; ++k) {
        term *= h2 / (static_cast<double>(k) * (k + nu));
        sum += term;
        if (term < 1e-18 * sum)
            break;
    }
    return sum * std::exp(-x);
}

double scaled_i_asymptotic(int nu, double x) {
    const double mu = 4.0 * nu * nu;
    double sum = 1.0;
    double term = 1.0;
    double last = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 400; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= -(mu - odd * odd) / (k * 8.0 * x);
        if (std::abs(term) >= last)
            break;
        last = std::abs(term);
        sum += term;
        if (last < 1e-18)
            break;
    }
    return sum / std::sqrt(kTwoPi * x);
}

constexpr double kSeriesAsymptoticSwitch = 50.0;

// Backward evaluation of K_n = x + ((n+1)/2) / K_{n+1}, returning K_0, K_1, K_2.
struct ContinuedFraction {
    double k0, k1, k2;
};

ContinuedFraction erfc_fraction(double x, int depth) {
    double k = x;
    double k0 = x, k1 = x, k2 = x;
    for (int n = depth - 1; n >= 0; --n) {
        k = x + 0.5 * (n + 1) / k;
        if (n == 2) k2 = k;
        if (n == 1) k1 = k;
        if (n == 0) k0 = k;
    }
    return {k0, k1, k2};
}

int fraction_depth(double x) {
    // Converged to below 1e-17 relative for x >= 2 (checked by doubling).
    const int depth = 12 + static_cast<int>(400.0 / (x * x));
    return depth < 400 ? depth : 400;
}

} // namespace

double bessel_j1(double x) {
    if (x < 0.0)
        return -bessel_j1(-x);
    if (x <= 1.0)
        return j1_series(x);
    if (x <= 25.0)
        return j1_miller(x);
    return j1_asymptotic(x);
}

double bessel_i0e(double x) {
    x = std::abs(x);
    return x <= kSeriesAsymptoticSwitch ? scaled_i_series(0, x) : scaled_i_asymptotic(0, x);
}

double bessel_i1e(double x) {
    const double ax = std::abs(x);
    const double v = ax <= kSeriesAsymptoticSwitch ? scaled_i_series(1, ax)
                                                    : scaled_i_asymptotic(1, ax);
    return x < 0.0 ? -v : v;
}

double one_minus_i0e_plus_i1e(double x) {
    if (x <= 0.0)
        return 0.0;
    if (x > kSeriesAsymptoticSwitch)
        return 1.0 - (bessel_i0e(x) + bessel_i1e(x));
    // e^x - I0 - I1 = sum_{n>=1} x^n / n! (1 - C(n, n/2) / 2^n), all terms positive.
    double power = 1.0; // x^n / n!
    double central = 1.0; // C(n, floor(n/2)) / 2^n
    double sum = 0.0;
    for (int n = 1; n < 1000; ++n) {
        power *= x / n;
        if (n % 2 == 1)
            central *= static_cast<double>(n) / (n + 1);
        const double term = power * (1.0 - central);
        sum += term;
        if (n > x && term < 1e-18 * sum)
            break;
    }
    return sum * std::exp(-x);
}

double erfcx(double x) {
    if (x < 0.0)
        return 2.0 * std::exp(x * x) - erfcx(-x);
    if (x < 2.0)
        return std::exp(x * x) * std::erfc(x);
    const auto cf = erfc_fraction(x, fraction_depth(x));
    return 1.0 / (kSqrtPi * cf.k0);
}

double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0));
    }
    return std::sin(x) / x;
}

double sphere_kernel(double u) {
    u = std::abs(u);
    if (u < 1.0) {
        // 3 sum_{n>=1} (-1)^(n+1) 2n u^(2n-2) / (2n+1)!
        const double u2 = u * u;
        double sum = 0.0;
        double fact = 6.0; // (2n+1)!
        double power = 1.0;
        for (int n = 1; n <= 12; ++n) {
            const double term = 2.0 * n * power / fact;
            sum += (n % 2 == 1) ? term : -term;
            power *= u2;
            fact *= (2.0 * n + 2.0) * (2.0 * n + 3.0);
        }
        return 3.0 * sum;
    }
    return 3.0 * (std::sin(u) - u * std::cos(u)) / (u * u * u);
}

double jinc(double u) {
    u = std::abs(u);
    if (u < 1e-4) {
        const double u2 = u * u;
        return 1.0 - u2 / 8.0 * (1.0 - u2 / 24.0 * (1.0 - u2 / 48.0));
    }
    return 2.0 * bessel_j1(u) / u;
}

double phonon_suppression(double x) {
    if (!(x > 0.0))
        return 0.0;
    if (x < 2.0) {
        const double x2 = x * x;
        const double bracket = 0.5 - x2 + kSqrtPi * x2 * x * erfcx(x);
        return 4.0 * x2 / 3.0 * bracket;
    }
    if (x > 1e4) {
        // 1 - 5/(2x^2) + 35/(4x^4); the next term is below 1e-22.
        const double inv2 = 1.0 / (x * x);
        return 1.0 - 2.5 * inv2 * (1.0 - 3.5 * inv2);
    }
    // bracket = (1/2 + x / K2) / (2 K0 K1)
    const auto cf = erfc_fraction(x, fraction_depth(x));
    const double bracket = (0.5 + x / cf.k2) / (2.0 * cf.k0 * cf.k1);
    return 4.0 * x * x / 3.0 * bracket;
}

} // namespace ccsl::special
