#pragma once

// Special functions used by the form factors and the phonon heating rate.
// All routines are double precision and free of overflow over the full
// parameter range the bounds scan visits.

namespace ccsl::special {

/// Bessel function of the first kind, order one.
double bessel_j1(double x);

/// exp(-|x|) I0(x) and exp(-|x|) I1(x) (exponentially scaled modified Bessel).
double bessel_i0e(double x);
double bessel_i1e(double x);

/// 1 - exp(-x) (I0(x) + I1(x)) for x >= 0, without cancellation at small x.
double one_minus_i0e_plus_i1e(double x);

/// Scaled complementary error function exp(x^2) erfc(x).
double erfcx(double x);

/// sin(x) / x.
double sinc(double x);

/// 3 (sin u - u cos u) / u^3, the normalized sphere amplitude.
double sphere_kernel(double u);

/// 2 J1(u) / u, the normalized disc amplitude.
double jinc(double u);

/// lambda_eff / lambda for the exponential kernel with linear phonon
/// dispersion, x = r_C Omega_c / v_S:
///   (4 x^2 / 3) [1/2 - x^2 + sqrt(pi) x^3 erfcx(x)].
/// Evaluated through the continued fraction of erfcx for x >= 2 so the
/// bracket never cancels; values lie in (0, 1) and tend to 1 as x -> inf.
double phonon_suppression(double x);

}  // namespace ccsl::special
