#pragma once

// Scalar distribution functions used by the nonparametric statistics module.
// All routines target at least 1e-10 relative accuracy over the argument
// ranges that arise in rank tests (moderate z, chi-square, and F values).

namespace lfc {

// Standard normal CDF, evaluated via erfc for full lower-tail accuracy.
double normal_cdf(double z);

// Two-sided normal tail probability: 2 * (1 - Phi(|z|)).
double normal_two_sided_p(double z);

// Regularized lower/upper incomplete gamma functions P(a, x) and Q(a, x),
// a > 0, x >= 0. Series expansion for x < a + 1, Lentz continued fraction
// otherwise.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Regularized incomplete beta function I_x(a, b), a, b > 0, x in [0, 1].
double beta_inc(double a, double b, double x);

// Chi-square distribution with k degrees of freedom.
double chi2_cdf(double x, double k);
double chi2_sf(double x, double k);

// F distribution with (d1, d2) degrees of freedom.
double f_cdf(double x, double d1, double d2);
double f_sf(double x, double d1, double d2);

} // namespace lfc
