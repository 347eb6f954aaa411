#include "lfc/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lfc {
namespace {

constexpr int max_terms = 600;
constexpr double frac_eps = 1e-16;
constexpr double frac_tiny = 1e-300;

double gamma_p_series(double a, double x) {
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int k = 0; k < max_terms; ++k) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * frac_eps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_fraction(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / frac_tiny;
    double d = 1.0 / b;
    double h = d;
    for (int k = 1; k <= max_terms; ++k) {
        const double an = -static_cast<double>(k) * (k - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < frac_tiny) d = frac_tiny;
        c = b + an / c;
        if (std::abs(c) < frac_tiny) c = frac_tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < frac_eps) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double beta_fraction(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < frac_tiny) d = frac_tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_terms; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < frac_tiny) d = frac_tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < frac_tiny) c = frac_tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < frac_tiny) d = frac_tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < frac_tiny) c = frac_tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < frac_eps) break;
    }
    return h;
}

} // namespace

double normal_cdf(double z) {
    return 0.5 * std::erfc(-z / std::numbers::sqrt2);
}

double normal_two_sided_p(double z) {
    const double p = std::erfc(std::abs(z) / std::numbers::sqrt2);
    return p > 1.0 ? 1.0 : p;
}

double gamma_p(double a, double x) {
    if (!(a > 0.0)) throw std::domain_error("gamma_p requires a > 0");
    if (x < 0.0) throw std::domain_error("gamma_p requires x >= 0");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_fraction(a, x);
}

double gamma_q(double a, double x) {
    if (!(a > 0.0)) throw std::domain_error("gamma_q requires a > 0");
    if (x < 0.0) throw std::domain_error("gamma_q requires x >= 0");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_fraction(a, x);
}

double beta_inc(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::domain_error("beta_inc requires a, b > 0");
    if (x < 0.0 || x > 1.0)
        throw std::domain_error("beta_inc requires x in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) -
                            std::lgamma(b) + a * std::log(x) +
                            b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * beta_fraction(a, b, x) / a;
    return 1.0 - front * beta_fraction(b, a, 1.0 - x) / b;
}

double chi2_cdf(double x, double k) {
    if (x <= 0.0) return 0.0;
    return gamma_p(0.5 * k, 0.5 * x);
}

double chi2_sf(double x, double k) {
    if (x <= 0.0) return 1.0;
    return gamma_q(0.5 * k, 0.5 * x);
}

double f_cdf(double x, double d1, double d2) {
    if (x <= 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    return beta_inc(0.5 * d1, 0.5 * d2, d1 * x / (d1 * x + d2));
}

double f_sf(double x, double d1, double d2) {
    if (x <= 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    return beta_inc(0.5 * d2, 0.5 * d1, d2 / (d2 + d1 * x));
}

} // namespace lfc
