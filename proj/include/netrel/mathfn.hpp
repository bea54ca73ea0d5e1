#pragma once

#include <cmath>
#include <stdexcept>

namespace netrel {

namespace mathfn_detail {

inline constexpr int kBetaMaxIterations = 300;
inline constexpr double kBetaEpsilon = 3e-14;
inline constexpr double kBetaTiny = 1e-300;

// Continued fraction for the incomplete beta function, evaluated with the
// modified Lentz algorithm.
inline double beta_continued_fraction(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kBetaTiny) d = kBetaTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kBetaMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kBetaTiny) d = kBetaTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kBetaTiny) c = kBetaTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kBetaTiny) d = kBetaTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kBetaTiny) c = kBetaTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kBetaEpsilon) return h;
    }
    throw std::runtime_error("incomplete beta continued fraction did not converge");
}

}  // namespace mathfn_detail

/// Regularized incomplete beta function I_x(a, b).
inline double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0 && b > 0.0)) {
        throw std::invalid_argument("regularized_incomplete_beta requires a, b > 0");
    }
    if (x < 0.0 || x > 1.0) {
        throw std::invalid_argument("regularized_incomplete_beta requires x in [0, 1]");
    }
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double front = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                                  a * std::log(x) + b * std::log(1.0 - x));
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * mathfn_detail::beta_continued_fraction(a, b, x) / a;
    }
    return 1.0 - front * mathfn_detail::beta_continued_fraction(b, a, 1.0 - x) / b;
}

/// Two-sided p value of a Student-t statistic with `df` degrees of freedom:
/// P(|T| >= |t|) = I_{df/(df+t^2)}(df/2, 1/2).
inline double student_t_two_sided_p(double t, double df) {
    if (!(df > 0.0)) throw std::invalid_argument("degrees of freedom must be positive");
    if (!std::isfinite(t)) return 0.0;
    return regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t * t));
}

}  // namespace netrel
