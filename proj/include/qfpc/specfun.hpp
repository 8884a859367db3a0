// Special functions used by the friction kernels and the asymptotic series.
//
// Cylindrical J0/J1 for real nonnegative argument, half-integer order
// J_{n+1/2} through its finite trigonometric representation, Gamma at
// positive integers and zeta at the even integers the asymptotic formulas
// need. Everything is double precision and self-contained.
#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qfpc {

namespace specfun_detail {

inline void require_finite(double x, const char* who) {
    if (!std::isfinite(x)) {
        throw std::domain_error(std::string(who) + ": non-finite argument");
    }
}

// Ascending series, used for x <= 8 where the largest term stays below ~1e2.
inline double j0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        term *= -q / (double(k) * double(k));
        sum += term;
        if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
    }
    return sum;
}

// J1(x)/x from the ascending series; finite at x = 0 where it equals 1/2.
inline double j1_over_x_series(double x) {
    const double q = 0.25 * x * x;
    double term = 0.5, sum = 0.5;
    for (int k = 1; k < 60; ++k) {
        term *= -q / (double(k) * double(k + 1));
        sum += term;
        if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
    }
    return sum;
}

// Miller's backward recurrence normalized by J0 + 2 sum J_{2k} = 1.
// Used on the window where neither the series nor the Hankel expansion
// reaches ~1e-15.
inline std::array<double, 2> j01_miller(double x) {
    int start = static_cast<int>(x) + 40;
    if (start % 2) ++start;
    double jp1 = 0.0, j = 1e-30, norm = 0.0;
    double j0 = 0.0, j1 = 0.0;
    for (int k = start; k > 0; --k) {
        const double jm1 = (2.0 * k / x) * j - jp1;
        jp1 = j;
        j = jm1;
        if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * j;
        if (k - 1 == 1) j1 = j;
        if (std::fabs(j) > 1e250) {
            j *= 1e-250;
            jp1 *= 1e-250;
            norm *= 1e-250;
            j1 *= 1e-250;
        }
    }
    j0 = j;
    norm += j0;
    return {j0 / norm, j1 / norm};
}

// Hankel asymptotic expansion, x >= 25. The smallest term is ~e^{-2x}.
inline double hankel_j(int order, double x) {
    const double mu = 4.0 * order * order;
    double p = 1.0, q = 0.0;
    double term = 1.0;
    double prev = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) / (k * 8.0 * x);
        if (std::fabs(term) > prev) break;
        prev = std::fabs(term);
        // term_k carries the sign pattern (-1)^{floor(k/2)}
        switch (k % 4) {
            case 1: q += term; break;
            case 2: p -= term; break;
            case 3: q -= term; break;
            default: p += term; break;
        }
        if (prev < 1e-18) break;
    }
    const double c = std::cos(x), s = std::sin(x);
    double cos_chi, sin_chi;
    if (order == 0) {
        cos_chi = (c + s) * std::numbers::sqrt2 / 2.0;
        sin_chi = (s - c) * std::numbers::sqrt2 / 2.0;
    } else {
        cos_chi = (s - c) * std::numbers::sqrt2 / 2.0;
        sin_chi = -(s + c) * std::numbers::sqrt2 / 2.0;
    }
    return std::sqrt(2.0 / (std::numbers::pi * x)) * (p * cos_chi - q * sin_chi);
}

inline constexpr double kSeriesLimit = 8.0;
inline constexpr double kHankelLimit = 25.0;

}  // namespace specfun_detail

/// Cylindrical Bessel function J0 for x >= 0.
inline double bessel_j0(double x) {
    using namespace specfun_detail;
    require_finite(x, "bessel_j0");
    if (x < 0.0) throw std::domain_error("bessel_j0: negative argument");
    if (x <= kSeriesLimit) return j0_series(x);
    if (x < kHankelLimit) return j01_miller(x)[0];
    return hankel_j(0, x);
}

/// Cylindrical Bessel function J1 for x >= 0.
inline double bessel_j1(double x) {
    using namespace specfun_detail;
    require_finite(x, "bessel_j1");
    if (x < 0.0) throw std::domain_error("bessel_j1: negative argument");
    if (x <= kSeriesLimit) return x * j1_over_x_series(x);
    if (x < kHankelLimit) return j01_miller(x)[1];
    return hankel_j(1, x);
}

/// J1(x)/x, continuous through x = 0.
inline double bessel_j1_over_x(double x) {
    using namespace specfun_detail;
    if (x <= kSeriesLimit) {
        require_finite(x, "bessel_j1_over_x");
        if (x < 0.0) throw std::domain_error("bessel_j1_over_x: negative argument");
        return j1_over_x_series(x);
    }
    return bessel_j1(x) / x;
}

/// J0 and J1 together; shares the Miller sweep on the middle window.
inline std::array<double, 2> bessel_j01(double x) {
    using namespace specfun_detail;
    require_finite(x, "bessel_j01");
    if (x < 0.0) throw std::domain_error("bessel_j01: negative argument");
    if (x <= kSeriesLimit) return {j0_series(x), x * j1_over_x_series(x)};
    if (x < kHankelLimit) return j01_miller(x);
    return {hankel_j(0, x), hankel_j(1, x)};
}

/// J_order(x) for order 0 or 1.
inline double bessel_j(int order, double x) {
    switch (order) {
        case 0: return bessel_j0(x);
        case 1: return bessel_j1(x);
        default: throw std::domain_error("bessel_j: only orders 0 and 1 are supported");
    }
}

/// Gamma(n) = (n-1)! for positive integer n.
inline double gamma_int(int n) {
    if (n < 1 || n > 171) throw std::domain_error("gamma_int: argument must be in [1, 171]");
    double r = 1.0;
    for (int k = 2; k < n; ++k) r *= k;
    return r;
}

/// zeta(s) for the even arguments appearing in the closed-form limits.
inline double zeta_even(int s) {
    constexpr double pi = std::numbers::pi;
    switch (s) {
        case 4: return std::pow(pi, 4) / 90.0;
        case 8: return std::pow(pi, 8) / 9450.0;
        case 10: return std::pow(pi, 10) / 93555.0;
        case 12: return 691.0 * std::pow(pi, 12) / 638512875.0;
        default: throw std::domain_error("zeta_even: unsupported argument " + std::to_string(s));
    }
}

/// zeta(s) by direct summation, s >= 8; tail is below 1e-17.
inline double zeta_direct(int s) {
    if (s < 8) throw std::domain_error("zeta_direct: requires s >= 8");
    double sum = 0.0;
    // sum from the small end last so the leading 1 absorbs the rest cleanly
    for (int n = 200; n >= 1; --n) sum += std::pow(double(n), -s);
    return sum;
}

namespace specfun_detail {

// Ascending series of J_{n+1/2}(x).
inline double half_bessel_series(int n, double x) {
    const double nu = n + 0.5;
    const double h = 0.5 * x;
    double term = std::exp(nu * std::log(h) - std::lgamma(nu + 1.0));
    double sum = term;
    const double q = h * h;
    for (int k = 1; k < 200; ++k) {
        term *= -q / (double(k) * (k + nu));
        sum += term;
        if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
    }
    return sum;
}

struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

}  // namespace specfun_detail

/// Finite trigonometric series for J_{n+1/2}(x), x > 0.
///
/// Evaluated with compensated summation. Below x = n the finite series
/// cancels badly (its terms grow like (n^2/x)^k), so the ascending power
/// series is used there instead.
inline double bessel_half(int n, double x) {
    using namespace specfun_detail;
    require_finite(x, "bessel_half");
    if (n < 0) throw std::domain_error("bessel_half: negative order index");
    if (!(x > 0.0)) throw std::domain_error("bessel_half: x must be positive");
    if (x < double(n)) return half_bessel_series(n, x);

    // sin(x - n pi/2), cos(x - n pi/2) by quadrant rotation of sin x, cos x
    const double s = std::sin(x), c = std::cos(x);
    double sn = 0.0, cn = 0.0;
    switch (n % 4) {
        case 0: sn = s; cn = c; break;
        case 1: sn = -c; cn = s; break;
        case 2: sn = -s; cn = -c; break;
        default: sn = c; cn = -s; break;
    }
    const double inv2x = 1.0 / (2.0 * x);
    // (n+m)!/(m!(n-m)!) (2x)^{-m}, built incrementally in m
    KahanSum even, odd;
    double coef = 1.0;
    for (int m = 0; m <= n; ++m) {
        if (m > 0) coef *= double(n + m) * double(n - m + 1) / double(m) * inv2x;
        const int k = m / 2;
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        if (m % 2 == 0) {
            even.add(sign * coef);
        } else {
            odd.add(sign * coef);
        }
    }
    return std::sqrt(2.0 / (std::numbers::pi * x)) * (sn * even.sum + cn * odd.sum);
}

/// Ascending product series J_mu(x) J_nu(x); intended for small x.
inline double bessel_product_series(double mu, double nu, double x) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw std::domain_error("bessel_product_series: bad x");
    if (x == 0.0) return (mu == 0.0 && nu == 0.0) ? 1.0 : 0.0;
    const double h = 0.5 * x;
    double sum = 0.0;
    for (int n = 0; n < 200; ++n) {
        // (mu+nu+n+1)_n
        double poch = 1.0;
        for (int j = 0; j < n; ++j) poch *= mu + nu + n + 1 + j;
        const double log_mag = (mu + nu + 2.0 * n) * std::log(h) - std::lgamma(n + 1.0) -
                               std::lgamma(mu + n + 1.0) - std::lgamma(nu + n + 1.0);
        const double term = ((n % 2) ? -1.0 : 1.0) * poch * std::exp(log_mag);
        sum += term;
        if (n > 2 && std::fabs(term) < 1e-17 * std::fabs(sum)) break;
    }
    return sum;
}

}  // namespace qfpc
