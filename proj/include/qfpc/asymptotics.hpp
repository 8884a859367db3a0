// Closed-form limits of the friction integrals and the velocity power
// series of the cross (XZ) channel.
#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfpc/kernels.hpp"
#include "qfpc/quadrature.hpp"
#include "qfpc/specfun.hpp"

namespace qfpc {

enum class AsymptoticRegime { SmallZ, LargeZ, NR };

inline std::string_view to_string(AsymptoticRegime r) {
    switch (r) {
        case AsymptoticRegime::SmallZ: return "small-z";
        case AsymptoticRegime::LargeZ: return "large-z";
        case AsymptoticRegime::NR: return "nonrelativistic";
    }
    return "?";
}

namespace asymptotics_detail {

inline double gamma_of(double v) {
    if (!(v >= 0.0 && v < 1.0)) throw std::domain_error("velocity must be in [0, 1)");
    return 1.0 / std::sqrt((1.0 - v) * (1.0 + v));
}

inline void require_channel_z(Channel c, double z) {
    if (c == Channel::ISO) throw std::invalid_argument("asymptotic limits are per channel; ISO is not one");
    if (!(z > 0.0) || !std::isfinite(z)) throw std::domain_error("z must be positive");
}

}  // namespace asymptotics_detail

/// Leading small-z (hot or far) behaviour of f^PQ.
inline double f_small_z(Channel c, double v, double z) {
    using namespace asymptotics_detail;
    require_channel_z(c, z);
    const double g = gamma_of(v), v2 = v * v;
    const double lead = -4.0 * gamma_int(8) * zeta_even(8) / (3.0 * std::pow(z, 8)) * (32.0 / 105.0);
    switch (c) {
        case Channel::XX: return lead * std::pow(g, 4) * v * (7.0 + 3.0 * v2);
        case Channel::YY:
        case Channel::ZZ: return lead * std::pow(g, 6) * v * (14.0 + 37.0 * v2 + 9.0 * v2 * v2);
        case Channel::XZ: return 16.0 * gamma_int(4) * zeta_even(4) * v / (std::pow(z, 4) * std::pow(g, 4));
        case Channel::ISO: break;
    }
    return 0.0;
}

/// Leading large-z (cold or near) behaviour of f^PQ.
inline double f_large_z(Channel c, double v, double z) {
    using namespace asymptotics_detail;
    require_channel_z(c, z);
    const double g = gamma_of(v), v2 = v * v, v4 = v2 * v2;
    const double z12 = gamma_int(12) * zeta_even(12) / (15.0 * std::pow(z, 12));
    switch (c) {
        case Channel::XX: return -z12 * (64.0 / 3465.0) * std::pow(g, 6) * v * (99.0 + 110.0 * v2 + 15.0 * v4);
        case Channel::YY:
            return -z12 * (32.0 / 3465.0) * std::pow(g, 8) * v * (297.0 + 1034.0 * v2 + 625.0 * v4 + 60.0 * v4 * v2);
        case Channel::ZZ:
            return -8.0 * gamma_int(8) * zeta_even(8) / (3.0 * std::pow(z, 8)) * (64.0 / 105.0) * std::pow(g, 6) * v *
                   (14.0 + 37.0 * v2 + 9.0 * v4);
        case Channel::XZ:
            return 2.0 * gamma_int(10) * zeta_even(10) / (15.0 * std::pow(z, 10)) * (8.0 / 63.0) * std::pow(g, 6) *
                   v * (21.0 + 30.0 * v2 + 5.0 * v4);
        case Channel::ISO: break;
    }
    return 0.0;
}

namespace asymptotics_detail {

// Taylor coefficient of x^k in
//   h(x) = x(2x^2+3) + x^2(x^2-6) sin 2x + x(4x^2-3) cos 2x,
// the polynomial-trigonometric numerator of I(z) after integration by parts.
inline double h_coefficient(int k) {
    auto sin2 = [](int n) {  // coefficient of x^n in sin 2x
        if (n < 0 || n % 2 == 0) return 0.0;
        return (((n - 1) / 2) % 2 ? -1.0 : 1.0) * std::pow(2.0, n) / std::tgamma(n + 1.0);
    };
    auto cos2 = [](int n) {
        if (n < 0 || n % 2) return 0.0;
        return ((n / 2) % 2 ? -1.0 : 1.0) * std::pow(2.0, n) / std::tgamma(n + 1.0);
    };
    double c = sin2(k - 4) - 6.0 * sin2(k - 2) + 4.0 * cos2(k - 3) - 3.0 * cos2(k - 1);
    if (k == 1) c += 3.0;
    if (k == 3) c += 2.0;
    return c;
}

// zeta(s) for integer s >= 2 by direct summation with an Euler-Maclaurin tail.
inline double zeta_int(int s) {
    constexpr int N = 50;
    double sum = 0.0;
    for (int n = N - 1; n >= 1; --n) sum += std::pow(double(n), -s);
    const double Ns = std::pow(double(N), -s);
    // sum_{n>=N} n^-s ~ N^{1-s}/(s-1) + N^-s/2 + s N^{-s-1}/12 - s(s+1)(s+2) N^{-s-3}/720
    sum += N * Ns / (s - 1) + 0.5 * Ns + s * Ns / (12.0 * N) - s * (s + 1.0) * (s + 2.0) * Ns / (720.0 * N * N * N);
    return sum;
}

// 4 sum_{k odd} h_k k! zeta(k+1) / z^{k+1}. Terms below k = 9 vanish identically.
inline double I_large_z_series(double z) {
    double sum = 0.0;
    for (int k = 9; k < 171; k += 2) {
        const double term = 4.0 * h_coefficient(k) * std::exp(std::lgamma(k + 1.0) - (k + 1) * std::log(z)) *
                            zeta_int(k + 1);
        sum += term;
        if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
    }
    return sum;
}

inline constexpr double kISeriesThreshold = 8.0;

}  // namespace asymptotics_detail

/// I(z) = z int_0^inf [3x cos x + (x^2-3) sin x]^2 / sinh^2(xz/2) dx.
///
/// Closed form for z <= 8. Beyond that the closed form cancels O(1)
/// quantities into an O(z^-10) result, so the Bose-moment series is summed
/// instead; it converges geometrically with ratio about (2/z)^2.
inline double I_closed_form(double z) {
    using namespace asymptotics_detail;
    if (!(z > 0.0) || !std::isfinite(z)) throw std::domain_error("I_closed_form: z must be positive");
    if (z > kISeriesThreshold) return I_large_z_series(z);
    constexpr double pi = std::numbers::pi;
    const double w = 2.0 * pi / z;
    double brace = 0.0;
    if (w < 350.0) {  // csch^2 underflows beyond this
        const double coth = 1.0 / std::tanh(w);
        const double sh = std::sinh(w);
        const double csch2 = 1.0 / (sh * sh);
        const double z2 = z * z, z3 = z2 * z, z4 = z2 * z2, z5 = z4 * z;
        brace = (16.0 * std::pow(pi, 5) / z5 * (3.0 * coth * coth - 2.0) * coth +
                 16.0 * std::pow(pi, 4) / z4 * (3.0 * coth * coth - 1.0) + 24.0 * pi * pi * pi / z3 * coth +
                 6.0 * pi * pi / z2) *
                csch2;
    }
    return 8.0 * std::pow(pi, 4) / (15.0 * std::pow(z, 4)) + 2.0 * pi * pi / (z * z) - 9.0 + brace;
}

/// Nonrelativistic cross-channel friction, 2 v I(z).
inline double f_xz_nr(double v, double z) { return 2.0 * v * I_closed_form(z); }

/// sum_{m=0}^{M} v^{2m} (m+1)(m+2)...(m+n-1)/(n-1)!, which tends to gamma^{2n}.
inline double gamma_series(int n, double v, int M) {
    if (n < 1) throw std::domain_error("gamma_series: n must be >= 1");
    if (M < 0) throw std::domain_error("gamma_series: M must be >= 0");
    double sum = 0.0, vp = 1.0;
    for (int m = 0; m <= M; ++m) {
        double c = 1.0;
        for (int j = 1; j < n; ++j) c *= double(m + j) / j;
        sum += vp * c;
        vp *= v * v;
    }
    return sum;
}

/// sum_{j>=1} j^p e^{-j y}, the negative-order polylogarithm Li_{-p}(e^{-y}).
///
/// Direct j-sum for y >= 0.5. Below that the sum needs O(40/y) terms and is
/// replaced by the Eulerian-polynomial closed form t A_p(t)/(1-t)^{p+1},
/// whose terms are all positive.
inline double polylog_neg(int p, double y) {
    if (p < 0) throw std::domain_error("polylog_neg: order must be >= 0");
    if (!(y > 0.0) || !std::isfinite(y)) throw std::domain_error("polylog_neg: y must be positive");
    if (y >= 0.5) {
        double sum = 0.0;
        // j^p e^{-jy} peaks at j = p/y; stop once past it and negligible
        for (int j = 1;; ++j) {
            const double term = std::pow(double(j), p) * std::exp(-j * y);
            sum += term;
            if (j * y > p && term < 1e-18 * sum) break;
        }
        return sum;
    }
    // Eulerian numbers A(p, k), k = 0..p-1 (A(0,0) = 1)
    std::vector<double> a{1.0};
    for (int n = 1; n <= p; ++n) {
        std::vector<double> b(std::max(n, 1), 0.0);
        for (int k = 0; k < n; ++k) {
            const double left = k < static_cast<int>(a.size()) ? a[k] : 0.0;
            const double right = k >= 1 && k - 1 < static_cast<int>(a.size()) ? a[k - 1] : 0.0;
            b[k] = (k + 1) * left + (n - k) * right;
        }
        a = std::move(b);
    }
    const double t = std::exp(-y);
    const double one_minus_t = -std::expm1(-y);
    double poly = 0.0, tk = 1.0;
    if (p == 0) return t / one_minus_t;
    for (double c : a) {
        poly += c * tk;
        tk *= t;
    }
    return t * poly / std::pow(one_minus_t, p + 1);
}

struct XzSeries {
    double value = 0.0;
    std::vector<double> terms;
    double last_ratio = 0.0;  // |term_M / term_{M-1}|
    bool diverging = false;
    std::string warning;
};

/// Velocity power series of f^XZ truncated at m_max:
///   -pi sum_m v^{2m+1}/m! 2^{2-m} z^{2m+1}
///       int dx x^{4-m} J_{5/2}(x) J_{m+5/2}(x) (-x gamma)^{2m+1} Li_{-(2m+1)}(e^{-x gamma z}).
/// A diagnostic cross-check of the quadrature pipeline, not a production path.
inline XzSeries f_xz_series(double v, double z, int m_max = 8, const QuadratureConfig& cfg = {}) {
    if (!(v >= 0.0 && v < 1.0)) throw std::domain_error("f_xz_series: velocity must be in [0, 1)");
    if (!(z > 0.0) || !std::isfinite(z)) throw std::domain_error("f_xz_series: z must be positive");
    if (m_max < 0 || m_max > 12) throw std::domain_error("f_xz_series: m_max must be in [0, 12]");
    XzSeries out;
    if (v == 0.0) {
        out.terms.assign(m_max + 1, 0.0);
        return out;
    }
    const double g = asymptotics_detail::gamma_of(v);
    const double r = g * z;
    const auto& rule = GaussLegendreRule::get(cfg.gl_order_panel);
    for (int m = 0; m <= m_max; ++m) {
        const int p = 2 * m + 1;
        // x^{4-m} J_{5/2} J_{m+5/2} (x gamma)^p Li_{-p}(e^{-x gamma z}); the (-1)^p = -1 is applied below
        auto integrand = [&](double x) {
            const double y = x * r;
            return std::pow(x, 4 - m) * bessel_half(2, x) * bessel_half(m + 2, x) * std::pow(x * g, p) *
                   polylog_neg(p, y);
        };
        // the integrand peaks near x ~ (m + 4)/(gamma z) and then decays like e^{-x gamma z}
        const double peak = (m + 6.0) / r;
        double acc = 0.0;
        int quiet = 0;
        for (long k = 0; k < cfg.max_panels; ++k) {
            const double lo = k * cfg.panel_width, hi = lo + cfg.panel_width;
            const double half = 0.5 * cfg.panel_width, mid = lo + half;
            double panel = 0.0;
            for (int i = 0; i < rule.order(); ++i) panel += rule.weights()[i] * integrand(mid + half * rule.nodes()[i]);
            panel *= half;
            acc += panel;
            if (!std::isfinite(acc)) throw NonFiniteSampleError("f_xz_series: non-finite integrand", hi);
            quiet = (hi > peak && std::fabs(panel) <= 1e-18 * std::fabs(acc)) ? quiet + 1 : 0;
            if (quiet >= 3) break;
        }
        const double t = -std::numbers::pi * std::pow(v, p) / gamma_int(m + 1) * std::pow(2.0, 2 - m) *
                         std::pow(z, p) * (-acc);
        out.terms.push_back(t);
        out.value += t;
    }
    if (m_max >= 1) {
        const double prev = std::fabs(out.terms[m_max - 1]);
        out.last_ratio = prev > 0.0 ? std::fabs(out.terms[m_max]) / prev : 0.0;
        if (out.last_ratio >= 1.0) {
            out.diverging = true;
            out.warning = "series terms not decreasing at m_max (last ratio " + std::to_string(out.last_ratio) + ")";
        }
    }
    return out;
}

}  // namespace qfpc
