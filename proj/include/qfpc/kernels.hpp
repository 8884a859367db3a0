// Dimensionless friction integrands for the perfectly conducting plate.
//
// With x = 2 w a and u = k_x / w, each polarization channel contributes
//
//   F^PQ(x, v, z) = P^PQ(x) * int_{-1}^{1} du u B^PQ(x, u) n(x gamma (1 + u v) z)
//
// where n(y) = 1/(e^y - 1). Every bracket B is even in u, so the u-range is
// folded onto (0, 1] and the occupation factor becomes the antisymmetric
// difference n(x gamma (1 - u v) z) - n(x gamma (1 + u v) z), which vanishes
// identically at v = 0.
#pragma once

#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qfpc/specfun.hpp"

namespace qfpc {

enum class Channel { XX, YY, ZZ, XZ, ISO };

inline constexpr std::array<Channel, 4> kPolarizationChannels{Channel::XX, Channel::YY, Channel::ZZ,
                                                              Channel::XZ};

inline std::string_view to_string(Channel c) {
    switch (c) {
        case Channel::XX: return "XX";
        case Channel::YY: return "YY";
        case Channel::ZZ: return "ZZ";
        case Channel::XZ: return "XZ";
        case Channel::ISO: return "ISO";
    }
    return "?";
}

inline Channel parse_channel(std::string_view s) {
    std::string up(s);
    for (auto& ch : up) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    if (up == "XX") return Channel::XX;
    if (up == "YY") return Channel::YY;
    if (up == "ZZ") return Channel::ZZ;
    if (up == "XZ") return Channel::XZ;
    if (up == "ISO") return Channel::ISO;
    throw std::invalid_argument("unknown channel '" + std::string(s) + "'");
}

/// One value per polarization channel, in XX, YY, ZZ, XZ order.
struct ChannelValues {
    std::array<double, 4> values{};

    static constexpr std::size_t size() { return 4; }
    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
    double& operator[](Channel c) { return values[index(c)]; }
    double operator[](Channel c) const {
        if (c == Channel::ISO) return iso();
        return values[index(c)];
    }

    double xx() const { return values[0]; }
    double yy() const { return values[1]; }
    double zz() const { return values[2]; }
    double xz() const { return values[3]; }
    double iso() const { return values[0] + values[1] + values[2] + values[3]; }

    static std::size_t index(Channel c) {
        switch (c) {
            case Channel::XX: return 0;
            case Channel::YY: return 1;
            case Channel::ZZ: return 2;
            case Channel::XZ: return 3;
            case Channel::ISO: break;
        }
        throw std::invalid_argument("ChannelValues: ISO has no slot of its own");
    }

    ChannelValues& operator+=(const ChannelValues& o) {
        for (std::size_t i = 0; i < 4; ++i) values[i] += o.values[i];
        return *this;
    }
    friend ChannelValues operator+(ChannelValues l, const ChannelValues& r) { return l += r; }
    friend ChannelValues operator*(double s, ChannelValues r) {
        for (auto& x : r.values) x *= s;
        return r;
    }
};

struct Kinematics {
    double v = 0.0;
    double gamma = 1.0;

    static Kinematics from_velocity(double v) {
        if (!(v >= 0.0 && v < 1.0)) throw std::domain_error("Kinematics: velocity must be in [0, 1)");
        return {v, 1.0 / std::sqrt((1.0 - v) * (1.0 + v))};
    }
};

struct SpectralPoint {
    double x = 0.0;
    double u = 0.0;
};

namespace kernels_detail {

inline void require_positive_x(double x, const char* who) {
    if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error(std::string(who) + ": x must be positive");
}

// Power-series coefficients of the prefactor brackets, as functions of x^2.
// XX/YY: 4/3 - 2 sum_{j>=1} (-1)^j [1/(2j)! - 1/(2j-1)! - 1/(2j+1)!] x^{2j-2}
// ZZ:    4/3 - 4 sum_{j>=1} (-1)^j [1/(2j)! - 1/(2j+1)!] x^{2j-2}
// XZ:    4 sum_{j>=2} (-1)^j [3/(2j)! - 1/(2j-1)! - 3/(2j+1)!] x^{2j-3}
inline double prefactor_series(Channel c, double x) {
    const double x2 = x * x;
    double sum = 0.0;
    double pw = 1.0;      // x^{2j-2}
    double f2jm1 = 1.0;   // (2j-1)!
    for (int j = 1; j <= 14; ++j) {
        const double f2j = f2jm1 * (2 * j);
        const double f2jp1 = f2j * (2 * j + 1);
        const double sign = (j % 2) ? -1.0 : 1.0;
        double c_j = 0.0;
        switch (c) {
            case Channel::XX:
            case Channel::YY: c_j = 1.0 / f2j - 1.0 / f2jm1 - 1.0 / f2jp1; break;
            case Channel::ZZ: c_j = 1.0 / f2j - 1.0 / f2jp1; break;
            case Channel::XZ: c_j = j >= 2 ? 3.0 / f2j - 1.0 / f2jm1 - 3.0 / f2jp1 : 0.0; break;
            case Channel::ISO: break;
        }
        sum += sign * c_j * pw;
        pw *= x2;
        f2jm1 = f2jp1;
    }
    switch (c) {
        case Channel::XX:
        case Channel::YY: return 4.0 / 3.0 - 2.0 * sum;
        case Channel::ZZ: return 4.0 / 3.0 - 4.0 * sum;
        case Channel::XZ: return 4.0 * sum / x;
        case Channel::ISO: break;
    }
    throw std::invalid_argument("prefactor: ISO is not a single channel");
}

inline constexpr double kPrefactorSeriesLimit = 0.5;

}  // namespace kernels_detail

/// x-only prefactor of each channel (the brace in front of the u-integral).
/// For XZ this includes the overall factor -2.
inline double prefactor(Channel c, double x) {
    kernels_detail::require_positive_x(x, "prefactor");
    if (c == Channel::ISO) throw std::invalid_argument("prefactor: ISO is not a single channel");
    if (x < kernels_detail::kPrefactorSeriesLimit) return kernels_detail::prefactor_series(c, x);
    const double s = std::sin(x), co = std::cos(x);
    switch (c) {
        case Channel::XX:
        case Channel::YY: return 4.0 / 3.0 - 2.0 / (x * x * x) * (x * co + (x * x - 1.0) * s);
        case Channel::ZZ: return 4.0 / 3.0 - 4.0 / (x * x * x) * (x * co - s);
        case Channel::XZ: return 4.0 / (x * x * x * x) * (3.0 * x * co + (x * x - 3.0) * s);
        case Channel::ISO: break;
    }
    return 0.0;
}

inline ChannelValues prefactors(double x) {
    ChannelValues p;
    for (auto c : kPolarizationChannels) p[c] = prefactor(c, x);
    return p;
}

/// All four u-brackets at once, given u and s = sqrt(1 - u^2).
inline ChannelValues angular_brackets(double x, double u, double s) {
    const double xi = x * s;
    const auto [j0, j1] = bessel_j01(xi);
    // sqrt(1-u^2)/x * J1(x sqrt(1-u^2)) = s^2 J1(xi)/xi
    const double j1_term = s * s * (xi <= specfun_detail::kSeriesLimit ? specfun_detail::j1_over_x_series(xi)
                                                                       : j1 / xi);
    const double u2 = u * u;
    ChannelValues b;
    b[Channel::XX] = s * s * (1.0 - j0);
    b[Channel::YY] = 0.5 * (1.0 + u2) - j0 + j1_term;
    b[Channel::ZZ] = 0.5 * (1.0 + u2) + u2 * j0 + j1_term;
    b[Channel::XZ] = s * j1;
    return b;
}

/// u-bracket of one channel. Even in u.
inline double angular_bracket(Channel c, double x, double u) {
    kernels_detail::require_positive_x(x, "angular_bracket");
    if (!(u >= -1.0 && u <= 1.0)) throw std::domain_error("angular_bracket: u outside [-1, 1]");
    if (c == Channel::ISO) throw std::invalid_argument("angular_bracket: ISO is not a single channel");
    const double au = std::fabs(u);
    const double s = std::sqrt((1.0 - au) * (1.0 + au));
    return angular_brackets(x, au, s)[c];
}

/// n(a) - n(b) for 0 < a <= b, without forming either occupation number.
inline double occupation_difference(double a, double b) {
    if (b <= a) return 0.0;
    // e^{-a} (1 - e^{-(b-a)}) / ((1 - e^{-a}) (1 - e^{-b}))
    return std::exp(-a) * -std::expm1(-(b - a)) / (-std::expm1(-a) * -std::expm1(-b));
}

/// n(x gamma (1 - u v) z) - n(x gamma (1 + u v) z); >= 0 for u, v >= 0.
inline double bose_difference(double x, double u, const Kinematics& kin, double z) {
    const double base = x * kin.gamma * z;
    return occupation_difference(base * (1.0 - u * kin.v), base * (1.0 + u * kin.v));
}

/// Folded integrand on u in (0, 1]:  -P(x) u B(x, u) [n(.. 1-uv ..) - n(.. 1+uv ..)].
/// Its u-integral over (0, 1] equals F^PQ(x, v, z).
inline double integrand_F(Channel c, double x, double u, const Kinematics& kin, double z) {
    return -prefactor(c, x) * u * angular_bracket(c, x, u) * bose_difference(x, u, kin, z);
}

}  // namespace qfpc
