// Reduced electromagnetic Green's dyadic above a planar surface.
//
// Natural units (c = hbar = 1): omega and k are inverse lengths, the plate
// distance a is a length. The surface occupies z < 0 and both field points
// sit at z = z~ = a in vacuum.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace qfpc {

using complex = std::complex<double>;

/// Homogeneous isotropic surface material, or the perfect-conductor limit.
struct SurfaceMedium {
    double epsilon = 1.0;
    double mu = 1.0;
    bool perfect_conductor = false;

    static SurfaceMedium vacuum() { return {1.0, 1.0, false}; }
    static SurfaceMedium perfect() {
        return {std::numeric_limits<double>::infinity(), 0.0, true};
    }
    static SurfaceMedium dielectric(double eps, double mu = 1.0) {
        if (!(eps > 0.0) || !(mu >= 0.0) || !std::isfinite(eps) || !std::isfinite(mu)) {
            throw std::invalid_argument("SurfaceMedium: need epsilon > 0 and mu >= 0");
        }
        return {eps, mu, false};
    }
    /// eps * mu = 1: zero-temperature friction is absent for this family.
    static SurfaceMedium diaphanous(double eps) { return dielectric(eps, 1.0 / eps); }
};

struct SpectralArgs {
    double omega = 0.0;
    double kx = 0.0;
    double ky = 0.0;
    double a = 1.0;

    double k2() const { return kx * kx + ky * ky; }
    SpectralArgs reflected() const { return {-omega, -kx, -ky, a}; }
};

/// 3x3 complex matrix indexed (row, col) with 0,1,2 = x,y,z.
struct ReducedGreensDyadic {
    std::array<std::array<complex, 3>, 3> m{};

    complex& operator()(int i, int j) { return m[i][j]; }
    const complex& operator()(int i, int j) const { return m[i][j]; }

    ReducedGreensDyadic transposed() const {
        ReducedGreensDyadic t;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) t.m[i][j] = m[j][i];
        return t;
    }
    double max_abs() const {
        double r = 0.0;
        for (const auto& row : m)
            for (const auto& e : row) r = std::max(r, std::abs(e));
        return r;
    }
    friend ReducedGreensDyadic operator+(const ReducedGreensDyadic& l, const ReducedGreensDyadic& r) {
        ReducedGreensDyadic s;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) s.m[i][j] = l.m[i][j] + r.m[i][j];
        return s;
    }
    friend ReducedGreensDyadic operator-(const ReducedGreensDyadic& l, const ReducedGreensDyadic& r) {
        ReducedGreensDyadic d;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) d.m[i][j] = l.m[i][j] - r.m[i][j];
        return d;
    }
};

class SingularPointError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

namespace greens_detail {

inline double sgn(double x) { return (x > 0.0) - (x < 0.0); }

// Retarded branch of sqrt(k^2 - w^2 n2): real positive when evanescent,
// -i sgn(w) sqrt(w^2 n2 - k^2) when propagating.
inline complex branch_sqrt(double k2, double omega, double n2) {
    const double d = k2 - omega * omega * n2;
    if (d >= 0.0) return {std::sqrt(d), 0.0};
    return {0.0, -sgn(omega) * std::sqrt(-d)};
}

}  // namespace greens_detail

struct WaveNumbers {
    complex kappa;
    complex kappa_prime;
};

/// kappa^2 = k^2 - w^2 and kappa'^2 = k^2 - w^2 eps mu on the retarded branch.
/// The perfect conductor is a member of the eps*mu = 1 family, so its
/// kappa' is reported equal to kappa.
inline WaveNumbers propagation_wavenumbers(const SpectralArgs& args, const SurfaceMedium& medium) {
    const complex kappa = greens_detail::branch_sqrt(args.k2(), args.omega, 1.0);
    if (medium.perfect_conductor) return {kappa, kappa};
    return {kappa, greens_detail::branch_sqrt(args.k2(), args.omega, medium.epsilon * medium.mu)};
}

struct ReflectionCoefficients {
    complex rE;
    complex rH;
};

inline ReflectionCoefficients reflection_coefficients(const SurfaceMedium& medium, complex kappa,
                                                      complex kappa_prime) {
    if (medium.perfect_conductor) return {-1.0, 1.0};
    const complex kp_mu = kappa_prime / medium.mu;
    const complex kp_eps = kappa_prime / medium.epsilon;
    const complex dE = kappa + kp_mu;
    const complex dH = kappa + kp_eps;
    if (std::abs(dE) == 0.0 || std::abs(dH) == 0.0) {
        throw PoleError("reflection_coefficients: vanishing denominator");
    }
    return {(kappa - kp_mu) / dE, (kappa - kp_eps) / dH};
}

/// d^m/dz^m d^n/dz~^n of the scalar Green's function g(z, z~) at z = z~ = a.
///
/// g = e^{-kappa|z-z~|}/(2 kappa) + r e^{-kappa(z+z~)}/(2 kappa). The bulk
/// term is differentiated as the average of its two one-sided limits with
/// the contact delta dropped, which gives zero for odd m+n.
class ScalarGreens {
public:
    ScalarGreens(complex kappa, complex r, double a)
        : kappa_(kappa), r_(r), scatter_(std::exp(-2.0 * kappa * a)) {}

    complex d(int m, int n) const {
        const int p = m + n;
        complex kp = 1.0;
        for (int i = 0; i < p; ++i) kp *= kappa_;
        const complex inv = 1.0 / (2.0 * kappa_);
        const double bulk_sign = 0.5 * (((m % 2) ? -1.0 : 1.0) + ((n % 2) ? -1.0 : 1.0));
        const double scatter_sign = (p % 2) ? -1.0 : 1.0;
        return bulk_sign * kp * inv + r_ * scatter_sign * kp * scatter_ * inv;
    }
    complex operator()() const { return d(0, 0); }

private:
    complex kappa_;
    complex r_;
    complex scatter_;
};

namespace greens_detail {

inline void require_off_light_cone(const complex& kappa, const char* who) {
    if (kappa == complex(0.0, 0.0)) {
        throw SingularPointError(std::string(who) + ": kappa = 0 (light cone)");
    }
}

// Generic assembly in terms of the E and H scalar Green's functions, with
// optional extra z / z~ derivatives applied to every entry.
inline ReducedGreensDyadic assemble(const SpectralArgs& args, const ScalarGreens& gE,
                                    const ScalarGreens& gH, int dz = 0, int dzt = 0) {
    const double kx = args.kx, ky = args.ky, w2 = args.omega * args.omega;
    const double k2 = args.k2();
    ReducedGreensDyadic g;
    const complex hh = gH.d(1 + dz, 1 + dzt);
    const complex ee = gE.d(dz, dzt);
    if (k2 == 0.0) {
        // k -> 0 limit of the transverse projectors is direction dependent;
        // the symmetric average keeps the dyadic finite.
        g(0, 0) = 0.5 * (hh + w2 * ee);
        g(1, 1) = g(0, 0);
    } else {
        g(0, 0) = (kx * kx / k2) * hh + (ky * ky / k2) * w2 * ee;
        g(1, 1) = (ky * ky / k2) * hh + (kx * kx / k2) * w2 * ee;
        g(0, 1) = (kx * ky / k2) * (hh - w2 * ee);
        g(1, 0) = g(0, 1);
    }
    const complex i{0.0, 1.0};
    g(0, 2) = i * kx * gH.d(1 + dz, dzt);
    g(1, 2) = i * ky * gH.d(1 + dz, dzt);
    g(2, 0) = -i * kx * gH.d(dz, 1 + dzt);
    g(2, 1) = -i * ky * gH.d(dz, 1 + dzt);
    g(2, 2) = k2 * gH.d(dz, dzt);
    return g;
}

}  // namespace greens_detail

/// Generic reduced Green's dyadic g(w, k; a, a) above the given medium.
inline ReducedGreensDyadic greens_generic(const SpectralArgs& args, const SurfaceMedium& medium) {
    const auto [kappa, kappa_p] = propagation_wavenumbers(args, medium);
    greens_detail::require_off_light_cone(kappa, "greens_generic");
    const auto r = reflection_coefficients(medium, kappa, kappa_p);
    return greens_detail::assemble(args, ScalarGreens(kappa, r.rE, args.a),
                                   ScalarGreens(kappa, r.rH, args.a));
}

/// Closed-form reduced Green's dyadic for the perfectly conducting plate.
inline ReducedGreensDyadic greens_pc(const SpectralArgs& args) {
    const complex kappa = greens_detail::branch_sqrt(args.k2(), args.omega, 1.0);
    greens_detail::require_off_light_cone(kappa, "greens_pc");
    const complex e = std::exp(-2.0 * kappa * args.a);
    const complex inv = 1.0 / (2.0 * kappa);
    const double kx = args.kx, ky = args.ky, w2 = args.omega * args.omega;
    const complex i{0.0, 1.0};
    ReducedGreensDyadic g;
    g(0, 0) = (w2 - kx * kx) * inv * (1.0 - e);
    g(0, 1) = -kx * ky * inv * (1.0 - e);
    g(0, 2) = -0.5 * i * kx * e;
    g(1, 0) = g(0, 1);
    g(1, 1) = (w2 - ky * ky) * inv * (1.0 - e);
    g(1, 2) = -0.5 * i * ky * e;
    g(2, 0) = 0.5 * i * kx * e;
    g(2, 1) = 0.5 * i * ky * e;
    g(2, 2) = args.k2() * inv * (1.0 + e);
    return g;
}

/// (g_ij(w, k) - g_ji(-w, -k)) / 2i for any dyadic-valued function of SpectralArgs.
template <class GreensFn>
ReducedGreensDyadic anti_hermitian_part(GreensFn&& greens, const SpectralArgs& args) {
    const ReducedGreensDyadic g = greens(args);
    const ReducedGreensDyadic gr = greens(args.reflected());
    const complex two_i{0.0, 2.0};
    ReducedGreensDyadic out;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) out(i, j) = (g(i, j) - gr(j, i)) / two_i;
    return out;
}

/// Anti-Hermitian part of the perfect-conductor dyadic in closed form.
/// Zero outside the light cone; the xy/yx/yz/zy entries are included for
/// completeness.
inline ReducedGreensDyadic anti_hermitian_pc(const SpectralArgs& args) {
    ReducedGreensDyadic out;
    const double w2 = args.omega * args.omega;
    const double k2 = args.k2();
    if (k2 >= w2) return out;
    const double q = std::sqrt(w2 - k2);
    const double s = greens_detail::sgn(args.omega);
    const double c2 = std::cos(2.0 * q * args.a);
    const double s2 = std::sin(2.0 * q * args.a);
    const double kx = args.kx, ky = args.ky;
    const complex i{0.0, 1.0};
    out(0, 0) = s * (w2 - kx * kx) / (2.0 * q) * (1.0 - c2);
    out(1, 1) = s * (w2 - ky * ky) / (2.0 * q) * (1.0 - c2);
    out(2, 2) = s * k2 / (2.0 * q) * (1.0 + c2);
    out(0, 1) = -s * kx * ky / (2.0 * q) * (1.0 - c2);
    out(1, 0) = out(0, 1);
    out(0, 2) = -i * s * 0.5 * kx * s2;
    out(2, 0) = -out(0, 2);
    out(1, 2) = -i * s * 0.5 * ky * s2;
    out(2, 1) = -out(1, 2);
    return out;
}

/// Background for the rest-frame transformation.
enum class TransformBackground { PerfectConductor, Vacuum };

/// Green's dyadic g'(w', k'; a, a) seen in the frame moving with velocity v
/// along x, assembled from the lab-frame g and its z / z~ derivatives at
/// w = gamma (w' + k'_x v), k_x = gamma (k'_x + w' v), k_y = k'_y.
///
/// The xz, zx, yz and zy rows carry the sign convention that is consistent
/// with the scalar Green's functions above (see ScalarGreens).
inline ReducedGreensDyadic lorentz_transform(const SpectralArgs& primed, double v,
                                             TransformBackground background = TransformBackground::PerfectConductor) {
    if (!(std::fabs(v) < 1.0)) throw std::domain_error("lorentz_transform: |v| must be < 1");
    const double gamma = 1.0 / std::sqrt(1.0 - v * v);
    const double wp = primed.omega, kxp = primed.kx, kyp = primed.ky;
    const double shift = wp + kxp * v;
    if (shift == 0.0) {
        throw SingularPointError("lorentz_transform: w' + k'_x v = 0 (removable singularity)");
    }
    const SpectralArgs lab{gamma * shift, gamma * (kxp + wp * v), kyp, primed.a};
    const complex kappa = greens_detail::branch_sqrt(lab.k2(), lab.omega, 1.0);
    greens_detail::require_off_light_cone(kappa, "lorentz_transform");
    const bool pc = background == TransformBackground::PerfectConductor;
    const ScalarGreens gE(kappa, pc ? -1.0 : 0.0, lab.a);
    const ScalarGreens gH(kappa, pc ? 1.0 : 0.0, lab.a);

    using greens_detail::assemble;
    const ReducedGreensDyadic g = assemble(lab, gE, gH);
    const ReducedGreensDyadic g_z = assemble(lab, gE, gH, 1, 0);
    const ReducedGreensDyadic g_zt = assemble(lab, gE, gH, 0, 1);
    const ReducedGreensDyadic g_zzt = assemble(lab, gE, gH, 1, 1);

    const complex i{0.0, 1.0};
    const double o = wp / gamma;
    const double s1 = 1.0 / shift;
    const double s2 = s1 * s1;
    ReducedGreensDyadic gp;
    gp(0, 0) = g(0, 0);
    gp(1, 1) = s2 * (o * o * g(1, 1) + kyp * kyp * v * v * g(0, 0) + o * kyp * v * (g(0, 1) + g(1, 0)));
    gp(2, 2) = s2 * (o * o * g(2, 2) + v * v * g_zzt(0, 0) + i * o * v * g_zt(2, 0) - i * o * v * g_z(0, 2));
    gp(0, 1) = s1 * (o * g(0, 1) + kyp * v * g(0, 0));
    gp(1, 0) = s1 * (o * g(1, 0) + kyp * v * g(0, 0));
    gp(2, 0) = s1 * (o * g(2, 0) - i * v * g_z(0, 0));
    gp(0, 2) = s1 * (o * g(0, 2) + i * v * g_zt(0, 0));
    gp(1, 2) = s2 * (o * o * g(1, 2) + i * kyp * v * v * g_zt(0, 0) + i * o * v * g_zt(1, 0) + o * kyp * v * g(0, 2));
    gp(2, 1) = s2 * (o * o * g(2, 1) - i * kyp * v * v * g_z(0, 0) - i * o * v * g_z(0, 1) + o * kyp * v * g(2, 0));
    return gp;
}

}  // namespace qfpc
