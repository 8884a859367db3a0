// Independent brute-force evaluations used to validate the reduced integrals.
//
// fixed_omega_bruteforce works directly in transverse wave-vector space:
// at a fixed frequency it integrates the product of two anti-Hermitian PC
// Green's dyadic entries over both light-cone disks, weighted by
// (kbar_x - k_x) coth(beta gamma (w + kbar_x v)/2). Nothing from the
// folded u-integrand or the Bose factor is reused.
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qfpc/asymptotics.hpp"
#include "qfpc/forces.hpp"
#include "qfpc/greens.hpp"
#include "qfpc/kernels.hpp"
#include "qfpc/quadrature.hpp"

namespace qfpc {

struct OracleReport {
    std::string point;  // human-readable location
    double primary_value = 0.0;
    double oracle_value = 0.0;
    double rel_dev = 0.0;
    long cost_evals = 0;
    std::string warning;
};

inline double relative_deviation(double primary, double oracle) {
    constexpr double tiny = 1e-300;
    return std::fabs(primary - oracle) / std::max(std::fabs(oracle), tiny);
}

class OracleNonConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct OracleNodes {
    int theta = 48;  // Gauss-Legendre nodes in theta, rho = sin(theta)
    int phi = 64;    // trapezoid nodes in the azimuth
};

namespace oracle_detail {

// Integration weights of one disk |k| < w in polar form with rho = sin(theta):
// d^2k = w^2 sin(theta) cos(theta) dtheta dphi.
struct DiskSample {
    double kx = 0.0;
    double ky = 0.0;
    double weight = 0.0;
};

inline std::vector<DiskSample> disk_nodes(double omega, const OracleNodes& n) {
    const auto& rule = GaussLegendreRule::get(n.theta);
    const double half = std::numbers::pi / 4;  // theta in [0, pi/2]
    const double dphi = 2.0 * std::numbers::pi / n.phi;
    std::vector<DiskSample> out;
    out.reserve(static_cast<std::size_t>(n.theta) * n.phi);
    for (int i = 0; i < rule.order(); ++i) {
        const double th = half + half * rule.nodes()[i];
        const double rho = std::sin(th);
        const double w = half * rule.weights()[i] * omega * omega * rho * std::cos(th) * dphi;
        for (int j = 0; j < n.phi; ++j) {
            const double ph = dphi * j;
            out.push_back({omega * rho * std::cos(ph), omega * rho * std::sin(ph), w});
        }
    }
    return out;
}

// coth(a) - coth(b) for a, b > 0 as 2 (e^{-2a} - e^{-2b}) / ((1 - e^{-2a})(1 - e^{-2b})),
// which keeps its relative accuracy once both cothangents round to 1.
inline double coth_difference(double a, double b) {
    const double ea = std::exp(-2.0 * a);
    return 2.0 * ea * -std::expm1(-2.0 * (b - a)) / (-std::expm1(-2.0 * a) * -std::expm1(-2.0 * b));
}

inline std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> channel_entries(Channel c) {
    switch (c) {
        case Channel::XX: return {{{0, 0}, {0, 0}}};
        case Channel::YY: return {{{1, 1}, {1, 1}}};
        case Channel::ZZ: return {{{2, 2}, {2, 2}}};
        case Channel::XZ: return {{{0, 2}, {2, 0}}, {{2, 0}, {0, 2}}};
        case Channel::ISO: break;
    }
    throw std::invalid_argument("oracle: ISO is not a single channel");
}

// x^7 F^PQ at fixed w for plate distance a = 1/2 (so x = w).
//
// The k_x <-> kbar_x exchange turns the 4-D integral of
// (kbar_x - k_x) A(k) B(kbar) C(kbar_x) into the factorized form
//   [sum A][sum B kx C] - [sum A C][sum B kx].
// C is measured from its v = 0 value, which leaves the combination
// unchanged and makes v = 0 give an exact zero.
inline double evaluate(Channel c, double x, const Kinematics& kin, double z, const OracleNodes& n, long* evals) {
    constexpr double pi = std::numbers::pi;
    const double a = 0.5, omega = x, beta = 2.0 * a * z;
    const auto nodes = disk_nodes(omega, n);
    const double arg0 = 0.5 * beta * kin.gamma * omega;
    std::complex<double> total = 0.0;
    const auto pairs = channel_entries(c);
    for (const auto& [ea, eb] : pairs) {
        std::complex<double> s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
        for (const auto& p : nodes) {
            const auto g = anti_hermitian_pc({omega, p.kx, p.ky, a});
            const std::complex<double> A = g(ea.first, ea.second);
            const std::complex<double> B = g(eb.first, eb.second);
            const double arg = 0.5 * beta * kin.gamma * (omega + p.kx * kin.v);
            const double cth = coth_difference(arg, arg0);
            s1 += A * p.weight;
            s2 += B * p.kx * cth * p.weight;
            s3 += A * cth * p.weight;
            s4 += B * p.kx * p.weight;
        }
        total += s1 * s2 - s3 * s4;
        if (evals) *evals += static_cast<long>(nodes.size());
    }
    const double H = total.real() / (pi * std::pow(2.0 * pi, 4));
    return 32.0 * pi * pi * pi * H;
}

}  // namespace oracle_detail

struct BruteforceResult {
    double value = 0.0;   // at doubled node counts
    double coarse = 0.0;  // at the base node counts
    double self_change = 0.0;
    long evals = 0;
};

/// Oracle x^7 F^PQ(x, v, z) with its own convergence estimate from a
/// doubling of both node counts.
inline BruteforceResult fixed_omega_bruteforce_detailed(Channel c, double x, const Kinematics& kin, double z,
                                                        const OracleNodes& nodes = {}) {
    if (!(x > 0.0) || !std::isfinite(x)) throw std::domain_error("fixed_omega_bruteforce: x must be positive");
    if (!(z > 0.0) || !std::isfinite(z)) throw std::domain_error("fixed_omega_bruteforce: z must be positive");
    BruteforceResult r;
    r.coarse = oracle_detail::evaluate(c, x, kin, z, nodes, &r.evals);
    r.value = oracle_detail::evaluate(c, x, kin, z, {2 * nodes.theta, 2 * nodes.phi}, &r.evals);
    r.self_change = r.value == 0.0 ? std::fabs(r.coarse) : relative_deviation(r.coarse, r.value);
    return r;
}

inline double fixed_omega_bruteforce(Channel c, double x, const Kinematics& kin, double z,
                                     const OracleNodes& nodes = {}, double self_tol = 3e-4) {
    const auto r = fixed_omega_bruteforce_detailed(c, x, kin, z, nodes);
    if (r.self_change > self_tol) {
        std::ostringstream os;
        os << "fixed_omega_bruteforce: node doubling (" << nodes.theta << "x" << nodes.phi << " -> "
           << 2 * nodes.theta << "x" << 2 * nodes.phi << ") changed the value by " << r.self_change;
        throw OracleNonConvergence(os.str());
    }
    return r.value;
}

/// Oracle against the u-integrated kernel at one (channel, x, v, z).
inline OracleReport fixed_omega_crosscheck(Channel c, double x, const Kinematics& kin, double z,
                                           const QuadratureConfig& cfg = {}, const OracleNodes& nodes = {}) {
    OracleReport rep;
    std::ostringstream os;
    os << to_string(c) << " x=" << x << " v=" << kin.v << " z=" << z;
    rep.point = os.str();
    const auto r = fixed_omega_bruteforce_detailed(c, x, kin, z, nodes);
    rep.oracle_value = r.value;
    rep.cost_evals = r.evals;
    rep.primary_value = spectral_density(x, kin, z, cfg)[c];
    rep.rel_dev = relative_deviation(rep.primary_value, rep.oracle_value);
    if (r.self_change > 3e-4) rep.warning = "oracle self-convergence " + std::to_string(r.self_change);
    return rep;
}

/// Velocity series of f^XZ against the quadrature pipeline.
inline OracleReport xz_series_crosscheck(double v, double z, int m_max = 8, const QuadratureConfig& cfg = {}) {
    if (!(v >= 0.0 && v <= 0.8)) throw std::domain_error("xz_series_crosscheck: v must be in [0, 0.8]");
    if (m_max < 0 || m_max > 10) throw std::domain_error("xz_series_crosscheck: m_max must be in [0, 10]");
    OracleReport rep;
    std::ostringstream os;
    os << "XZ v=" << v << " z=" << z << " m_max=" << m_max;
    rep.point = os.str();
    const auto kin = Kinematics::from_velocity(v);
    const auto fi = dimensionless_friction(kin, z, cfg);
    rep.primary_value = fi.f.xz();
    const auto s = f_xz_series(v, z, m_max, cfg);
    rep.oracle_value = s.value;
    rep.warning = s.warning;
    rep.cost_evals = fi.panels * cfg.gl_order_panel;
    rep.rel_dev = (rep.primary_value == 0.0 && rep.oracle_value == 0.0)
                      ? 0.0
                      : relative_deviation(rep.primary_value, rep.oracle_value);
    return rep;
}

}  // namespace qfpc
