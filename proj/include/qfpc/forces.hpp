// Dimensionless friction integrals f^PQ(v, z) and their conversion to newtons.
#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qfpc/kernels.hpp"
#include "qfpc/quadrature.hpp"

namespace qfpc {

namespace constants {
inline constexpr double hbar = 1.054571817e-34;  // J s
inline constexpr double c = 2.99792458e8;        // m / s
inline constexpr double k_B = 1.380649e-23;      // J / K
inline constexpr double hbar_c = hbar * c;
inline constexpr double hbar_c_over_kB = hbar_c / k_B;  // m K
inline constexpr double angstrom3 = 1e-30;              // m^3
}  // namespace constants

/// z = hbar c / (2 a k_B T).
inline double z_of(double a_m, double T_K) {
    if (!(a_m > 0.0) || !(T_K > 0.0) || !std::isfinite(a_m) || !std::isfinite(T_K)) {
        throw std::domain_error("z_of: distance and temperature must be positive");
    }
    return constants::hbar_c_over_kB / (2.0 * a_m * T_K);
}

struct ThermalGeometry {
    double a_m = 0.0;
    double T_K = 0.0;
    double z = 0.0;
    double beta_natural = 0.0;  // 2 a z, in meters

    static ThermalGeometry from_si(double a_m, double T_K) {
        const double z = z_of(a_m, T_K);
        return {a_m, T_K, z, 2.0 * a_m * z};
    }
};

namespace forces_detail {

inline void require_z(double z) {
    if (!(z > 0.0) || !std::isfinite(z)) throw std::domain_error("z must be positive and finite");
}

// Past this exponent the Bose difference is negligible against its peak at u = 1.
inline double angular_cut_exponent(const QuadratureConfig& cfg) { return 40.0 + std::log(1.0 / cfg.rel_tol); }

}  // namespace forces_detail

/// x^7 F^PQ(x, v, z) for all four channels at one frequency.
///
/// The u-integral is restricted to the range where the Bose difference is
/// within e^{-cut} of its value at u = 1; for large x gamma v z that is a
/// narrow cone around u = 1.
inline ChannelValues spectral_density(double x, const Kinematics& kin, double z, const QuadratureConfig& cfg) {
    kernels_detail::require_positive_x(x, "spectral_density");
    forces_detail::require_z(z);
    if (kin.v == 0.0) return {};
    const double rate = x * kin.gamma * z * kin.v;
    const double cut = forces_detail::angular_cut_exponent(cfg);
    double theta_max = std::numbers::pi / 2;
    if (rate > cut) theta_max = std::min(theta_max, std::acos(std::max(0.0, 1.0 - cut / rate)));
    auto body = [&](double u, double s) {
        const double d = bose_difference(x, u, kin, z);
        if (d == 0.0) return ChannelValues{};
        return (u * d) * angular_brackets(x, u, s);
    };
    const ChannelValues ui = integrate_u(body, cfg, x, theta_max);
    const ChannelValues p = prefactors(x);
    const double x7 = std::pow(x, 7);
    ChannelValues out;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = -x7 * p[i] * ui[i];
    return out;
}

struct FrictionIntegral {
    ChannelValues f;
    ChannelValues tail_bound;
    long panels = 0;
    double x_max = 0.0;
};

/// f^PQ(v, z) = int_0^inf x^7 F^PQ dx for all channels.
inline FrictionIntegral dimensionless_friction(const Kinematics& kin, double z, const QuadratureConfig& cfg = {}) {
    forces_detail::require_z(z);
    cfg.validate();
    const double decay = kin.gamma * (1.0 - kin.v) * z;
    try {
        auto r = integrate_x([&](double x) { return spectral_density(x, kin, z, cfg); }, decay, cfg);
        return {r.value, r.tail_bound, r.panels, r.x_max};
    } catch (const NonConvergenceError& e) {
        throw NonConvergenceError(std::string(e.what()) + " at v = " + std::to_string(kin.v) +
                                  ", z = " + std::to_string(z));
    }
}

inline double dimensionless_friction(Channel c, const Kinematics& kin, double z, const QuadratureConfig& cfg = {}) {
    return dimensionless_friction(kin, z, cfg).f[c];
}

struct AtomPolarizability {
    double alpha_xx = 0.0;  // m^3
    double alpha_yy = 0.0;
    double alpha_zz = 0.0;
    std::string label;

    static AtomPolarizability isotropic(double alpha_m3, std::string label = {}) {
        return make(alpha_m3, alpha_m3, alpha_m3, std::move(label));
    }
    static AtomPolarizability from_angstrom3(double xx, double yy, double zz, std::string label = {}) {
        return make(xx * constants::angstrom3, yy * constants::angstrom3, zz * constants::angstrom3,
                    std::move(label));
    }
    static AtomPolarizability make(double xx, double yy, double zz, std::string label = {}) {
        for (double a : {xx, yy, zz}) {
            if (!(a >= 0.0) || !std::isfinite(a)) throw std::domain_error("polarizability components must be >= 0");
        }
        return {xx, yy, zz, std::move(label)};
    }
    bool is_isotropic() const { return alpha_xx == alpha_yy && alpha_yy == alpha_zz; }

    /// alpha_pp alpha_qq for a channel; XZ uses alpha_xx alpha_zz.
    double product(Channel c) const {
        switch (c) {
            case Channel::XX: return alpha_xx * alpha_xx;
            case Channel::YY: return alpha_yy * alpha_yy;
            case Channel::ZZ: return alpha_zz * alpha_zz;
            case Channel::XZ: return alpha_xx * alpha_zz;
            case Channel::ISO: break;
        }
        throw std::invalid_argument("AtomPolarizability::product: ISO is not a single channel");
    }
};

struct AtomPreset {
    AtomPolarizability polarizability;
    double T1_K = 0.0;  // first excitation
    double Ti_K = 0.0;  // ionization
};

inline const std::map<std::string, AtomPreset>& atom_presets() {
    static const std::map<std::string, AtomPreset> presets{
        {"Cs", {AtomPolarizability::from_angstrom3(59.3, 59.3, 59.3, "Cs"), 16100.0, 45100.0}},
    };
    return presets;
}

inline const AtomPreset& atom_preset(const std::string& name) {
    const auto& p = atom_presets();
    auto it = p.find(name);
    if (it == p.end()) throw std::invalid_argument("unknown atom preset '" + name + "'");
    return it->second;
}

struct ForceBreakdown {
    double v = 0.0;
    double a_m = 0.0;
    double T_K = 0.0;
    double z = 0.0;
    ChannelValues f;
    double f_iso = 0.0;
    ChannelValues F_N;
    double F_total_N = 0.0;
    double rel_err_est = 0.0;
    std::string regime_notes;
};

/// Force per channel in newtons from a dimensionless f.
inline double force_newtons(double alpha_product_m6, double f, double a_m) {
    return constants::hbar_c * alpha_product_m6 * f / (32.0 * std::pow(std::numbers::pi, 3) * std::pow(2.0 * a_m, 8));
}

inline std::set<Channel> all_channels() { return {Channel::ISO}; }

/// SI friction force. F_total sums the requested channels; ISO stands for
/// all four and needs an isotropic atom. `preset` (optional) enables the
/// static-limit temperature flag.
inline ForceBreakdown force_si(const AtomPolarizability& atom, const Kinematics& kin, const ThermalGeometry& geom,
                               const std::set<Channel>& channels = all_channels(),
                               const QuadratureConfig& cfg = {}, const AtomPreset* preset = nullptr) {
    if (channels.empty()) throw std::invalid_argument("force_si: no channels requested");
    if (channels.count(Channel::ISO) && !atom.is_isotropic()) {
        throw std::invalid_argument("force_si: ISO requires an isotropic polarizability");
    }
    ForceBreakdown out;
    out.v = kin.v;
    out.a_m = geom.a_m;
    out.T_K = geom.T_K;
    out.z = geom.z;
    const FrictionIntegral fi = dimensionless_friction(kin, geom.z, cfg);
    out.f = fi.f;
    out.f_iso = fi.f.iso();
    std::set<Channel> summed = channels;
    if (summed.count(Channel::ISO)) summed = {kPolarizationChannels.begin(), kPolarizationChannels.end()};
    double tail = 0.0, scale = 0.0;
    for (auto c : kPolarizationChannels) {
        out.F_N[c] = force_newtons(atom.product(c), fi.f[c], geom.a_m);
        if (summed.count(c)) {
            out.F_total_N += out.F_N[c];
            tail += std::fabs(force_newtons(atom.product(c), fi.tail_bound[c], geom.a_m));
            scale += std::fabs(out.F_N[c]);
        }
    }
    out.rel_err_est = std::max(cfg.rel_tol, scale > 0.0 ? tail / scale : 0.0);
    if (preset && geom.T_K > preset->T1_K) {
        out.regime_notes = "extrapolated beyond static-limit validity (T > T1)";
    }
    return out;
}

struct SweepPoint {
    double v = 0.0;
    double a_m = 0.0;
    double T_K = 0.0;
};

struct SweepResult {
    ForceBreakdown breakdown;
    std::string error;  // empty on success
    bool ok() const { return error.empty(); }
};

/// Worker count from QFPC_THREADS, else the hardware concurrency.
inline unsigned sweep_threads() {
    if (const char* env = std::getenv("QFPC_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

inline ForceBreakdown failed_breakdown(const SweepPoint& p) {
    constexpr double nan = std::numeric_limits<double>::quiet_NaN();
    ForceBreakdown b;
    b.v = p.v;
    b.a_m = p.a_m;
    b.T_K = p.T_K;
    b.z = nan;
    try {
        b.z = z_of(p.a_m, p.T_K);
    } catch (const std::exception&) {
    }
    for (std::size_t i = 0; i < 4; ++i) b.f[i] = b.F_N[i] = nan;
    b.f_iso = b.F_total_N = b.rel_err_est = nan;
    return b;
}

/// One result per grid point, in input order. Points are independent, so
/// the thread count never changes any value.
inline std::vector<SweepResult> sweep(const std::vector<SweepPoint>& grid, const AtomPolarizability& atom,
                                      const std::set<Channel>& channels = all_channels(),
                                      const QuadratureConfig& cfg = {}, const AtomPreset* preset = nullptr,
                                      unsigned threads = 0) {
    if (grid.empty()) throw std::invalid_argument("sweep: empty grid");
    std::vector<SweepResult> out(grid.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) {
            const auto& p = grid[i];
            try {
                out[i].breakdown = force_si(atom, Kinematics::from_velocity(p.v), ThermalGeometry::from_si(p.a_m, p.T_K),
                                            channels, cfg, preset);
            } catch (const std::exception& e) {
                out[i].breakdown = failed_breakdown(p);
                out[i].error = e.what();
            }
        }
    };
    if (threads == 0) threads = sweep_threads();
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, grid.size()));
    if (threads <= 1) {
        work();
        return out;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    return out;
}

}  // namespace qfpc
