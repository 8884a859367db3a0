// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only if all pass.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qfpc/qfpc.hpp"

using namespace qfpc;

namespace {

constexpr double pi = std::numbers::pi;

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel(double value, double target) { return std::fabs(value - target) / std::fabs(target); }

ForceBreakdown cesium(double v, double a_m, double T_K) {
    const auto& p = atom_preset("Cs");
    return force_si(p.polarizability, Kinematics::from_velocity(v), ThermalGeometry::from_si(a_m, T_K), all_channels(),
                    {}, &p);
}

void reference_point(Outcome& o, const char* label, double v, double a_m, double T_K, double target, double tol,
                   double max_seconds) {
    const auto t0 = std::chrono::steady_clock::now();
    const double F = std::fabs(cesium(v, a_m, T_K).F_total_N);
    const double s = seconds_since(t0);
    o.detail << " " << label << " |F|=" << F << " N vs " << target << " (dev " << rel(F, target) << ", " << s << " s);";
    o.require(rel(F, target) <= tol, std::string(label) + " magnitude");
    o.require(s < max_seconds, std::string(label) + " runtime");
}

Outcome criterion1() {
    Outcome o;
    reference_point(o, "a=10nm", 0.5, 10e-9, 16100, 1.30e-25, 0.02, 30.0);
    return o;
}

Outcome criterion2() {
    Outcome o;
    reference_point(o, "a=1nm", 0.5, 1e-9, 16100, 1.57e-25, 0.02, 600.0);
    const double ratio = std::fabs(cesium(0.5, 1e-9, 16100).F_total_N / cesium(0.5, 1e-6, 16100).F_total_N);
    o.detail << " |F(1nm)|/|F(1um)|=" << ratio << " vs 2.0 (dev " << rel(ratio, 2.0) << ")";
    o.require(rel(ratio, 2.0) <= 0.15, "endpoint ratio");
    return o;
}

Outcome criterion3() {
    Outcome o;
    reference_point(o, "T=16100K", 0.995, 10e-9, 16100, 1.66e-19, 0.05, 600.0);
    reference_point(o, "T=45100K", 0.995, 10e-9, 45100, 6.30e-16, 0.05, 600.0);
    return o;
}

Outcome criterion4() {
    Outcome o;
    double worst = 0.0;
    for (double v : {0.1, 0.5}) {
        const auto kin = Kinematics::from_velocity(v);
        const auto hot = dimensionless_friction(kin, 0.05).f;
        const auto cold = dimensionless_friction(kin, 50.0).f;
        for (auto c : kPolarizationChannels) {
            const double ds = rel(hot[c], f_small_z(c, v, 0.05));
            const double dl = rel(cold[c], f_large_z(c, v, 50.0));
            worst = std::max({worst, ds, dl});
            o.require(ds <= 0.02, "small-z " + std::string(to_string(c)) + " v=" + std::to_string(v));
            o.require(dl <= 0.02, "large-z " + std::string(to_string(c)) + " v=" + std::to_string(v));
        }
    }
    o.detail << " worst relative deviation " << worst << " (tolerance 0.02)";
    return o;
}

Outcome criterion5() {
    Outcome o;
    const double v = 1e-3;
    const auto kin = Kinematics::from_velocity(v);
    double worst = 0.0;
    for (double z : {0.5, 1.0, 2.0, 7.1}) {
        const double slope = dimensionless_friction(Channel::XZ, kin, z) / v;
        const double d = rel(slope, 2.0 * I_closed_form(z));
        worst = std::max(worst, d);
        o.require(d <= 0.005, "slope at z=" + std::to_string(z));
    }
    auto integrand = [](double x) {
        const double b = 3 * x * std::cos(x) + (x * x - 3) * std::sin(x);
        const double s = std::sinh(0.5 * x);
        return b * b / (s * s);
    };
    const double quad = integrate_x(integrand, 1.0, QuadratureConfig{}).value;
    const double di = rel(I_closed_form(1.0), quad);
    o.require(di <= 1e-8, "I(1) against quadrature");
    o.detail << " worst slope deviation " << worst << " (tolerance 0.005); I(1) closed form " << I_closed_form(1.0)
             << " vs quadrature " << quad << " (dev " << di << ")";
    return o;
}

Outcome criterion6() {
    Outcome o;
    const auto r = xz_series_crosscheck(0.5, 2.0, 8);
    o.require(r.rel_dev <= 0.005, "series against quadrature");
    double worst_pe = 0.0;
    for (double v : {0.1, 0.5, 0.9}) {
        const double g = 1 / std::sqrt(1 - v * v);
        for (double z : {0.01, 0.5, 3.0}) {
            const double lhs = f_small_z(Channel::XZ, v, z) * std::pow(g, 4) * std::pow(z, 4);
            worst_pe = std::max(worst_pe, rel(lhs, 16 * std::pow(pi, 4) * v / 15));
        }
    }
    o.require(worst_pe <= 1e-12, "small-z scaling identity");
    // the O(1/z^2) correction to the leading term is ~2e-13 at z = 1e7
    const double z = 1e7, v = 0.3;
    const double dl = rel(f_xz_nr(v, z) * std::pow(z, 10), 2048 * std::pow(pi, 10) * v / 1485);
    o.require(dl <= 1e-12, "large-z identity");
    o.detail << " series " << r.oracle_value << " vs quadrature " << r.primary_value << " (dev " << r.rel_dev
             << "); small-z identity dev " << worst_pe << "; large-z identity dev " << dl;
    return o;
}

Outcome criterion7() {
    Outcome o;
    double worst = 0.0;
    int n = 0;
    for (auto c : kPolarizationChannels) {
        for (auto [x, v, z] : {std::tuple{0.5, 0.2, 0.5}, {2.0, 0.6, 5.0}, {8.0, 0.2, 5.0}, {0.5, 0.6, 5.0},
                               {2.0, 0.2, 0.5}, {8.0, 0.6, 0.5}}) {
            const auto r = fixed_omega_crosscheck(c, x, Kinematics::from_velocity(v), z);
            worst = std::max(worst, r.rel_dev);
            o.require(r.rel_dev <= 1e-3, r.point);
            ++n;
        }
    }
    o.detail << " " << n << " points, worst relative deviation " << worst << " (tolerance 1e-3)";
    return o;
}

Outcome criterion8() {
    Outcome o;

    // f(v = 0) = 0 exactly
    for (double z : {0.05, 1.0, 50.0}) {
        const auto f = dimensionless_friction(Kinematics::from_velocity(0.0), z).f;
        for (std::size_t i = 0; i < 4; ++i) o.require(f[i] == 0.0, "zero velocity");
    }

    // decay towards zero temperature
    {
        const auto kin = Kinematics::from_velocity(0.5);
        ChannelValues prev;
        bool first = true;
        ChannelValues at50;
        for (double z : {50.0, 100.0, 200.0, 400.0}) {
            const auto f = dimensionless_friction(kin, z).f;
            if (first) at50 = f;
            for (std::size_t i = 0; i < 4; ++i) {
                if (!first) o.require(std::fabs(f[i]) < std::fabs(prev[i]), "monotone cold decay");
            }
            prev = f;
            first = false;
        }
        for (std::size_t i = 0; i < 4; ++i) o.require(std::fabs(prev[i]) < 1e-6 * std::fabs(at50[i]), "cold limit");
    }

    // sign structure on the full grid, points evaluated concurrently
    {
        std::vector<std::pair<double, double>> grid;
        for (double v : property_velocities())
            for (double z : property_z_values()) grid.emplace_back(v, z);
        std::vector<std::future<ChannelValues>> jobs;
        for (auto [v, z] : grid) {
            jobs.push_back(std::async(std::launch::async, [v, z] {
                return dimensionless_friction(Kinematics::from_velocity(v), z).f;
            }));
        }
        int bad = 0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto f = jobs[i].get();
            const bool ok = f.iso() < 0 && f.xz() > 0 && f.xz() < std::fabs(f.zz()) && f.xx() < 0 && f.yy() < 0 &&
                            f.zz() < 0;
            if (!ok) {
                ++bad;
                o.detail << " sign violation at v=" << grid[i].first << " z=" << grid[i].second << ";";
            }
        }
        o.require(bad == 0, "drag and push subdominance on the grid");
        o.detail << " sign grid " << grid.size() << " points, " << bad << " violations;";
    }

    // g' = g for the perfect conductor
    {
        std::mt19937_64 rng(2024);
        std::uniform_real_distribution<double> d(-3.0, 3.0), da(0.2, 2.0);
        double worst = 0.0;
        for (double v : {0.1, 0.5, 0.9, 0.99}) {
            for (int n = 0; n < 1000;) {
                const SpectralArgs p{d(rng), d(rng), d(rng), da(rng)};
                if (std::fabs(p.k2() - p.omega * p.omega) < 1e-3 || std::fabs(p.omega + p.kx * v) < 1e-3) continue;
                const auto g = greens_pc(p);
                worst = std::max(worst, (lorentz_transform(p, v) - g).max_abs() / std::max(1.0, g.max_abs()));
                ++n;
            }
        }
        o.require(worst <= 1e-9, "frame invariance");
        o.detail << " g'=g worst " << worst << ";";
    }

    // no dissipation outside the light cone; diaphanous reflection cancels
    {
        std::mt19937_64 rng(77);
        std::uniform_real_distribution<double> dw(0.05, 3.0), dk(1.01, 4.0), dphi(0.0, 2 * pi), deps(0.2, 9.0);
        double worst_ah = 0.0, worst_r = 0.0;
        for (int i = 0; i < 500; ++i) {
            const double w = dw(rng), k = w * dk(rng), phi = dphi(rng);
            const SpectralArgs a{w, k * std::cos(phi), k * std::sin(phi), 0.8};
            const auto m = SurfaceMedium::diaphanous(deps(rng));
            worst_ah = std::max(worst_ah, anti_hermitian_pc(a).max_abs());
            worst_ah = std::max(
                worst_ah, anti_hermitian_part([&](const SpectralArgs& s) { return greens_generic(s, m); }, a).max_abs());
            for (const SpectralArgs& b : {a, SpectralArgs{w, 0.5 * w * std::cos(phi), 0.5 * w * std::sin(phi), 0.8}}) {
                const auto kw = propagation_wavenumbers(b, m);
                const auto r = reflection_coefficients(m, kw.kappa, kw.kappa_prime);
                worst_r = std::max(worst_r, std::abs(r.rE + r.rH));
            }
        }
        o.require(worst_ah <= 1e-14, "anti-Hermitian part outside the light cone");
        o.require(worst_r <= 1e-14, "diaphanous rE + rH");
        o.detail << " outside-cone anti-Hermitian max " << worst_ah << "; |rE+rH| max " << worst_r << ";";
    }

    // temperature power law in the cold regime
    {
        std::vector<SweepPoint> grid;
        const int n = 16;
        for (int i = 0; i < n; ++i) {
            const double t = double(i) / (n - 1);
            grid.push_back({0.5, 10e-9, std::exp(std::log(1000.0) + t * (std::log(16100.0) - std::log(1000.0)))});
        }
        const auto rows = sweep(grid, atom_preset("Cs").polarizability);
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (const auto& r : rows) {
            o.require(r.ok(), "T sweep point");
            const double lx = std::log(r.breakdown.T_K), ly = std::log(std::fabs(r.breakdown.F_total_N));
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        o.require(rel(slope, 8.0) <= 0.02, "T-sweep slope");
        o.detail << " T-sweep log-log slope " << slope << " (target 8 within 2%)";
    }
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"1 reference force at a=10 nm", criterion1},
        {"2 reference force at a=1 nm and distance ratio", criterion2},
        {"3 reference forces at v=0.995", criterion3},
        {"4 asymptotic matching", criterion4},
        {"5 nonrelativistic slope and I(z)", criterion5},
        {"6 velocity series and closed-form identities", criterion6},
        {"7 reduction-equivalence oracle", criterion7},
        {"8 property suite", criterion8},
    };
    int failures = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            o = run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << " exception: " << e.what();
        }
        std::printf("%s criterion %s:%s (%.1f s)\n", o.pass ? "PASS" : "FAIL", name, o.detail.str().c_str(),
                    seconds_since(t0));
        std::fflush(stdout);
        if (!o.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
