// Self-check suite behind `qfpc validate`.
//
// quick: limits, sign structure and the u-fold; full adds the brute-force
// oracles and the reference force magnitudes for cesium.
#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qfpc/asymptotics.hpp"
#include "qfpc/forces.hpp"
#include "qfpc/kernels.hpp"
#include "qfpc/oracle.hpp"

namespace qfpc {

/// f^PQ(v, z) provider. Injectable so a deliberately broken evaluator can
/// show that the checks bite.
using FrictionEvaluator = std::function<ChannelValues(const Kinematics&, double z)>;

inline FrictionEvaluator default_evaluator(const QuadratureConfig& cfg = {}) {
    return [cfg](const Kinematics& kin, double z) { return dimensionless_friction(kin, z, cfg).f; };
}

struct CheckResult {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double target = 0.0;
    double rel_dev = 0.0;
    std::string detail;
};

inline void to_json(nlohmann::json& j, const CheckResult& c) {
    j = {{"name", c.name}, {"passed", c.passed}, {"value", c.value}, {"target", c.target}, {"rel_dev", c.rel_dev}};
    if (!c.detail.empty()) j["detail"] = c.detail;
}

struct ValidationReport {
    std::string suite;
    std::vector<CheckResult> checks;
    double seconds = 0.0;
    bool passed() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return !checks.empty();
    }
    nlohmann::json json() const {
        return {{"suite", suite}, {"passed", passed()}, {"seconds", seconds}, {"checks", checks}};
    }
};

namespace validate_detail {

// Memoizes evaluator calls; the quick checks revisit several grid points.
class CachedEvaluator {
public:
    explicit CachedEvaluator(FrictionEvaluator f) : f_(std::move(f)) {}
    const ChannelValues& operator()(double v, double z) {
        auto key = std::make_pair(v, z);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        return cache_.emplace(key, f_(Kinematics::from_velocity(v), z)).first->second;
    }

private:
    FrictionEvaluator f_;
    std::map<std::pair<double, double>, ChannelValues> cache_;
};

inline CheckResult relative_check(std::string name, double value, double target, double tol) {
    CheckResult c;
    c.name = std::move(name);
    c.value = value;
    c.target = target;
    c.rel_dev = relative_deviation(value, target);
    c.passed = c.rel_dev <= tol && std::isfinite(value);
    return c;
}

inline std::string fmt(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

}  // namespace validate_detail

inline const std::vector<double>& property_velocities() {
    static const std::vector<double> v{0.1, 0.3, 0.5, 0.7, 0.9};
    return v;
}

inline const std::vector<double>& property_z_values() {
    static const std::vector<double> z{0.05, 0.5, 5.0, 50.0};
    return z;
}

/// Runs a suite ("quick" or "full"). Checks that throw are recorded as failures.
inline ValidationReport run_validation(const std::string& suite, FrictionEvaluator eval = default_evaluator(),
                                       const QuadratureConfig& cfg = {}) {
    using namespace validate_detail;
    if (suite != "quick" && suite != "full") throw std::invalid_argument("suite must be quick or full");
    const auto t0 = std::chrono::steady_clock::now();
    ValidationReport rep;
    rep.suite = suite;
    CachedEvaluator f(std::move(eval));
    auto guarded = [&](const std::string& name, auto&& body) {
        try {
            body();
        } catch (const std::exception& e) {
            rep.checks.push_back({name, false, 0.0, 0.0, 0.0, std::string("exception: ") + e.what()});
        }
    };

    guarded("zero velocity gives zero friction", [&] {
        const auto& r = f(0.0, 1.0);
        double m = 0.0;
        for (std::size_t i = 0; i < 4; ++i) m = std::max(m, std::fabs(r[i]));
        rep.checks.push_back({"zero velocity gives zero friction", m == 0.0, m, 0.0, m, ""});
    });

    for (double v : {0.1, 0.5}) {
        for (auto c : kPolarizationChannels) {
            const std::string ch(to_string(c));
            guarded("small-z limit " + ch, [&] {
                rep.checks.push_back(relative_check("small-z limit " + ch + " v=" + fmt(v), f(v, 0.05)[c],
                                                    f_small_z(c, v, 0.05), 0.02));
            });
            guarded("large-z limit " + ch, [&] {
                rep.checks.push_back(relative_check("large-z limit " + ch + " v=" + fmt(v), f(v, 50.0)[c],
                                                    f_large_z(c, v, 50.0), 0.02));
            });
        }
    }

    guarded("sign structure", [&] {
        int bad_drag = 0, bad_push = 0, bad_sign = 0;
        std::string where;
        for (double v : {0.1, 0.5, 0.9}) {
            for (double z : {0.5, 5.0, 50.0}) {
                const auto& r = f(v, z);
                const std::string at = " (v=" + fmt(v) + ", z=" + fmt(z) + ")";
                if (!(r.iso() < 0.0)) ++bad_drag, where += "drag" + at;
                if (!(r.xz() > 0.0 && r.xz() < std::fabs(r.zz()))) ++bad_push, where += " push" + at;
                if (!(r.xx() < 0.0 && r.yy() < 0.0 && r.zz() < 0.0)) ++bad_sign, where += " sign" + at;
            }
        }
        rep.checks.push_back({"total friction is a drag", bad_drag == 0, double(bad_drag), 0.0, 0.0, where});
        rep.checks.push_back({"push subdominance 0 < f_xz < |f_zz|", bad_push == 0, double(bad_push), 0.0, 0.0, where});
        rep.checks.push_back({"diagonal channels are drags", bad_sign == 0, double(bad_sign), 0.0, 0.0, where});
    });

    guarded("u-fold", [&] {
        std::mt19937_64 rng(12345);
        std::uniform_real_distribution<double> ux(0.1, 20.0), uu(0.01, 1.0), uv(0.01, 0.95), uz(0.1, 5.0);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const double x = ux(rng), u = uu(rng), z = uz(rng);
            const auto kin = Kinematics::from_velocity(uv(rng));
            for (auto c : kPolarizationChannels) {
                const double folded = integrand_F(c, x, u, kin, z);
                // one-sided form: -P u B n(x gamma (1 - u v) z), summed over +-u
                auto one_sided = [&](double uu_) {
                    const double y = x * kin.gamma * (1.0 - uu_ * kin.v) * z;
                    return -prefactor(c, x) * uu_ * angular_bracket(c, x, uu_) / std::expm1(y);
                };
                const double unfolded = one_sided(u) + one_sided(-u);
                const double scale = std::max(std::fabs(unfolded), 1e-300);
                if (std::fabs(unfolded) > 1e-200) worst = std::max(worst, std::fabs(folded - unfolded) / scale);
            }
        }
        rep.checks.push_back({"u-fold matches the two-sided integrand", worst < 1e-9, worst, 0.0, worst, ""});
    });

    guarded("nonrelativistic slope", [&] {
        for (double z : {0.5, 1.0, 2.0, 7.1}) {
            rep.checks.push_back(relative_check("NR slope z=" + fmt(z), f(1e-3, z).xz() / 1e-3,
                                                2.0 * I_closed_form(z), 0.005));
        }
    });

    if (suite == "full") {
        guarded("oracle", [&] {
            for (auto c : kPolarizationChannels) {
                for (auto [x, v, z] : {std::tuple{0.5, 0.2, 0.5}, {2.0, 0.6, 5.0}, {8.0, 0.2, 5.0},
                                       {0.5, 0.6, 5.0}, {2.0, 0.2, 0.5}, {8.0, 0.6, 0.5}}) {
                    const auto r = fixed_omega_crosscheck(c, x, Kinematics::from_velocity(v), z, cfg);
                    CheckResult cr{"oracle " + r.point, r.rel_dev < 1e-3, r.primary_value, r.oracle_value, r.rel_dev,
                                   r.warning};
                    rep.checks.push_back(cr);
                }
            }
        });
        guarded("velocity series", [&] {
            for (auto [v, z, m, tol] : {std::tuple{0.5, 2.0, 8, 0.005}, {0.1, 1.0, 4, 0.002}}) {
                const auto s = f_xz_series(v, z, m, cfg);
                auto c = relative_check("velocity series " + fmt(v) + "," + fmt(z) + "," + std::to_string(m), s.value,
                                        f(v, z).xz(), tol);
                c.detail = s.warning;
                rep.checks.push_back(c);
            }
        });
        guarded("reference forces", [&] {
            const auto& cs = atom_preset("Cs").polarizability;
            auto total = [&](double v, double a, double T) {
                const double z = z_of(a, T);
                const auto& r = f(v, z);
                double F = 0.0;
                for (auto c : kPolarizationChannels) F += force_newtons(cs.product(c), r[c], a);
                return F;
            };
            const double F10 = total(0.5, 10e-9, 16100.0);
            const double F1 = total(0.5, 1e-9, 16100.0);
            const double F1000 = total(0.5, 1e-6, 16100.0);
            rep.checks.push_back(relative_check("|F| v=0.5 a=10nm T=16100K", std::fabs(F10), 1.30e-25, 0.02));
            rep.checks.push_back(relative_check("|F| v=0.5 a=1nm T=16100K", std::fabs(F1), 1.57e-25, 0.02));
            rep.checks.push_back(relative_check("|F(1nm)|/|F(1um)|", std::fabs(F1 / F1000), 2.0, 0.15));
            rep.checks.push_back(
                relative_check("|F| v=0.995 a=10nm T=16100K", std::fabs(total(0.995, 10e-9, 16100.0)), 1.66e-19, 0.05));
            rep.checks.push_back(
                relative_check("|F| v=0.995 a=10nm T=45100K", std::fabs(total(0.995, 10e-9, 45100.0)), 6.30e-16, 0.05));
        });
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

}  // namespace qfpc
