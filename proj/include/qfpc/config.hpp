// Run configuration for the command-line tool: JSON in, CSV or JSON out.
#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "qfpc/forces.hpp"
#include "qfpc/kernels.hpp"

namespace qfpc {

/// Invalid user input; the CLI maps it to exit code 2.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct SweepAxis {
    std::string name;  // v, a_nm, T_K or z
    double lo = 0.0;
    double hi = 0.0;
    int n = 1;
    bool log = false;

    std::vector<double> values() const {
        std::vector<double> out(n);
        for (int i = 0; i < n; ++i) {
            const double t = n == 1 ? 0.0 : double(i) / (n - 1);
            out[i] = log ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo))) : lo + t * (hi - lo);
        }
        if (n > 1) out.back() = hi;
        return out;
    }

    /// Parses "lo:hi:n" or "lo:hi:n:log" (also ":lin").
    static SweepAxis parse(const std::string& name, const std::string& spec) {
        SweepAxis ax;
        ax.name = name;
        std::vector<std::string> parts;
        std::stringstream ss(spec);
        for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
        if (parts.size() < 3 || parts.size() > 4) {
            throw UsageError("axis '" + name + "' must be lo:hi:n[:log], got '" + spec + "'");
        }
        try {
            ax.lo = std::stod(parts[0]);
            ax.hi = std::stod(parts[1]);
            ax.n = std::stoi(parts[2]);
        } catch (const std::exception&) {
            throw UsageError("axis '" + name + "': cannot parse '" + spec + "'");
        }
        if (parts.size() == 4) {
            if (parts[3] == "log") {
                ax.log = true;
            } else if (parts[3] != "lin" && parts[3] != "linear") {
                throw UsageError("axis '" + name + "': spacing must be lin or log");
            }
        }
        ax.validate();
        return ax;
    }

    void validate() const {
        if (name != "v" && name != "a_nm" && name != "T_K" && name != "z") {
            throw UsageError("unknown sweep axis '" + name + "'");
        }
        if (n < 1) throw UsageError("axis '" + name + "': n must be >= 1");
        if (!std::isfinite(lo) || !std::isfinite(hi)) throw UsageError("axis '" + name + "': bounds must be finite");
        if (log && !(lo > 0.0 && hi > 0.0)) throw UsageError("axis '" + name + "': log spacing needs positive bounds");
    }
};

struct RunConfig {
    std::string mode = "compute";  // compute | sweep | validate | limits
    std::string atom = "Cs";        // preset name; ignored when alpha_A3 is set
    std::optional<std::array<double, 3>> alpha_A3;  // xx, yy, zz
    double v = 0.5;
    double a_nm = 10.0;
    double T_K = 16100.0;
    std::vector<std::string> channels{"ISO"};
    std::vector<SweepAxis> axes;
    double rel_tol = 1e-8;
    std::string format;            // csv | json; empty picks by mode
    std::string output;            // empty: stdout
    std::string suite = "quick";

    void validate() const {
        static const std::set<std::string> modes{"compute", "sweep", "validate", "limits"};
        if (!modes.count(mode)) throw UsageError("mode must be compute, sweep, validate or limits");
        if (!(v >= 0.0 && v <= 0.9999)) throw UsageError("v must be in [0, 0.9999]");
        if (!(a_nm > 0.0) || !std::isfinite(a_nm)) throw UsageError("a_nm must be positive");
        if (!(T_K > 0.0) || !std::isfinite(T_K)) throw UsageError("T_K must be positive");
        if (!(rel_tol > 0.0)) throw UsageError("rel_tol must be positive");
        if (!format.empty() && format != "csv" && format != "json") throw UsageError("format must be csv or json");
        if (suite != "quick" && suite != "full") throw UsageError("suite must be quick or full");
        if (channels.empty()) throw UsageError("at least one channel is required");
        for (const auto& c : channels) {
            try {
                parse_channel(c);
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
        }
        if (alpha_A3) {
            for (double a : *alpha_A3)
                if (!(a >= 0.0)) throw UsageError("polarizability components must be >= 0");
            const auto& a = *alpha_A3;
            if (channel_set().count(Channel::ISO) && !(a[0] == a[1] && a[1] == a[2])) {
                throw UsageError("ISO needs an isotropic polarizability; request XX, YY, ZZ, XZ instead");
            }
        } else if (!atom_presets().count(atom)) {
            throw UsageError("unknown atom preset '" + atom + "'");
        }
        if (mode == "sweep") {
            if (axes.empty()) throw UsageError("sweep requires at least one axis");
            std::set<std::string> seen;
            for (const auto& ax : axes) {
                ax.validate();
                if (!seen.insert(ax.name).second) throw UsageError("duplicate sweep axis '" + ax.name + "'");
            }
            if (seen.count("z") && seen.count("T_K")) throw UsageError("z and T_K axes are mutually exclusive");
            if (seen.count("z") && seen.count("a_nm")) throw UsageError("z and a_nm axes are mutually exclusive");
        }
    }

    /// CSV for sweeps, JSON otherwise, unless set explicitly.
    std::string output_format() const {
        if (!format.empty()) return format;
        return mode == "sweep" ? "csv" : "json";
    }

    std::set<Channel> channel_set() const {
        std::set<Channel> out;
        for (const auto& c : channels) out.insert(parse_channel(c));
        return out;
    }

    AtomPolarizability polarizability() const {
        if (alpha_A3) return AtomPolarizability::from_angstrom3((*alpha_A3)[0], (*alpha_A3)[1], (*alpha_A3)[2]);
        return atom_preset(atom).polarizability;
    }

    const AtomPreset* preset() const { return alpha_A3 ? nullptr : &atom_preset(atom); }

    QuadratureConfig quadrature() const {
        QuadratureConfig q;
        q.rel_tol = rel_tol;
        return q;
    }

    /// Grid points in nested axis order, first axis outermost. A z axis
    /// sets the temperature from the fixed distance.
    std::vector<SweepPoint> grid() const {
        std::vector<SweepPoint> pts{{v, a_nm * 1e-9, T_K}};
        for (const auto& ax : axes) {
            std::vector<SweepPoint> next;
            for (const auto& p : pts) {
                for (double val : ax.values()) {
                    SweepPoint q = p;
                    if (ax.name == "v") q.v = val;
                    if (ax.name == "a_nm") q.a_m = val * 1e-9;
                    if (ax.name == "T_K") q.T_K = val;
                    if (ax.name == "z") q.T_K = constants::hbar_c_over_kB / (2.0 * q.a_m * val);
                    next.push_back(q);
                }
            }
            pts = std::move(next);
        }
        return pts;
    }
};

inline void to_json(nlohmann::json& j, const SweepAxis& a) {
    j = {{"name", a.name}, {"lo", a.lo}, {"hi", a.hi}, {"n", a.n}, {"spacing", a.log ? "log" : "linear"}};
}

inline void from_json(const nlohmann::json& j, SweepAxis& a) {
    a.name = j.at("name").get<std::string>();
    a.lo = j.at("lo").get<double>();
    a.hi = j.at("hi").get<double>();
    a.n = j.at("n").get<int>();
    const auto spacing = j.value("spacing", std::string("linear"));
    if (spacing != "linear" && spacing != "lin" && spacing != "log") throw UsageError("spacing must be linear or log");
    a.log = spacing == "log";
}

inline void to_json(nlohmann::json& j, const RunConfig& c) {
    j = {{"mode", c.mode}, {"v", c.v},           {"a_nm", c.a_nm},     {"T_K", c.T_K},
         {"channels", c.channels}, {"rel_tol", c.rel_tol}, {"suite", c.suite}};
    if (!c.format.empty()) j["format"] = c.format;
    if (c.alpha_A3) {
        j["alpha_A3"] = *c.alpha_A3;
    } else {
        j["atom"] = c.atom;
    }
    if (!c.axes.empty()) j["axes"] = c.axes;
    if (!c.output.empty()) j["output"] = c.output;
}

/// Reads a RunConfig object. An object carrying an "inputs" member (the
/// echo written by compute) is unwrapped first, so outputs can be fed back.
inline void from_json(const nlohmann::json& jin, RunConfig& c) {
    const nlohmann::json& j = jin.contains("inputs") ? jin.at("inputs") : jin;
    if (!j.is_object()) throw UsageError("config must be a JSON object");
    c.mode = j.value("mode", c.mode);
    c.atom = j.value("atom", c.atom);
    if (j.contains("alpha_A3")) {
        const auto& a = j.at("alpha_A3");
        if (a.is_number()) {
            const double x = a.get<double>();
            c.alpha_A3 = std::array<double, 3>{x, x, x};
        } else {
            c.alpha_A3 = a.get<std::array<double, 3>>();
        }
    }
    c.v = j.value("v", c.v);
    c.a_nm = j.value("a_nm", c.a_nm);
    c.T_K = j.value("T_K", c.T_K);
    if (j.contains("channels")) c.channels = j.at("channels").get<std::vector<std::string>>();
    if (j.contains("axes")) c.axes = j.at("axes").get<std::vector<SweepAxis>>();
    c.rel_tol = j.value("rel_tol", c.rel_tol);
    c.format = j.value("format", c.format);
    c.output = j.value("output", c.output);
    c.suite = j.value("suite", c.suite);
}

inline RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config '" + path + "'");
    try {
        return nlohmann::json::parse(in).get<RunConfig>();
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("bad config '" + path + "': " + e.what());
    }
}

inline nlohmann::json breakdown_json(const ForceBreakdown& b) {
    return {{"v", b.v},
            {"a_m", b.a_m},
            {"T_K", b.T_K},
            {"z", b.z},
            {"f_xx", b.f.xx()},
            {"f_yy", b.f.yy()},
            {"f_zz", b.f.zz()},
            {"f_xz", b.f.xz()},
            {"f_iso", b.f_iso},
            {"F_xx_N", b.F_N.xx()},
            {"F_yy_N", b.F_N.yy()},
            {"F_zz_N", b.F_N.zz()},
            {"F_xz_N", b.F_N.xz()},
            {"F_total_N", b.F_total_N},
            {"rel_err_est", b.rel_err_est},
            {"regime_notes", b.regime_notes}};
}

inline constexpr const char* kCsvHeader =
    "v,a_m,T_K,z,f_xx,f_yy,f_zz,f_xz,f_iso,F_xx_N,F_yy_N,F_zz_N,F_xz_N,F_total_N,rel_err_est";

/// Ten significant digits, "nan" for missing values.
inline std::string csv_number(double x) {
    if (std::isnan(x)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9e", x);
    return buf;
}

inline std::string csv_row(const ForceBreakdown& b) {
    const double cols[] = {b.v,       b.a_m,      b.T_K,      b.z,        b.f.xx(),   b.f.yy(),
                           b.f.zz(),  b.f.xz(),   b.f_iso,    b.F_N.xx(), b.F_N.yy(), b.F_N.zz(),
                           b.F_N.xz(), b.F_total_N, b.rel_err_est};
    std::string out;
    for (std::size_t i = 0; i < std::size(cols); ++i) {
        if (i) out += ',';
        out += csv_number(cols[i]);
    }
    return out;
}

}  // namespace qfpc
