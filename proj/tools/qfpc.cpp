// qfpc: quantum friction of an atom moving parallel to a perfectly
// conducting plate.
//
//   qfpc compute  --atom Cs --v 0.5 --a-nm 10 --T-K 16100
//   qfpc sweep    --v 0.5 --a-nm 10 --T-K-axis 1000:16100:20:log
//   qfpc validate --suite quick
//   qfpc limits   --v 0.5 --z 2
//
// Exit codes: 0 success, 1 validation failure, 2 usage error, 3 numeric failure.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "qfpc/qfpc.hpp"

namespace {

using qfpc::RunConfig;
using qfpc::UsageError;

struct Flags {
    std::string config;
    std::string atom;
    std::vector<double> alpha;
    double v = 0, a_nm = 0, T_K = 0, z = 0, rel_tol = 0;
    std::vector<std::string> channels;
    std::string format, output, suite;
    std::string v_axis, a_axis, T_axis, z_axis;
};

struct Options {
    CLI::Option* atom = nullptr;
    CLI::Option* alpha = nullptr;
    CLI::Option* v = nullptr;
    CLI::Option* a_nm = nullptr;
    CLI::Option* T_K = nullptr;
    CLI::Option* z = nullptr;
    CLI::Option* rel_tol = nullptr;
    CLI::Option* channels = nullptr;
    CLI::Option* format = nullptr;
    CLI::Option* output = nullptr;
    CLI::Option* suite = nullptr;
    CLI::Option* v_axis = nullptr;
    CLI::Option* a_axis = nullptr;
    CLI::Option* T_axis = nullptr;
    CLI::Option* z_axis = nullptr;
};

void add_physics_flags(CLI::App* cmd, Flags& f, Options& o) {
    cmd->add_option("--config", f.config, "JSON run configuration; flags override its values");
    o.atom = cmd->add_option("--atom", f.atom, "atom preset (Cs)");
    o.alpha = cmd->add_option("--alpha-A3", f.alpha, "static polarizability in A^3: one value or xx yy zz")
                  ->expected(1, 3);
    o.v = cmd->add_option("--v", f.v, "velocity in units of c");
    o.a_nm = cmd->add_option("--a-nm", f.a_nm, "atom-plate distance in nm");
    o.T_K = cmd->add_option("--T-K", f.T_K, "temperature in K");
    o.rel_tol = cmd->add_option("--rel-tol", f.rel_tol, "quadrature relative tolerance");
    o.channels = cmd->add_option("--channels", f.channels, "channels summed into F_total (XX YY ZZ XZ ISO)");
    o.format = cmd->add_option("--format", f.format, "csv or json");
    o.output = cmd->add_option("--output,-o", f.output, "output file (default stdout)");
}

RunConfig build_config(const std::string& mode, const Flags& f, const Options& o) {
    RunConfig c;
    if (!f.config.empty()) c = qfpc::load_run_config(f.config);
    c.mode = mode;
    if (o.atom && o.atom->count()) {
        c.atom = f.atom;
        c.alpha_A3.reset();
    }
    if (o.alpha && o.alpha->count()) {
        if (f.alpha.size() == 1) {
            c.alpha_A3 = std::array<double, 3>{f.alpha[0], f.alpha[0], f.alpha[0]};
        } else if (f.alpha.size() == 3) {
            c.alpha_A3 = std::array<double, 3>{f.alpha[0], f.alpha[1], f.alpha[2]};
        } else {
            throw UsageError("--alpha-A3 takes one or three values");
        }
    }
    if (o.v && o.v->count()) c.v = f.v;
    if (o.a_nm && o.a_nm->count()) c.a_nm = f.a_nm;
    if (o.T_K && o.T_K->count()) c.T_K = f.T_K;
    if (o.rel_tol && o.rel_tol->count()) c.rel_tol = f.rel_tol;
    if (o.channels && o.channels->count()) c.channels = f.channels;
    if (o.format && o.format->count()) c.format = f.format;
    if (o.output && o.output->count()) c.output = f.output;
    if (o.suite && o.suite->count()) c.suite = f.suite;
    auto axis = [&](CLI::Option* opt, const char* name, const std::string& spec) {
        if (!opt || !opt->count()) return;
        std::erase_if(c.axes, [&](const qfpc::SweepAxis& a) { return a.name == name; });
        c.axes.push_back(qfpc::SweepAxis::parse(name, spec));
    };
    axis(o.v_axis, "v", f.v_axis);
    axis(o.a_axis, "a_nm", f.a_axis);
    axis(o.T_axis, "T_K", f.T_axis);
    axis(o.z_axis, "z", f.z_axis);
    c.validate();
    return c;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw UsageError("cannot write '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

int cmd_compute(const RunConfig& c) {
    const auto atom = c.polarizability();
    const auto geom = qfpc::ThermalGeometry::from_si(c.a_nm * 1e-9, c.T_K);
    const auto b = qfpc::force_si(atom, qfpc::Kinematics::from_velocity(c.v), geom, c.channel_set(), c.quadrature(),
                                  c.preset());
    Output out(c.output);
    if (c.output_format() == "csv") {
        out.stream() << qfpc::kCsvHeader << '\n' << qfpc::csv_row(b) << '\n';
    } else {
        auto j = qfpc::breakdown_json(b);
        j["inputs"] = c;
        j["inputs"].erase("output");  // replaying the echo must not overwrite this file
        out.stream() << j.dump(2) << '\n';
    }
    return 0;
}

int cmd_sweep(const RunConfig& c) {
    const auto results =
        qfpc::sweep(c.grid(), c.polarizability(), c.channel_set(), c.quadrature(), c.preset());
    Output out(c.output);
    if (c.output_format() == "json") {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& r : results) {
            auto j = qfpc::breakdown_json(r.breakdown);
            if (!r.ok()) j["error"] = r.error;
            rows.push_back(j);
        }
        out.stream() << nlohmann::json{{"inputs", c}, {"rows", rows}}.dump(2) << '\n';
    } else {
        out.stream() << qfpc::kCsvHeader << '\n';
        for (const auto& r : results) out.stream() << qfpc::csv_row(r.breakdown) << '\n';
    }
    for (const auto& r : results) {
        if (!r.ok()) {
            std::cerr << "qfpc: row v=" << r.breakdown.v << " a_m=" << r.breakdown.a_m << " T_K=" << r.breakdown.T_K
                      << " failed: " << r.error << '\n';
        }
    }
    return 0;
}

int cmd_validate(const RunConfig& c) {
    const auto rep = qfpc::run_validation(c.suite, qfpc::default_evaluator(c.quadrature()), c.quadrature());
    Output out(c.output);
    out.stream() << rep.json().dump(2) << '\n';
    return rep.passed() ? 0 : 1;
}

int cmd_limits(const RunConfig& c, std::optional<double> z_flag) {
    const double z = z_flag ? *z_flag : qfpc::z_of(c.a_nm * 1e-9, c.T_K);
    if (!(c.v > 0.0 && c.v < 1.0)) throw UsageError("limits need 0 < v < 1");
    nlohmann::json j{{"v", c.v}, {"z", z}};
    for (auto ch : qfpc::kPolarizationChannels) {
        const std::string name(qfpc::to_string(ch));
        j["small_z"][name] = qfpc::f_small_z(ch, c.v, z);
        j["large_z"][name] = qfpc::f_large_z(ch, c.v, z);
    }
    j["nonrelativistic"]["XZ"] = qfpc::f_xz_nr(c.v, z);
    j["I"] = qfpc::I_closed_form(z);
    Output out(c.output);
    out.stream() << j.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum friction of an atom moving parallel to a perfectly conducting plate"};
    app.require_subcommand(1);
    Flags f;
    Options compute_o, sweep_o, validate_o, limits_o;

    auto* compute = app.add_subcommand("compute", "forces at one (v, a, T)");
    add_physics_flags(compute, f, compute_o);

    auto* sweep = app.add_subcommand("sweep", "CSV table over a grid");
    add_physics_flags(sweep, f, sweep_o);
    sweep_o.v_axis = sweep->add_option("--v-axis", f.v_axis, "lo:hi:n[:log]");
    sweep_o.a_axis = sweep->add_option("--a-nm-axis", f.a_axis, "lo:hi:n[:log]");
    sweep_o.T_axis = sweep->add_option("--T-K-axis", f.T_axis, "lo:hi:n[:log]");
    sweep_o.z_axis = sweep->add_option("--z-axis", f.z_axis, "lo:hi:n[:log]; sets T from a");

    auto* validate = app.add_subcommand("validate", "self-check suite");
    validate->add_option("--config", f.config, "JSON run configuration");
    validate_o.suite = validate->add_option("--suite", f.suite, "quick or full");
    validate_o.rel_tol = validate->add_option("--rel-tol", f.rel_tol, "quadrature relative tolerance");
    validate_o.output = validate->add_option("--output,-o", f.output, "output file (default stdout)");

    auto* limits = app.add_subcommand("limits", "closed-form small-z, large-z and nonrelativistic values");
    add_physics_flags(limits, f, limits_o);
    limits_o.z = limits->add_option("--z", f.z, "dimensionless inverse temperature (overrides a and T)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*compute) return cmd_compute(build_config("compute", f, compute_o));
        if (*sweep) return cmd_sweep(build_config("sweep", f, sweep_o));
        if (*validate) return cmd_validate(build_config("validate", f, validate_o));
        if (*limits) {
            const auto c = build_config("limits", f, limits_o);
            std::optional<double> z;
            if (limits_o.z->count()) {
                if (!(f.z > 0.0)) throw UsageError("--z must be positive");
                z = f.z;
            }
            return cmd_limits(c, z);
        }
    } catch (const UsageError& e) {
        std::cerr << "qfpc: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "qfpc: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "qfpc: numeric failure: " << e.what() << '\n';
        return 3;
    }
    return 2;
}
