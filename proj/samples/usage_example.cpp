// Friction on a cesium atom 10 nm above a perfect conductor, at a few temperatures.
#include <cstdio>

#include "qfpc/qfpc.hpp"

int main() {
    using namespace qfpc;
    const auto& cs = atom_preset("Cs");
    const auto kin = Kinematics::from_velocity(0.5);

    std::printf("%10s %10s %14s %14s %14s\n", "T [K]", "z", "f_iso", "F_total [N]", "f_xz / |f_zz|");
    for (double T : {2000.0, 4000.0, 8000.0, 16100.0}) {
        const auto geom = ThermalGeometry::from_si(10e-9, T);
        const auto b = force_si(cs.polarizability, kin, geom, all_channels(), {}, &cs);
        std::printf("%10.0f %10.4f %14.6e %14.6e %14.6e\n", T, b.z, b.f_iso, b.F_total_N, b.f.xz() / -b.f.zz());
    }

    // the same point from the closed-form cold limit
    const double z = z_of(10e-9, 16100.0);
    double cold = 0.0;
    for (auto c : kPolarizationChannels) cold += f_large_z(c, 0.5, z);
    std::printf("large-z estimate of f_iso at z = %.4f: %.6e\n", z, cold);
    return 0;
}
