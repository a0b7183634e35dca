#pragma once

namespace dgimex {

/// Dry-air thermodynamic constants and gravity. All SI units.
struct PhysConstants {
    double cp = 1004.5;   // specific heat at constant pressure [J/(kg K)]
    double cv = 717.5;    // specific heat at constant volume   [J/(kg K)]
    double g = 9.81;      // gravitational acceleration [m/s^2]
    double p_ref = 1.0e5; // surface reference pressure [Pa]

    double gas_constant() const { return cp - cv; }
    double gamma() const { return cp / cv; }

    /// Variant with buoyancy switched off (uniform reference, phi = 0).
    static PhysConstants zero_gravity() {
        PhysConstants c;
        c.g = 0.0;
        return c;
    }
};

} // namespace dgimex
