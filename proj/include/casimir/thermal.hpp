#pragma once

// Finite-temperature plate quantities built on the Lifshitz module:
// the perfect-conductor low-temperature expansion, the Drude TE zero-mode
// deficit, and free energy / entropy sweeps.

#include <optional>
#include <string>
#include <vector>

#include "casimir/lifshitz.hpp"
#include "casimir/materials.hpp"

namespace casimir::thermal {

/// F/A = c3_term + t3_term + t4_term for perfect conductors at a T << 1:
/// -pi^2/(720 a^3), -zeta(3) T^3/(2 pi), +pi^2 a T^4 / 45.
struct PlasmaLimitTerms {
    double c3_term = 0.0;
    double t3_term = 0.0;
    double t4_term = 0.0;
    /// a T > 0.3, where the exponentially small remainder is no longer negligible.
    bool outside_validity = false;
};
PlasmaLimitTerms plasma_limit_coefficients(double a, double temperature);

/// Free energy per area of the n = 0 TE channel between ideal TE mirrors,
/// (T/4 pi) int_0^inf k log(1 - e^{-2ka}) dk = -zeta(3) T / (16 pi a^2).
/// This is what a Drude description removes relative to the plasma limit.
struct ZeroModeDeficit {
    double closed_form = 0.0;
    double quadrature = 0.0;
    double quadrature_error = 0.0;
};
ZeroModeDeficit drude_zero_mode_deficit(double a, double temperature, double rel_tol = 1e-12);

struct ThermalSweepSpec {
    std::vector<double> separations;   ///< strictly increasing, > 0
    std::vector<double> temperatures;  ///< strictly increasing, > 0
    materials::DielectricModel model_1;
    materials::DielectricModel model_2;
    double tol = 1e-10;
};

/// Only filled when both models are Drude with gamma <= 1e-6 omega_p: the
/// free energy is recomputed with the gamma -> 0 plasma models and the
/// difference compared with the plasma TE zero-mode term it should equal.
struct DrudePlasmaCheck {
    double difference = 0.0;  ///< F_model - F_plasma
    double expected = 0.0;    ///< -(plasma weighted n = 0 TE term)
    double ideal_deficit = 0.0;  ///< +zeta(3) T / (16 pi a^2), the perfect-reflector limit
    double budget = 0.0;
    bool within_budget = false;
};

struct ThermalPoint {
    double a = 0.0;
    double temperature = 0.0;
    double free_energy = 0.0;  ///< per area
    double entropy = 0.0;      ///< -dF/dT per area, centered difference with step 1e-3 T
    double zero_mode_share = 0.0;  ///< weighted n = 0 term / F
    double error_estimate = 0.0;
    bool converged = true;
    std::optional<DrudePlasmaCheck> drude_plasma;
    std::string error;  ///< non-empty if this point failed
};

/// Row-major over (a, T): all temperatures for the first separation, then the next.
std::vector<ThermalPoint> thermal_sweep(const ThermalSweepSpec& spec);

}  // namespace casimir::thermal
