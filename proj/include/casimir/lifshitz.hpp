#pragma once

// Parallel-plate Casimir energy per unit area (T = 0) and free energy per
// unit area (T > 0) from the Lifshitz formula, natural units.

#include <array>

#include "casimir/materials.hpp"

namespace casimir::lifshitz {

struct PlateConfig {
    double a = 1.0;  ///< separation
    materials::DielectricModel model_1;
    materials::DielectricModel model_2;
    double temperature = 0.0;  ///< 0 selects the frequency integral
};

struct PlateOptions {
    /// Relative tolerance of the frequency integral / Matsubara tail. The inner
    /// k_perp integrals run ten times tighter.
    double tol = 1e-8;
};

struct PlateEnergyBreakdown {
    double total = 0.0;
    double te = 0.0;
    double tm = 0.0;
    /// Full weighted n = 0 Matsubara term (both polarizations); 0 at T = 0.
    double zero_mode_contribution = 0.0;
    /// TE part of the weighted n = 0 term.
    double zero_mode_te = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
    int matsubara_terms = 0;
    bool converged = true;
};

/// U(d) = -alpha pi^2 / (1440 d^3): alpha = 1 Dirichlet, 2 electromagnetic,
/// -7/8 mixed scalar.
double ideal_plate_energy_density(double alpha, double d);

/// Per-frequency summand s_p(xi) = int_xi^inf q dq/(2 pi) log(1 - r1 r2 e^{-2 q a})
/// for p = TE, TM, where k_perp = sqrt(q^2 - xi^2). At xi = 0 the zero-mode
/// reflection coefficients are used. Energy per area is (1/2pi) int dxi
/// (s_TE + s_TM) at T = 0 and T sum' (s_TE + s_TM) at T > 0.
struct Summand {
    std::array<double, 2> value{};  ///< {TE, TM}
    std::array<double, 2> error{};
    int evaluations = 0;
    bool converged = true;
};
Summand plate_summand(const PlateConfig& config, double xi, double rel_tol);

PlateEnergyBreakdown plate_energy_t0(const PlateConfig& config, const PlateOptions& opts = {});
PlateEnergyBreakdown plate_free_energy(const PlateConfig& config, const PlateOptions& opts = {});
/// Dispatches on config.temperature.
PlateEnergyBreakdown plate_energy(const PlateConfig& config, const PlateOptions& opts = {});

}  // namespace casimir::lifshitz
