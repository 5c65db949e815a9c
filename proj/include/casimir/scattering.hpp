#pragma once

// Scalar TGTG energies for spheres and sphere-plane, and the dipole
// (Casimir-Polder) limit. Natural units, imaginary wavenumber kappa.
//
// A sphere's T-matrix is stored as the ratio T_l = i_l / k_l (Dirichlet) or
// i_l' / k_l' (Neumann, negative), so the Bessel normalization cancels. The
// translation block U^m_{l'l}(kappa, d) re-expands the outgoing wave
// k_l Y_lm about one centre into regular waves i_l' Y_l'm about a centre
// displaced by d along z.

#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "casimir/scattering/wigner.hpp"

namespace casimir::scattering {

enum class Boundary { Dirichlet, Neumann };

std::string to_string(Boundary bc);
Boundary boundary_from_string(const std::string& name);

/// T_l(kappa R). Throws std::invalid_argument unless kappa > 0 and R > 0;
/// std::overflow_error when the ratio itself is not representable.
double scalar_sphere_t(int l, double kappa, double radius, Boundary bc);

struct ScalarSphereT {
    double radius = 1.0;
    Boundary bc = Boundary::Dirichlet;
    double kappa = 1.0;
    std::vector<double> log_abs;  ///< log |T_l|, l = 0..l_max
    double sign = 1.0;            ///< common sign of every T_l
    double value(int l) const;
    int l_max() const { return static_cast<int>(log_abs.size()) - 1; }
};

/// All orders at once, in log form (safe for kappa R > 600 and large l).
ScalarSphereT scalar_sphere_t_table(int l_max, double kappa, double radius, Boundary bc);

struct TranslationBlock {
    int m = 0;
    double kappa = 1.0;
    double d = 1.0;
    /// Row/column index i stands for l = m + i, i = 0..l_max - m.
    Eigen::MatrixXd matrix;
};

/// Throws std::invalid_argument for d <= 0, kappa <= 0 or m outside
/// [0, l_max], and std::overflow_error when l_max exceeds the coefficient
/// table or an entry is not representable (use the energy routines, which
/// combine T and U in log form, for large orders at small kappa d).
TranslationBlock translation_block(int l_max, int m, double kappa, double d);

struct ScatteringOptions {
    /// 0 picks a default from the geometry (see default_l_max).
    int l_max = 0;
    double tol = 1e-8;
};

struct EnergyResult {
    double energy = 0.0;  ///< extrapolated in l_max
    /// Difference of the Aitken limits from the last and the previous three
    /// truncations (the last raw step when no extrapolation applies).
    double truncation_error = 0.0;
    double quadrature_error = 0.0;
    int l_max = 0;
    std::vector<int> l_max_runs;         ///< l_max - 6, l_max - 4, l_max - 2, l_max
    std::vector<double> energy_by_l_max;
    bool extrapolated = false;
    int evaluations = 0;
    int max_m_used = 0;
    bool converged = true;
    std::vector<std::string> warnings;
};

struct SpherePairConfig {
    double r1 = 1.0;
    /// Infinity selects sphere-plane; d_cc is then the centre-to-plane distance.
    double r2 = 1.0;
    double d_cc = 3.0;
    Boundary bc_1 = Boundary::Dirichlet;
    Boundary bc_2 = Boundary::Dirichlet;
};

/// Smallest gap/R accepted with the default truncation.
constexpr double kMinGapRatioDefault = 0.02;

/// Default truncation: ceil(6 R / gap) clamped to [12, 100].
int default_l_max(double radius, double gap);

/// E = (1/2pi) int dkappa sum_m log det(1 - N^m(kappa)).
/// Throws casimir::GeometryError when the bodies touch or overlap or a round
/// trip stops being a contraction, std::invalid_argument for bad inputs.
EnergyResult tgtg_energy_scalar(const SpherePairConfig& config, const ScatteringOptions& opts = {});

/// Sphere of radius R at surface gap d_gap above a plane.
EnergyResult tgtg_energy_sphere_plate(double radius, double d_gap, Boundary bc_sphere,
                                      Boundary bc_plate, const ScatteringOptions& opts = {});

/// Integrand sum_m log det(1 - N^m(kappa)) at fixed truncation, m = 0 counted
/// once and m > 0 twice. Exposed for tests.
double round_trip_log_det(const SpherePairConfig& config, int l_max, double kappa);

/// Round-trip matrix N^m = T_1 U_12 T_2 U_21 (or T U P for the plane),
/// without symmetrization. Exposed for tests; uses translation_block.
Eigen::MatrixXd round_trip_matrix(const SpherePairConfig& config, int l_max, int m, double kappa);

/// -R1 R2 / (4 pi d^3): large-separation limit of two Dirichlet spheres.
double dirichlet_monopole_asymptote(double r1, double r2, double d_cc);

struct DipolePair {
    double alpha_1 = 1.0;
    double alpha_2 = 1.0;
    double d = 1.0;
};

/// Throws std::invalid_argument for negative polarizabilities or d <= 0.
void validate(const DipolePair& pair);
/// Warnings for alpha_j > 0.01 d^3.
std::vector<std::string> dipole_warnings(const DipolePair& pair);

/// -(23 / 4 pi) alpha_1 alpha_2 / d^7.
double casimir_polder_energy(const DipolePair& pair);

/// (3 + 6u + 5u^2 + 2u^3 + u^4) e^{-2u}.
double casimir_polder_integrand(double u);

struct CasimirPolderQuadrature {
    double energy = 0.0;
    double integral = 0.0;  ///< int_0^inf of the integrand, 23/4 exactly
    double error_estimate = 0.0;
    bool converged = true;
};

/// -(1 / pi d)(alpha_1 / d^3)(alpha_2 / d^3) times the numerical integral.
CasimirPolderQuadrature casimir_polder_quadrature(const DipolePair& pair, double rel_tol = 1e-13);

}  // namespace casimir::scattering
