#pragma once

// Edge geometries: a thin strip parallel to a plane (three-term expansion) and
// a half-plane perpendicular to a plane (determinant over Bateman k-functions).
// Natural units; energies are per unit length of the edge.

#include <string>
#include <vector>

namespace casimir::edges {

inline constexpr double kStripBeta = 0.00092;
inline constexpr double kStripGamma = -0.0040;

struct StripConfig {
    double half_width = 1.0;  ///< d; the strip is 2d wide
    double separation = 1.0;  ///< H
    double beta_edge = kStripBeta;
    double gamma_edge = kStripGamma;
};

struct StripEnergy {
    double energy_per_length = 0.0;
    double plate_term = 0.0;        ///< -(pi^2/720) 2d / H^3
    double edge_term = 0.0;         ///< 2 beta / H^2
    double interaction_term = 0.0;  ///< gamma / (2d H)
    std::vector<std::string> warnings;
};

/// E/L = -(pi^2/720)(2d/H^3) + 2 beta/H^2 + gamma/(2d H). Throws
/// std::invalid_argument for non-positive d or H; warns when 2d < H.
StripEnergy strip_energy_per_length(const StripConfig& config);

/// Bateman k-function k_nu(u) = (2/pi) int_0^{pi/2} cos(u tan(theta) - nu theta) dtheta.
///
/// Evaluated without oscillation: for nu < 0 (a = -nu/2)
///   k_nu(u) = e^{-u} sin(pi a)/pi int_0^inf e^{-2u t} t^{a-1} (1+t)^{-a-1} dt
/// which vanishes for negative even nu; for nu >= 0 the same confluent
/// integral is taken at positive order and carried down by the three-term
/// recurrence in the order. At u = 0 the value is (2/pi) sin(nu pi/2)/nu.
/// Throws std::invalid_argument for u < 0 or non-finite input and
/// casimir::ConvergenceError when the quadrature fails.
double bateman_k(double nu, double u);

struct HalfPlaneConfig {
    double separation = 1.0;  ///< H
    int nu_max = 10;
    /// q integration starts at q_min = q_min_factor / H.
    double q_min_factor = 1e-4;
    double tol = 1e-10;
};

struct HalfPlaneResult {
    double energy_per_length = 0.0;  ///< -c_perp / H^2 with the extrapolated c_perp
    double c_perp = 0.0;             ///< extrapolated in nu_max
    double c_perp_at_nu_max = 0.0;
    double c_perp_at_nu_max_minus_2 = 0.0;
    double truncation_error = 0.0;  ///< |extrapolated - value at nu_max|
    /// Change of c_perp when the lower cutoff is halved.
    double cutoff_sensitivity = 0.0;
    double quadrature_error = 0.0;
    int evaluations = 0;
    bool converged = true;
    std::vector<std::string> warnings;
};

/// log det(1 - M) with M_{nu nu'} = (-1)^nu k_{-nu-nu'-1}(u), nu, nu' = 0..nu_max.
double half_plane_log_det(int nu_max, double u);

/// E/L = int_{q_min}^inf (q dq / 4 pi) log det(1 - M(2 q H)) = -C_perp / H^2,
/// Richardson-extrapolated from nu_max - 2 and nu_max assuming the error falls
/// like 1/(nu_max + 1)^2. Throws std::invalid_argument for H <= 0, nu_max < 4 or a
/// non-positive cutoff.
HalfPlaneResult halfplane_perp_energy(const HalfPlaneConfig& config);

}  // namespace casimir::edges
