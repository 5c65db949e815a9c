#pragma once

// Proximity force approximation and its leading derivative-expansion
// correction for two gently curved surfaces z = H_1(x, y) (lower) and
// z = H_2(x, y) (upper), in natural units (hbar = c = 1).
//
//   E = int dx dy U(H) [1 + b1 |grad H1|^2 + b2 |grad H2|^2 + bx grad H1 . grad H2]
//
// with H = H2 - H1 and U(H) = -alpha pi^2 / (1440 H^3) the ideal-plate energy
// per area. The antisymmetric coefficient beta_minus vanishes identically.

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace casimir::pfa {

/// Boundary conditions of the pair. For the mixed kinds the first letter is
/// the condition on the upper surface (H_2), the second on the lower (H_1):
/// ND means Neumann on H_2 and Dirichlet on H_1.
enum class BoundaryKind { DD, NN, DN, ND, EM };

std::string to_string(BoundaryKind k);
/// Accepts DD, NN, DN, ND, EM (case-insensitive); throws std::invalid_argument.
BoundaryKind boundary_kind_from_string(const std::string& s);

struct BoundaryPair {
    BoundaryKind kind = BoundaryKind::DD;
    double alpha = 1.0;
    double beta_1 = 0.0;  ///< multiplies |grad H1|^2
    double beta_2 = 0.0;  ///< multiplies |grad H2|^2
    double beta_cross = 0.0;
    double beta_minus = 0.0;
};

/// Single-surface coefficients, named curved-surface condition first.
namespace beta {
inline constexpr double pi2 = 9.8696044010893586188;
inline constexpr double D = 2.0 / 3.0;
inline constexpr double N = 2.0 / 3.0 * (1.0 - 30.0 / pi2);
inline constexpr double DN = 2.0 / 3.0;
inline constexpr double ND = 2.0 / 3.0 - 80.0 / (7.0 * pi2);
inline constexpr double EM = 2.0 / 3.0 * (1.0 - 15.0 / pi2);
}  // namespace beta

/// Ideal-boundary coefficients; beta_cross = 2 - beta_1 - beta_2.
/// For a mixed pair the curved-surface coefficient of each surface follows
/// its own condition: ND gives beta_1 = beta_DN, beta_2 = beta_ND.
BoundaryPair beta_table(BoundaryKind kind);

/// U(H) = -alpha pi^2 / (1440 H^3).
double plate_energy_density(const BoundaryPair& pair, double h);

/// beta_cross implied by tilt invariance for a general U:
/// [1 - H U'(H)/U(H)] / 2 - beta_1 - beta_2, with U' from a centered
/// difference of relative step 1e-6.
double beta_cross_general(double beta_1, double beta_2, const std::function<double(double)>& u, double h);

struct TwoSphereConfig {
    double r1 = 1.0;
    double r2 = std::numeric_limits<double>::infinity();  ///< infinity: sphere-plate
    double d = 0.1;  ///< closest surface separation
    BoundaryPair pair = beta_table(BoundaryKind::DD);
};

/// -alpha pi^3 R1 R2 / (1440 d^2 (R1 + R2)).
double pfa_two_spheres(const TwoSphereConfig& config);

/// E_PFA [1 - d/(R1+R2) + (2 beta - 1)(d/R1 + d/R2)]. Mixed kinds are rejected.
double gradient_corrected_two_spheres(const TwoSphereConfig& config);

/// True when some d/R_i exceeds 0.2.
bool outside_small_gap_regime(const TwoSphereConfig& config);

/// Height samples on a rectangular grid centred on the origin. Sample (i, j)
/// sits at x = (i - (nx-1)/2) dx, y = (j - (ny-1)/2) dy and is stored at
/// heights[j * nx + i]. Each sample stands for one dx-by-dy cell.
struct SurfaceProfile {
    int nx = 0;
    int ny = 0;
    double dx = 1.0;
    double dy = 1.0;
    std::vector<double> heights;

    double x(int i) const { return (i - 0.5 * (nx - 1)) * dx; }
    double y(int j) const { return (j - 0.5 * (ny - 1)) * dy; }
    double at(int i, int j) const { return heights[static_cast<std::size_t>(j) * nx + i]; }
    double& at(int i, int j) { return heights[static_cast<std::size_t>(j) * nx + i]; }
};

SurfaceProfile make_profile(int nx, int ny, double dx, double dy, const std::function<double(double, double)>& h);

struct GradientResult {
    double energy = 0.0;
    double pfa_energy = 0.0;   ///< the U(H) term alone
    double min_gap = 0.0;
    double max_slope = 0.0;    ///< max |grad H1|, |grad H2|, |grad H|
    double coarse_relative_change = 0.0;  ///< |E(2h) - E(h)| / |E(h)|; NaN when not checked
    std::vector<std::string> warnings;
};

/// Midpoint-rule surface integral with centered differences (one-sided on
/// the grid edge). Throws std::invalid_argument for mismatched grids or a
/// slope >= 1, casimir::GeometryError for a non-positive gap. Warns for slopes
/// above 0.3 and when halving the resolution moves the energy by more than 1%.
GradientResult gradient_expansion_energy(const SurfaceProfile& lower, const SurfaceProfile& upper,
                                         const BoundaryPair& pair);

}  // namespace casimir::pfa
