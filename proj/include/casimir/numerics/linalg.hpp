#pragma once

#include <Eigen/Dense>

namespace casimir::numerics {

/// log det(1 - A) for a square matrix whose spectrum lies inside the unit disk.
///
/// Uses a partially pivoted LU of (1 - A). When the Frobenius norm of A is below
/// 1e-6 the truncated series -tr A - tr A^2 / 2 is returned instead, which keeps
/// full relative accuracy for nearly transparent round trips.
///
/// Throws casimir::GeometryError when det(1 - A) <= 0, i.e. when a real
/// eigenvalue has crossed 1.
double log_det_one_minus(const Eigen::Ref<const Eigen::MatrixXd>& a);

}  // namespace casimir::numerics
