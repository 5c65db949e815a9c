#include "casimir/numerics/linalg.hpp"

#include <cmath>
#include <stdexcept>

#include "casimir/errors.hpp"

namespace casimir::numerics {

double log_det_one_minus(const Eigen::Ref<const Eigen::MatrixXd>& a)
{
    if (a.rows() != a.cols())
        throw std::invalid_argument("log_det_one_minus: matrix must be square");
    if (a.size() == 0)
        return 0.0;

    if (a.norm() < 1e-6) {
        // -tr A - tr(A^2)/2; tr(A^2) = sum_ij A_ij A_ji
        return -a.trace() - 0.5 * a.cwiseProduct(a.transpose()).sum();
    }

    const Eigen::Index n = a.rows();
    const Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n) - a;
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    const auto& packed = lu.matrixLU();
    double log_abs = 0.0;
    int sign = lu.permutationP().determinant();
    for (Eigen::Index i = 0; i < n; ++i) {
        const double u = packed(i, i);
        if (u == 0.0)
            throw GeometryError("log_det_one_minus: 1 - A is singular (round trip not a contraction)");
        if (u < 0.0)
            sign = -sign;
        log_abs += std::log(std::abs(u));
    }
    if (sign < 0)
        throw GeometryError(
            "log_det_one_minus: det(1 - A) < 0, an eigenvalue of the round trip exceeds 1 "
            "(interpenetrating or unphysical geometry)");
    return log_abs;
}

}  // namespace casimir::numerics
