#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "thetapr/errors.hpp"

namespace thetapr {

using Cx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Single knob shared by every rank-sensitive operation. A singular value
// counts toward the rank when it exceeds
//   rank_rel * sigma_max * max(rows, cols).
struct Tolerance {
    double rank_rel = 1e-10;
};

namespace numkernel {

bool is_finite(const Cx& z);

// Throws InvalidInput if any entry is NaN or infinite.
void require_finite(const CMatrix& m, const char* what);
void require_finite(const CVector& v, const char* what);

// Numerical rank; 0 for the zero matrix.
int rank(const CMatrix& m, Tolerance tol = {});

// Orthonormal basis of the numerical null space (empty when rank == cols).
// Each basis vector b satisfies |m*b| <= 10 * rank_rel * sigma_max on
// matrices whose small singular values are genuinely zero.
std::vector<CVector> null_space_basis(const CMatrix& m, Tolerance tol = {});

// Determinant via partially pivoted elimination; matrix must be square.
Cx determinant(const CMatrix& m);

} // namespace numkernel
} // namespace thetapr
