#include "thetapr/numkernel.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace thetapr::numkernel {

bool is_finite(const Cx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

void require_finite(const CMatrix& m, const char* what) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!is_finite(m(i, j)))
                throw InvalidInput(std::string(what) + ": non-finite entry");
}

void require_finite(const CVector& v, const char* what) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (!is_finite(v(i)))
            throw InvalidInput(std::string(what) + ": non-finite entry");
}

namespace {

void require_nonempty(const CMatrix& m, const char* what) {
    if (m.rows() == 0 || m.cols() == 0)
        throw InvalidInput(std::string(what) + ": empty matrix");
}

double rank_cutoff(const Eigen::VectorXd& sv, const CMatrix& m, Tolerance tol) {
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    return tol.rank_rel * smax * static_cast<double>(std::max(m.rows(), m.cols()));
}

} // namespace

int rank(const CMatrix& m, Tolerance tol) {
    require_nonempty(m, "rank");
    require_finite(m, "rank");
    Eigen::JacobiSVD<CMatrix> svd(m);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double cutoff = rank_cutoff(sv, m, tol);
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++r;
    return r;
}

std::vector<CVector> null_space_basis(const CMatrix& m, Tolerance tol) {
    require_nonempty(m, "null_space_basis");
    require_finite(m, "null_space_basis");
    Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double cutoff = rank_cutoff(sv, m, tol);
    int r = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > cutoff) ++r;
    std::vector<CVector> basis;
    basis.reserve(static_cast<std::size_t>(m.cols() - r));
    for (Eigen::Index j = r; j < m.cols(); ++j)
        basis.push_back(svd.matrixV().col(j));
    return basis;
}

Cx determinant(const CMatrix& m) {
    if (m.rows() != m.cols())
        throw InvalidInput("determinant: matrix is not square");
    require_nonempty(m, "determinant");
    require_finite(m, "determinant");
    return Eigen::PartialPivLU<CMatrix>(m).determinant();
}

} // namespace thetapr::numkernel
