/**
 * Rank-revealing dense complex linear algebra: numerical rank, orthonormal
 * null-space bases and condition numbers, all via singular values.
 *
 * Rank uses a relative cutoff against the largest singular value. Null bases
 * are orthonormal (columns of the SVD's V), which keeps condition numbers of
 * matrices assembled from them bounded. All functions are pure; identical
 * inputs give bitwise-identical output on one platform.
 */
#pragma once

#include "mimodof/matrix.hpp"

#include <Eigen/SVD>

#include <limits>

namespace mimodof {

/// Number of singular values above rank_rel_tol * sigma_max. Zero and
/// empty matrices have rank 0.
inline Eigen::Index numerical_rank(const ComplexMatrix& a, const Tolerance& tol = {}) {
    tol.validate();
    require_finite(a, "numerical_rank");
    if (a.rows() == 0 || a.cols() == 0) return 0;
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    const auto& s = svd.singularValues();
    const double cutoff = tol.rank_rel_tol * s(0);
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cutoff) ++r;
    return r;
}

/// Largest singular value; 0 for empty matrices.
inline double spectral_norm(const ComplexMatrix& a) {
    require_finite(a, "spectral_norm");
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    return svd.singularValues()(0);
}

/// Orthonormal basis of { v : A v = 0 }, shape n x (n - rank).
/// Every column v satisfies ||A v|| <= rank_rel_tol * ||A||.
inline ComplexMatrix right_null_basis(const ComplexMatrix& a, const Tolerance& tol = {}) {
    tol.validate();
    require_finite(a, "right_null_basis");
    const Eigen::Index n = a.cols();
    if (n == 0) return ComplexMatrix(0, 0);
    if (a.rows() == 0) return ComplexMatrix::Identity(n, n);
    Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double cutoff = tol.rank_rel_tol * s(0);
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cutoff) ++r;
    return svd.matrixV().rightCols(n - r);
}

/// Orthonormal rows y with y A = 0, shape (m - rank) x m. Defined as the
/// conjugate transpose of the right null basis of the conjugate transpose.
inline ComplexMatrix left_null_basis(const ComplexMatrix& a, const Tolerance& tol = {}) {
    return right_null_basis(a.adjoint(), tol).adjoint();
}

/// sigma_max / sigma_min for a square matrix; +infinity when the smallest
/// singular value falls below rank_rel_tol * sigma_max (singular for our
/// purposes). The empty 0x0 matrix is vacuously invertible (condition 1).
inline double condition_number(const ComplexMatrix& a, const Tolerance& tol = {}) {
    tol.validate();
    require_finite(a, "condition_number");
    if (a.rows() != a.cols())
        throw std::invalid_argument("condition_number: matrix must be square");
    if (a.rows() == 0) return 1.0;
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    const auto& s = svd.singularValues();
    const double smax = s(0);
    const double smin = s(s.size() - 1);
    if (smin <= tol.rank_rel_tol * smax) return std::numeric_limits<double>::infinity();
    return smax / smin;
}

}  // namespace mimodof
