/**
 * Dense complex matrix support shared across the library.
 *
 * Channel matrices, beamforming/shaping matrices and null-space bases are
 * all dense complex doubles; Eigen provides the storage and decompositions.
 * Zero-dimension matrices (0 rows and/or 0 columns) are first-class values
 * so degenerate block sizes need no special casing downstream.
 */
#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace mimodof {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Numeric thresholds standing in for the model's exact rank statements.
struct Tolerance {
    double rank_rel_tol = 1e-10;  ///< relative singular-value cutoff
    double zero_rel_tol = 1e-8;   ///< relative residual cutoff for neutralized entries

    void validate() const {
        if (!(rank_rel_tol > 0.0 && rank_rel_tol < 1e-3))
            throw std::invalid_argument("Tolerance: rank_rel_tol must be in (0, 1e-3)");
        if (!(zero_rel_tol > 0.0 && zero_rel_tol < 1.0))
            throw std::invalid_argument("Tolerance: zero_rel_tol must be in (0, 1)");
    }
};

inline bool is_finite(const ComplexMatrix& a) {
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
    return true;
}

inline void require_finite(const ComplexMatrix& a, const char* where) {
    if (!is_finite(a))
        throw std::invalid_argument(std::string(where) + ": matrix has non-finite entries");
}

inline double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i) m = std::max(m, std::abs(a(i, j)));
    return m;
}

inline double frobenius_norm(const ComplexMatrix& a) { return a.norm(); }

}  // namespace mimodof
