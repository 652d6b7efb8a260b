#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "hillspec/opmatrix.hpp"

namespace hillspec {

// Dense non-Hermitian eigendecomposition (LAPACK zgeev) with a per-pair
// residual report |A v - lambda v| for unit right vectors v.
struct Eigensystem {
    std::vector<cplx> values;
    Matrix right_vectors;        // columns, unit 2-norm
    std::vector<double> residuals;
    double norm_estimate = 0.0;  // scale used by the residual contract
    double max_residual = 0.0;
};

// residual contract: max_i |A v_i - lambda_i v_i| <= tol * norm_estimate(A)
Eigensystem eigenvalues(const Matrix& A, double tol = 1e-10,
                        const std::string& what = "matrix");
Eigensystem eigenvalues(const TruncatedOperator& op, double tol = 1e-10);

// eigenvalues only (no vectors); same backend
std::vector<cplx> eigenvalues_only(const Matrix& A, const std::string& what = "matrix");

}  // namespace hillspec
