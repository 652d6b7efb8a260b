#include "hillspec/eig.hpp"

#include <lapacke.h>

#include <cmath>
#include <string>

#include "hillspec/errors.hpp"

namespace hillspec {

namespace {

double spectral_norm_bound(const Matrix& A) {
    double n1 = 0.0, ninf = 0.0;
    for (int j = 0; j < A.cols(); ++j) n1 = std::max(n1, A.col(j).cwiseAbs().sum());
    for (int i = 0; i < A.rows(); ++i) ninf = std::max(ninf, A.row(i).cwiseAbs().sum());
    return std::sqrt(n1 * ninf);
}

}  // namespace

Eigensystem eigenvalues(const Matrix& A, double tol, const std::string& what) {
    const int n = static_cast<int>(A.rows());
    Matrix work = A;  // zgeev overwrites
    Eigensystem out;
    out.values.resize(n);
    out.right_vectors.resize(n, n);
    int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'V', n,
                             reinterpret_cast<lapack_complex_double*>(work.data()), n,
                             reinterpret_cast<lapack_complex_double*>(out.values.data()), nullptr,
                             1, reinterpret_cast<lapack_complex_double*>(out.right_vectors.data()),
                             n);
    if (info != 0)
        throw EigenSolveError("zgeev failed on " + what + " (dim " + std::to_string(n) +
                              "): QR iteration cap reached, info=" + std::to_string(info));
    out.norm_estimate = spectral_norm_bound(A);
    out.residuals.resize(n);
    for (int i = 0; i < n; ++i) {
        Vector v = out.right_vectors.col(i);
        double nv = v.norm();
        if (nv > 0.0) {
            v /= nv;
            out.right_vectors.col(i) = v;
        }
        out.residuals[i] = (A * v - out.values[i] * v).norm();
        out.max_residual = std::max(out.max_residual, out.residuals[i]);
    }
    if (out.max_residual > tol * std::max(out.norm_estimate, 1.0))
        throw EigenSolveError("eigenvalue residual contract violated on " + what + ": " +
                              std::to_string(out.max_residual) + " > tol*|A| = " +
                              std::to_string(tol * out.norm_estimate));
    return out;
}

Eigensystem eigenvalues(const TruncatedOperator& op, double tol) {
    return eigenvalues(op.matrix(), tol, std::string(bc_name(op.bc())) + " operator, K=" +
                                              std::to_string(op.cutoff()));
}

std::vector<cplx> eigenvalues_only(const Matrix& A, const std::string& what) {
    const int n = static_cast<int>(A.rows());
    Matrix work = A;
    std::vector<cplx> vals(n);
    int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n,
                             reinterpret_cast<lapack_complex_double*>(work.data()), n,
                             reinterpret_cast<lapack_complex_double*>(vals.data()), nullptr, 1,
                             nullptr, 1);
    if (info != 0)
        throw EigenSolveError("zgeev failed on " + what + ", info=" + std::to_string(info));
    return vals;
}

}  // namespace hillspec
