#include "hillspec/resolvent.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "hillspec/errors.hpp"

namespace hillspec {

HessResolvent::HessResolvent(const Matrix& A) {
    Eigen::HessenbergDecomposition<Matrix> hd(A);
    u_ = hd.matrixQ();
    h_ = hd.matrixH();
}

HessResolvent::Factorization HessResolvent::factor(cplx lambda) const {
    const int n = dim();
    Factorization f;
    f.r = -h_;
    for (int i = 0; i < n; ++i) f.r(i, i) += lambda;
    f.givens.reserve(n - 1);
    // eliminate the subdiagonal with Givens rotations, rows (i, i+1)
    for (int i = 0; i < n - 1; ++i) {
        cplx a = f.r(i, i), b = f.r(i + 1, i);
        double scale = std::abs(a) + std::abs(b);
        cplx c, s;
        if (scale == 0.0 || std::abs(b) == 0.0) {
            c = 1.0;
            s = 0.0;
        } else {
            double norm = scale * std::sqrt(std::norm(a / scale) + std::norm(b / scale));
            c = std::conj(a) / norm;
            s = std::conj(b) / norm;
        }
        f.givens.emplace_back(c, s);
        // rows i and i+1, columns i..n-1
        for (int j = i; j < n; ++j) {
            cplx ti = f.r(i, j), tk = f.r(i + 1, j);
            f.r(i, j) = c * ti + s * tk;
            f.r(i + 1, j) = -std::conj(s) * ti + std::conj(c) * tk;
        }
    }
    return f;
}

Matrix HessResolvent::solve(cplx lambda, const Matrix& B) const {
    const int n = dim();
    Factorization f = factor(lambda);
    Matrix y = u_.adjoint() * B;
    // apply rotations
    for (int i = 0; i < n - 1; ++i) {
        const auto& [c, s] = f.givens[i];
        for (int col = 0; col < y.cols(); ++col) {
            cplx ti = y(i, col), tk = y(i + 1, col);
            y(i, col) = c * ti + s * tk;
            y(i + 1, col) = -std::conj(s) * ti + std::conj(c) * tk;
        }
    }
    // back substitution R x = y
    for (int col = 0; col < y.cols(); ++col) {
        for (int i = n - 1; i >= 0; --i) {
            cplx acc = y(i, col);
            for (int j = i + 1; j < n; ++j) acc -= f.r(i, j) * y(j, col);
            if (f.r(i, i) == cplx(0.0, 0.0))
                throw StructuralError("resolvent solve: shift hits an eigenvalue of the "
                                      "Hessenberg form");
            y(i, col) = acc / f.r(i, i);
        }
    }
    return u_ * y;
}

Matrix HessResolvent::solve_adjoint(cplx lambda, const Matrix& B) const {
    // (lambda - A)^H = U (G R)^H U^H = U R^H G^H U^H with G^H applied last:
    // solve R^H w = U^H B forward, then x = U (G w).
    const int n = dim();
    Factorization f = factor(lambda);
    Matrix w = u_.adjoint() * B;
    for (int col = 0; col < w.cols(); ++col) {
        for (int i = 0; i < n; ++i) {
            cplx acc = w(i, col);
            for (int j = 0; j < i; ++j) acc -= std::conj(f.r(j, i)) * w(j, col);
            if (f.r(i, i) == cplx(0.0, 0.0))
                throw StructuralError("resolvent adjoint solve: singular shift");
            w(i, col) = acc / std::conj(f.r(i, i));
        }
    }
    // x = G w where G = J_1^H ... J_{n-1}^H applied bottom-up
    for (int i = n - 2; i >= 0; --i) {
        const auto& [c, s] = f.givens[i];
        for (int col = 0; col < w.cols(); ++col) {
            cplx ti = w(i, col), tk = w(i + 1, col);
            w(i, col) = std::conj(c) * ti - s * tk;
            w(i + 1, col) = std::conj(s) * ti + c * tk;
        }
    }
    return u_ * w;
}

}  // namespace hillspec
