#pragma once

#include <Eigen/Dense>

#include "hillspec/opmatrix.hpp"

namespace hillspec {

// Shifted solves (lambda - A) X = B for many lambda, via a one-time
// Hessenberg reduction A = U H U^H. Each shift needs one O(dim^2) Givens
// factorization of (lambda - H); adjoint solves reuse it.
class HessResolvent {
  public:
    explicit HessResolvent(const Matrix& A);

    int dim() const { return static_cast<int>(h_.rows()); }

    // X = (lambda I - A)^{-1} B
    Matrix solve(cplx lambda, const Matrix& B) const;
    // X = ((lambda I - A)^H)^{-1} B  (adjoint system with the same shift)
    Matrix solve_adjoint(cplx lambda, const Matrix& B) const;

  private:
    struct Factorization {
        Matrix r;                          // upper triangular
        std::vector<std::pair<cplx, cplx>> givens;  // (c, s) per subdiagonal
    };
    Factorization factor(cplx lambda) const;

    Matrix u_;  // unitary
    Matrix h_;  // upper Hessenberg
};

}  // namespace hillspec
