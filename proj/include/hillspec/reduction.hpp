#pragma once

#include <optional>
#include <vector>

#include "hillspec/opmatrix.hpp"

namespace hillspec {

// Lyapunov-Schmidt data at a given z: the 2x2 Schur complement of the
// periodic/antiperiodic matrix onto the mode pair {n, -n},
//   S(z) = V_PP + V_PQ ((n^2+z - L0)_QQ - V_QQ)^{-1} V_QP.
// z is an eigenvalue shift: lambda = n^2 + z solves the truncated problem
// iff det(S(z) - z) = 0, i.e. (z - alpha(z))^2 = beta_plus(z) beta_minus(z).
struct ReducedMatrix {
    int n = 0;
    cplx z;
    cplx alpha;        // (S_11 + S_22)/2; the two diagonals agree up to roundoff
    cplx beta_plus;    // coupling of mode +n into mode -n (zero when v has only
                       // positive frequencies)
    cplx beta_minus;   // coupling of mode -n into mode +n
    double diag_discrepancy = 0.0;  // |S_11 - S_22|
    double cond_estimate = 0.0;     // 1-norm condition estimate of the Q block
    // z-derivatives, for Newton refinement
    cplx alpha_prime;
    cplx beta_prod_prime;  // d/dz (beta_plus beta_minus)
};

ReducedMatrix schur_reduce(const TruncatedOperator& op, int n, cplx z);

// |(alpha - z)^2 - beta_plus beta_minus|
double reduced_eigen_residual(const ReducedMatrix& red, cplx z);

struct ReducedRoots {
    cplx z_plus;   // larger real part (ties by imaginary part)
    cplx z_minus;
    int iterations = 0;
    double residual_plus = 0.0;   // |(z - alpha)^2 - b+ b-| at each root
    double residual_minus = 0.0;
};

// Both roots of (z - alpha(z))^2 = beta+(z) beta-(z) inside the disk,
// by Newton from the z=0 roots with deflation for the second root.
ReducedRoots solve_reduced(const TruncatedOperator& op, int n, cplx z_init = {0.0, 0.0});

// beta data evaluated at z* from a spectral triangle
ReducedMatrix beta_at_zstar(const TruncatedOperator& op, int n, cplx z_star);

// One-dimensional analogue for Dir/Neu: P = {n}; the fixed point of
// z = S_11(z) is the deviation of the eigenvalue near n^2 from n^2.
struct ScalarReduction {
    cplx z;           // converged deviation
    double residual = 0.0;
    double cond_estimate = 0.0;
    int iterations = 0;
};

ScalarReduction solve_deviation(const TruncatedOperator& op, int n, cplx z_init = {0.0, 0.0});

}  // namespace hillspec
