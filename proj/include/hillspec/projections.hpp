#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hillspec/eig.hpp"
#include "hillspec/opmatrix.hpp"
#include "hillspec/resolvent.hpp"
#include "hillspec/spectra.hpp"

namespace hillspec {

// Rank-r spectral projection P = X Y^H associated with the disk D_n.
struct RieszProjection {
    Bc bc = Bc::PerPlus;
    int n = 0;
    int rank = 0;
    Matrix X;  // dim x r
    Matrix Y;  // dim x r, P = X Y^H
    int quadrature_nodes = 0;
    std::string route;  // "contour" or "spectral"
    double radius = 0.0;
    bool radius_perturbed = false;

    Matrix dense() const { return X * Y.adjoint(); }
    double idempotency_defect() const;  // |P^2 - P|_F
    double trace_real() const;
};

// Contour route: trapezoidal quadrature of the resolvent over |lambda - n^2| = n/4
// applied to probe columns; the projector is reassembled from its range and
// co-range. If a known eigenvalue sits within 1e-6*n of the contour the radius
// is perturbed by a relative 1e-3 (recorded in the result).
RieszProjection riesz_projection(const TruncatedOperator& op, const HessResolvent& res, int n,
                                 int quad_nodes, int expected_rank,
                                 const std::vector<cplx>& known_disk_eigenvalues = {});

// Spectral route: sum of eigenprojections from a full eigendecomposition.
RieszProjection riesz_projection_spectral(const TruncatedOperator& op, const Eigensystem& es,
                                          int n, int expected_rank);

// Free projector P0_n (orthogonal, onto the free modes of index n).
RieszProjection free_projection(const TruncatedOperator& op, int n);

double frobenius_distance(const RieszProjection& a, const RieszProjection& b);

// Hilbert-Schmidt norm of K_lambda V K_lambda over the truncated index set.
double kvk_hs_norm(const TruncatedOperator& op, cplx lambda);

// Exact 2->inf norm of a finite-rank kernel up to grid resolution:
// sup_x || (sum_k A_kj b_k(x))_j ||_2 with the output basis of bc_out.
double two_inf_norm(const Matrix& X, const Matrix& Y, const std::vector<int>& out_indices,
                    Bc bc_out, int grid_size = 1024);
double two_inf_norm_dense(const Matrix& A, const std::vector<int>& out_indices, Bc bc_out,
                          int grid_size = 1024);

struct ProjectionDiffRow {
    int n = 0;
    double p_diff = 0.0;    // |P_n - P0_n|_{2->inf}
    double dp_diff = 0.0;   // |D(P_n - P0_n)|_{2->inf}
    double scaled = 0.0;    // n * p_diff
};

std::vector<ProjectionDiffRow> projection_diff_audit(const TruncatedOperator& op,
                                                     const std::vector<int>& n_values,
                                                     int quad_nodes = 64, int grid_size = 1024);

// derivative at the interval ends from basis coefficients
cplx d0(const Vector& coeffs, const std::vector<int>& indices, Bc bc);
cplx dpi(const Vector& coeffs, const std::vector<int>& indices, Bc bc);

// Orthonormal pair {f, phi} spanning the rank-2 invariant subspace for D_n:
//   L f = lambda+ f,   L phi = lambda+ phi - gamma phi + xi f.
struct InvariantPair {
    int n = 0;
    Bc bc = Bc::PerPlus;
    Vector f;
    Vector phi;
    std::vector<int> indices;
    cplx lambda_plus;
    cplx gamma;
    cplx xi;
    double residual_f = 0.0;    // |A f - lambda+ f|
    double residual_phi = 0.0;  // |A phi - (lambda+ - gamma) phi - xi f|
};

InvariantPair invariant_pair(const TruncatedOperator& op, const RieszProjection& proj);

// Unit combination G = a f + b phi with d_0(G) = d_pi(G) = 0.
struct GVector {
    cplx a, b;
    Vector G;
    cplx d0_f, d0_phi;
    cplx d0_G, dpi_G;
};

GVector build_G(const InvariantPair& pair, double tol = 1e-9);

// bilinear pairing (1/pi) int_0^pi u(x) w(x) dx between a Per-basis vector and
// a Neu-basis vector, from the exact cross-Gram matrix
Matrix cross_gram(const std::vector<int>& per_indices, const std::vector<int>& neu_indices);

struct NeumannVector {
    Vector g;            // unit nu-eigenvector, phase fixed so <G, conj(g)> >= 0
    cplx nu;
    cplx pairing_Gg;     // real non-negative after the rotation
    double conj_residual = 0.0;  // |A(conj v) conj(g) - conj(nu) conj(g)|
};

NeumannVector neumann_vector(const TruncatedOperator& op_neu, const RieszProjection& proj_neu,
                             const GVector& gv, const InvariantPair& pair, const Matrix& gram);

struct DereData {
    cplx pair_Gg, pair_fg, pair_phig;
    cplx gamma, delta_neu, xi, b;
    double residual = 0.0;
};

// |<G,g> delta_neu - b <phi,g> gamma + b <f,g> xi|
DereData dere_residual(cplx delta_neu, const InvariantPair& pair, const GVector& gv,
                       const NeumannVector& nv, const Matrix& gram);

enum class CouplingCase { Case1, Case2a, Case2b };
const char* coupling_case_name(CouplingCase c);

// 1/4 |b-| <= |b+| <= 4 |b-| is Case 1; 4|b+| < |b-| is Case 2a; 4|b-| < |b+| is Case 2b
CouplingCase case_classify(cplx beta_plus, cplx beta_minus);

}  // namespace hillspec
