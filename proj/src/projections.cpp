#include "hillspec/projections.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "hillspec/errors.hpp"

namespace hillspec {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;

// fixed pseudo-random probe entries (splitmix64), deterministic across runs
double probe_entry(uint64_t i) {
    uint64_t x = i + 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    x = x ^ (x >> 31);
    return double(x >> 11) * (2.0 / 9007199254740992.0) - 1.0;
}

Matrix probe_matrix(const TruncatedOperator& op, int n, int count) {
    const int dim = op.dim();
    Matrix B = Matrix::Zero(dim, count);
    int col = 0;
    auto add_unit = [&](int index) {
        int p = op.position(index);
        if (p >= 0 && col < count) B(p, col++) = 1.0;
    };
    add_unit(n);
    if (is_periodic(op.bc())) add_unit(-n);
    uint64_t seed = uint64_t(n) * 1315423911ull + uint64_t(op.dim());
    while (col < count) {
        for (int i = 0; i < dim; ++i)
            B(i, col) = cplx(probe_entry(seed + uint64_t(i) * 2), probe_entry(seed + uint64_t(i) * 2 + 1));
        B.col(col).normalize();
        seed += uint64_t(dim) * 2 + 17;
        ++col;
    }
    return B;
}

}  // namespace

double RieszProjection::idempotency_defect() const {
    // P^2 - P = X (Y^H X - I) Y^H
    Matrix M = Y.adjoint() * X - Matrix::Identity(rank, rank);
    return (X * (M * Y.adjoint())).norm();
}

double RieszProjection::trace_real() const {
    return (Y.adjoint() * X).trace().real();
}

RieszProjection riesz_projection(const TruncatedOperator& op, const HessResolvent& res, int n,
                                 int quad_nodes, int expected_rank,
                                 const std::vector<cplx>& known_disk_eigenvalues) {
    if (quad_nodes < 32) throw ConfigError("riesz_projection: need at least 32 quadrature nodes");
    RieszProjection P;
    P.bc = op.bc();
    P.n = n;
    P.quadrature_nodes = quad_nodes;
    P.route = "contour";
    double radius = n / 4.0;
    for (const cplx& lam : known_disk_eigenvalues) {
        double d = std::abs(std::abs(lam - cplx(double(n) * n, 0.0)) - radius);
        if (d < 1e-6 * n) {
            radius *= (std::abs(lam - cplx(double(n) * n, 0.0)) < radius) ? 1.001 : 0.999;
            P.radius_perturbed = true;
            break;
        }
    }
    P.radius = radius;

    const int m = expected_rank + 4;
    Matrix B = probe_matrix(op, n, m);
    const cplx center(double(n) * n, 0.0);
    Matrix S_right = Matrix::Zero(op.dim(), m);
    Matrix S_left = Matrix::Zero(op.dim(), m);
    for (int j = 0; j < quad_nodes; ++j) {
        double th = 2.0 * kPi * (j + 0.5) / quad_nodes;
        cplx w = radius * std::exp(cplx(0.0, th));
        cplx lam = center + w;
        // P  = (r/M) sum e^{i th} (lam - A)^{-1}
        S_right += w * res.solve(lam, B);
        // P^H = (r/M) sum e^{-i th} ((lam - A)^{-1})^H
        S_left += std::conj(w) * res.solve_adjoint(lam, B);
    }
    S_right /= double(quad_nodes);
    S_left /= double(quad_nodes);

    auto leading = [&](const Matrix& S, const char* side) {
        Eigen::JacobiSVD<Matrix> svd(S, Eigen::ComputeThinU);
        const auto& sv = svd.singularValues();
        int r = 0;
        for (int i = 0; i < sv.size(); ++i)
            if (sv[i] > 1e-8 * sv[0]) ++r;
        if (r != expected_rank)
            throw StructuralError(std::string("riesz_projection: ") + side + " rank " +
                                  std::to_string(r) + " != expected " +
                                  std::to_string(expected_rank) + " at n=" + std::to_string(n) +
                                  " (" + bc_name(op.bc()) + ")");
        return Matrix(svd.matrixU().leftCols(expected_rank));
    };
    Matrix X0 = leading(S_right, "range");
    Matrix W = leading(S_left, "co-range");

    // oblique projector with Ran P = span(X0), Ran P^H = span(W)
    Matrix WX = W.adjoint() * X0;
    Eigen::PartialPivLU<Matrix> lu(WX);
    if (std::abs(lu.determinant()) < 1e-12)
        throw StructuralError("riesz_projection: degenerate range/co-range pairing at n=" +
                              std::to_string(n));
    P.rank = expected_rank;
    P.X = X0;
    P.Y = (lu.solve(W.adjoint())).adjoint();  // Y^H = (W^H X0)^{-1} W^H
    return P;
}

RieszProjection riesz_projection_spectral(const TruncatedOperator& op, const Eigensystem& es,
                                          int n, int expected_rank) {
    std::vector<int> sel;
    for (size_t i = 0; i < es.values.size(); ++i)
        if (in_disk(es.values[i], n)) sel.push_back(static_cast<int>(i));
    if (static_cast<int>(sel.size()) != expected_rank)
        throw StructuralError("riesz_projection_spectral: disk D_" + std::to_string(n) + " holds " +
                              std::to_string(sel.size()) + " eigenvalues, expected " +
                              std::to_string(expected_rank));
    // P = V E V^{-1} restricted to the selected eigenvalues
    Eigen::PartialPivLU<Matrix> lu(es.right_vectors);
    Matrix Vinv = lu.inverse();
    RieszProjection P;
    P.bc = op.bc();
    P.n = n;
    P.rank = expected_rank;
    P.route = "spectral";
    P.radius = n / 4.0;
    P.X.resize(op.dim(), expected_rank);
    P.Y.resize(op.dim(), expected_rank);
    for (int c = 0; c < expected_rank; ++c) {
        P.X.col(c) = es.right_vectors.col(sel[c]);
        P.Y.col(c) = Vinv.row(sel[c]).adjoint();
    }
    return P;
}

RieszProjection free_projection(const TruncatedOperator& op, int n) {
    RieszProjection P;
    P.bc = op.bc();
    P.n = n;
    P.route = "free";
    P.radius = n / 4.0;
    std::vector<int> modes;
    if (is_periodic(op.bc())) {
        modes = {n, -n};
    } else {
        modes = {n};
    }
    P.rank = static_cast<int>(modes.size());
    P.X = Matrix::Zero(op.dim(), P.rank);
    for (int c = 0; c < P.rank; ++c) {
        int p = op.position(modes[c]);
        if (p < 0) throw ConfigError("free_projection: mode outside truncation");
        P.X(p, c) = 1.0;
    }
    P.Y = P.X;
    return P;
}

double frobenius_distance(const RieszProjection& a, const RieszProjection& b) {
    return (a.dense() - b.dense()).norm();
}

double kvk_hs_norm(const TruncatedOperator& op, cplx lambda) {
    const auto& idx = op.indices();
    const Matrix& A = op.matrix();
    const int dim = op.dim();
    std::vector<double> dist(dim);
    for (int i = 0; i < dim; ++i) {
        dist[i] = std::abs(lambda - cplx(double(idx[i]) * idx[i], 0.0));
        if (dist[i] == 0.0)
            throw ConfigError("kvk_hs_norm: lambda equals the free eigenvalue " +
                              std::to_string(idx[i] * idx[i]));
    }
    double acc = 0.0;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            cplx v = A(i, j);
            if (i == j) v -= double(idx[i]) * double(idx[i]);
            if (v != cplx(0.0, 0.0)) acc += std::norm(v) / (dist[i] * dist[j]);
        }
    return std::sqrt(acc);
}

double two_inf_norm(const Matrix& X, const Matrix& Y, const std::vector<int>& out_indices,
                    Bc bc_out, int grid_size) {
    if (grid_size < 2) throw ConfigError("two_inf_norm: grid too small");
    const int r = static_cast<int>(X.cols());
    double best = 0.0;
    for (int g = 0; g < grid_size; ++g) {
        double x = kPi * g / (grid_size - 1);
        Vector t = Vector::Zero(r);
        for (int k = 0; k < X.rows(); ++k) {
            cplx bk = basis_function(bc_out, out_indices[k], x);
            if (bk != cplx(0.0, 0.0)) t += bk * X.row(k).transpose();
        }
        // row vector of the kernel at x is t^T Y^H; its 2-norm:
        best = std::max(best, (Y.conjugate() * t).norm());
    }
    return best;
}

double two_inf_norm_dense(const Matrix& A, const std::vector<int>& out_indices, Bc bc_out,
                          int grid_size) {
    if (grid_size < 2) throw ConfigError("two_inf_norm: grid too small");
    double best = 0.0;
    for (int g = 0; g < grid_size; ++g) {
        double x = kPi * g / (grid_size - 1);
        Vector row = Vector::Zero(A.cols());
        for (int k = 0; k < A.rows(); ++k) {
            cplx bk = basis_function(bc_out, out_indices[k], x);
            if (bk != cplx(0.0, 0.0)) row += bk * A.row(k).transpose();
        }
        best = std::max(best, row.norm());
    }
    return best;
}

std::vector<ProjectionDiffRow> projection_diff_audit(const TruncatedOperator& op,
                                                     const std::vector<int>& n_values,
                                                     int quad_nodes, int grid_size) {
    HessResolvent res(op.matrix());
    const int expected = is_periodic(op.bc()) ? 2 : 1;
    DerivativeMatrix D = build_derivative(op.bc(), op.cutoff());
    std::vector<ProjectionDiffRow> rows;
    for (int n : n_values) {
        if (is_periodic(op.bc()) && n % 2 != bc_parity(op.bc())) continue;
        RieszProjection P = riesz_projection(op, res, n, quad_nodes, expected);
        RieszProjection P0 = free_projection(op, n);
        // P - P0 = [X, X0] [Y, -Y0]^H, rank <= 4
        Matrix Xd(op.dim(), P.rank + P0.rank), Yd(op.dim(), P.rank + P0.rank);
        Xd << P.X, P0.X;
        Yd << P.Y, -P0.Y;
        ProjectionDiffRow row;
        row.n = n;
        row.p_diff = two_inf_norm(Xd, Yd, op.indices(), op.bc(), grid_size);
        Matrix DXd = D.mat * Xd;
        row.dp_diff = two_inf_norm(DXd, Yd, D.target_indices, D.target, grid_size);
        row.scaled = n * row.p_diff;
        rows.push_back(row);
    }
    return rows;
}

cplx d0(const Vector& coeffs, const std::vector<int>& indices, Bc bc) {
    cplx s{0.0, 0.0};
    switch (bc) {
        case Bc::PerPlus:
        case Bc::PerMinus:
            for (int i = 0; i < coeffs.size(); ++i) s += cplx(0.0, indices[i]) * coeffs[i];
            return s;
        case Bc::Dir:
            for (int i = 0; i < coeffs.size(); ++i) s += kSqrt2 * indices[i] * coeffs[i];
            return s;
        case Bc::Neu:
            return s;  // cosine derivatives vanish at 0
    }
    return s;
}

cplx dpi(const Vector& coeffs, const std::vector<int>& indices, Bc bc) {
    cplx s{0.0, 0.0};
    auto sgn = [](int k) { return k % 2 == 0 ? 1.0 : -1.0; };
    switch (bc) {
        case Bc::PerPlus:
        case Bc::PerMinus:
            for (int i = 0; i < coeffs.size(); ++i)
                s += cplx(0.0, indices[i]) * sgn(indices[i]) * coeffs[i];
            return s;
        case Bc::Dir:
            for (int i = 0; i < coeffs.size(); ++i)
                s += kSqrt2 * indices[i] * sgn(indices[i]) * coeffs[i];
            return s;
        case Bc::Neu:
            return s;
    }
    return s;
}

namespace {

void fix_phase(Vector& v) {
    int best = 0;
    double m = 0.0;
    for (int i = 0; i < v.size(); ++i)
        if (std::abs(v[i]) > m) {
            m = std::abs(v[i]);
            best = i;
        }
    if (m > 0.0) v *= std::conj(v[best]) / m;
}

}  // namespace

InvariantPair invariant_pair(const TruncatedOperator& op, const RieszProjection& proj) {
    if (proj.rank != 2)
        throw StructuralError("invariant_pair: Ran P is not two-dimensional at n=" +
                              std::to_string(proj.n));
    const int n = proj.n;
    // orthonormal basis of Ran P
    Eigen::HouseholderQR<Matrix> qr(proj.X);
    Matrix Q = qr.householderQ() * Matrix::Identity(op.dim(), 2);
    // restriction of A - n^2 to the invariant plane keeps the small scales clean
    Matrix An = op.matrix();
    for (int i = 0; i < An.rows(); ++i) An(i, i) -= double(n) * n;
    Matrix C = Q.adjoint() * (An * Q);
    // closed-form 2x2 eigenvalues
    cplx tr = C(0, 0) + C(1, 1);
    cplx disc = std::sqrt((C(0, 0) - C(1, 1)) * (C(0, 0) - C(1, 1)) + 4.0 * C(0, 1) * C(1, 0));
    cplx z1 = 0.5 * (tr + disc), z2 = 0.5 * (tr - disc);
    auto ge = [](const cplx& x, const cplx& y) {
        if (x.real() != y.real()) return x.real() > y.real();
        return x.imag() >= y.imag();
    };
    if (!ge(z1, z2)) std::swap(z1, z2);

    InvariantPair p;
    p.n = n;
    p.bc = op.bc();
    p.indices = op.indices();
    p.lambda_plus = cplx(double(n) * n, 0.0) + z1;
    p.gamma = z1 - z2;

    // eigenvector of C for z1
    Eigen::Vector2cd fc;
    cplx a = C(0, 0) - z1, b = C(0, 1), c = C(1, 0), d = C(1, 1) - z1;
    if (std::abs(b) + std::abs(a) >= std::abs(c) + std::abs(d))
        fc << b, -a;
    else
        fc << d, -c;
    double fn = fc.norm();
    if (fn < 1e-300) fc << 1.0, 0.0;
    else fc /= fn;
    Eigen::Vector2cd pc;
    // orthogonal complement in the plane
    pc << -std::conj(fc[1]), std::conj(fc[0]);
    p.f = Q * fc;
    p.phi = Q * pc;
    fix_phase(p.f);
    fix_phase(p.phi);
    p.f.normalize();
    // re-orthogonalize phi against f (exact up to roundoff already)
    p.phi -= (p.f.adjoint() * p.phi).value() * p.f;
    p.phi.normalize();

    p.xi = (p.f.adjoint() * (An * p.phi)).value();
    p.residual_f = (An * p.f - z1 * p.f).norm();
    p.residual_phi = (An * p.phi - z2 * p.phi - p.xi * p.f).norm();
    return p;
}

GVector build_G(const InvariantPair& pair, double tol) {
    GVector g;
    g.d0_f = d0(pair.f, pair.indices, pair.bc);
    g.d0_phi = d0(pair.phi, pair.indices, pair.bc);
    if (std::abs(g.d0_f) <= tol * pair.n) {
        g.a = 1.0;
        g.b = 0.0;
        g.G = pair.f;
    } else {
        Vector Gt = g.d0_phi * pair.f - g.d0_f * pair.phi;
        double nm = Gt.norm();
        if (nm <= 1e-12)
            throw StructuralError("build_G: degenerate combination at n=" + std::to_string(pair.n));
        g.G = Gt / nm;
        g.a = g.d0_phi / nm;
        g.b = -g.d0_f / nm;
    }
    g.d0_G = d0(g.G, pair.indices, pair.bc);
    g.dpi_G = dpi(g.G, pair.indices, pair.bc);
    return g;
}

Matrix cross_gram(const std::vector<int>& per_indices, const std::vector<int>& neu_indices) {
    Matrix B(per_indices.size(), neu_indices.size());
    for (size_t a = 0; a < per_indices.size(); ++a) {
        int k = per_indices[a];
        for (size_t b = 0; b < neu_indices.size(); ++b) {
            int m = neu_indices[b];
            if (m == 0)
                B(a, b) = exp_integral(k) / kPi;
            else
                B(a, b) = kSqrt2 / (2.0 * kPi) * (exp_integral(k + m) + exp_integral(k - m));
        }
    }
    return B;
}

NeumannVector neumann_vector(const TruncatedOperator& op_neu, const RieszProjection& proj_neu,
                             const GVector& gv, const InvariantPair& pair, const Matrix& gram) {
    if (proj_neu.rank != 1)
        throw StructuralError("neumann_vector: Neumann disk projection must have rank 1");
    NeumannVector out;
    Vector q = proj_neu.X.col(0);
    q.normalize();
    out.nu = (q.adjoint() * (op_neu.matrix() * q)).value();
    cplx pairing = (gv.G.transpose() * gram * q).value();
    if (std::abs(pairing) < 1e-12)
        throw StructuralError("neumann_vector: pairing <G, conj g> too small to fix the phase");
    out.g = q * (std::abs(pairing) / pairing);
    out.pairing_Gg = (gv.G.transpose() * gram * out.g).value();
    // conjugate relation: A(conj v) conj(g) = conj(nu) conj(g); A is complex
    // symmetric, so this is the conjugate of A g = nu g
    out.conj_residual = (op_neu.matrix() * out.g - out.nu * out.g).norm();
    (void)pair;
    return out;
}

DereData dere_residual(cplx delta_neu, const InvariantPair& pair, const GVector& gv,
                       const NeumannVector& nv, const Matrix& gram) {
    DereData d;
    d.pair_Gg = nv.pairing_Gg;
    d.pair_fg = (pair.f.transpose() * gram * nv.g).value();
    d.pair_phig = (pair.phi.transpose() * gram * nv.g).value();
    d.gamma = pair.gamma;
    d.delta_neu = delta_neu;
    d.xi = pair.xi;
    d.b = gv.b;
    d.residual = std::abs(d.pair_Gg * delta_neu - gv.b * d.pair_phig * pair.gamma +
                          gv.b * d.pair_fg * pair.xi);
    return d;
}

const char* coupling_case_name(CouplingCase c) {
    switch (c) {
        case CouplingCase::Case1: return "case1";
        case CouplingCase::Case2a: return "case2a";
        case CouplingCase::Case2b: return "case2b";
    }
    return "?";
}

CouplingCase case_classify(cplx beta_plus, cplx beta_minus) {
    double p = std::abs(beta_plus), m = std::abs(beta_minus);
    if (4.0 * p < m) return CouplingCase::Case2a;
    if (4.0 * m < p) return CouplingCase::Case2b;
    return CouplingCase::Case1;
}

}  // namespace hillspec
