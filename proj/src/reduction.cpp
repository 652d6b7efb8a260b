#include "hillspec/reduction.hpp"

#include <Eigen/LU>
#include <cmath>
#include <sstream>

#include "hillspec/errors.hpp"

namespace hillspec {

namespace {

// Hager one-norm estimate of |M^{-1}|_1 from an LU factorization.
double inverse_one_norm_estimate(const Eigen::PartialPivLU<Matrix>& lu, int dim) {
    Vector x = Vector::Constant(dim, cplx(1.0 / dim, 0.0));
    double est = 0.0;
    for (int iter = 0; iter < 5; ++iter) {
        Vector y = lu.solve(x);
        double norm1 = y.cwiseAbs().sum();
        if (norm1 <= est) break;
        est = norm1;
        Vector xi(dim);
        for (int i = 0; i < dim; ++i) {
            double a = std::abs(y[i]);
            xi[i] = a > 0.0 ? y[i] / a : cplx(1.0, 0.0);
        }
        Vector w = lu.adjoint().solve(xi);
        int jbest = 0;
        double wmax = 0.0;
        for (int i = 0; i < dim; ++i)
            if (std::abs(w[i]) > wmax) {
                wmax = std::abs(w[i]);
                jbest = i;
            }
        x.setZero();
        x[jbest] = cplx(1.0, 0.0);
    }
    return est;
}

struct SchurContext {
    const TruncatedOperator* op = nullptr;
    int n = 0;
    std::vector<int> P;  // positions of (n, -n) or (n)
    std::vector<int> Q;
    Matrix V_PQ, V_QP, V_PP, A_QQ;

    SchurContext(const TruncatedOperator& oper, int n_, bool pair) : op(&oper), n(n_) {
        int pn = oper.position(n_);
        int pm = pair ? oper.position(-n_) : -1;
        if (pn < 0 || (pair && pm < 0))
            throw ConfigError("schur_reduce: modes +-" + std::to_string(n_) +
                              " not inside the truncation index set");
        P = pair ? std::vector<int>{pn, pm} : std::vector<int>{pn};
        const int dim = oper.dim();
        Q.reserve(dim - P.size());
        for (int i = 0; i < dim; ++i)
            if (i != pn && i != pm) Q.push_back(i);
        const Matrix& A = oper.matrix();
        const auto& idx = oper.indices();
        auto v_of = [&](int i, int j) {
            cplx a = A(i, j);
            if (i == j) a -= double(idx[i]) * double(idx[i]);
            return a;
        };
        V_PP.resize(P.size(), P.size());
        for (size_t a = 0; a < P.size(); ++a)
            for (size_t b = 0; b < P.size(); ++b) V_PP(a, b) = v_of(P[a], P[b]);
        V_PQ.resize(P.size(), Q.size());
        V_QP.resize(Q.size(), P.size());
        for (size_t a = 0; a < P.size(); ++a)
            for (size_t b = 0; b < Q.size(); ++b) {
                V_PQ(a, b) = v_of(P[a], Q[b]);
                V_QP(b, a) = v_of(Q[b], P[a]);
            }
        A_QQ.resize(Q.size(), Q.size());
        for (size_t a = 0; a < Q.size(); ++a)
            for (size_t b = 0; b < Q.size(); ++b) A_QQ(a, b) = A(Q[a], Q[b]);
    }

    // S(z), dS/dz and a condition estimate of the Q block
    void evaluate(cplx z, Matrix& S, Matrix& Sp, double& cond) const {
        const double n2 = double(n) * n;
        Matrix M = -A_QQ;
        for (int i = 0; i < M.rows(); ++i) M(i, i) += n2 + z;
        Eigen::PartialPivLU<Matrix> lu(M);
        double m1 = 0.0;
        for (int j = 0; j < M.cols(); ++j) m1 = std::max(m1, M.col(j).cwiseAbs().sum());
        double inv1 = inverse_one_norm_estimate(lu, static_cast<int>(M.rows()));
        cond = m1 * inv1;
        if (!std::isfinite(inv1) || inv1 > 1e14)
            throw StructuralError("schur_reduce: Q block nearly singular at z = (" +
                                  std::to_string(z.real()) + "," + std::to_string(z.imag()) +
                                  "), condition estimate " + std::to_string(cond));
        Matrix X = lu.solve(V_QP);                       // M^{-1} V_QP
        Matrix Y = lu.adjoint().solve(V_PQ.adjoint()).adjoint();  // V_PQ M^{-1}
        S = V_PP + V_PQ * X;
        Sp = -(Y * X);  // d/dz of (n^2+z-...)^{-1} is -M^{-2}
    }
};

ReducedMatrix pack(const SchurContext& ctx, cplx z, const Matrix& S, const Matrix& Sp,
                   double cond) {
    ReducedMatrix r;
    r.n = ctx.n;
    r.z = z;
    r.alpha = 0.5 * (S(0, 0) + S(1, 1));
    r.beta_plus = S(1, 0);
    r.beta_minus = S(0, 1);
    r.diag_discrepancy = std::abs(S(0, 0) - S(1, 1));
    r.cond_estimate = cond;
    r.alpha_prime = 0.5 * (Sp(0, 0) + Sp(1, 1));
    r.beta_prod_prime = Sp(1, 0) * S(0, 1) + S(1, 0) * Sp(0, 1);
    return r;
}

}  // namespace

ReducedMatrix schur_reduce(const TruncatedOperator& op, int n, cplx z) {
    if (!is_periodic(op.bc()))
        throw ConfigError("schur_reduce: periodic/antiperiodic operator required");
    if (std::abs(z) >= double(n))
        throw ConfigError("schur_reduce: |z| = " + std::to_string(std::abs(z)) +
                          " is far outside the disk of index " + std::to_string(n));
    SchurContext ctx(op, n, true);
    Matrix S, Sp;
    double cond = 0.0;
    ctx.evaluate(z, S, Sp, cond);
    return pack(ctx, z, S, Sp, cond);
}

double reduced_eigen_residual(const ReducedMatrix& red, cplx z) {
    cplx d = (red.alpha - z) * (red.alpha - z) - red.beta_plus * red.beta_minus;
    return std::abs(d);
}

ReducedRoots solve_reduced(const TruncatedOperator& op, int n, cplx z_init) {
    if (!is_periodic(op.bc()))
        throw ConfigError("solve_reduced: periodic/antiperiodic operator required");
    SchurContext ctx(op, n, true);
    constexpr int kMaxIter = 100;

    auto F_of = [&](cplx z, ReducedMatrix& red) {
        Matrix S, Sp;
        double cond = 0.0;
        ctx.evaluate(z, S, Sp, cond);
        red = pack(ctx, z, S, Sp, cond);
        cplx F = (z - red.alpha) * (z - red.alpha) - red.beta_plus * red.beta_minus;
        cplx Fp = 2.0 * (z - red.alpha) * (1.0 - red.alpha_prime) - red.beta_prod_prime;
        return std::make_pair(F, Fp);
    };

    ReducedMatrix red0;
    auto [F0, Fp0] = F_of(z_init, red0);
    (void)F0;
    (void)Fp0;
    cplx sq0 = std::sqrt(red0.beta_plus * red0.beta_minus);

    int total_iters = 0;
    std::vector<cplx> trail;
    auto newton = [&](cplx z, std::optional<cplx> deflate) {
        ReducedMatrix red;
        for (int it = 0; it < kMaxIter; ++it) {
            ++total_iters;
            trail.push_back(z);
            auto [F, Fp] = F_of(z, red);
            cplx step;
            if (deflate) {
                cplx d = z - *deflate;
                if (std::abs(d) < 1e-300) d = cplx(1e-300, 0.0);
                cplx G = F / d;
                cplx Gp = Fp / d - F / (d * d);
                step = G / Gp;
            } else {
                step = F / Fp;
            }
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag()))
                break;  // F' vanished; current z is the (double) root
            z -= step;
            if (std::abs(step) <= 1e-14 * (1.0 + std::abs(z)))
                return std::make_pair(z, reduced_eigen_residual(red, z));
        }
        // Newton stagnated: report the iterate trail
        std::ostringstream os;
        os << "solve_reduced: no convergence after " << kMaxIter << " iterations at n=" << n
           << "; trail tail:";
        size_t start = trail.size() > 6 ? trail.size() - 6 : 0;
        for (size_t i = start; i < trail.size(); ++i)
            os << " (" << trail[i].real() << "," << trail[i].imag() << ")";
        throw StructuralError(os.str());
    };

    auto [z1, res1] = newton(red0.alpha + sq0, std::nullopt);
    auto [z2, res2] = newton(red0.alpha - sq0, z1);

    ReducedRoots out;
    auto ge = [](const cplx& x, const cplx& y) {
        if (x.real() != y.real()) return x.real() > y.real();
        return x.imag() >= y.imag();
    };
    if (ge(z1, z2)) {
        out.z_plus = z1;
        out.z_minus = z2;
        out.residual_plus = res1;
        out.residual_minus = res2;
    } else {
        out.z_plus = z2;
        out.z_minus = z1;
        out.residual_plus = res2;
        out.residual_minus = res1;
    }
    out.iterations = total_iters;
    return out;
}

ReducedMatrix beta_at_zstar(const TruncatedOperator& op, int n, cplx z_star) {
    return schur_reduce(op, n, z_star);
}

ScalarReduction solve_deviation(const TruncatedOperator& op, int n, cplx z_init) {
    if (is_periodic(op.bc()))
        throw ConfigError("solve_deviation: Dirichlet or Neumann operator required");
    if (op.position(n) < 0)
        throw ConfigError("solve_deviation: index " + std::to_string(n) + " outside truncation");
    SchurContext ctx(op, n, false);
    ScalarReduction out;
    cplx z = z_init;
    for (int it = 0; it < 100; ++it) {
        Matrix S, Sp;
        double cond = 0.0;
        ctx.evaluate(z, S, Sp, cond);
        out.cond_estimate = cond;
        cplx F = z - S(0, 0);
        cplx Fp = 1.0 - Sp(0, 0);
        cplx step = F / Fp;
        z -= step;
        out.iterations = it + 1;
        if (std::abs(step) <= 1e-14 * (1.0 + std::abs(z))) {
            out.z = z;
            out.residual = std::abs(F);
            return out;
        }
    }
    throw StructuralError("solve_deviation: no convergence at n=" + std::to_string(n) + " (" +
                          std::string(bc_name(op.bc())) + ")");
}

}  // namespace hillspec
