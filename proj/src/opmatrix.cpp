#include "hillspec/opmatrix.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "hillspec/errors.hpp"

namespace hillspec {

namespace {
constexpr double kSqrt2 = std::numbers::sqrt2;
}

const char* bc_name(Bc bc) {
    switch (bc) {
        case Bc::PerPlus: return "per+";
        case Bc::PerMinus: return "per-";
        case Bc::Dir: return "dir";
        case Bc::Neu: return "neu";
    }
    return "?";
}

Bc bc_from_name(const std::string& name) {
    if (name == "per+" || name == "periodic") return Bc::PerPlus;
    if (name == "per-" || name == "antiperiodic") return Bc::PerMinus;
    if (name == "dir" || name == "dirichlet") return Bc::Dir;
    if (name == "neu" || name == "neumann") return Bc::Neu;
    throw ConfigError("unknown boundary condition '" + name + "'");
}

bool is_periodic(Bc bc) { return bc == Bc::PerPlus || bc == Bc::PerMinus; }

int bc_parity(Bc bc) {
    if (bc == Bc::PerPlus) return 0;
    if (bc == Bc::PerMinus) return 1;
    throw ConfigError("bc_parity applies to periodic conditions only");
}

Bc periodic_bc_for(int n) { return n % 2 == 0 ? Bc::PerPlus : Bc::PerMinus; }

std::vector<int> index_set(Bc bc, int K) {
    if (K < 1) throw ConfigError("index_set: cutoff K must be >= 1, got " + std::to_string(K));
    std::vector<int> idx;
    switch (bc) {
        case Bc::PerPlus:
            for (int k = -2 * K; k <= 2 * K; k += 2) idx.push_back(k);
            break;
        case Bc::PerMinus:
            for (int k = -2 * K - 1; k <= 2 * K + 1; k += 2) idx.push_back(k);
            break;
        case Bc::Dir:
            for (int k = 1; k <= K; ++k) idx.push_back(k);
            break;
        case Bc::Neu:
            for (int k = 0; k <= K; ++k) idx.push_back(k);
            break;
    }
    return idx;
}

TruncatedOperator::TruncatedOperator(Bc bc, int K, std::vector<int> indices, Matrix m,
                                     PotentialSpec spec)
    : bc_(bc), K_(K), indices_(std::move(indices)), mat_(std::move(m)), spec_(std::move(spec)) {}

int TruncatedOperator::position(int index) const {
    // all index sets are ascending arithmetic sequences
    if (indices_.empty()) return -1;
    int first = indices_.front();
    int step = indices_.size() > 1 ? indices_[1] - indices_[0] : 1;
    if ((index - first) % step != 0) return -1;
    int pos = (index - first) / step;
    if (pos < 0 || pos >= static_cast<int>(indices_.size())) return -1;
    return pos;
}

double TruncatedOperator::norm_estimate() const {
    double n1 = 0.0, ninf = 0.0;
    for (int j = 0; j < mat_.cols(); ++j) n1 = std::max(n1, mat_.col(j).cwiseAbs().sum());
    for (int i = 0; i < mat_.rows(); ++i) ninf = std::max(ninf, mat_.row(i).cwiseAbs().sum());
    return std::sqrt(n1 * ninf);
}

std::string TruncatedOperator::dump_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "row_index,col_index,re,im\n";
    for (int i = 0; i < mat_.rows(); ++i)
        for (int j = 0; j < mat_.cols(); ++j) {
            const cplx& z = mat_(i, j);
            if (z == cplx(0.0, 0.0)) continue;
            os << indices_[i] << "," << indices_[j] << "," << z.real() << "," << z.imag() << "\n";
        }
    return os.str();
}

cplx v_entry(const FourierTables& t, Bc bc, int k, int j) {
    switch (bc) {
        case Bc::PerPlus:
        case Bc::PerMinus:
            // multiplication by v shifts exponential modes: (Vf)_k = sum_j V_+(k-j) f_j
            return t.v_plus(k - j);
        case Bc::Dir:
            return (t.v_cos(std::abs(j - k)) - t.v_cos(j + k)) / kSqrt2;
        case Bc::Neu: {
            // c_0 = 1 carries no sqrt2; rescale rows/cols through index 0
            double rho = (k == 0 ? 1.0 / kSqrt2 : 1.0) * (j == 0 ? 1.0 / kSqrt2 : 1.0);
            return rho * (t.v_cos(std::abs(j - k)) + t.v_cos(j + k)) / kSqrt2;
        }
    }
    return {0.0, 0.0};
}

TruncatedOperator build_operator(const PotentialSpec& spec, Bc bc, int K) {
    auto idx = index_set(bc, K);
    const int dim = static_cast<int>(idx.size());
    const int window = 4 * K + 2;
    if (2 * spec.max_frequency() > window)
        throw ConfigError("build_operator: Fourier window " + std::to_string(window) +
                          " does not cover potential frequency " +
                          std::to_string(2 * spec.max_frequency()));
    FourierTables tables(spec, window);
    Matrix A = Matrix::Zero(dim, dim);
    for (int a = 0; a < dim; ++a) {
        for (int b = 0; b < dim; ++b) {
            A(a, b) = v_entry(tables, bc, idx[a], idx[b]);
        }
        A(a, a) += double(idx[a]) * double(idx[a]);
    }
    return TruncatedOperator(bc, K, std::move(idx), std::move(A), spec);
}

double adjoint_check(const PotentialSpec& spec, Bc bc, int K) {
    TruncatedOperator a = build_operator(spec, bc, K);
    TruncatedOperator b = build_operator(spec.conjugated(), bc, K);
    return (b.matrix() - a.matrix().adjoint()).cwiseAbs().maxCoeff();
}

DerivativeMatrix build_derivative(Bc bc, int K) {
    DerivativeMatrix d;
    d.source = bc;
    d.source_indices = index_set(bc, K);
    switch (bc) {
        case Bc::PerPlus:
        case Bc::PerMinus: {
            d.target = bc;
            d.target_indices = d.source_indices;
            const int dim = static_cast<int>(d.source_indices.size());
            d.mat = Matrix::Zero(dim, dim);
            for (int a = 0; a < dim; ++a) d.mat(a, a) = cplx(0.0, d.source_indices[a]);
            break;
        }
        case Bc::Dir: {
            // D s_k = k c_k
            d.target = Bc::Neu;
            d.target_indices = index_set(Bc::Neu, K);
            d.mat = Matrix::Zero(d.target_indices.size(), d.source_indices.size());
            for (size_t b = 0; b < d.source_indices.size(); ++b) {
                int k = d.source_indices[b];
                d.mat(k, b) = double(k);  // Neu position of c_k is k
            }
            break;
        }
        case Bc::Neu: {
            // D c_k = -k s_k, D c_0 = 0
            d.target = Bc::Dir;
            d.target_indices = index_set(Bc::Dir, K);
            d.mat = Matrix::Zero(d.target_indices.size(), d.source_indices.size());
            for (size_t b = 0; b < d.source_indices.size(); ++b) {
                int k = d.source_indices[b];
                if (k >= 1) d.mat(k - 1, b) = -double(k);
            }
            break;
        }
    }
    return d;
}

cplx basis_function(Bc bc, int k, double x) {
    switch (bc) {
        case Bc::PerPlus:
        case Bc::PerMinus:
            return std::exp(cplx(0.0, k * x));
        case Bc::Dir:
            return {kSqrt2 * std::sin(k * x), 0.0};
        case Bc::Neu:
            return {k == 0 ? 1.0 : kSqrt2 * std::cos(k * x), 0.0};
    }
    return {0.0, 0.0};
}

cplx basis_derivative(Bc bc, int k, double x) {
    switch (bc) {
        case Bc::PerPlus:
        case Bc::PerMinus:
            return cplx(0.0, k) * std::exp(cplx(0.0, k * x));
        case Bc::Dir:
            return {kSqrt2 * k * std::cos(k * x), 0.0};
        case Bc::Neu:
            return {k == 0 ? 0.0 : -kSqrt2 * k * std::sin(k * x), 0.0};
    }
    return {0.0, 0.0};
}

cplx evaluate_vector(const Vector& coeffs, const std::vector<int>& indices, Bc bc, double x) {
    cplx s{0.0, 0.0};
    for (int i = 0; i < coeffs.size(); ++i) s += coeffs[i] * basis_function(bc, indices[i], x);
    return s;
}

}  // namespace hillspec
