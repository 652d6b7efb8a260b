#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "hillspec/potential.hpp"

namespace hillspec {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class Bc { PerPlus, PerMinus, Dir, Neu };

const char* bc_name(Bc bc);
Bc bc_from_name(const std::string& name);
bool is_periodic(Bc bc);
// parity of the mode indices n carrying eigenvalue pairs for this bc (0 even / 1 odd);
// meaningful for PerPlus/PerMinus only
int bc_parity(Bc bc);
Bc periodic_bc_for(int n);  // PerPlus for even n, PerMinus for odd n

// Index sets: PerPlus even |k| <= 2K, PerMinus odd |k| <= 2K+1, Dir 1..K, Neu 0..K.
// Ascending order.
std::vector<int> index_set(Bc bc, int K);

// Truncated matrix of L_bc = L0 + V in the canonical orthonormal basis.
// Entries A_{kj} = k^2 delta_{kj} + V^{bc}_{kj}, rows/cols labeled by the
// index set; the matrix acts on coefficient vectors.
class TruncatedOperator {
  public:
    TruncatedOperator() = default;
    TruncatedOperator(Bc bc, int K, std::vector<int> indices, Matrix m, PotentialSpec spec);

    Bc bc() const { return bc_; }
    int cutoff() const { return K_; }
    const std::vector<int>& indices() const { return indices_; }
    const Matrix& matrix() const { return mat_; }
    const PotentialSpec& potential() const { return spec_; }
    int dim() const { return static_cast<int>(indices_.size()); }

    int position(int index) const;      // position of a basis index, -1 if absent
    double norm_estimate() const;       // sqrt(|A|_1 |A|_inf) upper bound on |A|_2

    std::string dump_csv() const;       // row_index,col_index,re,im by basis labels

  private:
    Bc bc_ = Bc::PerPlus;
    int K_ = 0;
    std::vector<int> indices_;
    Matrix mat_;
    PotentialSpec spec_;
};

// V-block entry in the orthonormal basis, from the Fourier tables.
cplx v_entry(const FourierTables& t, Bc bc, int k, int j);

TruncatedOperator build_operator(const PotentialSpec& spec, Bc bc, int K);

// max entrywise |A(conj v) - A(v)^H|
double adjoint_check(const PotentialSpec& spec, Bc bc, int K);

// d/dx in the canonical bases. For Per the basis maps to itself (diag ik);
// Dir -> Neu via s_k -> k c_k; Neu -> Dir via c_k -> -k s_k.
struct DerivativeMatrix {
    Bc source;
    Bc target;
    std::vector<int> source_indices;
    std::vector<int> target_indices;
    Matrix mat;
};

DerivativeMatrix build_derivative(Bc bc, int K);

// basis functions b_k(x): Per e^{ikx}; Dir sqrt2 sin kx; Neu c_0 = 1, c_k = sqrt2 cos kx
cplx basis_function(Bc bc, int k, double x);
cplx basis_derivative(Bc bc, int k, double x);

cplx evaluate_vector(const Vector& coeffs, const std::vector<int>& indices, Bc bc, double x);

}  // namespace hillspec
