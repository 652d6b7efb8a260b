#pragma once

#include <map>
#include <optional>
#include <vector>

#include "hillspec/eig.hpp"
#include "hillspec/opmatrix.hpp"

namespace hillspec {

// Eigenvalues split into the low-energy rectangle R_N, the disks
// D_n = {|lambda - n^2| < n/4} for n > N (n in the bc index parity),
// and an unassigned remainder.
struct LocalizedSpectrum {
    Bc bc = Bc::PerPlus;
    int N = 0;
    std::vector<cplx> in_rectangle;
    std::map<int, std::vector<cplx>> per_disk;
    std::vector<cplx> unassigned;

    int disk_count(int n) const;
    // counting law on the window (N, n_max]: 2 per disk for Per, 1 for Dir/Neu
    bool counting_ok(int n_max) const;
    // free-operator count of eigenvalues inside R_N at even N:
    // Per+ N+1, Per- N, Dir N, Neu N+1
    static int expected_rectangle_count(Bc bc, int N);
};

bool in_rectangle(const cplx& lambda, int N);
bool in_disk(const cplx& lambda, int n);

LocalizedSpectrum localize(const std::vector<cplx>& eigs, Bc bc, int N);

// Smallest even N such that, for all four boundary conditions at the common
// cutoff, every disk with N < n <= n_max holds the exact count and the
// rectangle count matches the free operator. Throws if no N <= n_max/2 works.
int choose_N(const std::map<Bc, std::vector<cplx>>& eigs_per_bc, int n_max);

// labeling: lambda+ has the larger real part, ties by larger imaginary part
std::pair<cplx, cplx> pair_periodic(const LocalizedSpectrum& loc, int n);

struct SpectralTriangle {
    int n = 0;
    cplx lambda_plus;
    cplx lambda_minus;
    cplx nu;      // Neumann eigenvalue near n^2
    cplx mu;      // Dirichlet eigenvalue near n^2
    cplx gamma;   // lambda+ - lambda-
    cplx delta_dir;
    cplx delta_neu;
    cplx z_star;  // (lambda+ + lambda-)/2 - n^2
    double size = 0.0;  // |gamma| + |delta_neu|
    // both deviations, for labeling-sensitivity reporting
    cplx delta_neu_alt;  // lambda- - nu
    cplx delta_dir_alt;
};

SpectralTriangle make_triangle(int n, const std::pair<cplx, cplx>& per_pair, cplx nu, cplx mu);

}  // namespace hillspec
