#include "hillspec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hillspec/errors.hpp"

namespace hillspec {

bool in_rectangle(const cplx& lambda, int N) {
    return lambda.real() >= -double(N) && lambda.real() <= double(N) * N + N &&
           std::abs(lambda.imag()) < double(N);
}

bool in_disk(const cplx& lambda, int n) { return std::abs(lambda - cplx(double(n) * n, 0.0)) < n / 4.0; }

int LocalizedSpectrum::disk_count(int n) const {
    auto it = per_disk.find(n);
    return it == per_disk.end() ? 0 : static_cast<int>(it->second.size());
}

bool LocalizedSpectrum::counting_ok(int n_max) const {
    const int want = is_periodic(bc) ? 2 : 1;
    int start = N + 1;
    for (int n = start; n <= n_max; ++n) {
        if (is_periodic(bc) && n % 2 != bc_parity(bc)) continue;
        if (disk_count(n) != want) return false;
    }
    return true;
}

int LocalizedSpectrum::expected_rectangle_count(Bc bc, int N) {
    // free operator, even N: indices k with k^2 <= N^2 + N
    switch (bc) {
        case Bc::PerPlus: return N + 1;  // k even, |k| <= N (0 once, +-k pairs)
        case Bc::PerMinus: return N;     // k odd, |k| <= N-1
        case Bc::Dir: return N;          // 1..N
        case Bc::Neu: return N + 1;      // 0..N
    }
    return 0;
}

LocalizedSpectrum localize(const std::vector<cplx>& eigs, Bc bc, int N) {
    LocalizedSpectrum loc;
    loc.bc = bc;
    loc.N = N;
    // disks with n >= 1 are pairwise disjoint: gap to the nearest same-set
    // neighbor is at least 2n+1 > n/4 + (n+1)/4
    for (const cplx& lam : eigs) {
        if (in_rectangle(lam, N)) {
            loc.in_rectangle.push_back(lam);
            continue;
        }
        int n_guess = static_cast<int>(std::lround(std::sqrt(std::max(0.0, lam.real()))));
        bool placed = false;
        for (int n = std::max(N + 1, n_guess - 1); n <= n_guess + 1; ++n) {
            if (is_periodic(bc) && n % 2 != bc_parity(bc)) continue;
            if (n < 1) continue;
            if (in_disk(lam, n)) {
                loc.per_disk[n].push_back(lam);
                placed = true;
                break;
            }
        }
        if (!placed) loc.unassigned.push_back(lam);
    }
    return loc;
}

int choose_N(const std::map<Bc, std::vector<cplx>>& eigs_per_bc, int n_max) {
    for (int N = 2; N <= n_max / 2; N += 2) {
        bool ok = true;
        for (const auto& [bc, eigs] : eigs_per_bc) {
            LocalizedSpectrum loc = localize(eigs, bc, N);
            if (!loc.counting_ok(n_max) ||
                static_cast<int>(loc.in_rectangle.size()) !=
                    LocalizedSpectrum::expected_rectangle_count(bc, N)) {
                ok = false;
                break;
            }
        }
        if (ok) return N;
    }
    throw StructuralError("choose_N: no even N <= " + std::to_string(n_max / 2) +
                          " satisfies the counting law; increase the cutoff K");
}

std::pair<cplx, cplx> pair_periodic(const LocalizedSpectrum& loc, int n) {
    auto it = loc.per_disk.find(n);
    if (it == loc.per_disk.end() || it->second.size() != 2) {
        std::ostringstream os;
        os << "pair_periodic: disk D_" << n << " holds " << (it == loc.per_disk.end() ? 0 : it->second.size())
           << " eigenvalues, need 2; contents:";
        if (it != loc.per_disk.end())
            for (const cplx& z : it->second) os << " (" << z.real() << "," << z.imag() << ")";
        throw StructuralError(os.str());
    }
    cplx a = it->second[0], b = it->second[1];
    auto ge = [](const cplx& x, const cplx& y) {
        if (x.real() != y.real()) return x.real() > y.real();
        return x.imag() >= y.imag();
    };
    return ge(a, b) ? std::make_pair(a, b) : std::make_pair(b, a);
}

SpectralTriangle make_triangle(int n, const std::pair<cplx, cplx>& per_pair, cplx nu, cplx mu) {
    SpectralTriangle t;
    t.n = n;
    t.lambda_plus = per_pair.first;
    t.lambda_minus = per_pair.second;
    t.nu = nu;
    t.mu = mu;
    t.gamma = t.lambda_plus - t.lambda_minus;
    t.delta_dir = t.lambda_plus - mu;
    t.delta_neu = t.lambda_plus - nu;
    t.delta_dir_alt = t.lambda_minus - mu;
    t.delta_neu_alt = t.lambda_minus - nu;
    t.z_star = 0.5 * (t.lambda_plus + t.lambda_minus) - cplx(double(n) * n, 0.0);
    t.size = std::abs(t.gamma) + std::abs(t.delta_neu);
    return t;
}

}  // namespace hillspec
