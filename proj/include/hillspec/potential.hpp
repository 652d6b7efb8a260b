#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace hillspec {

using cplx = std::complex<double>;

// Complex pi-periodic potential given as a finite exponential series
//   v(x) = sum_k c_k e^{2ikx}.
// Frequencies k are distinct; the series is a trigonometric polynomial.
class PotentialSpec {
  public:
    PotentialSpec() = default;
    PotentialSpec(std::vector<std::pair<int, cplx>> terms, std::string label);

    const std::vector<std::pair<int, cplx>>& terms() const { return terms_; }
    const std::string& label() const { return label_; }

    cplx coefficient(int k) const;      // c_k, zero if absent
    int max_frequency() const;          // max |k| over stored terms
    bool empty() const { return terms_.empty(); }

    // true when c_k == conj(c_{-k}) for all k (v real a.e.)
    bool is_real() const;
    // true when c_k == c_{-k} for all k (v even; cos series)
    bool is_even() const;

    cplx evaluate(double x) const;

    PotentialSpec conjugated() const;   // coefficients conj(c_{-k})
    double coeff_abs_sum() const;       // sum_k |c_k|

    std::string canonical_string() const;  // stable text form, used for hashing

  private:
    std::vector<std::pair<int, cplx>> terms_;  // sorted by frequency
    std::string label_;
};

struct NormalizedPotential {
    PotentialSpec spec;  // mean-free part
    cplx shift;          // removed constant c_0; spectra shift back by this
};

// V_+(k) = (1/pi) int_0^pi v(x) e^{-ikx} dx interpreted on the pi-circle:
// a pi-periodic series has even harmonics only, so V_+(2m) = c_m and
// V_+(k) = 0 for odd k.
cplx fourier_plus(const PotentialSpec& spec, int k);

// V_c(k) = (1/pi) int_0^pi v(x) sqrt(2) cos(kx) dx, k >= 0, evaluated from the
// closed-form antiderivative; nonzero at odd k is possible for non-even v.
cplx fourier_cos(const PotentialSpec& spec, int k);

// plain cosine coefficient (1/pi) int_0^pi v cos(kx) dx = V_c(k)/sqrt(2)
cplx fourier_cos_plain(const PotentialSpec& spec, int k);

// closed form of int_0^pi e^{iax} dx
cplx exp_integral(int a);

NormalizedPotential normalize_mean(const PotentialSpec& spec);

// (int_0^pi |v|^p dx)^{1/p} by uniform-grid quadrature (spectral accuracy for
// trigonometric polynomials). grid_size >= 256.
double lp_norm(const PotentialSpec& spec, double p, int grid_size = 4096);

// Precomputed tables of V_+ (even k) and V_c (k >= 0) out to |k| <= window.
class FourierTables {
  public:
    FourierTables() = default;
    FourierTables(const PotentialSpec& spec, int window);

    cplx v_plus(int k) const;
    cplx v_cos(int k) const;
    int window() const { return window_; }

    // max |entry - recomputed| over both tables
    double recomputation_error(const PotentialSpec& spec) const;

  private:
    std::map<int, cplx> plus_;
    std::map<int, cplx> cos_;
    int window_ = 0;
};

// JSON file format: {"label": str, "terms": [[k, re, im], ...]}
PotentialSpec potential_from_json_text(const std::string& text);
PotentialSpec load_potential(const std::string& path);
std::string potential_to_json_text(const PotentialSpec& spec);

}  // namespace hillspec
