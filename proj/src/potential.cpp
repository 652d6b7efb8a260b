#include "hillspec/potential.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "hillspec/errors.hpp"
#include "json.hpp"

namespace hillspec {

namespace {
constexpr double kPi = std::numbers::pi;
}

PotentialSpec::PotentialSpec(std::vector<std::pair<int, cplx>> terms, std::string label)
    : terms_(std::move(terms)), label_(std::move(label)) {
    std::sort(terms_.begin(), terms_.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 1; i < terms_.size(); ++i) {
        if (terms_[i].first == terms_[i - 1].first)
            throw ConfigError("duplicate frequency " + std::to_string(terms_[i].first) +
                              " in potential '" + label_ + "'");
    }
}

cplx PotentialSpec::coefficient(int k) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                               [](const auto& t, int key) { return t.first < key; });
    if (it != terms_.end() && it->first == k) return it->second;
    return {0.0, 0.0};
}

int PotentialSpec::max_frequency() const {
    int m = 0;
    for (const auto& [k, c] : terms_) m = std::max(m, std::abs(k));
    return m;
}

bool PotentialSpec::is_real() const {
    for (const auto& [k, c] : terms_)
        if (std::abs(c - std::conj(coefficient(-k))) > 1e-14) return false;
    return true;
}

bool PotentialSpec::is_even() const {
    for (const auto& [k, c] : terms_)
        if (std::abs(c - coefficient(-k)) > 1e-14) return false;
    return true;
}

cplx PotentialSpec::evaluate(double x) const {
    cplx s{0.0, 0.0};
    for (const auto& [k, c] : terms_) s += c * std::exp(cplx(0.0, 2.0 * k * x));
    return s;
}

PotentialSpec PotentialSpec::conjugated() const {
    std::vector<std::pair<int, cplx>> t;
    t.reserve(terms_.size());
    for (const auto& [k, c] : terms_) t.emplace_back(-k, std::conj(c));
    return PotentialSpec(std::move(t), label_.empty() ? "" : "conj(" + label_ + ")");
}

double PotentialSpec::coeff_abs_sum() const {
    double s = 0.0;
    for (const auto& [k, c] : terms_) s += std::abs(c);
    return s;
}

std::string PotentialSpec::canonical_string() const {
    std::ostringstream os;
    os.precision(17);
    for (const auto& [k, c] : terms_) os << k << ":" << c.real() << "," << c.imag() << ";";
    return os.str();
}

cplx exp_integral(int a) {
    if (a == 0) return {kPi, 0.0};
    if (a % 2 == 0) return {0.0, 0.0};   // e^{ia pi} = 1 for even a
    return cplx(0.0, 2.0 / a);           // (e^{ia pi} - 1)/(ia) = 2i/a for odd a
}

cplx fourier_plus(const PotentialSpec& spec, int k) {
    if (k % 2 != 0) return {0.0, 0.0};
    return spec.coefficient(k / 2);
}

cplx fourier_cos_plain(const PotentialSpec& spec, int k) {
    // (1/pi) int v cos(kx) = (1/2pi) sum_m c_m [I(2m+k) + I(2m-k)]
    cplx s{0.0, 0.0};
    for (const auto& [m, c] : spec.terms()) s += c * (exp_integral(2 * m + k) + exp_integral(2 * m - k));
    return s / (2.0 * kPi);
}

cplx fourier_cos(const PotentialSpec& spec, int k) {
    return std::sqrt(2.0) * fourier_cos_plain(spec, k);
}

NormalizedPotential normalize_mean(const PotentialSpec& spec) {
    cplx shift = spec.coefficient(0);
    std::vector<std::pair<int, cplx>> t;
    for (const auto& [k, c] : spec.terms())
        if (k != 0) t.emplace_back(k, c);
    return {PotentialSpec(std::move(t), spec.label()), shift};
}

double lp_norm(const PotentialSpec& spec, double p, int grid_size) {
    if (p < 1.0) throw ConfigError("lp_norm: p must be >= 1");
    if (grid_size < 256) throw ConfigError("lp_norm: grid_size must be >= 256");
    double acc = 0.0;
    const double h = kPi / grid_size;
    for (int i = 0; i < grid_size; ++i) {
        double x = (i + 0.5) * h;
        acc += std::pow(std::abs(spec.evaluate(x)), p);
    }
    return std::pow(acc * h, 1.0 / p);
}

FourierTables::FourierTables(const PotentialSpec& spec, int window) : window_(window) {
    for (int k = -window; k <= window; k += 2) plus_[k] = fourier_plus(spec, k);
    if (window % 2 != 0) {
        plus_[-window - 1] = fourier_plus(spec, -window - 1);
        plus_[window + 1] = fourier_plus(spec, window + 1);
    }
    for (int k = 0; k <= window; ++k) cos_[k] = fourier_cos(spec, k);
}

cplx FourierTables::v_plus(int k) const {
    if (k % 2 != 0) return {0.0, 0.0};
    auto it = plus_.find(k);
    if (it == plus_.end())
        throw ConfigError("FourierTables: V_+ index " + std::to_string(k) +
                          " outside window " + std::to_string(window_));
    return it->second;
}

cplx FourierTables::v_cos(int k) const {
    auto it = cos_.find(k);
    if (it == cos_.end())
        throw ConfigError("FourierTables: V_c index " + std::to_string(k) +
                          " outside window " + std::to_string(window_));
    return it->second;
}

double FourierTables::recomputation_error(const PotentialSpec& spec) const {
    double m = 0.0;
    for (const auto& [k, val] : plus_) m = std::max(m, std::abs(val - fourier_plus(spec, k)));
    for (const auto& [k, val] : cos_) m = std::max(m, std::abs(val - fourier_cos(spec, k)));
    return m;
}

PotentialSpec potential_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("potential JSON parse failure: ") + e.what());
    }
    if (!j.contains("terms") || !j["terms"].is_array())
        throw IoError("potential JSON: missing 'terms' array");
    std::vector<std::pair<int, cplx>> terms;
    for (const auto& t : j["terms"]) {
        if (!t.is_array() || t.size() != 3)
            throw IoError("potential JSON: each term must be [k, re, im]");
        terms.emplace_back(t[0].get<int>(), cplx(t[1].get<double>(), t[2].get<double>()));
    }
    std::string label = j.value("label", "");
    return PotentialSpec(std::move(terms), label);
}

PotentialSpec load_potential(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open potential file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return potential_from_json_text(ss.str());
}

std::string potential_to_json_text(const PotentialSpec& spec) {
    nlohmann::ordered_json j;
    j["label"] = spec.label();
    j["terms"] = nlohmann::ordered_json::array();
    for (const auto& [k, c] : spec.terms()) j["terms"].push_back({k, c.real(), c.imag()});
    return j.dump(2);
}

}  // namespace hillspec
