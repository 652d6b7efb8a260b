#include "hillspec/weights.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "hillspec/errors.hpp"
#include "json.hpp"

namespace hillspec {

WeightSpec WeightSpec::sobolev(double a, Form form) {
    if (a < 0.0) throw ConfigError("sobolev weight needs a >= 0");
    WeightSpec w;
    w.kind_ = Kind::Sobolev;
    w.form_ = form;
    w.a_ = a;
    return w;
}

WeightSpec WeightSpec::gevrey(double c, double exponent, Form form) {
    if (c <= 0.0 || exponent <= 0.0 || exponent > 1.0)
        throw ConfigError("gevrey weight needs c > 0 and exponent in (0,1]");
    WeightSpec w;
    w.kind_ = Kind::Gevrey;
    w.form_ = form;
    w.c_ = c;
    w.e_ = exponent;
    return w;
}

WeightSpec WeightSpec::table(std::map<int, double> values, Form form) {
    WeightSpec w;
    w.kind_ = Kind::Table;
    w.form_ = form;
    w.table_ = std::move(values);
    return w;
}

double WeightSpec::omega(int k) const {
    int n = std::abs(k);
    switch (kind_) {
        case Kind::Sobolev:
            // (1 + |k|)^a is sub-multiplicative exactly; (1+k^2)^{a/2} is not
            return std::pow(1.0 + n, a_);
        case Kind::Gevrey:
            return std::exp(c_ * std::pow(double(n), e_));
        case Kind::Table: {
            auto it = table_.find(n);
            if (it == table_.end())
                throw ConfigError("weight table has no entry for |k| = " + std::to_string(n));
            return it->second;
        }
    }
    return 1.0;
}

double WeightSpec::big_omega(int k) const {
    double w = omega(k);
    if (form_ == Form::Quotient && k != 0) return w / std::abs(k);
    return w;
}

double WeightSpec::submultiplicativity_excess(int window) const {
    double worst = 0.0;
    for (int k = 0; k <= window; ++k)
        for (int m = 0; m <= window; ++m) {
            double lhs = omega(k + m);
            double rhs = omega(k) * omega(m);
            if (rhs > 0.0) worst = std::max(worst, lhs / rhs);
        }
    return worst;
}

std::string WeightSpec::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Sobolev: os << "sobolev(a=" << a_ << ")"; break;
        case Kind::Gevrey: os << "gevrey(c=" << c_ << ",e=" << e_ << ")"; break;
        case Kind::Table: os << "table(" << table_.size() << " entries)"; break;
    }
    if (form_ == Form::Quotient) os << "/|m|";
    return os.str();
}

WeightedNormResult weighted_l2_norm(const std::map<int, std::complex<double>>& seq,
                                    const WeightSpec& weight) {
    WeightedNormResult out;
    double acc = 0.0;
    for (const auto& [n, v] : seq) {
        double om = weight.big_omega(n);
        acc += std::norm(v) * om * om;
        out.partial_sums.emplace_back(n, acc);
    }
    out.value = std::sqrt(acc);
    return out;
}

WeightSpec weight_from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(std::string("weight JSON parse failure: ") + e.what());
    }
    std::string kind = j.value("kind", "");
    auto form = j.value("form", "plain") == "quotient" ? WeightSpec::Form::Quotient
                                                       : WeightSpec::Form::Plain;
    if (kind == "sobolev") return WeightSpec::sobolev(j.at("a").get<double>(), form);
    if (kind == "gevrey")
        return WeightSpec::gevrey(j.at("c").get<double>(), j.at("exponent").get<double>(), form);
    if (kind == "table") {
        std::map<int, double> vals;
        for (const auto& t : j.at("values")) vals[t[0].get<int>()] = t[1].get<double>();
        return WeightSpec::table(std::move(vals), form);
    }
    throw IoError("weight JSON: unknown kind '" + kind + "'");
}

WeightSpec load_weight(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open weight file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return weight_from_json_text(ss.str());
}

}  // namespace hillspec
