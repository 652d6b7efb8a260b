#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace hillspec {

// Sub-multiplicative weight omega with optional quotient form
// Omega(m) = omega(m)/|m| (m != 0). omega(-k) = omega(k) always.
class WeightSpec {
  public:
    enum class Kind { Sobolev, Gevrey, Table };
    enum class Form { Plain, Quotient };

    static WeightSpec sobolev(double a, Form form = Form::Plain);
    static WeightSpec gevrey(double c, double exponent, Form form = Form::Plain);
    static WeightSpec table(std::map<int, double> values, Form form = Form::Plain);

    double omega(int k) const;
    double big_omega(int k) const;  // quotient form divides by |k| for k != 0

    Kind kind() const { return kind_; }
    Form form() const { return form_; }
    double param_a() const { return a_; }
    double param_c() const { return c_; }
    double param_exponent() const { return e_; }

    // checks omega(k+m) <= omega(k) omega(m) on all pairs 0 <= k,m <= window;
    // returns the worst ratio omega(k+m)/(omega(k) omega(m))
    double submultiplicativity_excess(int window) const;

    std::string describe() const;

  private:
    Kind kind_ = Kind::Sobolev;
    Form form_ = Form::Plain;
    double a_ = 0.0, c_ = 0.0, e_ = 1.0;
    std::map<int, double> table_;
};

struct WeightedNormResult {
    double value = 0.0;
    // partial sums of sum |seq(n)|^2 Omega(n)^2 in ascending n, for growth diagnostics
    std::vector<std::pair<int, double>> partial_sums;
};

WeightedNormResult weighted_l2_norm(const std::map<int, std::complex<double>>& seq,
                                    const WeightSpec& weight);

// JSON: {"kind":"sobolev","a":2.0,"form":"plain"|"quotient"}
//       {"kind":"gevrey","c":0.5,"exponent":1.0,...}
//       {"kind":"table","values":[[k,w],...],...}
WeightSpec weight_from_json_text(const std::string& text);
WeightSpec load_weight(const std::string& path);

}  // namespace hillspec
