#include "cmgamma/kernels.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>
#include <sstream>

#include "cmgamma/errors.hpp"
#include "cmgamma/specfun.hpp"

namespace cmgamma {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void check_parameter(double v, const char* what) {
    if (!std::isfinite(v) || v < 0.0) {
        std::ostringstream msg;
        msg << "RatioFamily: parameter " << what << " must be finite and >= 0, got " << v;
        throw UsageError(msg.str());
    }
}

void validate(const RatioFamily::Params& params) {
    std::visit(Overloaded{
                   [](const TwoParam& p) {
                       check_parameter(p.a, "a");
                       check_parameter(p.b, "b");
                   },
                   [](const MultiParam& p) {
                       if (p.a.empty()) throw UsageError("RatioFamily: multi-param needs >= 1 parameter");
                       for (double v : p.a) check_parameter(v, "a_i");
                   },
                   [](const Majorized& p) {
                       if (p.a.empty() || p.a.size() != p.b.size()) {
                           throw UsageError("RatioFamily: majorized lists must be nonempty and of equal length");
                       }
                       for (double v : p.a) check_parameter(v, "a_i");
                       for (double v : p.b) check_parameter(v, "b_i");
                   },
                   [](const Symmetric& p) { check_parameter(p.a, "a"); },
               },
               params);
}

std::vector<GammaTerm> raw_terms(const RatioFamily::Params& params) {
    return std::visit(
        Overloaded{
            [](const TwoParam& p) {
                return std::vector<GammaTerm>{
                    {1.0, 1.0}, {1.0, (1.0 - p.a) - p.b}, {-1.0, 1.0 - p.a}, {-1.0, 1.0 - p.b}};
            },
            [](const MultiParam& p) {
                const double total = std::accumulate(p.a.begin(), p.a.end(), 0.0);
                std::vector<GammaTerm> terms{{static_cast<double>(p.a.size()) - 1.0, 1.0},
                                             {1.0, 1.0 - total}};
                for (double v : p.a) terms.push_back({-1.0, 1.0 - v});
                return terms;
            },
            [](const Majorized& p) {
                std::vector<GammaTerm> terms;
                for (double v : p.a) terms.push_back({1.0, -v});
                for (double v : p.b) terms.push_back({-1.0, -v});
                return terms;
            },
            [](const Symmetric& p) {
                return std::vector<GammaTerm>{{1.0, p.a}, {1.0, -p.a}, {-2.0, 0.0}};
            },
        },
        params);
}

std::vector<GammaTerm> merge_terms(const std::vector<GammaTerm>& raw) {
    std::vector<GammaTerm> merged;
    for (const GammaTerm& term : raw) {
        auto it = std::find_if(merged.begin(), merged.end(),
                               [&](const GammaTerm& m) { return m.shift == term.shift; });
        if (it == merged.end()) {
            merged.push_back(term);
        } else {
            it->coef += term.coef;
        }
    }
    std::erase_if(merged, [](const GammaTerm& m) { return m.coef == 0.0; });
    return merged;
}

// 1 - e^{-x}, accurate for small x.
double one_minus_exp_neg(double x) { return -std::expm1(-x); }

void require_domain(const RatioFamily& fam, double z) {
    if (!std::isfinite(z) || !(z > fam.lower_bound())) {
        std::ostringstream msg;
        msg << fam.describe() << ": z must exceed the domain bound " << fam.lower_bound()
            << ", got " << z;
        throw DomainError(msg.str());
    }
}

void require_order(int n, int max_order) {
    if (n < 1) throw UsageError("log-derivative order must be >= 1");
    if (n > max_order) {
        std::ostringstream msg;
        msg << "log-derivative order " << n << " exceeds the configured cap " << max_order;
        throw UsageError(msg.str());
    }
}

}  // namespace

RatioFamily::RatioFamily(Params params) : params_(std::move(params)) {
    validate(params_);
    const std::vector<GammaTerm> raw = raw_terms(params_);
    lower_bound_ = -raw.front().shift;
    for (const GammaTerm& term : raw) lower_bound_ = std::max(lower_bound_, -term.shift);
    lower_bound_ += 0.0;  // -0.0 -> 0.0
    terms_ = merge_terms(raw);
}

std::string RatioFamily::kind() const {
    return std::visit(Overloaded{
                          [](const TwoParam&) { return std::string("two-param"); },
                          [](const MultiParam&) { return std::string("multi-param"); },
                          [](const Majorized&) { return std::string("majorized"); },
                          [](const Symmetric&) { return std::string("symmetric"); },
                      },
                      params_);
}

std::string RatioFamily::describe() const {
    std::ostringstream out;
    out.precision(17);
    auto list = [&out](const std::vector<double>& v) {
        out << '(';
        for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
        out << ')';
    };
    out << kind() << '{';
    std::visit(Overloaded{
                   [&](const TwoParam& p) { out << "a=" << p.a << ",b=" << p.b; },
                   [&](const MultiParam& p) {
                       out << "a=";
                       list(p.a);
                   },
                   [&](const Majorized& p) {
                       out << "a=";
                       list(p.a);
                       out << ",b=";
                       list(p.b);
                   },
                   [&](const Symmetric& p) { out << "a=" << p.a; },
               },
               params_);
    out << '}';
    return out.str();
}

double domain_lower_bound(const RatioFamily& fam) { return fam.lower_bound(); }

ScaledKernel scaled_kernel(const RatioFamily& fam, double t) {
    if (!(t > 0.0)) throw DomainError("kernel_value: t must be > 0");
    return std::visit(
        Overloaded{
            [t](const TwoParam& p) {
                const double v = one_minus_exp_neg(p.a * t) * one_minus_exp_neg(p.b * t);
                return ScaledKernel{v, 0.0, v};
            },
            [t](const MultiParam& p) {
                // ξ(t) e^{-āt} as a sum of nonnegative products: with
                // v_k = 1 - e^{-a_k t} and A_k = 1 - e^{-(a_1+...+a_k)t},
                // S_k = S_{k-1}(1 - v_k) + v_k A_{k-1}.
                double partial = 0.0;
                double accumulated = 0.0;
                double scaled = 0.0;
                for (double a : p.a) {
                    const double v = one_minus_exp_neg(a * t);
                    scaled = scaled * (1.0 - v) + v * accumulated;
                    partial += a;
                    accumulated = one_minus_exp_neg(partial * t);
                }
                return ScaledKernel{scaled, partial * t, scaled};
            },
            [t](const Majorized& p) {
                double m = 0.0;
                for (double v : p.a) m = std::max(m, v);
                for (double v : p.b) m = std::max(m, v);
                // e^{-mt}(e^{ct} - 1) = e^{-(m-c)t}(1 - e^{-ct})
                double value = 0.0;
                double magnitude = 0.0;
                for (double c : p.a) {
                    const double term = std::exp(-(m - c) * t) * one_minus_exp_neg(c * t);
                    value += term;
                    magnitude += term;
                }
                for (double c : p.b) {
                    const double term = std::exp(-(m - c) * t) * one_minus_exp_neg(c * t);
                    value -= term;
                    magnitude += term;
                }
                return ScaledKernel{value, m * t, magnitude};
            },
            [t](const Symmetric& p) {
                const double v = one_minus_exp_neg(p.a * t);
                return ScaledKernel{v * v, p.a * t, v * v};
            },
        },
        fam.params());
}

double kernel_value(const RatioFamily& fam, double t) {
    const ScaledKernel k = scaled_kernel(fam, t);
    if (k.value == 0.0) return 0.0;
    return k.value * std::exp(k.log_scale);
}

std::string to_string(DerivPath path) {
    return path == DerivPath::Quadrature ? "quadrature" : "polygamma";
}

LogDerivResult log_deriv_quadrature(const RatioFamily& fam, double z, int n,
                                    const QuadOptions& opts, int max_order) {
    require_order(n, max_order);
    require_domain(fam, z);

    // w(t,z)·K(t) = e^{-(z - lower)t} · (scaled kernel) for every family.
    const double decay = z - fam.lower_bound();
    const double power = n - 1;
    auto integrand = [&](double t) {
        const double k = scaled_kernel(fam, t).value;
        if (k == 0.0) return 0.0;
        const double envelope = std::exp(power * std::log(t) - decay * t);
        return envelope * k / one_minus_exp_neg(t);
    };
    const QuadResult q = integrate_half_line(integrand, decay, opts);
    return {n, z, q.value, DerivPath::Quadrature, q.err_estimate};
}

LogDerivResult log_deriv_polygamma(const RatioFamily& fam, double z, int n, int max_order) {
    require_order(n, max_order);
    require_domain(fam, z);

    double sum = 0.0;
    double magnitude = 0.0;
    for (const GammaTerm& term : fam.gamma_terms()) {
        const double v = term.coef * polygamma_or_digamma(n - 1, z + term.shift);
        sum += v;
        magnitude += std::abs(v);
    }
    const double signed_value = (n % 2 == 0) ? sum : -sum;
    return {n, z, signed_value, DerivPath::Polygamma, 16.0 * DBL_EPSILON * magnitude};
}

double log_f(const RatioFamily& fam, double z) {
    require_domain(fam, z);
    double sum = 0.0;
    for (const GammaTerm& term : fam.gamma_terms()) {
        sum += term.coef * log_gamma(z + term.shift);
    }
    return sum;
}

}  // namespace cmgamma
