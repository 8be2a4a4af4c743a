#pragma once

#include <string>
#include <variant>
#include <vector>

#include "cmgamma/quad.hpp"

namespace cmgamma {

// f(z) = Γ(z+1)Γ(z-a-b+1) / (Γ(z-a+1)Γ(z-b+1)),  z > a+b-1.
struct TwoParam {
    double a = 0.0;
    double b = 0.0;
};

// f(z) = Γ(z+1)^{n-1} Γ(z-ā+1) / ∏ Γ(z-a_i+1),  ā = Σ a_i,  z > ā-1.
struct MultiParam {
    std::vector<double> a;
};

// f(z) = ∏ Γ(z-a_i) / ∏ Γ(z-b_i),  z > max(a_i, b_i).
struct Majorized {
    std::vector<double> a;
    std::vector<double> b;
};

// f(z) = Γ(z+a)Γ(z-a) / Γ(z)^2,  z > a.
struct Symmetric {
    double a = 0.0;
};

// One factor of ln f(z) = Σ coef · ln Γ(z + shift).
struct GammaTerm {
    double coef;
    double shift;
};

// Immutable, validated gamma-ratio family. Construction rejects negative or
// non-finite parameters and mismatched Majorized lengths with UsageError.
class RatioFamily {
public:
    using Params = std::variant<TwoParam, MultiParam, Majorized, Symmetric>;

    explicit RatioFamily(Params params);

    const Params& params() const noexcept { return params_; }

    // "two-param", "multi-param", "majorized" or "symmetric".
    std::string kind() const;
    std::string describe() const;

    // Like terms of equal shift are merged; zero coefficients are dropped.
    const std::vector<GammaTerm>& gamma_terms() const noexcept { return terms_; }
    double lower_bound() const noexcept { return lower_bound_; }

private:
    Params params_;
    std::vector<GammaTerm> terms_;
    double lower_bound_;
};

double domain_lower_bound(const RatioFamily& fam);

// Kernel factor K(t) decomposed as K(t) = value · exp(log_scale). `magnitude`
// is the sum of absolute values of the summands in the same scaling, the
// reference for relative sign checks.
struct ScaledKernel {
    double value;
    double log_scale;
    double magnitude;
};

ScaledKernel scaled_kernel(const RatioFamily& fam, double t);

// K(t) itself; overflows to +/-inf only where the kernel is unbounded.
double kernel_value(const RatioFamily& fam, double t);

enum class DerivPath { Quadrature, Polygamma };

std::string to_string(DerivPath path);

// (-1)^n (ln f)^{(n)}(z) and the path that produced it.
struct LogDerivResult {
    int order;
    double z;
    double signed_value;
    DerivPath path;
    double err_estimate;
};

inline constexpr int kDefaultMaxOrder = 12;

// ∫_0^∞ t^{n-1} w(t,z) K(t) / (1 - e^{-t}) dt with decay rate z - lower_bound.
LogDerivResult log_deriv_quadrature(const RatioFamily& fam, double z, int n,
                                    const QuadOptions& opts = {},
                                    int max_order = kDefaultMaxOrder);

// (-1)^n Σ coef · ψ^{(n-1)}(z + shift).
LogDerivResult log_deriv_polygamma(const RatioFamily& fam, double z, int n,
                                   int max_order = kDefaultMaxOrder);

// ln f(z) = Σ coef · ln Γ(z + shift).
double log_f(const RatioFamily& fam, double z);

}  // namespace cmgamma
