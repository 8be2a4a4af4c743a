#pragma once

// Scalar gamma-family functions. Every routine is a pure function; poles of
// Γ (non-positive arguments) raise DomainError instead of returning specials.

namespace cmgamma {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// ln Γ(x) for x > 0.
double log_gamma(double x);

// ln Γ(x) - ln Γ(y) for x, y > 0, without the cancellation of two large
// log-gamma values when x and y are close relative to their size.
double log_gamma_ratio(double x, double y);

// ψ(x) = d/dx ln Γ(x) for x > 0.
double digamma(double x);

// ψ^{(n)}(x) for n >= 1, x > 0. Throws UsageError when n < 1.
double polygamma(int n, double x);

// ψ^{(k)}(x) for k >= 0 (k == 0 dispatches to digamma).
double polygamma_or_digamma(int k, double x);

// ln B(a, b) = ln Γ(a) + ln Γ(b) - ln Γ(a+b).
double log_beta(double a, double b);

// Γ(α+1) / (Γ(β+1) Γ(α-β+1)), formed in log space.
double gen_binom(double alpha, double beta);

// Γ(1-a) Γ(1+a) = πa / sin(πa) for 0 < a < 1.
double reflection_product(double a);

}  // namespace cmgamma
