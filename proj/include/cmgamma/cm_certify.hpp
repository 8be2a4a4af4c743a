#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cmgamma/kernels.hpp"
#include "cmgamma/quad.hpp"

namespace cmgamma {

struct CertConfig {
    std::vector<double> z_grid;
    int n_max = 8;
    double tol = 1e-9;
    double fd_step = 1e-2;
    int t_points = 200;
    double t_min = 1e-6;
    double t_max = 50.0;
    // Dual-path agreement: |quadrature - polygamma| <= max(agree_rel·|polygamma|, agree_abs).
    double agree_rel = 1e-8;
    double agree_abs = 1e-9;
    QuadOptions quad{};
};

enum class Verdict { Certified, Violated, Inconclusive };

std::string to_string(Verdict v);

struct LogDerivMargin {
    double z;
    int n;
    double quadrature;
    double quadrature_err;
    double polygamma;
    double polygamma_err;
    bool paths_agree;
    std::string note;  // set when the quadrature did not converge
};

struct FiniteDiffMargin {
    double z;
    int n;
    double difference;  // (-1)^n Δ_h^n f(z)
    double scale;       // max |f| over the stencil
    double margin;      // difference / scale
};

struct KernelScan {
    double min_value;
    double argmin_t;
    double min_relative;  // min over the grid of K(t) / (sum of |summands|)
};

struct Offender {
    double z;
    int n;
    double value;
};

struct CertReport {
    std::string method;  // "log-derivative" or "finite-difference"
    RatioFamily family;
    double tol = 0.0;
    double fd_step = 0.0;
    std::vector<LogDerivMargin> log_margins;
    std::vector<FiniteDiffMargin> fd_margins;
    std::optional<KernelScan> kernel_scan;
    Verdict verdict = Verdict::Inconclusive;
    std::optional<Offender> worst;
    std::vector<std::string> diagnostics;
};

// First k (1-based, decreasing order) where Σ_{i<=k} b_[i] exceeds Σ_{i<=k} a_[i].
struct PartialSumViolation {
    std::size_t k;
    double sum_a;
    double sum_b;
};

// Weak submajorization b ≺_w a with decreasing-order partial sums. Partial
// sums are compared with a relative slack of 1e-12 so that rearrangements
// of equal totals are not rejected by rounding. UsageError on length mismatch
// or negative entries.
bool check_weak_submajorization(const std::vector<double>& a, const std::vector<double>& b);
std::optional<PartialSumViolation> find_submajorization_violation(const std::vector<double>& a,
                                                                  const std::vector<double>& b);

// The same partial-sum test with both lists in increasing order. Kept for
// diagnostics: it does not imply Σ e^{a_i t} >= Σ e^{b_i t}.
bool check_increasing_partial_sums(const std::vector<double>& a, const std::vector<double>& b);

KernelScan kernel_nonneg_scan(const RatioFamily& fam, int t_points, double t_min = 1e-6,
                              double t_max = 50.0);

CertReport certify_log_cm(const RatioFamily& fam, const CertConfig& cfg);
CertReport certify_cm_finite_diff(const RatioFamily& fam, const CertConfig& cfg);

// Throws UsageError naming the failing partial sum when a Majorized family
// does not satisfy check_weak_submajorization; no-op for other families.
void require_majorization(const RatioFamily& fam);

}  // namespace cmgamma
