#include "cmgamma/cm_certify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "cmgamma/errors.hpp"

namespace cmgamma {
namespace {

constexpr double kPartialSumSlack = 1e-12;

void check_lists(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) {
        throw UsageError("majorization check: lists must have equal length");
    }
    for (double v : a) {
        if (!std::isfinite(v) || v < 0.0) throw UsageError("majorization check: entries must be >= 0");
    }
    for (double v : b) {
        if (!std::isfinite(v) || v < 0.0) throw UsageError("majorization check: entries must be >= 0");
    }
}

template <class Compare>
std::optional<PartialSumViolation> partial_sum_violation(std::vector<double> a,
                                                         std::vector<double> b,
                                                         Compare order) {
    std::sort(a.begin(), a.end(), order);
    std::sort(b.begin(), b.end(), order);
    double sum_a = 0.0;
    double sum_b = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        sum_a += a[k];
        sum_b += b[k];
        const double slack = kPartialSumSlack * std::max({1.0, sum_a, sum_b});
        if (sum_b > sum_a + slack) return PartialSumViolation{k + 1, sum_a, sum_b};
    }
    return std::nullopt;
}

void validate_grid(const RatioFamily& fam, const CertConfig& cfg) {
    if (cfg.z_grid.empty()) throw UsageError("certify: z grid is empty");
    if (!std::is_sorted(cfg.z_grid.begin(), cfg.z_grid.end())) {
        throw UsageError("certify: z grid must be sorted");
    }
    if (cfg.n_max < 1) throw UsageError("certify: n_max must be >= 1");
    if (!(cfg.tol > 0.0)) throw UsageError("certify: tol must be > 0");
    for (double z : cfg.z_grid) {
        if (!std::isfinite(z) || !(z > fam.lower_bound())) {
            std::ostringstream msg;
            msg << "certify: grid point z=" << z << " is not above the domain bound "
                << fam.lower_bound() << " of " << fam.describe();
            throw UsageError(msg.str());
        }
    }
}

double binomial(int n, int k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
    return c;
}

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Certified: return "certified";
        case Verdict::Violated: return "violated";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

std::optional<PartialSumViolation> find_submajorization_violation(const std::vector<double>& a,
                                                                  const std::vector<double>& b) {
    check_lists(a, b);
    return partial_sum_violation(a, b, std::greater<>{});
}

bool check_weak_submajorization(const std::vector<double>& a, const std::vector<double>& b) {
    return !find_submajorization_violation(a, b).has_value();
}

bool check_increasing_partial_sums(const std::vector<double>& a, const std::vector<double>& b) {
    check_lists(a, b);
    return !partial_sum_violation(a, b, std::less<>{}).has_value();
}

void require_majorization(const RatioFamily& fam) {
    const auto* maj = std::get_if<Majorized>(&fam.params());
    if (maj == nullptr) return;
    if (const auto v = find_submajorization_violation(maj->a, maj->b)) {
        std::ostringstream msg;
        msg << "majorization precondition failed for " << fam.describe() << ": top-" << v->k
            << " partial sums a=" << v->sum_a << " < b=" << v->sum_b
            << " (decreasing order); the kernel sum e^{a_i t} - sum e^{b_i t} turns negative";
        throw UsageError(msg.str());
    }
}

KernelScan kernel_nonneg_scan(const RatioFamily& fam, int t_points, double t_min, double t_max) {
    if (t_points < 2 || !(t_min > 0.0) || !(t_max > t_min)) {
        throw UsageError("kernel_nonneg_scan: need >= 2 points on 0 < t_min < t_max");
    }
    KernelScan scan{std::numeric_limits<double>::infinity(), t_min,
                    std::numeric_limits<double>::infinity()};
    const double log_lo = std::log(t_min);
    const double step = (std::log(t_max) - log_lo) / (t_points - 1);
    for (int i = 0; i < t_points; ++i) {
        const double t = (i == t_points - 1) ? t_max : std::exp(log_lo + step * i);
        const ScaledKernel k = scaled_kernel(fam, t);
        const double value = k.value == 0.0 ? 0.0 : k.value * std::exp(k.log_scale);
        if (value < scan.min_value) {
            scan.min_value = value;
            scan.argmin_t = t;
        }
        const double relative = k.magnitude > 0.0 ? k.value / k.magnitude : 0.0;
        scan.min_relative = std::min(scan.min_relative, relative);
    }
    return scan;
}

CertReport certify_log_cm(const RatioFamily& fam, const CertConfig& cfg) {
    validate_grid(fam, cfg);
    require_majorization(fam);

    CertReport report{"log-derivative", fam, cfg.tol, cfg.fd_step, {}, {}, std::nullopt,
                      Verdict::Certified, std::nullopt, {}};
    report.kernel_scan = kernel_nonneg_scan(fam, cfg.t_points, cfg.t_min, cfg.t_max);
    const int max_order = std::max(kDefaultMaxOrder, cfg.n_max);

    bool violated = false;
    bool inconclusive = false;
    for (double z : cfg.z_grid) {
        for (int n = 1; n <= cfg.n_max; ++n) {
            const LogDerivResult poly = log_deriv_polygamma(fam, z, n, max_order);
            LogDerivMargin m{z, n, 0.0, 0.0, poly.signed_value, poly.err_estimate, true, {}};
            try {
                const LogDerivResult quad = log_deriv_quadrature(fam, z, n, cfg.quad, max_order);
                m.quadrature = quad.signed_value;
                m.quadrature_err = quad.err_estimate;
            } catch (const ConvergenceError& e) {
                m.quadrature = e.best_value();
                m.quadrature_err = e.err_estimate();
                m.note = e.what();
                m.paths_agree = false;
            }
            const double gap = std::abs(m.quadrature - m.polygamma);
            const double allowed = std::max(cfg.agree_rel * std::abs(m.polygamma), cfg.agree_abs);
            if (gap > allowed) m.paths_agree = false;

            const double value = std::min(m.quadrature, m.polygamma);
            if (!report.worst || value < report.worst->value) report.worst = Offender{z, n, value};

            if (!m.paths_agree) {
                inconclusive = true;
                std::ostringstream msg;
                msg << "paths disagree at z=" << z << ", n=" << n << ": quadrature=" << m.quadrature
                    << " (err " << m.quadrature_err << "), polygamma=" << m.polygamma
                    << ", gap " << gap << " > " << allowed;
                if (gap > 100.0 * (m.quadrature_err + m.polygamma_err)) {
                    msg << " and > 100x combined error estimates";
                }
                report.diagnostics.push_back(msg.str());
            } else if (m.quadrature < -cfg.tol && m.polygamma < -cfg.tol) {
                violated = true;
            }
            report.log_margins.push_back(std::move(m));
        }
    }

    if (violated) {
        report.verdict = Verdict::Violated;
    } else if (inconclusive) {
        report.verdict = Verdict::Inconclusive;
    }
    return report;
}

CertReport certify_cm_finite_diff(const RatioFamily& fam, const CertConfig& cfg) {
    validate_grid(fam, cfg);
    if (!(cfg.fd_step > 0.0) || !std::isfinite(cfg.fd_step)) {
        throw UsageError("certify: finite-difference step must be > 0");
    }

    CertReport report{"finite-difference", fam, cfg.tol, cfg.fd_step, {}, {}, std::nullopt,
                      Verdict::Certified, std::nullopt, {}};
    const double h = cfg.fd_step;
    std::vector<double> logs(cfg.n_max + 1);
    for (double z : cfg.z_grid) {
        for (int k = 0; k <= cfg.n_max; ++k) logs[k] = log_f(fam, z + k * h);
        for (int n = 1; n <= cfg.n_max; ++n) {
            const double peak = *std::max_element(logs.begin(), logs.begin() + n + 1);
            // (-1)^n Δ^n f(z) = Σ_k (-1)^k C(n,k) f(z + kh), evaluated relative to max |f|.
            double relative = 0.0;
            for (int k = 0; k <= n; ++k) {
                const double sign = (k % 2 == 0) ? 1.0 : -1.0;
                relative += sign * binomial(n, k) * std::exp(logs[k] - peak);
            }
            const double scale = std::exp(peak);
            report.fd_margins.push_back({z, n, relative * scale, scale, relative});
            if (!report.worst || relative < report.worst->value) {
                report.worst = Offender{z, n, relative};
            }
            if (relative < -cfg.tol) {
                report.verdict = Verdict::Violated;
                std::ostringstream msg;
                msg << "finite difference of order " << n << " at z=" << z << " is negative: "
                    << relative << " (relative to max |f|)";
                report.diagnostics.push_back(msg.str());
            }
        }
    }
    return report;
}

}  // namespace cmgamma
