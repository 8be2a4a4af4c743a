#include "cmgamma/quad.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "cmgamma/errors.hpp"

namespace cmgamma {
namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

// Node range in the transformed variable u for each piece.
constexpr double kLeftUMax = 4.0;
constexpr double kRightUMin = -4.5;
constexpr double kRightUCap = 6.0;
constexpr double kScanStep = 0.125;
constexpr double kTailRatio = 1e-18;
constexpr int kMinLevel = 3;

struct Node {
    double t;
    double weight;
};

// tanh-sinh on (0, s]: t = s / (1 + exp(-2x)), x = (π/2) sinh u.
Node left_node(double u, double s) {
    const double x = kHalfPi * std::sinh(u);
    const double q = std::exp(-2.0 * std::abs(x));
    const double denom = 1.0 + q;
    const double t = x >= 0.0 ? s / denom : s * q / denom;
    const double weight = s * std::numbers::pi * std::cosh(u) * q / (denom * denom);
    return {t, weight};
}

// exp-sinh on [s, ∞): t = s + scale·exp(x), x = (π/2) sinh u.
Node right_node(double u, double s, double scale) {
    const double x = kHalfPi * std::sinh(u);
    const double ex = scale * std::exp(x);
    return {s + ex, ex * kHalfPi * std::cosh(u)};
}

class Evaluator {
public:
    explicit Evaluator(const std::function<double(double)>& f) : f_(f) {}

    double operator()(double t) {
        ++count_;
        const double v = f_(t);
        if (!std::isfinite(v)) {
            std::ostringstream msg;
            msg << "integrate_half_line: integrand is not finite at t=" << t;
            throw DomainError(msg.str());
        }
        return v;
    }

    long count() const { return count_; }

private:
    const std::function<double(double)>& f_;
    long count_ = 0;
};

void validate(double decay_rate, const QuadOptions& opts) {
    if (!(decay_rate > 0.0) || !std::isfinite(decay_rate)) {
        throw UsageError("integrate_half_line: decay_rate must be finite and > 0");
    }
    if (!(opts.rel_tol > 0.0) || !(opts.abs_tol > 0.0)) {
        throw UsageError("integrate_half_line: tolerances must be > 0");
    }
    if (!(opts.split_point > 0.0) || !std::isfinite(opts.split_point)) {
        throw UsageError("integrate_half_line: split_point must be finite and > 0");
    }
    if (opts.max_levels < 1) {
        throw UsageError("integrate_half_line: max_levels must be >= 1");
    }
}

// Upper end of the exp-sinh node range. Starts from the point where the
// exponential envelope drops below abs_tol/10 and extends until the weighted
// integrand is negligible against its largest sampled magnitude.
double right_upper_limit(Evaluator& eval, double s, double scale, double decay_rate,
                         double abs_tol) {
    const double t_trunc = s + std::log(10.0 / abs_tol) / decay_rate;
    double peak = 0.0;
    for (double u = kRightUMin; u <= kRightUCap; u += kScanStep) {
        const Node node = right_node(u, s, scale);
        const double mag = std::abs(node.weight * eval(node.t));
        peak = std::max(peak, mag);
        if (node.t >= t_trunc && mag <= kTailRatio * peak) {
            return std::min(u + kScanStep, kRightUCap);
        }
    }
    return kRightUCap;
}

}  // namespace

QuadResult integrate_half_line(const std::function<double(double)>& f, double decay_rate,
                               const QuadOptions& opts) {
    validate(decay_rate, opts);
    Evaluator eval(f);

    const double s = opts.split_point;
    const double scale = 1.0 / decay_rate;
    const double right_u_max = right_upper_limit(eval, s, scale, decay_rate, opts.abs_tol);

    double left_sum = 0.0;
    double right_sum = 0.0;
    auto accumulate = [&](double h, bool odd_only) {
        const long k_left = static_cast<long>(std::floor(kLeftUMax / h));
        for (long k = -k_left; k <= k_left; ++k) {
            if (odd_only && k % 2 == 0) continue;
            const Node node = left_node(k * h, s);
            if (node.t <= 0.0 || node.weight == 0.0) continue;
            left_sum += node.weight * eval(node.t);
        }
        const long k_lo = static_cast<long>(std::ceil(kRightUMin / h));
        const long k_hi = static_cast<long>(std::floor(right_u_max / h));
        for (long k = k_lo; k <= k_hi; ++k) {
            if (odd_only && k % 2 == 0) continue;
            const Node node = right_node(k * h, s, scale);
            if (node.weight == 0.0) continue;
            right_sum += node.weight * eval(node.t);
        }
    };

    double h = 1.0;
    accumulate(h, false);
    double previous = h * (left_sum + right_sum);
    double estimate = std::abs(previous);

    for (int level = 1; level <= opts.max_levels; ++level) {
        h *= 0.5;
        accumulate(h, true);
        const double current = h * (left_sum + right_sum);
        estimate = std::abs(current - previous);
        previous = current;
        if (level >= std::min(kMinLevel, opts.max_levels) &&
            estimate <= std::max(opts.rel_tol * std::abs(current), opts.abs_tol)) {
            return {current, estimate, eval.count()};
        }
    }

    std::ostringstream msg;
    msg << "integrate_half_line: no convergence after " << opts.max_levels
        << " levels (value " << previous << ", estimate " << estimate << ")";
    throw ConvergenceError(msg.str(), previous, estimate);
}

}  // namespace cmgamma
