#pragma once

#include <functional>

namespace cmgamma {

struct QuadOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    double split_point = 1.0;
    int max_levels = 12;
};

struct QuadResult {
    double value = 0.0;
    double err_estimate = 0.0;
    long evaluations = 0;
};

// Integrates f over (0, ∞).
//
// f must be finite on (0, ∞) with a finite limit at 0+, and bounded by
// C·exp(-decay_rate·t) for large t. The interval is split at
// opts.split_point: (0, split] uses tanh-sinh nodes (t = 0 is never
// evaluated) and [split, ∞) uses an exp-sinh map scaled by 1/decay_rate.
// The right-hand node set is truncated once t passes the point where
// exp(-decay_rate·t) < abs_tol/10 and the weighted integrand has become
// negligible. Step halving continues until the level-to-level change is at
// most max(rel_tol·|value|, abs_tol).
//
// Throws UsageError for decay_rate <= 0 or invalid options, DomainError if f
// returns a non-finite value, and ConvergenceError (carrying the best value)
// when max_levels is exhausted.
QuadResult integrate_half_line(const std::function<double(double)>& f, double decay_rate,
                               const QuadOptions& opts = {});

}  // namespace cmgamma
