#include "cmgamma/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "cmgamma/errors.hpp"

namespace cmgamma {
namespace {

// zeta(k) - 1 for k = 2, 3, ..., 41.
constexpr std::array<double, 40> kZetaMinusOne = {
    0.644934066848226436472,       0.2020569031595942854,
    0.082323233711138191516,       0.0369277551433699263314,
    0.0173430619844491397145,      0.0083492773819228268398,
    0.00407735619794433937869,     0.00200839282608221441785,
    0.000994575127818085337146,    0.000494188604119464558702,
    0.000246086553308048298638,    0.000122713347578489146752,
    6.12481350587048292585e-05,    3.05882363070204935517e-05,
    1.52822594086518717326e-05,    7.6371976378997622736e-06,
    3.81729326499983985646e-06,    1.90821271655393892566e-06,
    9.53962033872796113152e-07,    4.76932986787806463117e-07,
    2.38450502727732990004e-07,    1.19219925965311073068e-07,
    5.96081890512594796124e-08,    2.98035035146522801861e-08,
    1.49015548283650412347e-08,    7.45071178983542949198e-09,
    3.72533402478845705482e-09,    1.8626597235130490064e-09,
    9.31327432419668182872e-10,    4.65662906503378407299e-10,
    2.328311833676505492e-10,      1.16415501727005197759e-10,
    5.82077208790270088924e-11,    2.91038504449709968693e-11,
    1.45519218910419842359e-11,    7.27595983505748101452e-12,
    3.63797954737865119024e-12,    1.81898965030706594758e-12,
    9.09494784026388928253e-13,    4.5474737830421540268e-13,
};

// Bernoulli numbers B_2, B_4, ..., B_24.
constexpr std::array<double, 12> kBernoulliEven = {
    1.0 / 6.0,         -1.0 / 30.0,         1.0 / 42.0,
    -1.0 / 30.0,       5.0 / 66.0,          -691.0 / 2730.0,
    7.0 / 6.0,         -3617.0 / 510.0,     43867.0 / 798.0,
    -174611.0 / 330.0, 854513.0 / 138.0,    -236364091.0 / 2730.0,
};

// Positive zero of ψ, split into high and low parts.
constexpr double kDigammaRootHi = 1.4616321449683622;
constexpr double kDigammaRootLo = 9.549995429965697e-17;

// ψ^{(k)}(root) / k! for k = 1..13.
constexpr std::array<double, 13> kDigammaRootTaylor = {
    0.967672245447621170427,   -0.442763168983592106093,
    0.258499760955651010624,   -0.163942705442406527504,
    0.107824050691262365757,   -0.0721995612564547109261,
    0.0488042881641431072251,  -0.0331611264748473592923,
    0.0225976482322181046596,  -0.0154247659049489591388,
    0.0105387916166121753881,  -0.00720453438635686824097,
    0.00492678139572985344635,
};

void require_positive(double x, const char* fn) {
    if (!std::isfinite(x) || x <= 0.0) {
        throw DomainError(std::string(fn) + ": argument must be finite and > 0, got " +
                          std::to_string(x));
    }
}

// sum_{k>=2} (-1)^k (zeta(k)-1) eps^k / k, for |eps| <= 0.5.
double log_gamma_series_tail(double eps) {
    double acc = 0.0;
    for (int i = static_cast<int>(kZetaMinusOne.size()) - 1; i >= 0; --i) {
        const int k = i + 2;
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        acc = acc * eps + sign * kZetaMinusOne[i] / k;
    }
    return acc * eps * eps;
}

// ln Γ(2 + eps) for |eps| <= 0.5; exact zero at eps == 0.
double log_gamma_near_two(double eps) {
    return eps * (1.0 - kEulerGamma) + log_gamma_series_tail(eps);
}

// ln Γ(1 + eps) for |eps| <= 0.5; exact zero at eps == 0.
double log_gamma_near_one(double eps) {
    return log_gamma_near_two(eps) - std::log1p(eps);
}

double stirling_log_gamma(double x) {
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = 0.0;
    double p = inv;
    for (int k = 1; k <= 8; ++k) {
        series += kBernoulliEven[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * p;
        p *= inv2;
    }
    constexpr double half_log_two_pi = 0.91893853320467274178032973640561764;
    return (x - 0.5) * std::log(x) - x + half_log_two_pi + series;
}

// ψ(1 + eps) for |eps| <= 0.5.
double digamma_near_one(double eps) {
    double acc = 0.0;
    for (int i = static_cast<int>(kZetaMinusOne.size()) - 1; i >= 0; --i) {
        const int k = i + 2;
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        acc = acc * eps + sign * kZetaMinusOne[i];
    }
    return -kEulerGamma + eps / (1.0 + eps) + acc * eps;
}

double digamma_near_root(double x) {
    const double d = (x - kDigammaRootHi) - kDigammaRootLo;
    double acc = 0.0;
    for (int i = static_cast<int>(kDigammaRootTaylor.size()) - 1; i >= 0; --i) {
        acc = acc * d + kDigammaRootTaylor[i];
    }
    return acc * d;
}

double digamma_asymptotic(double x) {
    const double inv2 = 1.0 / (x * x);
    double series = 0.0;
    double p = inv2;
    for (int k = 1; k <= 10; ++k) {
        series += kBernoulliEven[k - 1] / (2.0 * k) * p;
        p *= inv2;
    }
    return std::log(x) - 0.5 / x - series;
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

double log_gamma(double x) {
    require_positive(x, "log_gamma");
    if (x < 0.5) return log_gamma_near_one(x) - std::log(x);
    if (x < 1.5) return log_gamma_near_one(x - 1.0);
    if (x < 2.5) return log_gamma_near_two(x - 2.0);
    if (x < 13.0) {
        // Γ(x) = (x-1)(x-2)...(x-k) Γ(x-k), with x-k in [1.5, 2.5).
        double product = 1.0;
        double y = x;
        while (y >= 2.5) {
            y -= 1.0;
            product *= y;
        }
        return std::log(product) + log_gamma_near_two(y - 2.0);
    }
    return stirling_log_gamma(x);
}

double log_gamma_ratio(double x, double y) {
    require_positive(x, "log_gamma_ratio");
    require_positive(y, "log_gamma_ratio");
    if (x == y) return 0.0;
    if (x < 13.0 || y < 13.0) return log_gamma(x) - log_gamma(y);
    // Stirling difference: (y-1/2) ln(x/y) + d ln x - d + Σ c_k (x^{1-2k} - y^{1-2k}).
    const double d = x - y;
    double series = 0.0;
    double px = 1.0 / x;
    double py = 1.0 / y;
    const double ix2 = px * px;
    const double iy2 = py * py;
    for (int k = 1; k <= 8; ++k) {
        series += kBernoulliEven[k - 1] / (2.0 * k * (2.0 * k - 1.0)) * (px - py);
        px *= ix2;
        py *= iy2;
    }
    return (y - 0.5) * std::log1p(d / y) + d * (std::log(x) - 1.0) + series;
}

double digamma(double x) {
    require_positive(x, "digamma");
    if (x < 0.5) return digamma(x + 1.0) - 1.0 / x;
    if (std::abs(x - kDigammaRootHi) < 0.04) return digamma_near_root(x);
    if (x < 1.5) return digamma_near_one(x - 1.0);
    if (x < 10.0) {
        double shift = 0.0;
        double y = x;
        while (y >= 1.5) {
            y -= 1.0;
            shift += 1.0 / y;
        }
        const double base =
            std::abs(y - kDigammaRootHi) < 0.04 ? digamma_near_root(y) : digamma_near_one(y - 1.0);
        return base + shift;
    }
    return digamma_asymptotic(x);
}

double polygamma(int n, double x) {
    if (n < 1) {
        throw UsageError("polygamma: order must be >= 1, got " + std::to_string(n));
    }
    if (n > 160) {
        throw UsageError("polygamma: order above 160 is not supported");
    }
    require_positive(x, "polygamma");

    // ψ^{(n)}(x) = (-1)^{n+1} n! sum_{j>=0} (x+j)^{-(n+1)}; the tail past a
    // threshold is replaced by its asymptotic expansion.
    const double threshold = std::max(20.0, 2.0 * n + 10.0);
    double direct = 0.0;
    double y = x;
    while (y < threshold) {
        direct += std::pow(y, -(n + 1));
        y += 1.0;
    }

    const double inv = 1.0 / y;
    const double inv2 = inv * inv;
    // 1 + n/(2y) + sum_k B_{2k}/(2k)! * (2k+n-1)!/(n-1)! * y^{-2k}
    double bracket = 1.0 + 0.5 * n * inv;
    double rising = 1.0;       // (2k+n-1)!/(n-1)!
    double fact2k = 1.0;       // (2k)!
    double p = 1.0;
    for (int k = 1; k <= static_cast<int>(kBernoulliEven.size()); ++k) {
        rising *= static_cast<double>(2 * k + n - 2) * (2 * k + n - 1);
        fact2k *= static_cast<double>(2 * k - 1) * (2 * k);
        p *= inv2;
        const double term = kBernoulliEven[k - 1] / fact2k * rising * p;
        bracket += term;
        if (std::abs(term) < 1e-18 * std::abs(bracket)) break;
    }
    const double asym = factorial(n - 1) * std::pow(y, -n) * bracket;
    const double magnitude = factorial(n) * direct + asym;
    return (n % 2 == 1) ? magnitude : -magnitude;
}

double polygamma_or_digamma(int k, double x) {
    return k == 0 ? digamma(x) : polygamma(k, x);
}

double log_beta(double a, double b) {
    require_positive(a, "log_beta");
    require_positive(b, "log_beta");
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b);
}

double gen_binom(double alpha, double beta) {
    const double top = alpha + 1.0;
    const double low = beta + 1.0;
    const double rest = alpha - beta + 1.0;
    if (!(top > 0.0) || !(low > 0.0) || !(rest > 0.0) || !std::isfinite(top) ||
        !std::isfinite(low) || !std::isfinite(rest)) {
        throw DomainError("gen_binom: gamma arguments alpha+1, beta+1, alpha-beta+1 must be > 0");
    }
    return std::exp(log_gamma(top) - log_gamma(low) - log_gamma(rest));
}

double reflection_product(double a) {
    if (!(a > 0.0 && a < 1.0)) {
        throw DomainError("reflection_product: a must lie in (0, 1), got " + std::to_string(a));
    }
    // sin(πa) = sin(π(1-a)); the reduced argument keeps relative accuracy near 1.
    const double reduced = a > 0.5 ? 1.0 - a : a;
    return std::numbers::pi * a / std::sin(std::numbers::pi * reduced);
}

}  // namespace cmgamma
