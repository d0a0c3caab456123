#include "abcgf/angular.hpp"

#include <cmath>

namespace abcgf {

namespace {

constexpr double kLn4Pi = 2.5310242469692907;

}  // namespace

SignedLog angular_weight_log(const ChannelIndex& ch, const PhysicalParams& p,
                             const SpacePoint& b, const SpacePoint& a) {
    p.validate();
    ch.validate();
    b.validate();
    a.validate();

    const double m = ch.angular_index(p);
    const double q = double(ch.q);

    // Normalisation bracket, as lgamma differences (never raw Gamma ratios:
    // the bracket itself stays O(4^m) while its factors reach Gamma(1e2)).
    const double ln_bracket = std::log(2.0 * (q + m) + 1.0) - kLn4Pi +
                              std::lgamma(1.0 + q) + std::lgamma(1.0 + q + 2.0 * m) -
                              2.0 * std::lgamma(1.0 + q + m);

    // (cos tb/2 sin tb/2 cos ta/2 sin ta/2)^m in log space; every factor is
    // strictly positive for theta inside (0, pi).
    const double ln_half = m * (std::log(std::cos(0.5 * b.theta)) +
                                std::log(std::sin(0.5 * b.theta)) +
                                std::log(std::cos(0.5 * a.theta)) +
                                std::log(std::sin(0.5 * a.theta)));

    const double jb = jacobi_p(ch.q, m, std::cos(b.theta));
    const double ja = jacobi_p(ch.q, m, std::cos(a.theta));
    const double prod = jb * ja;
    if (prod == 0.0) return {-std::numeric_limits<double>::infinity(), 0};

    return {ln_bracket + ln_half + std::log(std::abs(jb)) + std::log(std::abs(ja)),
            prod > 0.0 ? +1 : -1};
}

std::complex<double> angular_weight(const ChannelIndex& ch, const PhysicalParams& p,
                                    const SpacePoint& b, const SpacePoint& a) {
    const SignedLog w = angular_weight_log(ch, p, b, a);
    const double dphi = b.phi - a.phi;
    return w.value() * std::complex<double>(std::cos(ch.k * dphi), std::sin(ch.k * dphi));
}

std::pair<std::complex<double>, std::complex<double>>
gauge_shift_check(const PhysicalParams& p, const SpacePoint& b, const SpacePoint& a,
                  int n, int q_max, int k_max) {
    if (q_max < 0 || k_max < 0)
        throw DomainError("gauge_shift_check: window bounds must be >= 0");
    PhysicalParams shifted = p;
    shifted.beta0 += n;
    shifted.validate();
    p.validate();

    std::complex<double> first{0.0, 0.0}, second{0.0, 0.0};
    for (int q = 0; q <= q_max; ++q) {
        for (int k = -k_max; k <= k_max; ++k) {
            first += angular_weight({q, k}, p, b, a);
        }
        // Same lattice window after the substitution k -> k - n.
        for (int k = -k_max - n; k <= k_max - n; ++k) {
            second += angular_weight({q, k}, shifted, b, a);
        }
    }
    return {first, second};
}

}  // namespace abcgf
