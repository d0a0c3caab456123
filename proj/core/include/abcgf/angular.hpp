#pragma once

#include <complex>
#include <utility>

#include "abcgf/params.hpp"
#include "abcgf/specfun.hpp"

namespace abcgf {

// Full complex angular factor of channel (q,k) for endpoints b, a:
//   [(2(q+m)+1)/4pi * Gamma(1+q) Gamma(1+q+2m) / Gamma(1+q+m)^2]
//     * e^{i k (phi_b - phi_a)}
//     * (cos tb/2 cos ta/2 sin tb/2 sin ta/2)^m
//     * P_q^{(m,m)}(cos tb) P_q^{(m,m)}(cos ta),     m = |k + beta0|.
// The Gamma bracket and the half-angle powers are combined in log space so
// large |k| windows survive (the bracket grows like 4^m while the half-angle
// factor shrinks like (sin tb sin ta / 4)^m).
std::complex<double> angular_weight(const ChannelIndex& ch, const PhysicalParams& p,
                                    const SpacePoint& b, const SpacePoint& a);

// The same weight with the azimuthal phase stripped off: ln-magnitude and
// sign of the k-independent-phase part.  The assembly multiplies this with
// the radial log term and applies e^{i k (phi_b - phi_a)} once.
SignedLog angular_weight_log(const ChannelIndex& ch, const PhysicalParams& p,
                             const SpacePoint& b, const SpacePoint& a);

// Gauge-shift check: sums the angular weight over the window q <= q_max,
// |k| <= k_max with flux beta0, and over the reindexed window k in
// [-k_max - n, k_max - n] with flux beta0 + n.  Because k -> k - n is a
// bijection of the full lattice, the two sums satisfy
//   second = first * e^{-i n (phi_b - phi_a)}
// exactly (to rounding) when the windows are matched this way.
std::pair<std::complex<double>, std::complex<double>>
gauge_shift_check(const PhysicalParams& p, const SpacePoint& b, const SpacePoint& a,
                  int n, int q_max = 20, int k_max = 25);

}  // namespace abcgf
