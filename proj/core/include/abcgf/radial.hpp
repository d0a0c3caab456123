#pragma once

#include <vector>

#include "abcgf/params.hpp"
#include "abcgf/quad.hpp"
#include "abcgf/specfun.hpp"

namespace abcgf {

// The z-representation kernel of one channel,
//   h(z) = (1/sinh z) e^{-kappa (rb+ra) coth z} I_lambda(2 kappa sqrt(rb ra)/sinh z),
// returned as ln h (+ sign, always positive).  Computed fully in log space:
// near z -> 0 the Bessel argument blows up like 1/z and the product decays
// like exp(-kappa (sqrt(rb)-sqrt(ra))^2 / z), an essential zero that only the
// combined exponent sees.
SignedLog h_kernel(const ChannelIndex& ch, const PhysicalParams& p,
                   double rb, double ra, double z);

// Free channel kernel g^{(0)} by direct proper-time quadrature,
//   Int_0^inf dS/S e^{-curlyE S} e^{-(rb^2+ra^2)/2S} I_{lambda/2}(rb ra / S).
// Slow decay at rb = ra (integrand ~ S^{-1/2} at the origin); prefer g0_z_rep.
EvalResult g0_proper_time(const ChannelIndex& ch, const PhysicalParams& p,
                          double rb, double ra, const QuadSpec& spec);

// Same kernel through the z-representation, 2 Int_0^inf h(z) dz.  The two
// routes agreeing is one of the library's core identity checks.
EvalResult g0_z_rep(const ChannelIndex& ch, const PhysicalParams& p,
                    double rb, double ra, const QuadSpec& spec);

// n-th perturbation-order radial term by the closed moment formula
//   g^{(n)} = (2^{n+1}/n!) kappa^{-n} Int_0^inf z^n h(z) dz.
// Requires nu < (1+lambda)/2 (below the first bound-state pole).
EvalResult g_n_closed(const ChannelIndex& ch, const PhysicalParams& p, int n,
                      double rb, double ra, const QuadSpec& spec);

// Partial sums of the perturbation series for the channel Green's function,
//   G_{q,|k+beta0|} = (rb ra)^{-1/2} Sum_n (E alpha)^n g^{(n)}.
// terms[n] and partial_sums[n] for n = 0..n_max; remainder_proxy is the
// magnitude of the last term (the caller's convergence diagnostic).
struct SeriesResult {
    std::vector<double> terms;
    std::vector<double> partial_sums;
    double remainder_proxy = 0.0;
};
SeriesResult radial_series(const ChannelIndex& ch, const PhysicalParams& p,
                           double rb, double ra, int n_max, const QuadSpec& spec);

// The whole series resummed into a single integral,
//   G_{q,|k+beta0|} = (2/sqrt(rb ra)) Int_0^inf e^{2 nu z} h(z) dz,
// valid strictly below the first pole, nu < (1+lambda)/2.
EvalResult radial_integral(const ChannelIndex& ch, const PhysicalParams& p,
                           double rb, double ra, const QuadSpec& spec);

// Closed Whittaker form of the channel Green's function,
//   (1/(rb ra kappa)) [Gamma((1+lambda)/2 - nu)/Gamma(1+lambda)]
//     W_{nu,lambda/2}(2 kappa r_>) M_{nu,lambda/2}(2 kappa r_<).
// Arguments are sorted (r_> = max, r_< = min); the kernel is symmetric, the
// integral identity behind the formula just wants them ordered.  Refuses
// evaluation within 1e-8 of (or beyond) a bound-state pole of the Gamma
// prefactor, naming the offending n_r.
double radial_closed(const ChannelIndex& ch, const PhysicalParams& p,
                     double rb, double ra);
SignedLog radial_closed_log(const ChannelIndex& ch, const PhysicalParams& p,
                            double rb, double ra);

}  // namespace abcgf
