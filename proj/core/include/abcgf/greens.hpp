#pragma once

#include <complex>
#include <vector>

#include "abcgf/angular.hpp"
#include "abcgf/params.hpp"
#include "abcgf/radial.hpp"

namespace abcgf {

// Truncation window for the double (q,k) sum.  The k-window is centred on
// k_shift: k runs over [k_shift - k_max, k_shift + k_max].  A nonzero shift
// is what "matched windows" means for the gauge covariance property
// G(beta0 + n) = e^{-i n dphi} G(beta0): the shifted evaluation must use
// k_shift = -n so the reindexing k -> k - n maps one window onto the other.
struct TruncationSpec {
    int q_max = 20;
    int k_max = 25;
    double tail_tol = 1e-10;  // relative size at which a whole shell is negligible
    bool adaptive = false;    // grow shells until tail_tol, capped by q_max/k_max
    int k_shift = 0;

    void validate() const;
};

struct GreensResult {
    std::complex<double> value{0.0, 0.0};
    // Sum of term magnitudes in the last accumulated shell: a conservative
    // tail proxy that phase cancellation between terms cannot hide.
    double err_estimate = 0.0;
    bool converged = false;  // last shell below tail_tol relative to the sum
    int shells_used = 0;
    int terms_used = 0;
};

// One bound state: pole of Gamma((1+lambda)/2 - nu) at argument -n_r, which
// solves to energy = N/sqrt(N^2 + alpha^2) with N = n_r + (1+lambda)/2.
struct BoundState {
    int n_r = 0;
    int q = 0;
    int k = 0;
    double energy = 0.0;
    double lambda = 0.0;
};

// Result of scanning 1/Gamma over an energy grid: the detected poles plus a
// warning flag raised when consecutive detected n_r indices skip (grid too
// coarse to see every pole in the range).
struct PoleScanResult {
    std::vector<BoundState> poles;
    bool grid_too_coarse = false;
};

// Assembled Green's function: truncated double sum over channels of
// radial_closed x angular_weight, times the overall constant (see
// assembly_prefactor).  Shells are accumulated in deterministic sorted order
// (s = max(q, |k - k_shift|) ascending; within a shell q ascending, then k
// ascending); err_estimate is the magnitude contributed by the last shell.
// Any channel within the window sitting at/beyond a bound-state pole raises
// PoleError naming (q, k, n_r).
GreensResult greens_function(const SpacePoint& b, const SpacePoint& a,
                             const PhysicalParams& p, const TruncationSpec& trunc);

// The overall constant of the assembled solution,
//   (i hbar / 2mc) * (mc / 4 pi r_b r_a sqrt(m^2c^4 - E^2))  =  i/(8 pi r_b r_a kappa)
// in natural units.  radial_closed already carries 1/(r_b r_a kappa) and the
// angular weight carries 1/(4 pi), so the factor applied at assembly is the
// remaining i/2.  Kept in one place so any unit-convention dispute stays local.
std::complex<double> assembly_prefactor();

// Closed-form spectrum of one channel: energies for n_r = 0..n_r_max,
// strictly increasing toward 1.  Requires 0 < alpha < 1/2 (no attraction, no
// bound states).
std::vector<BoundState> bound_energies(const ChannelIndex& ch, double alpha,
                                       double beta0, int n_r_max);

// Numerical spectrum of one channel: roots of E -> 1/Gamma((1+lambda)/2 - nu(E))
// on a uniform grid over [e_min, e_max], located by sign-change bisection to
// |dE| < 1e-12.  Must coincide with bound_energies -- that agreement is a core
// acceptance check.
PoleScanResult pole_scan(const ChannelIndex& ch, double alpha, double beta0,
                         double e_min, double e_max, int n_points);

}  // namespace abcgf
