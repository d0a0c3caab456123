#pragma once

#include <cmath>

#include "abcgf/errors.hpp"

namespace abcgf {

// Couplings and energy of the Aharonov-Bohm-Coulomb problem, in natural units
// hbar = c = m = 1: energies in units of mc^2, lengths in reduced Compton
// wavelengths.
//
//   alpha  : Coulomb coupling e^2/(hbar c), subcritical range [0, 1/2).
//            At alpha >= 1/2 the s-channel order lambda turns imaginary
//            (supercritical collapse) and is rejected.
//   beta0  : dimensionless flux parameter -2eg/(hbar c) of the flux tube;
//            enters only through the shifted azimuthal index |k + beta0|.
//   energy : E in (0,1), the below-threshold (bound-state) regime.
struct PhysicalParams {
    double alpha = 0.0;
    double beta0 = 0.0;
    double energy = 0.5;

    void validate() const;

    // kappa = sqrt(1 - E^2), the inverse decay length of the radial kernels.
    double kappa() const { return std::sqrt((1.0 - energy) * (1.0 + energy)); }

    // curly-E = (1 - E^2)/2 = kappa^2/2, the proper-time damping rate.
    double curly_e() const { return 0.5 * (1.0 - energy) * (1.0 + energy); }

    // nu = E*alpha/kappa, the Coulomb strength (first Whittaker index).
    double nu() const { return energy * alpha / kappa(); }

    // Magnetic flux Omega = 4*pi*g of the tube.  From beta0 = -2 e g and
    // e = sqrt(alpha) in natural units: Omega = -2*pi*beta0/sqrt(alpha).
    // Requires alpha > 0 (no charge, no flux/coupling relation).
    double flux() const;
};

// One angular/winding channel: principal index q >= 0 and winding number k
// (number of revolutions of the path around the flux tube).
struct ChannelIndex {
    int q = 0;
    int k = 0;

    void validate() const;

    // |k + beta0|, the flux-shifted azimuthal index of the channel.
    double angular_index(const PhysicalParams& p) const;

    // lambda = sqrt([2(q + |k+beta0|) + 1]^2 - 4 alpha^2): the Bessel order of
    // the radial kernel and twice the second Whittaker index.
    double lambda(const PhysicalParams& p) const;
};

// lambda as a free function of the couplings (the spectrum code has no
// meaningful energy to put into a PhysicalParams).
double channel_lambda(int q, int k, double alpha, double beta0);

// Spherical endpoint (r, theta, phi).  theta in {0, pi} is excluded: the
// half-angle factors (cos theta/2 sin theta/2)^|k+beta0| of the angular
// weight are singular on the flux axis.  phi is canonically in [0, 2*pi) but
// any finite value is accepted; every use is 2*pi-periodic.
struct SpacePoint {
    double r = 1.0;
    double theta = 1.5707963267948966;
    double phi = 0.0;

    void validate() const;
};

}  // namespace abcgf
