#pragma once

#include <optional>
#include <string>
#include <vector>

namespace abcgf {

// One verification battery entry: the worst error observed over all cases of
// one identity/property, against its tolerance.
struct IdentityCheck {
    std::string name;
    int cases = 0;
    double max_err = 0.0;
    double tol = 0.0;
    bool pass = false;
};

// Verification batteries.  Each returns one IdentityCheck per identity; a
// tolerance override replaces every per-check default (the CLI's --tol).
//
// identities : half-angle Legendre-Jacobi identity, Jacobi orthogonality,
//              proper-time vs z-representation route equality, the Gaussian
//              Bessel convolution identity, and the Whittaker reduction of the
//              resummed integral.
// routes     : series limit vs closed form, resummed integral vs closed form,
//              and the n = 0 moment consistency.
// spectrum   : pole-scan vs closed pole formula, the sqrt(0.9) ground state,
//              and the flux-free Klein-Gordon-Coulomb reduction.
// gauge      : flux-shift covariance of the angular weight sum and of the
//              assembled Green's function, plus the addition-theorem
//              reduction at zero flux.
// extras     : half-integer Bessel closed forms and the Kummer ODE residual.
std::vector<IdentityCheck> run_identity_suite(std::optional<double> tol_override = {});
std::vector<IdentityCheck> run_route_suite(std::optional<double> tol_override = {});
std::vector<IdentityCheck> run_spectrum_suite(std::optional<double> tol_override = {});
std::vector<IdentityCheck> run_gauge_suite(std::optional<double> tol_override = {});
std::vector<IdentityCheck> run_extra_suite(std::optional<double> tol_override = {});

// Union of all of the above, in a fixed order (what `verify --suite all` runs).
std::vector<IdentityCheck> run_all_suites(std::optional<double> tol_override = {});

}  // namespace abcgf
