#pragma once

#include <stdexcept>
#include <string>

namespace abcgf {

// Base type for every failure this library reports.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Arguments outside the documented domain: bad couplings, radii or angles at a
// coordinate singularity, quadrature specs that make no sense, ...
class DomainError : public Error {
  public:
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

// Evaluation requested at (or inside the exclusion zone of) a bound-state pole
// of Gamma((1+lambda)/2 - nu).  Carries the channel (q,k) and the radial
// quantum number n_r of the offending pole so callers can report it.
class PoleError : public Error {
  public:
    PoleError(const std::string& msg, int q, int k, int n_r)
        : Error(msg), q_(q), k_(k), n_r_(n_r) {}
    int q() const noexcept { return q_; }
    int k() const noexcept { return k_; }
    int n_r() const noexcept { return n_r_; }

  private:
    int q_;
    int k_;
    int n_r_;
};

// Hard numerical failure: NaN/Inf escaping an integrand, or an iteration that
// must converge running out of budget.  Distinct from the soft converged=false
// flag carried by quadrature results, which the caller may tolerate.
class ConvergenceError : public Error {
  public:
    explicit ConvergenceError(const std::string& msg) : Error(msg) {}
};

}  // namespace abcgf
