#pragma once

#include <cmath>
#include <functional>
#include <limits>

#include "abcgf/errors.hpp"

namespace abcgf {

// Variable transform applied before the trapezoidal rule.  Both decay
// doubly-exponentially in the transformed variable, which is what makes the
// refinement ladder converge geometrically on smooth integrands.
enum class Transform {
    exp_decay_semiinfinite,  // x = exp(t - exp(-t)) maps R -> (0, inf)
    finite_interval,         // x = mid + half*tanh((pi/2) sinh t) maps R -> (a, b)
};

struct QuadSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_refinements = 30;
    Transform transform = Transform::exp_decay_semiinfinite;

    void validate() const;
};

struct EvalResult {
    double value = 0.0;
    double err_estimate = 0.0;  // |last level - previous level|
    int refinements_used = 0;
    bool converged = false;
};

// Positive-integrand result carried in log space (the value may be far outside
// double range; err_rel is relative so it survives the representation).
struct LogEvalResult {
    double log_value = -std::numeric_limits<double>::infinity();
    double err_rel = 0.0;
    int refinements_used = 0;
    bool converged = false;

    double value() const { return std::exp(log_value); }
};

using Integrand = std::function<double(double)>;
// Log-space integrand: receives (x, ln x) and returns ln f(x) for f > 0;
// -inf encodes an exact zero.  ln x is supplied by the engine because x itself
// underflows long before the transformed tail stops mattering.
using LogIntegrand = std::function<double(double, double)>;

// Integral of f over (0, inf).  f in plain (already exponentiated) form, may
// change sign.  NaN/Inf from the integrand is a hard error.
EvalResult integrate_semiinf(const Integrand& f, const QuadSpec& spec);

// Integral of x^n h(x) over (0, inf) -- the moment form the perturbation
// series consumes.
EvalResult integrate_moment(const Integrand& h, int n, const QuadSpec& spec);

// Integral of f over [a, b]; integrable endpoint singularities are tamed by
// the tanh-sinh substitution.
EvalResult integrate_finite(const Integrand& f, double a, double b,
                            const QuadSpec& spec);

// Log-space counterparts for strictly positive integrands: the engine
// accumulates exp(ln f + ln w - running_max) so that no intermediate quantity
// overflows, then restores the offset in the result.
LogEvalResult integrate_semiinf_log(const LogIntegrand& lf, const QuadSpec& spec);
LogEvalResult integrate_moment_log(const LogIntegrand& lh, int n, const QuadSpec& spec);

}  // namespace abcgf
