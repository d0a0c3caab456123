#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "doctest.h"

#include "abcgf/quad.hpp"
#include "abcgf/specfun.hpp"
#include "checks.hpp"

using abcgf::ConvergenceError;
using abcgf::DomainError;
using abcgf::EvalResult;
using abcgf::LogEvalResult;
using abcgf::QuadSpec;
using abcgf::Transform;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

QuadSpec semiinf_spec(double rel = 1e-10) {
    QuadSpec s;
    s.transform = Transform::exp_decay_semiinfinite;
    s.rel_tol = rel;
    return s;
}

QuadSpec finite_spec(double rel = 1e-10) {
    QuadSpec s;
    s.transform = Transform::finite_interval;
    s.rel_tol = rel;
    return s;
}

// Closed-form battery shared by the accuracy and error-estimate invariants.
struct SemiCase {
    std::string name;
    abcgf::Integrand f;
    double exact;
};

std::vector<SemiCase> semiinf_battery() {
    return {
        {"exp(-x)", [](double x) { return std::exp(-x); }, 1.0},
        {"x exp(-x^2)", [](double x) { return x * std::exp(-x * x); }, 0.5},
        {"exp(-x)/sqrt(x)", [](double x) { return std::exp(-x) / std::sqrt(x); },
         std::sqrt(kPi)},
    };
}

double jacobi_norm(int n, double a) {
    // Int_{-1}^{1} (1-x)^a (1+x)^a P_n^{(a,a)}(x)^2 dx
    //   = 2^{2a+1} Gamma(n+a+1)^2 / (n! (2n+2a+1) Gamma(n+2a+1)).
    return std::exp((2.0 * a + 1.0) * std::log(2.0) + 2.0 * std::lgamma(n + a + 1.0) -
                    std::lgamma(n + 1.0) - std::log(2.0 * n + 2.0 * a + 1.0) -
                    std::lgamma(n + 2.0 * a + 1.0));
}

}  // namespace

TEST_SUITE("quad") {

TEST_CASE("integrate_semiinf: closed-form battery with error-estimate invariants") {
    for (const SemiCase& c : semiinf_battery()) {
        const EvalResult r = abcgf::integrate_semiinf(c.f, semiinf_spec());
        CAPTURE(c.name);
        CHECK(r.converged);
        CHECK(rel_diff(r.value, c.exact) < 1e-10);
        // Contract: true error bounded by 10x the reported estimate, and by
        // rel_tol when the run converged.
        CHECK(std::fabs(r.value - c.exact) <= 10.0 * r.err_estimate + 1e-15 * std::fabs(c.exact));
        CHECK(std::fabs(r.value - c.exact) <= 1e-10 * std::fabs(c.exact));
        CHECK(r.err_estimate <= std::max(1e-10 * std::fabs(r.value), 1e-14));
        CHECK(r.err_estimate >= 0.0);
    }
}

TEST_CASE("integrate_semiinf: halving rel_tol never increases true error") {
    for (const SemiCase& c : semiinf_battery()) {
        double tol = 1e-4;
        double prev_err = std::numeric_limits<double>::infinity();
        for (int i = 0; i < 28; ++i) {
            const EvalResult r = abcgf::integrate_semiinf(c.f, semiinf_spec(tol));
            const double err = std::fabs(r.value - c.exact);
            CAPTURE(c.name);
            CAPTURE(tol);
            CHECK(err <= prev_err + 2e-16 * std::fabs(c.exact));
            prev_err = err;
            tol /= 2.0;
        }
    }
}

TEST_CASE("integrate_moment: z^n-weighted exponentials") {
    const abcgf::Integrand decay = [](double z) { return std::exp(-z); };
    const EvalResult m3 = abcgf::integrate_moment(decay, 3, semiinf_spec());
    CHECK(m3.converged);
    CHECK(rel_diff(m3.value, 6.0) < 1e-10);  // Gamma(4)

    const EvalResult m0 = abcgf::integrate_moment(decay, 0, semiinf_spec());
    CHECK(m0.converged);
    CHECK(rel_diff(m0.value, 1.0) < 1e-10);

    CHECK_THROWS_AS(abcgf::integrate_moment(decay, -1, semiinf_spec()), DomainError);
}

TEST_CASE("integrate_finite: unit box, sine arch, Jacobi norm") {
    const EvalResult box =
        abcgf::integrate_finite([](double) { return 1.0; }, 0.0, 1.0, finite_spec());
    CHECK(box.converged);
    CHECK(rel_diff(box.value, 1.0) < 1e-12);

    const EvalResult arch =
        abcgf::integrate_finite([](double x) { return std::sin(x); }, 0.0, kPi, finite_spec());
    CHECK(arch.converged);
    CHECK(rel_diff(arch.value, 2.0) < 1e-10);

    // Weighted Jacobi square against the closed-form norm (n = 2, a = 0.3);
    // endpoint weight (1-x)^a (1+x)^a has infinite-slope endpoints, which the
    // double-exponential map must absorb.
    const double a = 0.3;
    const EvalResult nrm = abcgf::integrate_finite(
        [a](double x) {
            const double w = std::pow((1.0 - x) * (1.0 + x), a);
            const double p = abcgf::jacobi_p(2, a, x);
            return w * p * p;
        },
        -1.0, 1.0, finite_spec());
    CHECK(nrm.converged);
    CHECK(rel_diff(nrm.value, jacobi_norm(2, a)) < 1e-10);
}

TEST_CASE("integrate_finite: interval-midpoint node is not dropped") {
    // Regression: the [-1,1] map places its central node exactly at x = 0;
    // an earlier underflow guard discarded it, losing all f(0) mass.
    const EvalResult r = abcgf::integrate_finite(
        [](double x) { return std::exp(-x * x); }, -1.0, 1.0, finite_spec());
    CHECK(r.converged);
    CHECK(rel_diff(r.value, std::sqrt(kPi) * std::erf(1.0)) < 1e-12);
}

TEST_CASE("integrate_finite: input validation") {
    const abcgf::Integrand one = [](double) { return 1.0; };
    CHECK_THROWS_AS(abcgf::integrate_finite(one, 1.0, 1.0, finite_spec()), DomainError);
    CHECK_THROWS_AS(abcgf::integrate_finite(one, 2.0, 1.0, finite_spec()), DomainError);
    CHECK_THROWS_AS(
        abcgf::integrate_finite(one, 0.0, std::numeric_limits<double>::infinity(), finite_spec()),
        DomainError);
}

TEST_CASE("log-space entry points: exponential moments") {
    const abcgf::LogIntegrand decay = [](double x, double) { return -x; };
    const LogEvalResult unit = abcgf::integrate_semiinf_log(decay, semiinf_spec());
    CHECK(unit.converged);
    CHECK(std::fabs(unit.log_value) < 1e-10);
    CHECK(rel_diff(unit.value(), 1.0) < 1e-10);

    const LogEvalResult m3 = abcgf::integrate_moment_log(decay, 3, semiinf_spec());
    CHECK(m3.converged);
    CHECK(rel_diff(m3.log_value, std::log(6.0)) < 1e-10);
}

TEST_CASE("log-space engine: far-displaced peak survives the dead-tail cut") {
    // Regression: ln f = -t + 45 ln t peaks at t = 45 while the nodes near
    // t -> 0 are vanishingly small; the tail cut must not abandon the scan
    // before the peak.  Exact value: ln Gamma(46).
    const abcgf::LogIntegrand lf = [](double t, double ln_t) { return -t + 45.0 * ln_t; };
    const LogEvalResult r = abcgf::integrate_semiinf_log(lf, semiinf_spec());
    CHECK(r.converged);
    CHECK(rel_diff(r.log_value, std::lgamma(46.0)) < 1e-12);
}

TEST_CASE("log-space engine: -inf integrand values mean zero, not failure") {
    // exp(-1/x - x) has essential zeros at both ends (ln f -> -inf); the
    // integral is 2 K_1(2) by the standard Bessel-K representation.
    const abcgf::LogIntegrand lf = [](double x, double) {
        return (x > 0.0) ? (-1.0 / x - x) : -std::numeric_limits<double>::infinity();
    };
    const LogEvalResult r = abcgf::integrate_semiinf_log(lf, semiinf_spec());
    CHECK(r.converged);
    CHECK(rel_diff(r.value(), 2.0 * std::cyl_bessel_k(1.0, 2.0)) < 1e-10);
}

TEST_CASE("non-finite integrand values are hard errors") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(
        abcgf::integrate_semiinf([nan](double x) { return x < 1.0 ? nan : 0.0; }, semiinf_spec()),
        ConvergenceError);
    CHECK_THROWS_AS(
        abcgf::integrate_semiinf([inf](double x) { return x < 1.0 ? inf : 0.0; }, semiinf_spec()),
        ConvergenceError);
    CHECK_THROWS_AS(abcgf::integrate_semiinf_log(
                        [nan](double x, double) { return x < 1.0 ? nan : -x; }, semiinf_spec()),
                    ConvergenceError);
    CHECK_THROWS_AS(abcgf::integrate_semiinf_log(
                        [inf](double x, double) { return x < 1.0 ? inf : -x; }, semiinf_spec()),
                    ConvergenceError);
}

TEST_CASE("transform tag must match the entry point") {
    const abcgf::Integrand f = [](double x) { return std::exp(-x); };
    CHECK_THROWS_AS(abcgf::integrate_semiinf(f, finite_spec()), DomainError);
    CHECK_THROWS_AS(abcgf::integrate_finite(f, 0.0, 1.0, semiinf_spec()), DomainError);
    CHECK_THROWS_AS(abcgf::integrate_semiinf_log([](double, double) { return 0.0; }, finite_spec()),
                    DomainError);
}

TEST_CASE("QuadSpec invariants are enforced") {
    const abcgf::Integrand f = [](double x) { return std::exp(-x); };
    QuadSpec bad_rel = semiinf_spec();
    bad_rel.rel_tol = 0.0;
    CHECK_THROWS_AS(abcgf::integrate_semiinf(f, bad_rel), DomainError);

    QuadSpec bad_abs = semiinf_spec();
    bad_abs.abs_tol = -1.0;
    CHECK_THROWS_AS(abcgf::integrate_semiinf(f, bad_abs), DomainError);

    QuadSpec bad_ref = semiinf_spec();
    bad_ref.max_refinements = 0;
    CHECK_THROWS_AS(abcgf::integrate_semiinf(f, bad_ref), DomainError);
}

TEST_CASE("repeated identical calls are bit-identical") {
    const abcgf::Integrand f = [](double x) { return std::exp(-x) / std::sqrt(x); };
    const EvalResult a = abcgf::integrate_semiinf(f, semiinf_spec());
    const EvalResult b = abcgf::integrate_semiinf(f, semiinf_spec());
    CHECK(a.value == b.value);
    CHECK(a.err_estimate == b.err_estimate);
    CHECK(a.refinements_used == b.refinements_used);
}

}  // TEST_SUITE("quad")
