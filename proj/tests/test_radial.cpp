#include <cmath>
#include <vector>

#include "doctest.h"

#include "abcgf/params.hpp"
#include "abcgf/quad.hpp"
#include "abcgf/radial.hpp"
#include "checks.hpp"
#include "conv_helpers.hpp"
#include "oracles.hpp"

using abcgf::ChannelIndex;
using abcgf::DomainError;
using abcgf::EvalResult;
using abcgf::PhysicalParams;
using abcgf::PoleError;
using abcgf::QuadSpec;
using abcgf::SignedLog;

namespace {

PhysicalParams make_params(double alpha, double beta0, double energy) {
    PhysicalParams p;
    p.alpha = alpha;
    p.beta0 = beta0;
    p.energy = energy;
    return p;
}

const double kAlphaFS = 1.0 / 137.0;

}  // namespace

TEST_SUITE("radial") {

TEST_CASE("h_kernel: large-z slope is -(1+lambda)") {
    const PhysicalParams p = make_params(kAlphaFS, 0.3, 0.9);
    const ChannelIndex ch{1, 2};
    const double lambda = ch.lambda(p);
    const SignedLog h1 = abcgf::h_kernel(ch, p, 2.0, 1.0, 40.0);
    const SignedLog h2 = abcgf::h_kernel(ch, p, 2.0, 1.0, 50.0);
    const double slope = (h2.log_abs - h1.log_abs) / 10.0;
    CHECK(rel_diff(slope, -(1.0 + lambda)) < 1e-6);
}

TEST_CASE("h_kernel: essential decay as z -> 0+ for rb != ra") {
    const PhysicalParams p = make_params(kAlphaFS, 0.0, 0.9);
    const ChannelIndex ch{0, 0};
    const SignedLog mid = abcgf::h_kernel(ch, p, 2.0, 1.0, 0.1);
    const SignedLog small = abcgf::h_kernel(ch, p, 2.0, 1.0, 1e-4);
    CHECK(small.log_abs < mid.log_abs - 500.0);
    CHECK(small.sign == 1);
    // Leading small-z behaviour ln h ~ -kappa (sqrt(rb)-sqrt(ra))^2 / z; the
    // subleading terms (log of the Bessel prefactor etc.) are O(10) here.
    const double lead = -p.kappa() * std::pow(std::sqrt(2.0) - 1.0, 2) / 1e-4;
    CHECK(std::fabs(small.log_abs - lead) < 10.0);
    // Deep underflow region: the kernel is an exact zero, encoded as sign 0.
    const SignedLog zero = abcgf::h_kernel(ch, p, 2.0, 1.0, 1e-300);
    CHECK(zero.sign == 0);
}

TEST_CASE("h_kernel: free channel value against the extended-precision oracle") {
    const PhysicalParams p = make_params(0.0, 0.0, 0.9);
    const ChannelIndex ch{0, 0};
    const double lambda = ch.lambda(p);
    CHECK(lambda == 1.0);  // 2(q+|k|)+1 exactly at alpha = 0
    const SignedLog h = abcgf::h_kernel(ch, p, 2.0, 1.0, 1.0);
    CHECK(h.sign == 1);
    const double ref = static_cast<double>(
        oracle::h_ln(1.0L, std::sqrt(0.19L), 2.0L, 1.0L, 1.0L));
    CHECK(rel_diff(h.log_abs, ref) < 1e-12);
    CHECK(h.value() > 0.0);
}

TEST_CASE("h_kernel: domain errors on non-positive arguments") {
    const PhysicalParams p = make_params(kAlphaFS, 0.0, 0.9);
    const ChannelIndex ch{0, 0};
    CHECK_THROWS_AS(abcgf::h_kernel(ch, p, 2.0, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(abcgf::h_kernel(ch, p, 0.0, 1.0, 1.0), DomainError);
    CHECK_THROWS_AS(abcgf::h_kernel(ch, p, 2.0, 1e-9, 1.0), DomainError);
}

TEST_CASE("free kernel: proper-time route equals z-representation route") {
    const PhysicalParams p = make_params(kAlphaFS, 0.3, 0.9);
    const ChannelIndex ch{0, 0};
    const QuadSpec spec;
    const EvalResult s = abcgf::g0_proper_time(ch, p, 2.0, 1.0, spec);
    const EvalResult z = abcgf::g0_z_rep(ch, p, 2.0, 1.0, spec);
    CHECK(s.converged);
    CHECK(z.converged);
    CHECK(rel_diff(s.value, z.value) < 1e-8);
}

TEST_CASE("free kernel: alpha = 0 order reduction and exact lambda") {
    // At alpha = 0, beta0 = 0 the channel order is exactly 2(q+|k|)+1, so the
    // proper-time representation runs at half-integer order l + 1/2.
    CHECK(abcgf::channel_lambda(1, 2, 0.0, 0.0) == 7.0);
    CHECK(abcgf::channel_lambda(0, 0, 0.0, 0.0) == 1.0);
    const PhysicalParams p = make_params(0.0, 0.0, 0.9);
    const ChannelIndex ch{1, 2};
    const QuadSpec spec;
    CHECK(rel_diff(abcgf::g0_proper_time(ch, p, 2.0, 1.0, spec).value,
                   abcgf::g0_z_rep(ch, p, 2.0, 1.0, spec).value) < 1e-8);
}

TEST_CASE("free kernel: invariant under joint rescale r -> c r, kappa -> kappa/c") {
    // kappa(E) = sqrt(0.19) at E = 0.9; halving kappa means E' = sqrt(0.9525).
    const PhysicalParams p1 = make_params(kAlphaFS, 0.0, 0.9);
    const PhysicalParams p2 = make_params(kAlphaFS, 0.0, std::sqrt(0.9525));
    const ChannelIndex ch{0, 0};
    const QuadSpec spec;
    const double base = abcgf::g0_proper_time(ch, p1, 2.0, 1.0, spec).value;
    const double scaled = abcgf::g0_proper_time(ch, p2, 4.0, 2.0, spec).value;
    CHECK(rel_diff(base, scaled) < 1e-9);
}

TEST_CASE("g0_z_rep: symmetric under rb <-> ra") {
    const PhysicalParams p = make_params(kAlphaFS, 0.3, 0.9);
    const ChannelIndex ch{0, 0};
    const QuadSpec spec;
    const EvalResult ab = abcgf::g0_z_rep(ch, p, 2.0, 1.0, spec);
    const EvalResult ba = abcgf::g0_z_rep(ch, p, 1.0, 2.0, spec);
    CHECK(ab.value == ba.value);  // integrand depends on rb+ra and rb*ra only
}

TEST_CASE("g0_z_rep: grows monotonically as E -> 1-") {
    const ChannelIndex ch{0, 0};
    const QuadSpec spec;
    double prev = 0.0;
    for (double e : {0.5, 0.9, 0.99}) {
        const EvalResult r = abcgf::g0_z_rep(ch, make_params(kAlphaFS, 0.0, e), 2.0, 1.0, spec);
        CHECK(r.converged);
        CHECK(r.value > prev);
        prev = r.value;
    }
}

TEST_CASE("g_n_closed: n = 0 reduces to g0_z_rep") {
    const PhysicalParams p = make_params(kAlphaFS, 0.3, 0.9);
    const ChannelIndex ch{0, 0};
    const QuadSpec spec;
    CHECK(rel_diff(abcgf::g_n_closed(ch, p, 0, 2.0, 1.0, spec).value,
                   abcgf::g0_z_rep(ch, p, 2.0, 1.0, spec).value) < 1e-12);
}

TEST_CASE("g_n_closed: n = 1 equals the convolution oracle") {
    // Independent long-double oracle: closed free kernel integrated over the
    // intermediate radius with adaptive Simpson on a split range.
    const PhysicalParams p = make_params(kAlphaFS, 0.3, 0.9);
    const ChannelIndex ch{0, 0};
    const long double lam = ch.lambda(p);
    const long double kap = p.kappa();
    const oracle::ConvKernel g0o(lam, kap, 1e-12L);
    const std::vector<long double> pts = {0.0L, 0.5L, 1.0L, 1.5L, 2.0L, 3.0L,
                                          5.0L, 8.0L, 12.0L, 20.0L, 30.0L, 45.0L, 60.0L};
    long double conv = 0.0L;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        conv += oracle::integrate([&](long double r) { return g0o(2.0L, r) * g0o(r, 1.0L); },
                                  pts[i], pts[i + 1], 1e-9L);
    const QuadSpec spec;
    const EvalResult g1 = abcgf::g_n_closed(ch, p, 1, 2.0, 1.0, spec);
    CHECK(g1.converged);
    CHECK(rel_diff(g1.value, static_cast<double>(conv)) < 1e-6);
}

TEST_CASE("g_n_closed: n = 2 equals the double-convolution oracle") {
    const PhysicalParams p = make_params(kAlphaFS, 0.3, 0.9);
    const ChannelIndex ch{0, 0};
    const convtest::FreeKernel g0(ch.lambda(p), p.kappa());
    const double conv2 = convtest::convolve_twice(g0, 2.0, 1.0, 1e-7, 1e-6);
    const QuadSpec spec;
    const EvalResult g2 = abcgf::g_n_closed(ch, p, 2, 2.0, 1.0, spec);
    CHECK(g2.converged);
    CHECK(rel_diff(g2.value, conv2) < 1e-5);
}

TEST_CASE("g_n_closed: positivity and basic validation") {
    const PhysicalParams p = make_params(kAlphaFS, 0.3, 0.9);
    const ChannelIndex ch{0, 0};
    const QuadSpec spec;
    for (int n = 0; n <= 4; ++n) CHECK(abcgf::g_n_closed(ch, p, n, 2.0, 1.0, spec).value > 0.0);
    CHECK_THROWS_AS(abcgf::g_n_closed(ch, p, -1, 2.0, 1.0, spec), DomainError);
}

TEST_CASE("radial_series: zero coupling terminates at n = 0") {
    const PhysicalParams p = make_params(0.0, 0.0, 0.9);
    const ChannelIndex ch{0, 0};
    const QuadSpec spec;
    const abcgf::SeriesResult s = abcgf::radial_series(ch, p, 2.0, 1.0, 6, spec);
    REQUIRE(s.terms.size() == 7);
    CHECK(s.terms[0] > 0.0);
    for (std::size_t n = 1; n < s.terms.size(); ++n) CHECK(s.terms[n] == 0.0);
    CHECK(s.remainder_proxy == 0.0);
    // The surviving term is the prefactored free kernel (rb ra)^{-1/2} g^(0).
    const double g0 = abcgf::g0_z_rep(ch, p, 2.0, 1.0, spec).value;
    CHECK(rel_diff(s.partial_sums.back(), g0 / std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("radial_series: term magnitudes decrease monotonically") {
    const PhysicalParams p = make_params(kAlphaFS, 0.0, 0.5);
    const ChannelIndex ch{0, 0};
    const QuadSpec spec;
    const abcgf::SeriesResult s = abcgf::radial_series(ch, p, 2.0, 1.0, 12, spec);
    REQUIRE(s.terms.size() == 13);
    for (std::size_t n = 1; n < s.terms.size(); ++n) {
        CAPTURE(n);
        CHECK(std::fabs(s.terms[n]) < std::fabs(s.terms[n - 1]));
    }
}

TEST_CASE("radial_series: limit matches radial_closed once the remainder is small") {
    const PhysicalParams p = make_params(kAlphaFS, 0.3, 0.5);
    const ChannelIndex ch{0, 0};
    const QuadSpec spec;
    const abcgf::SeriesResult s = abcgf::radial_series(ch, p, 2.0, 1.0, 8, spec);
    CHECK(s.remainder_proxy < 1e-8 * std::fabs(s.partial_sums.back()));
    CHECK(rel_diff(s.partial_sums.back(), abcgf::radial_closed(ch, p, 2.0, 1.0)) < 1e-6);
}

TEST_CASE("radial routes: series limit, resummed integral, closed form agree") {
    const PhysicalParams p = make_params(kAlphaFS, 0.3, 0.5);
    const ChannelIndex ch{0, 0};
    const QuadSpec spec;
    const abcgf::SeriesResult s = abcgf::radial_series(ch, p, 2.0, 1.0, 10, spec);
    const EvalResult integral = abcgf::radial_integral(ch, p, 2.0, 1.0, spec);
    const double closed = abcgf::radial_closed(ch, p, 2.0, 1.0);
    CHECK(integral.converged);
    CHECK(rel_diff(s.partial_sums.back(), integral.value) < 1e-7);
    CHECK(rel_diff(integral.value, closed) < 1e-8);
}

TEST_CASE("radial_integral: grows toward the first bound-state pole") {
    // Channel (0,0) at alpha = 0.3 has its first pole at E = sqrt(0.9).
    const ChannelIndex ch{0, 0};
    const QuadSpec spec;
    std::vector<double> vals;
    for (double e : {0.80, 0.90, 0.94})
        vals.push_back(abcgf::radial_integral(ch, make_params(0.3, 0.0, e), 2.0, 1.0, spec).value);
    CHECK(vals[1] > vals[0]);
    CHECK(vals[2] > vals[1]);
    CHECK(vals[2] > 3.0 * vals[0]);
}

TEST_CASE("radial routes: refuse evaluation at/beyond the pole, naming it") {
    const ChannelIndex ch{0, 0};
    const QuadSpec spec;
    const PhysicalParams beyond = make_params(0.3, 0.0, 0.96);  // nu > (1+lambda)/2
    CHECK_THROWS_AS(abcgf::radial_integral(ch, beyond, 2.0, 1.0, spec), PoleError);
    CHECK_THROWS_AS(abcgf::radial_closed(ch, beyond, 2.0, 1.0), PoleError);
    CHECK_THROWS_AS(abcgf::g_n_closed(ch, beyond, 1, 2.0, 1.0, spec), PoleError);

    const PhysicalParams at_pole = make_params(0.3, 0.0, std::sqrt(0.9));
    try {
        abcgf::radial_closed(ch, at_pole, 2.0, 1.0);
        FAIL("expected PoleError");
    } catch (const PoleError& e) {
        CHECK(e.q() == 0);
        CHECK(e.k() == 0);
        CHECK(e.n_r() == 0);
    }
}

TEST_CASE("radial_closed: symmetric under rb <-> ra") {
    const PhysicalParams p = make_params(0.3, 0.3, 0.7);
    const ChannelIndex ch{1, -1};
    CHECK(abcgf::radial_closed(ch, p, 1.5, 0.6) == abcgf::radial_closed(ch, p, 0.6, 1.5));
}

TEST_CASE("radial_closed: alpha -> 0 free-channel reduction") {
    // At alpha = 0 the Gamma prefactor is Gamma((1+lambda)/2)/Gamma(1+lambda)
    // with lambda = 2l+1 and nu = 0, and the channel function collapses to
    // the prefactored free kernel.
    const PhysicalParams p = make_params(0.0, 0.0, 0.9);
    const ChannelIndex ch{0, 0};
    const QuadSpec spec;
    const double closed = abcgf::radial_closed(ch, p, 2.0, 1.0);
    const double g0 = abcgf::g0_z_rep(ch, p, 2.0, 1.0, spec).value;
    CHECK(rel_diff(closed, g0 / std::sqrt(2.0)) < 1e-8);
}

TEST_CASE("radial_closed_log: consistent with the plain value") {
    const PhysicalParams p = make_params(0.3, 0.3, 0.7);
    const ChannelIndex ch{1, -1};
    const SignedLog lg = abcgf::radial_closed_log(ch, p, 1.5, 0.6);
    CHECK(lg.sign == 1);
    CHECK(rel_diff(lg.value(), abcgf::radial_closed(ch, p, 1.5, 0.6)) < 1e-13);
}

TEST_CASE("radial: positivity of every channel value in the validity domain") {
    const QuadSpec spec;
    for (double alpha : {kAlphaFS, 0.3}) {
        for (double e : {0.5, 0.7}) {
            const PhysicalParams p = make_params(alpha, 0.3, e);
            for (const ChannelIndex& ch : {ChannelIndex{0, 0}, ChannelIndex{1, 2}}) {
                CAPTURE(alpha);
                CAPTURE(e);
                CHECK(abcgf::radial_closed(ch, p, 2.0, 1.0) > 0.0);
                CHECK(abcgf::radial_integral(ch, p, 2.0, 1.0, spec).value > 0.0);
            }
        }
    }
}

}  // TEST_SUITE("radial")
