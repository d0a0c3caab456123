#include "abcgf/radial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace abcgf {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLn2 = 0.6931471805599453;
constexpr double kLn2Pi = 1.8378770664093453;

// Above this Bessel argument the kernel's two huge exponents (the coth damping
// and the Bessel growth) must be combined analytically; below it, evaluating
// them separately costs at most ~arg * 1e-16 <= 1e-10 absolute in the log.
constexpr double kLnCombine = 13.815510557964274;  // ln 1e6

// Below this log-argument the single leading term of the ascending I series
// is exact to ~1e-13 relative even for order lambda ~ 1e2.
constexpr double kLnTiny = -500.0;

// z under this is treated as the z -> 0 limit outright (the quadrature maps
// produce abscissae that underflow to 0.0 while their log stays finite).
constexpr double kZFloor = 1e-280;

void check_radii(double rb, double ra) {
    if (!(std::isfinite(rb) && std::isfinite(ra)) || rb < 1e-8 || ra < 1e-8)
        throw DomainError("radial: radii must be finite and >= 1e-8");
}

double ln_sinh(double z) {
    // sinh z = (e^z/2)(1 - e^{-2z}); for z > 20 the correction is < 1e-17.
    return (z > 20.0) ? z - kLn2 : std::log(std::sinh(z));
}

// ln of the Hankel correction series sum_k t_k, t_0 = 1,
// t_k = -t_{k-1} (mu - (2k-1)^2)/(8 k y) with mu = 4 lambda^2, for ln y large
// enough that the series is deep in its convergent head.
double hankel_corr_log(double lam, double ln_y) {
    const double inv_y = std::exp(-ln_y);  // underflows to 0 for ln_y > ~745
    if (inv_y == 0.0) return 0.0;
    const double mu = 4.0 * lam * lam;
    double term = 1.0, sum = 1.0, prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 30; ++k) {
        term *= -(mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) * inv_y / (8.0 * k);
        if (std::abs(term) >= prev) break;  // asymptotic tail turned; stop at best
        prev = std::abs(term);
        sum += term;
        if (std::abs(term) < 1e-17 * sum) break;
    }
    return std::log(sum);
}

struct KernelGeometry {
    double kappa;
    double lambda;
    double rsum;       // rb + ra
    double sq_diff2;   // (sqrt(rb) - sqrt(ra))^2
    double sqrt_prod;  // sqrt(rb * ra)
    double ln_bessel_scale;  // ln(2 kappa sqrt(rb ra))
};

KernelGeometry make_geometry(const ChannelIndex& ch, const PhysicalParams& p,
                             double rb, double ra) {
    p.validate();
    ch.validate();
    check_radii(rb, ra);
    KernelGeometry g;
    g.kappa = p.kappa();
    g.lambda = ch.lambda(p);
    g.rsum = rb + ra;
    const double srb = std::sqrt(rb), sra = std::sqrt(ra);
    g.sq_diff2 = (srb - sra) * (srb - sra);
    g.sqrt_prod = std::sqrt(rb * ra);
    g.ln_bessel_scale = std::log(2.0 * g.kappa * g.sqrt_prod);
    return g;
}

// ln h(z) with z allowed to be 0.0 as long as ln_z is its true (finite) log;
// the quadrature maps reach such points.
double h_kernel_ln(const KernelGeometry& g, double z, double ln_z) {
    if (z < kZFloor) {
        // Limit z -> 0+: h ~ exp(-kappa sq_diff2 / z) / sqrt(4 pi kappa sqrt_prod z).
        if (g.sq_diff2 > 0.0) {
            const double decay = g.kappa * g.sq_diff2 * std::exp(-ln_z);
            if (decay > 1e3) return kNegInf;  // e^{-decay} dead beyond all tolerance
        }
        return -0.5 * ln_z - 0.5 * (kLn2Pi + kLn2 + std::log(g.kappa * g.sqrt_prod));
    }

    const double lsh = ln_sinh(z);
    const double ln_y = g.ln_bessel_scale - lsh;

    if (ln_y > kLnCombine) {
        // Only reachable for z < 1: safe to form sinh/cosh directly.  The
        // combined exponent -kappa[(rb+ra) cosh z - 2 sqrt(rb ra)]/sinh z is a
        // sum of two non-negative pieces, so nothing cancels:
        const double sh = std::sinh(z);
        const double shh = std::sinh(0.5 * z);
        const double expo =
            -g.kappa * (g.sq_diff2 * std::cosh(z) + 4.0 * g.sqrt_prod * shh * shh) / sh;
        if (expo == kNegInf) return kNegInf;
        return expo - lsh - 0.5 * (kLn2Pi + ln_y) + hankel_corr_log(g.lambda, ln_y);
    }

    const double coth = 1.0 / std::tanh(z);
    const double damping = -g.kappa * g.rsum * coth;

    if (ln_y < kLnTiny) {
        // Leading ascending-series term of I_lambda; exact at this scale.
        const double lead = g.lambda * (ln_y - kLn2) - std::lgamma(g.lambda + 1.0);
        return -lsh + damping + lead;
    }

    return -lsh + damping + bessel_i_log(RealOrder(g.lambda), std::exp(ln_y));
}

EvalResult from_log(const LogEvalResult& r) {
    EvalResult out;
    out.value = std::exp(r.log_value);
    out.err_estimate = r.err_rel * std::abs(out.value);
    out.refinements_used = r.refinements_used;
    out.converged = r.converged;
    return out;
}

// lambda/2 sits strictly above nu iff the channel is below its first
// bound-state pole; a_arg = (1+lambda)/2 - nu is the Gamma/Laplace argument
// whose sign controls everything downstream.
double pole_guard(const ChannelIndex& ch, const PhysicalParams& p, double lambda) {
    const double a_arg = 0.5 * (1.0 + lambda) - p.nu();
    if (a_arg < 1e-8) {
        const int n_r = std::max(0, int(std::llround(-a_arg)));
        std::ostringstream os;
        os << "channel (q=" << ch.q << ", k=" << ch.k
           << ") within 1e-8 of bound-state pole n_r = " << n_r
           << " (argument " << a_arg << ")";
        throw PoleError(os.str(), ch.q, ch.k, n_r);
    }
    return a_arg;
}

}  // namespace

SignedLog h_kernel(const ChannelIndex& ch, const PhysicalParams& p,
                   double rb, double ra, double z) {
    if (!(z > 0.0) || !std::isfinite(z))
        throw DomainError("h_kernel: z must be positive and finite");
    const KernelGeometry g = make_geometry(ch, p, rb, ra);
    const double L = h_kernel_ln(g, z, std::log(z));
    return (L == kNegInf) ? SignedLog{kNegInf, 0} : SignedLog{L, +1};
}

EvalResult g0_proper_time(const ChannelIndex& ch, const PhysicalParams& p,
                          double rb, double ra, const QuadSpec& spec) {
    const KernelGeometry g = make_geometry(ch, p, rb, ra);
    const double half_order = 0.5 * g.lambda;
    const double ce = p.curly_e();
    const double r2sum = 0.5 * (rb * rb + ra * ra);
    const double prod = rb * ra;
    const double ln_prod = std::log(prod);
    const double diff2 = 0.5 * (rb - ra) * (rb - ra);

    LogIntegrand lf = [=](double s, double ln_s) {
        // Integrand (1/S) e^{-curlyE S} e^{-(rb^2+ra^2)/2S} I_{lambda/2}(rb ra/S).
        const double ln_arg = ln_prod - ln_s;
        if (ln_arg > kLnCombine || s == 0.0) {
            // Large Bessel argument: combine -(rb^2+ra^2)/2S with the Hankel
            // growth rb ra/S into -(rb-ra)^2/2S, which cannot cancel.
            const double expo = (diff2 == 0.0) ? 0.0 : -diff2 * std::exp(-ln_s);
            if (expo < -745.0 || expo == kNegInf) return kNegInf;
            return -ln_s - ce * s + expo - 0.5 * (kLn2Pi + ln_arg) +
                   hankel_corr_log(half_order, ln_arg);
        }
        double lnI;
        if (ln_arg < kLnTiny) {
            lnI = half_order * (ln_arg - kLn2) - std::lgamma(half_order + 1.0);
        } else {
            lnI = bessel_i_log(RealOrder(half_order), std::exp(ln_arg));
        }
        return -ln_s - ce * s - r2sum / s + lnI;
    };
    return from_log(integrate_semiinf_log(lf, spec));
}

EvalResult g0_z_rep(const ChannelIndex& ch, const PhysicalParams& p,
                    double rb, double ra, const QuadSpec& spec) {
    const KernelGeometry g = make_geometry(ch, p, rb, ra);
    LogIntegrand lf = [g](double z, double ln_z) { return h_kernel_ln(g, z, ln_z); };
    EvalResult res = from_log(integrate_semiinf_log(lf, spec));
    res.value *= 2.0;
    res.err_estimate *= 2.0;
    return res;
}

EvalResult g_n_closed(const ChannelIndex& ch, const PhysicalParams& p, int n,
                      double rb, double ra, const QuadSpec& spec) {
    if (n < 0) throw DomainError("g_n_closed: order n must be >= 0");
    const KernelGeometry g = make_geometry(ch, p, rb, ra);
    // The moment itself exists for any nu, but a g^(n) request only makes
    // sense while the series it feeds converges; refuse at/beyond the pole.
    pole_guard(ch, p, g.lambda);
    LogIntegrand lf = [g](double z, double ln_z) { return h_kernel_ln(g, z, ln_z); };
    const LogEvalResult r = integrate_moment_log(lf, n, spec);
    const double ln_pref =
        (n + 1.0) * kLn2 - std::lgamma(n + 1.0) - n * std::log(g.kappa);
    LogEvalResult scaled = r;
    scaled.log_value += ln_pref;
    return from_log(scaled);
}

SeriesResult radial_series(const ChannelIndex& ch, const PhysicalParams& p,
                           double rb, double ra, int n_max, const QuadSpec& spec) {
    if (n_max < 0) throw DomainError("radial_series: n_max must be >= 0");
    const KernelGeometry g = make_geometry(ch, p, rb, ra);
    pole_guard(ch, p, g.lambda);

    const double coupling = p.energy * p.alpha;  // series variable E*alpha
    const double ln_amp = -std::log(g.sqrt_prod);  // (rb ra)^{-1/2}

    SeriesResult out;
    out.terms.reserve(n_max + 1);
    out.partial_sums.reserve(n_max + 1);
    double running = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        double term = 0.0;
        if (n == 0 || coupling != 0.0) {
            const EvalResult gn = g_n_closed(ch, p, n, rb, ra, spec);
            term = std::exp(ln_amp) * std::pow(coupling, n) * gn.value;
        }
        running += term;
        out.terms.push_back(term);
        out.partial_sums.push_back(running);
    }
    out.remainder_proxy = std::abs(out.terms.back());
    return out;
}

EvalResult radial_integral(const ChannelIndex& ch, const PhysicalParams& p,
                           double rb, double ra, const QuadSpec& spec) {
    const KernelGeometry g = make_geometry(ch, p, rb, ra);
    pole_guard(ch, p, g.lambda);
    const double two_nu = 2.0 * p.nu();
    LogIntegrand lf = [g, two_nu](double z, double ln_z) {
        const double base = h_kernel_ln(g, z, ln_z);
        return (base == kNegInf) ? kNegInf : two_nu * z + base;
    };
    const LogEvalResult r = integrate_semiinf_log(lf, spec);
    LogEvalResult scaled = r;
    scaled.log_value += kLn2 - std::log(g.sqrt_prod);
    return from_log(scaled);
}

SignedLog radial_closed_log(const ChannelIndex& ch, const PhysicalParams& p,
                            double rb, double ra) {
    const KernelGeometry g = make_geometry(ch, p, rb, ra);
    const double a_arg = pole_guard(ch, p, g.lambda);
    const double nu = p.nu();
    const double half = 0.5 * g.lambda;
    const double r_hi = std::max(rb, ra), r_lo = std::min(rb, ra);

    // Gamma((1+lambda)/2 - nu) / Gamma(1 + lambda): both arguments positive
    // here, so plain lgamma differences.
    const double ln_bracket = std::lgamma(a_arg) - std::lgamma(1.0 + g.lambda);
    const double ln_w = whittaker_w_log(nu, half, 2.0 * g.kappa * r_hi);
    const SignedLog m = whittaker_m_log(nu, half, 2.0 * g.kappa * r_lo);
    // M(a,b,z) with a,b,z > 0 is a series of positive terms; sign is +1.
    const double L =
        -std::log(rb) - std::log(ra) - std::log(g.kappa) + ln_bracket + ln_w + m.log_abs;
    return {L, m.sign};
}

double radial_closed(const ChannelIndex& ch, const PhysicalParams& p,
                     double rb, double ra) {
    return radial_closed_log(ch, p, rb, ra).value();
}

}  // namespace abcgf
