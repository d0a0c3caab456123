#include "abcgf/quad.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace abcgf {

namespace {

constexpr double kTwoPiQuarter = 1.5707963267948966;  // pi/2
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Transformed-axis windows.  The trapezoidal sum runs over t = j*h inside
// [-T, T]; beyond these values the transformed weight has decayed under
// 1e-17 of the peak for every integrand class this library feeds in
// (exponential or Gaussian far-tail decay, power-law or essential behavior
// at the finite end).
constexpr double kTSemi = 11.5;
constexpr double kTFinite = 4.0;

// A refinement ladder deeper than this is pointless in double precision
// (levels 7-8 already put ~10^4 nodes through the window); the configured
// max_refinements is honored up to this cap.
constexpr int kLevelCap = 10;

// Terms below this fraction of the largest term seen this level cannot move
// a double-precision sum; three in a row and the tail scan stops.
constexpr double kTailCut = 1e-19;

struct Node {
    double x;     // abscissa in the original variable
    double ln_x;  // exact ln x from the map (x itself may underflow)
    double ln_w;  // ln(dx/dt)
    bool usable;  // false when x has degenerated (underflow / endpoint saturation)
};

// x = exp(t - exp(-t)): double-exponential decay toward x -> 0+ as
// t -> -inf, and toward the e^{-cx} tail as t -> +inf.
Node semiinf_node(double t) {
    const double emt = std::exp(-t);
    const double ln_x = t - emt;
    const double x = std::exp(ln_x);
    // x == 0 means the abscissa underflowed; only log-space integrands (which
    // receive ln_x) can still be evaluated there.
    return {x, ln_x, ln_x + std::log1p(emt), x != 0.0};
}

// x = mid + half*tanh(u), u = (pi/2) sinh t; dx/dt = half*(pi/2)cosh t/cosh^2 u.
Node finite_node(double t, double mid, double half) {
    const double u = kTwoPiQuarter * std::sinh(t);
    const double x = mid + half * std::tanh(u);
    // ln cosh(u) without overflow: |u| + ln((1+e^{-2|u|})/2)
    const double lncosh = std::abs(u) + std::log1p(std::exp(-2.0 * std::abs(u))) - 0.6931471805599453;
    const double ln_w = std::log(half * kTwoPiQuarter) + std::log(std::cosh(t)) - 2.0 * lncosh;
    // tanh saturation parks x exactly on an endpoint, where the integrand may
    // legitimately be singular; the true contribution there is ~e^{-2|u|}.
    const bool usable = (x > mid - half) && (x < mid + half);
    return {x, 0.0, ln_w, usable};
}

[[noreturn]] void bad_integrand(double x, double v) {
    std::ostringstream os;
    os << "quad: integrand returned non-finite value " << v << " at x = " << x;
    throw ConvergenceError(os.str());
}

// ---- plain (signed) engine ------------------------------------------------

// One level's contribution: sum of f(x)*w over nodes t = j*h with j odd
// (or all j at level 0), scanned outward from t = 0 with a dead-tail cutoff.
// The cutoff is a pure function of the evaluated values, so repeated calls
// are bit-identical.
class PlainAccum {
  public:
    void add(double v) {
        sum_ += v;
        peak_ = std::max(peak_, std::abs(v));
    }
    double sum() const { return sum_; }
    double peak() const { return peak_; }
    void merge_peak(double p) { peak_ = std::max(peak_, p); }

  private:
    double sum_ = 0.0;
    double peak_ = 0.0;
};

template <typename NodeFn>
double plain_level_sum(const Integrand& f, const NodeFn& node_at, double h, int level,
                       double t_max, bool allow_tail_cut, PlainAccum& acc) {
    const int stride = (level == 0) ? 1 : 2;
    const int start = (level == 0) ? 0 : 1;
    double level_sum = 0.0;
    for (int dir : {+1, -1}) {
        int tiny_run = 0;
        double prev_mag = std::numeric_limits<double>::infinity();
        for (int j = start; j * h <= t_max; j += stride) {
            if (dir < 0 && j == 0) continue;  // centre node belongs to dir=+1
            const Node n = node_at(dir * j * h);
            double term = 0.0;
            if (n.usable && std::isfinite(n.ln_w)) {
                const double fv = f(n.x);
                if (!std::isfinite(fv)) bad_integrand(n.x, fv);
                term = fv * std::exp(n.ln_w);
            }
            level_sum += term;
            acc.add(term);
            if (allow_tail_cut) {
                // A dead tail is tiny *and* non-increasing; tiny-but-rising
                // nodes are the approach to a peak sitting far from t = 0 and
                // must not stop the scan.
                const double mag = std::abs(term);
                if (mag < kTailCut * acc.peak() && acc.peak() > 0.0 && mag <= prev_mag) {
                    if (++tiny_run >= 3) break;
                } else {
                    tiny_run = 0;
                }
                prev_mag = mag;
            }
        }
    }
    return level_sum;
}

template <typename NodeFn>
EvalResult plain_integrate(const Integrand& f, const NodeFn& node_at, double t_max,
                           bool allow_tail_cut, const QuadSpec& spec) {
    spec.validate();
    const double h0 = 0.5;
    const int levels = std::min(spec.max_refinements, kLevelCap);

    PlainAccum acc;
    double total = 0.0;   // running sum of all evaluated f*w
    double prev_value = 0.0;
    EvalResult res;
    for (int level = 0; level <= levels; ++level) {
        const double h = h0 / double(1 << level);
        total += plain_level_sum(f, node_at, h, level, t_max, allow_tail_cut, acc);
        const double value = h * total;
        res.value = value;
        res.refinements_used = level;
        if (level > 0) {
            res.err_estimate = std::abs(value - prev_value);
            if (res.err_estimate <= std::max(spec.rel_tol * std::abs(value), spec.abs_tol)) {
                res.converged = true;
                break;
            }
        }
        prev_value = value;
    }
    return res;
}

// ---- log-space (positive) engine ------------------------------------------

// Accumulates sum(exp(L_i)) as (offset, mantissa-sum) so that no partial sum
// can overflow no matter how large the ln-terms get.
class LogAccum {
  public:
    void add(double L) {
        if (L == kNegInf) return;
        if (L > off_) {
            sum_ = sum_ * std::exp(off_ - L) + 1.0;
            off_ = L;
        } else {
            sum_ += std::exp(L - off_);
        }
    }
    double off() const { return off_; }
    bool empty() const { return sum_ == 0.0; }
    double log_sum() const { return empty() ? kNegInf : off_ + std::log(sum_); }

  private:
    double off_ = kNegInf;
    double sum_ = 0.0;
};

template <typename NodeFn>
LogEvalResult log_integrate(const LogIntegrand& lf, const NodeFn& node_at, double t_max,
                            const QuadSpec& spec) {
    spec.validate();
    const double h0 = 0.5;
    const int levels = std::min(spec.max_refinements, kLevelCap);

    LogAccum acc;
    double prev_log = kNegInf;
    LogEvalResult res;
    for (int level = 0; level <= levels; ++level) {
        const double h = h0 / double(1 << level);
        const int stride = (level == 0) ? 1 : 2;
        const int start = (level == 0) ? 0 : 1;
        for (int dir : {+1, -1}) {
            int tiny_run = 0;
            double prev_L = std::numeric_limits<double>::infinity();
            for (int j = start; j * h <= t_max; j += stride) {
                if (dir < 0 && j == 0) continue;
                const Node n = node_at(dir * j * h);
                double L = lf(n.x, n.ln_x);
                if (std::isnan(L) || L == std::numeric_limits<double>::infinity())
                    bad_integrand(n.x, L);
                L += n.ln_w;
                acc.add(L);
                // Stop only on a tiny *and* non-increasing run; see the plain
                // engine for why rising-but-tiny nodes must not stop the scan.
                if (L < acc.off() + std::log(kTailCut) && L <= prev_L) {
                    if (++tiny_run >= 3) break;
                } else {
                    tiny_run = 0;
                }
                prev_L = L;
            }
        }
        const double log_value = acc.log_sum() + std::log(h);
        res.log_value = log_value;
        res.refinements_used = level;
        if (level > 0) {
            // relative gap between consecutive levels, computed in log space
            res.err_rel = std::abs(std::expm1(prev_log - log_value));
            if (prev_log == kNegInf && log_value == kNegInf) res.err_rel = 0.0;
            if (res.err_rel <= spec.rel_tol ||
                (log_value < 0 && std::exp(log_value) * res.err_rel <= spec.abs_tol)) {
                res.converged = true;
                break;
            }
        }
        prev_log = log_value;
    }
    return res;
}

}  // namespace

void QuadSpec::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw DomainError("QuadSpec: tolerances must be positive");
    if (max_refinements < 1)
        throw DomainError("QuadSpec: max_refinements must be >= 1");
}

namespace {

void require_transform(const QuadSpec& spec, Transform t, const char* who) {
    if (spec.transform != t)
        throw DomainError(std::string(who) + ": QuadSpec.transform does not match this entry point");
}

}  // namespace

EvalResult integrate_semiinf(const Integrand& f, const QuadSpec& spec) {
    require_transform(spec, Transform::exp_decay_semiinfinite, "integrate_semiinf");
    return plain_integrate(f, [](double t) { return semiinf_node(t); }, kTSemi,
                           /*allow_tail_cut=*/true, spec);
}

EvalResult integrate_moment(const Integrand& h, int n, const QuadSpec& spec) {
    if (n < 0) throw DomainError("integrate_moment: n must be >= 0");
    if (n == 0) return integrate_semiinf(h, spec);
    Integrand f = [&h, n](double x) { return std::pow(x, n) * h(x); };
    return integrate_semiinf(f, spec);
}

EvalResult integrate_finite(const Integrand& f, double a, double b, const QuadSpec& spec) {
    require_transform(spec, Transform::finite_interval, "integrate_finite");
    if (!(std::isfinite(a) && std::isfinite(b)) || !(a < b))
        throw DomainError("integrate_finite: need finite a < b");
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    // No dead-tail cutoff here: a signed integrand can pass through zero in
    // the middle of the window, which must not be mistaken for a tail.
    return plain_integrate(f, [mid, half](double t) { return finite_node(t, mid, half); },
                           kTFinite, /*allow_tail_cut=*/false, spec);
}

LogEvalResult integrate_semiinf_log(const LogIntegrand& lf, const QuadSpec& spec) {
    require_transform(spec, Transform::exp_decay_semiinfinite, "integrate_semiinf_log");
    return log_integrate(lf, [](double t) { return semiinf_node(t); }, kTSemi, spec);
}

LogEvalResult integrate_moment_log(const LogIntegrand& lh, int n, const QuadSpec& spec) {
    if (n < 0) throw DomainError("integrate_moment_log: n must be >= 0");
    if (n == 0) return integrate_semiinf_log(lh, spec);
    LogIntegrand lf = [&lh, n](double x, double ln_x) {
        return double(n) * ln_x + lh(x, ln_x);
    };
    return integrate_semiinf_log(lf, spec);
}

}  // namespace abcgf
