#include "abcgf/greens.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace abcgf {

namespace {

// Bisect 1/Gamma((1+lambda)/2 - nu(E)) between two grid points of opposite
// sign down to the requested energy resolution.
double bisect_pole(double lo, double hi, double f_lo,
                   const std::function<double(double)>& f) {
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (f_lo > 0.0)) {
            lo = mid;
            f_lo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

void TruncationSpec::validate() const {
    if (q_max < 0 || k_max < 0)
        throw DomainError("TruncationSpec: window bounds must be >= 0");
    if (!(tail_tol > 0.0))
        throw DomainError("TruncationSpec: tail_tol must be positive");
}

std::complex<double> assembly_prefactor() {
    // i/(8 pi r_b r_a kappa) total; 1/(r_b r_a kappa) lives in the radial
    // factor and 1/(4 pi) in the angular one, leaving i/2 here.
    return {0.0, 0.5};
}

GreensResult greens_function(const SpacePoint& b, const SpacePoint& a,
                             const PhysicalParams& p, const TruncationSpec& trunc) {
    p.validate();
    b.validate();
    a.validate();
    trunc.validate();

    // Refuse the whole window up front if any channel in it sits at a pole:
    // cheaper than discovering it mid-assembly, and the error then names the
    // first offending channel in deterministic order.
    const double nu = p.nu();
    for (int q = 0; q <= trunc.q_max; ++q) {
        for (int dk = -trunc.k_max; dk <= trunc.k_max; ++dk) {
            const int k = trunc.k_shift + dk;
            const double lam = channel_lambda(q, k, p.alpha, p.beta0);
            const double a_arg = 0.5 * (1.0 + lam) - nu;
            if (a_arg < 1e-8) {
                const int n_r = std::max(0, int(std::llround(-a_arg)));
                std::ostringstream os;
                os << "greens_function: channel (q=" << q << ", k=" << k
                   << ") within 1e-8 of bound-state pole n_r = " << n_r;
                throw PoleError(os.str(), q, k, n_r);
            }
        }
    }

    const double dphi = b.phi - a.phi;
    // The radial factor depends on k only through |k + beta0|; at beta0 = 0
    // (and half-integers) opposite k share it, so memoize on (q, |k+beta0|).
    std::map<std::pair<int, double>, SignedLog> radial_cache;

    GreensResult out;
    std::complex<double> sum{0.0, 0.0};
    double last_shell_mag = 0.0;
    double total_mag = 0.0;

    const int s_max = std::max(trunc.q_max, trunc.k_max);
    for (int s = 0; s <= s_max; ++s) {
        double shell_mag = 0.0;
        // Shell s: channels with max(q, |k - k_shift|) == s inside the window.
        for (int q = 0; q <= std::min(s, trunc.q_max); ++q) {
            for (int dk = -std::min(s, trunc.k_max); dk <= std::min(s, trunc.k_max); ++dk) {
                if (std::max(q, std::abs(dk)) != s) continue;
                const int k = trunc.k_shift + dk;

                const double m_bar = std::abs(double(k) + p.beta0);
                SignedLog rad;
                const auto key = std::make_pair(q, m_bar);
                if (auto it = radial_cache.find(key); it != radial_cache.end()) {
                    rad = it->second;
                } else {
                    rad = radial_closed_log({q, k}, p, b.r, a.r);
                    radial_cache.emplace(key, rad);
                }

                const SignedLog ang = angular_weight_log({q, k}, p, b, a);
                ++out.terms_used;
                if (rad.sign == 0 || ang.sign == 0) continue;

                const double mag = std::exp(rad.log_abs + ang.log_abs);
                const double signed_mag = mag * rad.sign * ang.sign;
                sum += signed_mag *
                       std::complex<double>(std::cos(k * dphi), std::sin(k * dphi));
                shell_mag += mag;
            }
        }
        ++out.shells_used;
        last_shell_mag = shell_mag;
        total_mag += shell_mag;
        if (trunc.adaptive && s >= 1 && shell_mag <= trunc.tail_tol * std::abs(sum)) {
            out.converged = true;
            break;
        }
    }

    if (!out.converged)
        out.converged = last_shell_mag <= trunc.tail_tol * std::max(std::abs(sum), 1e-300);
    out.err_estimate = last_shell_mag;
    out.value = assembly_prefactor() * sum;
    return out;
}

std::vector<BoundState> bound_energies(const ChannelIndex& ch, double alpha,
                                       double beta0, int n_r_max) {
    ch.validate();
    if (!(alpha > 0.0) || !(alpha < 0.5))
        throw DomainError("bound_energies: requires 0 < alpha < 1/2");
    if (!std::isfinite(beta0)) throw DomainError("bound_energies: beta0 must be finite");
    if (n_r_max < 0) throw DomainError("bound_energies: n_r_max must be >= 0");

    const double lam = channel_lambda(ch.q, ch.k, alpha, beta0);
    std::vector<BoundState> out;
    out.reserve(n_r_max + 1);
    for (int n_r = 0; n_r <= n_r_max; ++n_r) {
        // Pole condition (1+lambda)/2 - E alpha/sqrt(1-E^2) = -n_r, solved for
        // E with N = n_r + (1+lambda)/2:
        const double N = n_r + 0.5 * (1.0 + lam);
        const double e = N / std::sqrt(N * N + alpha * alpha);
        out.push_back({n_r, ch.q, ch.k, e, lam});
    }
    return out;
}

PoleScanResult pole_scan(const ChannelIndex& ch, double alpha, double beta0,
                         double e_min, double e_max, int n_points) {
    ch.validate();
    if (!(alpha >= 0.0) || !(alpha < 0.5))
        throw DomainError("pole_scan: requires 0 <= alpha < 1/2");
    if (!std::isfinite(beta0)) throw DomainError("pole_scan: beta0 must be finite");
    if (!(e_min > 0.0) || !(e_max < 1.0) || !(e_min < e_max))
        throw DomainError("pole_scan: need 0 < e_min < e_max < 1");
    if (n_points < 2) throw DomainError("pole_scan: need at least 2 grid points");

    const double lam = channel_lambda(ch.q, ch.k, alpha, beta0);
    const auto f = [lam, alpha](double e) {
        const double nu = e * alpha / std::sqrt((1.0 - e) * (1.0 + e));
        return recip_gamma(0.5 * (1.0 + lam) - nu);
    };

    PoleScanResult out;
    const double step = (e_max - e_min) / double(n_points - 1);
    double e_prev = e_min;
    double f_prev = f(e_prev);
    for (int i = 1; i < n_points; ++i) {
        const double e_i = e_min + i * step;
        const double f_i = f(e_i);
        double root = std::numeric_limits<double>::quiet_NaN();
        if (f_prev == 0.0) {
            root = e_prev;  // pole exactly on a grid point
        } else if (f_i != 0.0 && (f_i > 0.0) != (f_prev > 0.0)) {
            root = bisect_pole(e_prev, e_i, f_prev, f);
        }
        if (!std::isnan(root)) {
            const double nu = root * alpha / std::sqrt((1.0 - root) * (1.0 + root));
            const int n_r = std::max(0, int(std::llround(nu - 0.5 * (1.0 + lam))));
            out.poles.push_back({n_r, ch.q, ch.k, root, lam});
        }
        e_prev = e_i;
        f_prev = f_i;
    }

    for (std::size_t i = 1; i < out.poles.size(); ++i) {
        if (out.poles[i].n_r != out.poles[i - 1].n_r + 1) out.grid_too_coarse = true;
    }
    return out;
}

}  // namespace abcgf
