#pragma once

#include <cmath>
#include <limits>

#include "abcgf/errors.hpp"

namespace abcgf {

// A number carried as ln|value| plus its sign -- the currency of every
// large-dynamic-range product in the radial/angular assembly.  sign == 0
// encodes an exact zero (log_abs is then -inf).
struct SignedLog {
    double log_abs = -std::numeric_limits<double>::infinity();
    int sign = 0;

    double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
};

// Validated non-negative real order for Bessel evaluation.  Imaginary order
// (supercritical alpha) is rejected upstream and never reaches this type.
class RealOrder {
  public:
    explicit RealOrder(double v) : v_(v) {
        if (!std::isfinite(v) || v < 0.0)
            throw DomainError("RealOrder: order must be finite and >= 0");
    }
    double value() const { return v_; }

  private:
    double v_;
};

// ln|Gamma(x)| with the sign of Gamma(x).  Throws DomainError at the poles
// x = 0, -1, -2, ...  Relative accuracy a few ulp over [1e-3, 1e3].
SignedLog ln_gamma(double x);

// 1/Gamma(x), entire: exactly 0 at non-positive integers, sign alternating
// between consecutive poles (which is what the spectrum bisection exploits).
double recip_gamma(double x) noexcept;

// ln I_nu(x) for real order nu >= 0, x > 0, safe against overflow for any x
// a double can hold (the kernel needs arguments up to ~1e4 near z -> 0 and
// far beyond at coincident radii).
double bessel_i_log(RealOrder order, double x);

// Kummer confluent M(a,b,z) by ascending series, z >= 0.  Relative accuracy
// ~1e-13 for |z| <= 50.  The _log form carries the result as SignedLog and
// never overflows.
double kummer_m(double a, double b, double z);
SignedLog kummer_m_log(double a, double b, double z);

// Tricomi U(a,b,z) for a > 0, z > 0, by double-exponential quadrature of the
// Laplace integral U = (1/Gamma(a)) Int_0^inf e^{-zt} t^{a-1} (1+t)^{b-a-1} dt.
// U > 0 throughout this domain, so the _log form is a plain log.
double kummer_u(double a, double b, double z);
double kummer_u_log(double a, double b, double z);

// Whittaker functions via the Kummer pair:
//   M_{kappa,mu}(z) = e^{-z/2} z^{mu+1/2} M(mu-kappa+1/2, 1+2mu, z)
//   W_{kappa,mu}(z) = e^{-z/2} z^{mu+1/2} U(mu-kappa+1/2, 1+2mu, z)
// whittaker_w requires mu - kappa + 1/2 > 0 (the pre-pole regime of the
// Laplace integral); the bound-state spectrum is found analytically instead
// of ever driving W toward a pole.
double whittaker_m(double kappa, double mu, double z);
double whittaker_w(double kappa, double mu, double z);
SignedLog whittaker_m_log(double kappa, double mu, double z);
double whittaker_w_log(double kappa, double mu, double z);

// Jacobi polynomial P_q^{(a,a)}(x) with equal real parameters a > -1, by the
// three-term degree recurrence.  Exact-polynomial accuracy through q <= 60,
// a <= 40 (the practical truncation window).
double jacobi_p(int q, double a, double x);

// Associated Legendre P_l^k(x) in the Condon-Shortley convention
//   P_k^k(x) = (-1)^k (2k-1)!! (1-x^2)^{k/2},
// which is the convention in which the half-angle Jacobi identity
//   P_l^k(cos t) = (-1)^k [Gamma(1+k+l)/Gamma(1+l)]
//                  (cos t/2 sin t/2)^k P_{l-k}^{(k,k)}(cos t)
// holds as written (locked by test).  Negative k via the standard reflection;
// requires |k| <= l.
double assoc_legendre(int l, int k, double x);

// Legendre polynomial P_l(x) (the k = 0 case above).
double legendre_p(int l, double x);

}  // namespace abcgf
