#include "abcgf/params.hpp"

#include <cmath>
#include <sstream>

namespace abcgf {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Coordinates closer to the origin than this produce Bessel/Whittaker
// arguments the kernels cannot resolve in double precision.
constexpr double kMinRadius = 1e-8;

}  // namespace

void PhysicalParams::validate() const {
    if (!std::isfinite(alpha) || alpha < 0.0 || alpha >= 0.5) {
        std::ostringstream os;
        os << "PhysicalParams: alpha = " << alpha << " outside subcritical range [0, 1/2)";
        throw DomainError(os.str());
    }
    if (!std::isfinite(beta0)) throw DomainError("PhysicalParams: beta0 must be finite");
    if (!std::isfinite(energy) || energy <= 0.0 || energy >= 1.0) {
        std::ostringstream os;
        os << "PhysicalParams: energy = " << energy << " outside bound-state range (0, 1)";
        throw DomainError(os.str());
    }
}

double PhysicalParams::flux() const {
    if (!(alpha > 0.0))
        throw DomainError("PhysicalParams::flux: undefined at alpha = 0 (no charge)");
    return -2.0 * kPi * beta0 / std::sqrt(alpha);
}

void ChannelIndex::validate() const {
    if (q < 0) throw DomainError("ChannelIndex: q must be >= 0");
}

double ChannelIndex::angular_index(const PhysicalParams& p) const {
    return std::abs(double(k) + p.beta0);
}

double ChannelIndex::lambda(const PhysicalParams& p) const {
    return channel_lambda(q, k, p.alpha, p.beta0);
}

double channel_lambda(int q, int k, double alpha, double beta0) {
    if (q < 0) throw DomainError("channel_lambda: q must be >= 0");
    const double m_bar = std::abs(double(k) + beta0);
    const double s = 2.0 * (double(q) + m_bar) + 1.0;  // >= 1
    const double disc = (s - 2.0 * alpha) * (s + 2.0 * alpha);
    if (!(disc > 0.0))
        throw DomainError("channel_lambda: supercritical coupling, order not real");
    return std::sqrt(disc);
}

void SpacePoint::validate() const {
    if (!std::isfinite(r) || r < kMinRadius) {
        std::ostringstream os;
        os << "SpacePoint: r = " << r << " below minimum resolvable radius " << kMinRadius;
        throw DomainError(os.str());
    }
    if (!std::isfinite(theta) || theta <= 0.0 || theta >= kPi)
        throw DomainError("SpacePoint: theta must lie strictly inside (0, pi)");
    if (!std::isfinite(phi)) throw DomainError("SpacePoint: phi must be finite");
}

}  // namespace abcgf
