#include "archvol/generator.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace archvol {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBisectTol = 1e-12;
constexpr int kBisectMaxIter = 200;

void require_unit(double t, const char* what) {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::domain_error(std::string(what) + " must lie in [0,1]");
}

// log(1 - e^{-x}) for x > 0 without cancellation on either end
double log1mexp(double x) {
    return x > 0.693147180559945 ? std::log1p(-std::exp(-x))
                                 : std::log(-std::expm1(-x));
}

} // namespace

std::string_view family_name(Family f) {
    switch (f) {
    case Family::clayton: return "clayton";
    case Family::gumbel: return "gumbel";
    case Family::frank: return "frank";
    case Family::independence: return "independence";
    }
    throw std::logic_error("unknown Family value");
}

Family family_from_name(std::string_view name) {
    if (name == "clayton") return Family::clayton;
    if (name == "gumbel") return Family::gumbel;
    if (name == "frank") return Family::frank;
    if (name == "independence") return Family::independence;
    throw std::invalid_argument(
        "unknown generator family '" + std::string(name) +
        "'; expected one of clayton, gumbel, frank, independence");
}

Generator Generator::clayton(double theta) {
    if (!(theta >= -1.0) || theta == 0.0 || std::isinf(theta))
        throw std::invalid_argument(
            "clayton requires finite theta >= -1 and theta != 0");
    // theta > 0 is strict; for theta in [-1,0), phi(0) = -1/theta.
    const double phi0 = theta > 0.0 ? kInf : -1.0 / theta;
    return Generator(Family::clayton, theta, phi0);
}

Generator Generator::gumbel(double theta) {
    if (!(theta >= 1.0) || std::isinf(theta))
        throw std::invalid_argument("gumbel requires finite theta >= 1");
    return Generator(Family::gumbel, theta, kInf);
}

Generator Generator::frank(double theta) {
    if (!(theta != 0.0) || std::isnan(theta) || std::isinf(theta))
        throw std::invalid_argument("frank requires finite theta != 0");
    return Generator(Family::frank, theta, kInf);
}

Generator Generator::independence() {
    return Generator(Family::independence, 0.0, kInf);
}

Generator Generator::make(Family family, double theta) {
    switch (family) {
    case Family::clayton: return clayton(theta);
    case Family::gumbel: return gumbel(theta);
    case Family::frank: return frank(theta);
    case Family::independence: return independence();
    }
    throw std::logic_error("unknown Family value");
}

bool Generator::strict() const noexcept { return std::isinf(phi0_); }

double Generator::phi(double t) const {
    require_unit(t, "phi argument");
    if (t == 1.0) return 0.0;
    switch (family_) {
    case Family::clayton:
        // (t^{-theta} - 1)/theta; expm1 keeps precision for small |theta|
        // and yields the exact finite phi(0) = -1/theta when theta < 0.
        return std::expm1(-theta_ * std::log(t)) / theta_;
    case Family::gumbel:
        return std::pow(-std::log(t), theta_);
    case Family::frank: {
        // -log((1 - e^{-theta t})/(1 - e^{-theta})) evaluated in log
        // space: the direct expm1 ratio collapses to 1 once theta*t
        // exceeds ~37 and overflows for theta < -709.
        if (theta_ > 0.0)
            return log1mexp(theta_) - log1mexp(theta_ * t);
        const double b = -theta_;
        return b * (1.0 - t) + log1mexp(b) - log1mexp(b * t);
    }
    case Family::independence:
        return -std::log(t);
    }
    throw std::logic_error("unknown Family value");
}

double Generator::phi_inverse(double y) const {
    if (!(y >= 0.0))
        throw std::domain_error("phi_inverse argument must be >= 0");
    if (y > phi0_)
        throw std::domain_error(
            "phi_inverse argument exceeds phi(0); use pseudo_inverse");
    if (y == 0.0) return 1.0; // phi(1) = 0 and phi strictly decreasing
    if (std::isinf(y)) return 0.0;
    switch (family_) {
    case Family::clayton: {
        const double b = theta_ * y;
        if (b <= -1.0) return 0.0; // rounding at the non-strict boundary
        return std::exp(-std::log1p(b) / theta_);
    }
    case Family::gumbel:
        return std::exp(-std::pow(y, 1.0 / theta_));
    case Family::frank: {
        if (theta_ > 37.0) {
            // expm1(-theta) rounds to -1 here and the log1p form loses
            // the e^{-theta} correction that can dominate tiny y; both
            // terms below are positive, no cancellation.
            return -std::log(-std::expm1(-y) + std::exp(-y - theta_)) /
                   theta_;
        }
        const double b = -theta_;
        if (b > 690.0) {
            // e^{-y} expm1(b) would overflow; same quantity with the
            // large exponential factored out of the log1p.
            const double z = b - y;
            if (z >= 0.0)
                return (z + std::log1p(std::exp(-z) - std::exp(-b))) / b;
            return std::log1p(std::exp(z) - std::exp(-y)) / b;
        }
        return -std::log1p(std::exp(-y) * std::expm1(-theta_)) / theta_;
    }
    case Family::independence:
        return std::exp(-y);
    }
    throw std::logic_error("unknown Family value");
}

double Generator::phi_inverse_bisect(double y) const {
    if (!(y >= 0.0))
        throw std::domain_error("phi_inverse_bisect argument must be >= 0");
    if (y > phi0_)
        throw std::domain_error(
            "phi_inverse_bisect argument exceeds phi(0): bracket [0,1] "
            "does not contain a root");
    if (y == 0.0) return 1.0;
    if (std::isinf(y)) return 0.0;

    // phi is strictly decreasing, so [0,1] brackets the root:
    // phi(0) >= y >= phi(1) = 0. Endpoints are never evaluated, which
    // keeps the strict case (phi(0) = +inf) out of the arithmetic.
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < kBisectMaxIter; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= kBisectTol) return mid;
        const double fm = phi(mid);
        if (fm == y) return mid;
        if (fm > y)
            lo = mid;
        else
            hi = mid;
    }
    throw std::runtime_error("phi_inverse_bisect: iteration cap reached");
}

double Generator::pseudo_inverse(double x) const {
    if (!(x >= 0.0))
        throw std::domain_error("pseudo_inverse argument must be >= 0");
    if (x > phi0_) return 0.0;
    return phi_inverse(x);
}

std::string Generator::describe() const {
    if (family_ == Family::independence) return "independence";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s(theta=%g)",
                  std::string(family_name(family_)).c_str(), theta_);
    return buf;
}

} // namespace archvol
