#pragma once

#include <string>
#include <string_view>

namespace archvol {

/// Archimedean generator families shipped with the library.
enum class Family { clayton, gumbel, frank, independence };

std::string_view family_name(Family f);
Family family_from_name(std::string_view name);

/// A parametric Archimedean generator phi: [0,1] -> [0, phi(0)].
///
/// phi is continuous, strictly decreasing, and phi(1) = 0. A generator is
/// strict when phi(0) = +inf; then the pseudo-inverse coincides with the
/// true inverse. Parameter admissibility is checked at construction:
///
///   clayton:      theta >= -1, theta != 0   (non-strict for theta < 0)
///   gumbel:       theta >= 1
///   frank:        theta != 0
///   independence: no parameter (phi(t) = -log t)
///
/// Values are immutable; every member function is a pure function of
/// (family, theta) and its arguments, safe for concurrent use.
///
/// Extreme theta is accepted but bounded by double precision: once
/// phi(t) falls below the smallest subnormal (frank needs |theta|
/// beyond ~700 for that) the tail saturates toward the Frechet limits.
class Generator {
public:
    static Generator clayton(double theta);
    static Generator gumbel(double theta);
    static Generator frank(double theta);
    static Generator independence();
    static Generator make(Family family, double theta);

    Family family() const noexcept { return family_; }
    double theta() const noexcept { return theta_; }

    /// phi(0), +inf for strict generators.
    double phi_at_zero() const noexcept { return phi0_; }
    bool strict() const noexcept;

    /// Evaluate phi(t). Throws std::domain_error for t outside [0,1].
    /// phi(1) = 0 exactly; phi(0) = +inf for strict generators.
    double phi(double t) const;

    /// Inverse of phi on [0, phi(0)], by the family's closed form.
    /// Throws std::domain_error for y < 0 or y > phi(0); callers that may
    /// exceed phi(0) should use pseudo_inverse. phi_inverse(0) = 1 exactly.
    double phi_inverse(double y) const;

    /// Same inverse computed by monotone bisection on [0,1] to absolute
    /// tolerance 1e-12 in t (hard cap 200 iterations). Kept as an
    /// independent numeric route for cross-checking the closed forms.
    double phi_inverse_bisect(double y) const;

    /// Pseudo-inverse: phi_inverse(x) for x <= phi(0), 0 beyond.
    /// Accepts any x >= 0 including +inf; non-increasing in x.
    double pseudo_inverse(double x) const;

    /// "clayton(theta=1)" style tag used in diagnostics and reports.
    std::string describe() const;

private:
    Generator(Family family, double theta, double phi0)
        : family_(family), theta_(theta), phi0_(phi0) {}

    Family family_;
    double theta_;
    double phi0_;
};

} // namespace archvol
