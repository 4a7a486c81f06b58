#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "archvol/generator.hpp"
#include "archvol/volume.hpp"

namespace archvol {

/// Purely discrete univariate distribution function: finitely many jumps
/// x_1 < ... < x_r with F(x_i) non-decreasing, F(x_1) > 0, F(x_r) = 1.
/// Evaluation is the right-continuous step F(x) = F(x_i) for
/// x in [x_i, x_{i+1}), 0 below x_1.
class StepDistribution {
public:
    StepDistribution(std::vector<double> jump_points,
                     std::vector<double> cdf_values);

    double cdf(double x) const; // right-continuous; cdf(-inf)=0, cdf(+inf)=1

    std::size_t jump_count() const noexcept { return jumps_.size(); }
    std::span<const double> jump_points() const noexcept { return jumps_; }
    std::span<const double> cdf_values() const noexcept { return values_; }

    /// Probability mass of the i-th atom: F(x_i) - F(x_{i-1}).
    double mass(std::size_t i) const;

private:
    std::vector<double> jumps_;
    std::vector<double> values_;
};

/// H(x) = C(F_1(x_1), ..., F_d(x_d)): the joint d.f. composed from a
/// copula and the given margins. Grounded and right-continuous in each
/// coordinate by construction; coordinates may be +-inf.
double joint_cdf(const Generator& g,
                 std::span<const StepDistribution> margins,
                 std::span<const double> x);

/// Joint probability table over the product of the margins' atoms.
/// cells is row-major over shape (r_1, ..., r_d); cell (i_1,...,i_d)
/// holds the H-volume of the half-open box bracketing that support
/// combination. clamped_cells counts cells in [-1e-12, 0) that were
/// clamped to 0.
struct JointGrid {
    Generator generator;
    std::vector<StepDistribution> margins;
    std::vector<std::size_t> shape;
    std::vector<double> cells;
    std::size_t clamped_cells = 0;

    std::size_t cell_count() const noexcept { return cells.size(); }
    double cell(std::span<const std::size_t> index) const;
    double total_mass() const;
    double min_cell() const;
};

/// Build the JointGrid through h_volume of the composed H over
/// jump-aligned boxes. Requires d <= 20 and at most 10^7 cells. Throws
/// verification_error if a cell falls below -1e-12 or the total mass is
/// off 1 by more than 1e-12: the composed H must be a valid d.f.
JointGrid pmf_table(const Generator& g,
                    std::vector<StepDistribution> margins);

/// Result of checking the distribution-function axioms on the d.f.
/// induced by a JointGrid's table.
struct CertReport {
    bool grounded_ok = false;
    bool right_continuous_ok = false;
    std::size_t boxes_checked = 0;
    std::size_t box_violations = 0;
    std::vector<VolumeViolation> counterexamples; // at most 8 kept
    std::string detail;                           // first failure description

    bool pass() const {
        return grounded_ok && right_continuous_ok && box_violations == 0;
    }
};

/// Certify the d.f. axioms on the grid-induced H: groundedness at
/// -inf-extended corners, right-continuity at every jump along each axis
/// (right limit probed just past the jump), and V_H >= -1e-12 on
/// sample_boxes seeded random boxes (mixing jump-aligned and arbitrary
/// corners). sample_boxes = 0 skips the box sampling. Failures are data
/// in the report, never exceptions.
CertReport certify_df_axioms(const JointGrid& grid, std::size_t sample_boxes,
                             std::uint64_t seed);

} // namespace archvol
