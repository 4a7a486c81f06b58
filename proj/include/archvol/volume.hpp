#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "archvol/generator.hpp"

namespace archvol {

/// Evaluator for a d-dimensional function H used in volume computations.
using HEvaluator = std::function<double(std::span<const double>)>;

/// Axis-aligned box [lower, upper], lower_k <= upper_k. Zero-width sides
/// are allowed (the box then has volume 0 under any H).
struct Box {
    std::vector<double> lower;
    std::vector<double> upper;

    Box(std::vector<double> lo, std::vector<double> hi);
    std::size_t dim() const noexcept { return lower.size(); }
};

/// Grids 0 = u_0 < ... < u_m and 0 = v_0 < ... < v_p partitioning the
/// grounded box [0, u_m] x [0, v_p] into m*p cells.
struct Partition2D {
    std::vector<double> u_cuts;
    std::vector<double> v_cuts;

    Partition2D(std::vector<double> u, std::vector<double> v);
    std::size_t cells_u() const noexcept { return u_cuts.size() - 1; }
    std::size_t cells_v() const noexcept { return v_cuts.size() - 1; }
};

/// Signed vertex sum of H over the 2^d corners of the box: each vertex
/// takes sign +1 when it uses the lower endpoint on an even number of
/// axes, -1 otherwise. Vertices are visited in a fixed binary-counting
/// order, so the accumulation is deterministic. Boxes with any zero-width
/// side return 0 exactly. Dimension is capped at 20 (the sum has 2^d
/// terms by construction).
double h_volume(const HEvaluator& H, const Box& box);

/// h_volume of the copula C built from g.
double copula_volume(const Generator& g, const Box& box);

/// Sum of the four-corner cell volumes over every cell of the partition.
/// Telescopes mathematically to C(u_m, v_p); evaluating it cell by cell
/// is the finite form of the partition-additivity identity. Grid values
/// of C are computed once and reused, and the cell sum is compensated, so
/// the result stays within ~1e-15 of the single corner evaluation.
double partition_volume_sum(const Generator& g, const Partition2D& part);

struct VolumeViolation {
    Box box;
    double volume;
};

/// Boxes whose H-volume is below -tol. An empty result certifies
/// d-increasingness of H on the sample.
std::vector<VolumeViolation> d_increasing_check(const HEvaluator& H,
                                                std::span<const Box> boxes,
                                                double tol);
std::vector<VolumeViolation> d_increasing_check(const Generator& g,
                                                std::span<const Box> boxes,
                                                double tol);

/// V_C([0,u] x [0, f_n(u)]) where f_n is the n-th C-power of u: the
/// recursive volume, equal to f_{n+1}(u). Requires u in (0,1); the
/// idempotents have no diminishing volume sequence.
double recursive_volume(const Generator& g, double u, int n);

} // namespace archvol
