#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "archvol/copula.hpp"
#include "archvol/errors.hpp"
#include "archvol/generator.hpp"
#include "archvol/io.hpp"
#include "archvol/volume.hpp"

using namespace archvol;

namespace {

double product_oracle(const Box& box) {
    double v = 1.0;
    for (std::size_t k = 0; k < box.dim(); ++k)
        v *= box.upper[k] - box.lower[k];
    return v;
}

Box random_unit_box(std::mt19937_64& rng, std::size_t d, double lo = 0.0) {
    std::uniform_real_distribution<double> unit(lo, 1.0);
    std::vector<double> a(d), b(d);
    for (std::size_t k = 0; k < d; ++k) {
        double x = unit(rng), y = unit(rng);
        if (x > y) std::swap(x, y);
        a[k] = x;
        b[k] = y;
    }
    return Box(a, b);
}

} // namespace

TEST_CASE("h_volume of the product copula is the box volume") {
    const Generator ind = Generator::independence();
    CHECK(copula_volume(ind, Box({0.2, 0.1}, {0.5, 0.4})) ==
          doctest::Approx(0.09).epsilon(1e-14));
    CHECK(copula_volume(ind, Box({0.0, 0.0, 0.0}, {0.5, 0.5, 0.5})) ==
          doctest::Approx(0.125).epsilon(1e-14));

    std::mt19937_64 rng(7);
    for (std::size_t d = 2; d <= 5; ++d) {
        for (int r = 0; r < 200; ++r) {
            const Box box = random_unit_box(rng, d, 0.01);
            CHECK(std::fabs(copula_volume(ind, box) - product_oracle(box)) <=
                  1e-12);
        }
    }
}

TEST_CASE("zero-width boxes have exactly zero volume") {
    const Generator g = Generator::gumbel(2.0);
    CHECK(copula_volume(g, Box({0.3, 0.1}, {0.3, 0.9})) == 0.0);
    CHECK(copula_volume(g, Box({0.0, 0.5}, {1.0, 0.5})) == 0.0);
    const auto violations = d_increasing_check(
        g,
        std::vector<Box>{Box({0.2, 0.2}, {0.2, 0.7}),
                         Box({0.1, 0.4}, {0.9, 0.4})},
        0.0);
    CHECK(violations.empty());
}

TEST_CASE("grounded box volume equals the corner value") {
    const Generator c1 = Generator::clayton(1.0);
    const double v = copula_volume(c1, Box({0.0, 0.0}, {0.5, 1.0 / 3.0}));
    CHECK(v == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(v == doctest::Approx(cdf_bivariate(c1, 0.5, 1.0 / 3.0))
                   .epsilon(1e-16));
}

TEST_CASE("vertex signs cancel for constant H") {
    std::mt19937_64 rng(11);
    for (std::size_t d = 1; d <= 8; ++d) {
        const Box box = random_unit_box(rng, d);
        CHECK(h_volume([](std::span<const double>) { return 0.625; }, box) ==
              0.0);
    }
}

TEST_CASE("dimension cap and box validation") {
    std::vector<double> lo(21, 0.0), hi(21, 1.0);
    CHECK_THROWS_AS((void)h_volume(
                        [](std::span<const double>) { return 0.0; },
                        Box(lo, hi)),
                    std::invalid_argument);
    CHECK_THROWS_AS(Box({0.0, 0.0}, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(Box({0.5}, {0.4}), std::invalid_argument);
    CHECK_THROWS_AS(Box({}, {}), std::invalid_argument);

    // a copula evaluator needs d >= 2, so a 1-d box is a mismatch
    CHECK_THROWS_AS(
        (void)copula_volume(Generator::clayton(1.0), Box({0.2}, {0.5})),
        std::invalid_argument);
}

TEST_CASE("partition sums telescope to the corner value") {
    const Generator c1 = Generator::clayton(1.0);
    const Partition2D part({0.0, 0.3, 0.6}, {0.0, 0.3, 0.6});
    CHECK(std::fabs(partition_volume_sum(c1, part) - 3.0 / 7.0) <= 1e-15);

    // single-cell partition: grounded corners vanish
    for (const Generator& g :
         {Generator::clayton(2.0), Generator::frank(-5.0),
          Generator::gumbel(1.5)}) {
        const Partition2D trivial({0.0, 0.7}, {0.0, 0.42});
        CHECK(partition_volume_sum(g, trivial) ==
              doctest::Approx(cdf_bivariate(g, 0.7, 0.42)).epsilon(1e-16));
    }

    // uniform 100x100 grid over [0, 0.5]^2 under independence: the
    // product-copula volume is the box area 0.5 * 0.5
    std::vector<double> cuts;
    for (int i = 0; i <= 100; ++i) cuts.push_back(0.5 * i / 100.0);
    const Generator ind = Generator::independence();
    CHECK(std::fabs(partition_volume_sum(ind, Partition2D(cuts, cuts)) -
                    0.25) <= 1e-12);
}

TEST_CASE("partition refinement leaves the sum unchanged") {
    const Generator g = Generator::gumbel(2.0);
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int r = 0; r < 50; ++r) {
        const double u = 0.1 + 0.8 * unit(rng);
        const double v = 0.1 + 0.8 * unit(rng);
        std::vector<double> uc{0.0, u / 3.0, u}, vc{0.0, v / 2.0, v};
        const double base = partition_volume_sum(g, Partition2D(uc, vc));
        uc.insert(uc.begin() + 1, u / 7.0);
        vc.insert(vc.begin() + 2, 0.8 * v);
        const double refined = partition_volume_sum(g, Partition2D(uc, vc));
        CHECK(std::fabs(refined - base) <= 1e-12);
        CHECK(std::fabs(base - cdf_bivariate(g, u, v)) <= 1e-12);
    }
}

TEST_CASE("partition grids are validated") {
    CHECK_THROWS_AS(Partition2D({0.1, 0.5}, {0.0, 0.5}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Partition2D({0.0, 0.5, 0.5}, {0.0, 0.5}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Partition2D({0.0}, {0.0, 0.5}), std::invalid_argument);
    CHECK_THROWS_AS(Partition2D({0.0, 1.2}, {0.0, 0.5}),
                    std::invalid_argument);
}

TEST_CASE("d_increasing_check accepts valid copulas and catches max(u,v)") {
    const Generator c1 = Generator::clayton(1.0);
    std::mt19937_64 rng(42);
    std::vector<Box> boxes;
    for (int r = 0; r < 2000; ++r) boxes.push_back(random_unit_box(rng, 2));
    CHECK(d_increasing_check(c1, boxes, 1e-12).empty());

    // negative control: max(u,v) is not 2-increasing
    const auto violations = d_increasing_check(
        [](std::span<const double> x) { return std::max(x[0], x[1]); },
        std::vector<Box>{Box({0.2, 0.2}, {0.8, 0.8})}, 1e-12);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].volume == doctest::Approx(-0.6).epsilon(1e-15));
}

TEST_CASE("recursive volume follows the C-power sequence") {
    const Generator c1 = Generator::clayton(1.0);
    CHECK(std::fabs(recursive_volume(c1, 0.5, 1) - 1.0 / 3.0) <= 1e-15);
    CHECK(std::fabs(recursive_volume(c1, 0.5, 3) - 0.2) <= 1e-15);

    const Generator ind = Generator::independence();
    CHECK(recursive_volume(ind, 0.5, 10) ==
          doctest::Approx(std::ldexp(1.0, -11)).epsilon(1e-13));

    CHECK_THROWS_AS((void)recursive_volume(c1, 0.0, 3), idempotent_error);
    CHECK_THROWS_AS((void)recursive_volume(c1, 1.0, 3), idempotent_error);
}

TEST_CASE("violation records serialize to JSON, infinities quoted") {
    const VolumeViolation v{Box({0.2, 0.2}, {0.8, 0.8}), -0.6};
    CHECK(violation_to_json(v) ==
          "{\"box\":[[0.20000000000000001,0.20000000000000001],"
          "[0.80000000000000004,0.80000000000000004]],\"volume\":-0.59999999"
          "999999998}");

    const double inf = std::numeric_limits<double>::infinity();
    const VolumeViolation open_below{Box({-inf, 0.0}, {1.0, 2.0}), -0.25};
    const std::string text = violation_to_json(open_below);
    CHECK(text.find("\"-inf\"") != std::string::npos);
    CHECK(text.find("\"volume\":-0.25") != std::string::npos);
}

TEST_CASE("recursive volume is non-increasing and vanishes") {
    for (const Generator& g :
         {Generator::clayton(1.0), Generator::clayton(-0.5),
          Generator::gumbel(2.0), Generator::frank(5.0),
          Generator::independence()}) {
        CAPTURE(g.describe());
        double prev = recursive_volume(g, 0.6, 1);
        for (int n = 2; n <= 200; ++n) {
            const double cur = recursive_volume(g, 0.6, n);
            CHECK(cur <= prev + 1e-15);
            prev = cur;
        }
        CHECK(prev < 0.01);
    }
}
