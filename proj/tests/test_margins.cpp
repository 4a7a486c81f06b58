#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "archvol/errors.hpp"
#include "archvol/generator.hpp"
#include "archvol/io.hpp"
#include "archvol/margins.hpp"

using namespace archvol;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

StepDistribution bernoulli_half() {
    return StepDistribution({0.0, 1.0}, {0.5, 1.0});
}

} // namespace

TEST_CASE("step cdf is a right-continuous step function") {
    const StepDistribution f = bernoulli_half();
    CHECK(f.cdf(0.0) == 0.5); // right-continuous at the jump
    CHECK(f.cdf(-0.5) == 0.0);
    CHECK(f.cdf(0.999) == 0.5); // flat between jumps
    CHECK(f.cdf(1.0) == 1.0);
    CHECK(f.cdf(7.0) == 1.0);
    CHECK(f.cdf(-kInf) == 0.0);
    CHECK(f.cdf(kInf) == 1.0);
    CHECK(f.mass(0) == 0.5);
    CHECK(f.mass(1) == 0.5);
}

TEST_CASE("step distribution validation") {
    CHECK_THROWS_AS(StepDistribution({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(StepDistribution({0.0, 0.0}, {0.5, 1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(StepDistribution({0.0, 1.0}, {0.5, 0.9}),
                    std::invalid_argument); // last must be 1
    CHECK_THROWS_AS(StepDistribution({0.0, 1.0}, {0.7, 0.5}),
                    std::invalid_argument); // decreasing
    CHECK_THROWS_AS(StepDistribution({0.0}, {0.0}), std::invalid_argument);
    CHECK_NOTHROW(StepDistribution({3.0}, {1.0})); // single point mass
}

TEST_CASE("joint cdf composes the copula with the margins") {
    const Generator c1 = Generator::clayton(1.0);
    const std::vector<StepDistribution> margins{bernoulli_half(),
                                                bernoulli_half()};
    CHECK(std::fabs(joint_cdf(c1, margins, std::vector<double>{0.0, 0.0}) -
                    1.0 / 3.0) <= 1e-16);
    CHECK(joint_cdf(c1, margins, std::vector<double>{-kInf, 123.0}) == 0.0);

    const Generator ind = Generator::independence();
    CHECK(std::fabs(joint_cdf(ind, margins, std::vector<double>{0.0, 0.0}) -
                    0.25) <= 1e-15);

    CHECK_THROWS_AS(
        (void)joint_cdf(c1, margins, std::vector<double>{0.0, 0.0, 0.0}),
        std::invalid_argument);
}

TEST_CASE("pmf table for clayton Bernoulli margins") {
    const Generator c1 = Generator::clayton(1.0);
    const JointGrid grid =
        pmf_table(c1, {bernoulli_half(), bernoulli_half()});
    REQUIRE(grid.shape == std::vector<std::size_t>{2, 2});
    // p00 = C(1/2,1/2) = 1/3; p01 = p10 = 1/2 - 1/3 = 1/6; p11 closes to 1
    CHECK(std::fabs(grid.cells[0] - 1.0 / 3.0) <= 1e-12);
    CHECK(std::fabs(grid.cells[1] - 1.0 / 6.0) <= 1e-12);
    CHECK(std::fabs(grid.cells[2] - 1.0 / 6.0) <= 1e-12);
    CHECK(std::fabs(grid.cells[3] - 1.0 / 3.0) <= 1e-12);
    CHECK(std::fabs(grid.total_mass() - 1.0) <= 1e-12);

    const std::size_t idx[2] = {1, 1};
    CHECK(grid.cell(idx) == grid.cells[3]);
}

TEST_CASE("pmf table for independence is the product of masses") {
    const Generator ind = Generator::independence();
    const JointGrid grid =
        pmf_table(ind, {bernoulli_half(), bernoulli_half()});
    for (double cell : grid.cells) CHECK(std::fabs(cell - 0.25) <= 1e-12);
}

TEST_CASE("pmf table with single point masses is [[1]]") {
    const Generator g = Generator::frank(-5.0);
    const JointGrid grid = pmf_table(
        g, {StepDistribution({2.0}, {1.0}), StepDistribution({-4.0}, {1.0})});
    REQUIRE(grid.cells.size() == 1);
    CHECK(grid.cells[0] == 1.0);
}

TEST_CASE("pmf margin recovery") {
    const Generator g = Generator::gumbel(2.0);
    const StepDistribution fx({-1.0, 0.0, 2.5}, {0.3, 0.55, 1.0});
    const StepDistribution fy({0.0, 10.0}, {0.4, 1.0});
    const JointGrid grid = pmf_table(g, {fx, fy});
    for (std::size_t i = 0; i < 3; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < 2; ++j) row += grid.cells[i * 2 + j];
        CHECK(std::fabs(row - fx.mass(i)) <= 1e-12);
    }
    for (std::size_t j = 0; j < 2; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < 3; ++i) col += grid.cells[i * 2 + j];
        CHECK(std::fabs(col - fy.mass(j)) <= 1e-12);
    }
}

TEST_CASE("pmf recovery holds on a larger grid") {
    std::vector<double> xs(30), fs(30), ys(17), gs(17);
    for (int i = 0; i < 30; ++i) {
        xs[i] = 0.3 * i;
        fs[i] = (i + 1) / 30.0;
    }
    for (int j = 0; j < 17; ++j) {
        ys[j] = -2.0 + 0.5 * j;
        gs[j] = (j + 1) / 17.0;
    }
    const StepDistribution fx(xs, fs), fy(ys, gs);
    const Generator g = Generator::frank(-1.0);
    const JointGrid grid = pmf_table(g, {fx, fy});
    CHECK(std::fabs(grid.total_mass() - 1.0) <= 1e-12);
    CHECK(grid.min_cell() >= 0.0);
    for (std::size_t i = 0; i < 30; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < 17; ++j) row += grid.cells[i * 17 + j];
        CHECK(std::fabs(row - fx.mass(i)) <= 1e-12);
    }
}

TEST_CASE("pmf capacity limits") {
    const Generator c1 = Generator::clayton(1.0);
    std::vector<double> xs(4000), fs(4000);
    for (int i = 0; i < 4000; ++i) {
        xs[i] = i;
        fs[i] = (i + 1) / 4000.0;
    }
    const StepDistribution big(xs, fs);
    CHECK_THROWS_WITH_AS((void)pmf_table(c1, {big, big}),
                         doctest::Contains("capacity"),
                         std::invalid_argument);
    CHECK_THROWS_AS((void)pmf_table(c1, {bernoulli_half()}),
                    std::invalid_argument);
}

TEST_CASE("certify passes a valid grid") {
    const Generator c1 = Generator::clayton(1.0);
    const JointGrid grid =
        pmf_table(c1, {bernoulli_half(), bernoulli_half()});
    const CertReport report = certify_df_axioms(grid, 10'000, 424242);
    CHECK(report.grounded_ok);
    CHECK(report.right_continuous_ok);
    CHECK(report.boxes_checked == 10'000);
    CHECK(report.box_violations == 0);
    CHECK(report.pass());
}

TEST_CASE("certify is vacuous on boxes when none are sampled") {
    const Generator ind = Generator::independence();
    const JointGrid grid =
        pmf_table(ind, {bernoulli_half(), bernoulli_half()});
    const CertReport report = certify_df_axioms(grid, 0, 1);
    CHECK(report.pass());
    CHECK(report.boxes_checked == 0);
}

TEST_CASE("certify fails a hand-built table with a negative cell") {
    const JointGrid bad{Generator::clayton(1.0),
                        {bernoulli_half(), bernoulli_half()},
                        {2, 2},
                        {0.5, -0.1, 0.3, 0.3},
                        0};
    const CertReport report = certify_df_axioms(bad, 4000, 99);
    CHECK_FALSE(report.pass());
    CHECK(report.box_violations > 0);
    REQUIRE_FALSE(report.counterexamples.empty());
    CHECK(report.counterexamples[0].volume < -1e-12);
}

TEST_CASE("pmf_table is consistent for uneven margins") {
    const Generator g = Generator::frank(5.0);
    const JointGrid grid = pmf_table(
        g, {StepDistribution({0.0, 1.0, 2.0}, {0.2, 0.8, 1.0}),
            StepDistribution({5.0, 6.0}, {0.5, 1.0})});
    CHECK(std::fabs(grid.total_mass() - 1.0) <= 1e-12);
    CHECK(grid.min_cell() >= 0.0);
}

TEST_CASE("margin parsing: CSV and JSON") {
    std::istringstream csv("x,F\n0.0,0.5\n1.0,1.0\n");
    const StepDistribution f = step_from_csv(csv);
    CHECK(f.jump_count() == 2);
    CHECK(f.cdf(0.5) == 0.5);

    std::istringstream headerless("0.0,0.5\n1.0,1.0\n");
    CHECK(step_from_csv(headerless).jump_count() == 2);

    const StepDistribution g =
        step_from_json(R"({"jumps": [[0.0, 0.5], [1.0, 1.0]]})");
    CHECK(g.cdf(0.0) == 0.5);

    std::istringstream bad("0.0;0.5\n");
    CHECK_THROWS_AS((void)step_from_csv(bad), std::invalid_argument);
    CHECK_THROWS_AS((void)step_from_json(R"({"jumps": [[0.0]]})"),
                    std::invalid_argument);
}

TEST_CASE("pmf CSV rows carry indices, support points and probability") {
    const Generator ind = Generator::independence();
    const JointGrid grid =
        pmf_table(ind, {bernoulli_half(), bernoulli_half()});
    std::ostringstream out;
    write_pmf_csv(out, grid);
    const std::string text = out.str();
    CHECK(text.find("i0,i1,x0,x1,prob\n") == 0);
    CHECK(text.find("0,0,0,0,0.25") != std::string::npos);
    CHECK(text.find("1,1,1,1,0.25") != std::string::npos);

    const CertReport report = certify_df_axioms(grid, 100, 5);
    const std::string summary = pmf_summary_json(grid, report);
    CHECK(summary.find("\"total_mass\":1") != std::string::npos);
    CHECK(summary.find("\"certified\":true") != std::string::npos);
}
