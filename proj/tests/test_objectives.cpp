#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "dpde/objectives.hpp"
#include "dpde/rng.hpp"

using namespace dpde;

TEST_CASE("known optima evaluate to zero at several dimensions") {
    for (int d : {2, 10, 50, 100}) {
        const std::vector<double> zeros(static_cast<std::size_t>(d), 0.0);
        const std::vector<double> ones(static_cast<std::size_t>(d), 1.0);
        CHECK(std::abs(ackley(zeros)) <= 1e-12);
        CHECK(std::abs(griewank(zeros)) <= 1e-12);
        CHECK(std::abs(rosenbrock(ones)) <= 1e-12);
    }
}

TEST_CASE("ackley: spot value at (1,1)") {
    const std::vector<double> x{1.0, 1.0};
    // mean square is 1, the cosine term cancels against +e
    const double expected = 20.0 * (1.0 - std::exp(-0.02));
    CHECK(std::abs(ackley(x) - expected) <= 1e-9);
}

TEST_CASE("ackley: coordinate permutations leave the value unchanged") {
    const std::vector<double> a{1.5, -2.0};
    const std::vector<double> b{-2.0, 1.5};
    CHECK(ackley(a) == ackley(b));
    const std::vector<double> c{0.5, 1.0, -3.0, 2.0, 7.5};
    const std::vector<double> d{7.5, -3.0, 2.0, 1.0, 0.5};
    CHECK(std::abs(ackley(c) - ackley(d)) <= 1e-12);
}

TEST_CASE("griewank: spot values and lower bound") {
    const std::vector<double> zero1{0.0};
    CHECK(std::abs(griewank(zero1)) <= 1e-12);

    const double two_pi = 2.0 * std::numbers::pi;
    const std::vector<double> x{two_pi};
    const double expected = two_pi * two_pi / 4000.0 - std::cos(two_pi) + 1.0;
    CHECK(std::abs(griewank(x) - expected) <= 1e-12);
    CHECK(expected == doctest::Approx(0.009870).epsilon(1e-3));

    RngStream rng(5);
    for (int k = 0; k < 200; ++k) {
        std::vector<double> pt(7);
        for (double& v : pt) {
            v = rng.next_open01() * 800.0 - 400.0;
        }
        CHECK(griewank(pt) > -1.0);
    }
}

TEST_CASE("rosenbrock: spot values and nonnegativity") {
    const std::vector<double> origin{0.0, 0.0};
    CHECK(rosenbrock(origin) == 1.0);

    RngStream rng(6);
    for (int k = 0; k < 200; ++k) {
        std::vector<double> pt(5);
        for (double& v : pt) {
            v = rng.next_open01() * 10.24 - 5.12;
        }
        CHECK(rosenbrock(pt) >= 0.0);
    }
    const std::vector<double> single{1.0};
    CHECK_THROWS_AS(rosenbrock(single), std::invalid_argument);
}

TEST_CASE("evaluate_batch equals the row loop exactly") {
    const Objective obj = make_objective("griewank", 6);
    Matrix genomes(10, 6);
    RngStream rng(7);
    for (double& v : genomes.storage()) {
        v = rng.next_open01() * 800.0 - 400.0;
    }
    const auto batch = obj.evaluate_batch(genomes);
    const auto batch_mt = obj.evaluate_batch(genomes, 3);
    for (std::size_t i = 0; i < genomes.rows(); ++i) {
        REQUIRE(batch[i] == obj.evaluate_row(genomes.row(i)));
        REQUIRE(batch_mt[i] == batch[i]);
    }
}

TEST_CASE("evaluate_batch: identical rows give a constant vector") {
    const Objective obj = make_objective("ackley", 4);
    Matrix genomes(5, 4, 1.25);
    const auto batch = obj.evaluate_batch(genomes);
    for (double v : batch) {
        CHECK(v == batch[0]);
    }
}

TEST_CASE("evaluate_batch: rosenbrock on the [zeros; ones] stack") {
    const Objective obj = make_objective("rosenbrock", 2);
    Matrix genomes(2, 2);
    genomes(1, 0) = 1.0;
    genomes(1, 1) = 1.0;
    const auto batch = obj.evaluate_batch(genomes);
    CHECK(batch[0] == 1.0);
    CHECK(batch[1] == 0.0);
}

TEST_CASE("evaluate_batch: shape mismatch is rejected") {
    const Objective obj = make_objective("ackley", 4);
    Matrix genomes(3, 5);
    CHECK_THROWS_AS(obj.evaluate_batch(genomes), std::invalid_argument);
}

TEST_CASE("objective registry") {
    CHECK(make_objective("ackley", 3).lower()[0] == -30.0);
    CHECK(make_objective("griewank", 3).upper()[0] == 400.0);
    CHECK(make_objective("rosenbrock", 3).lower()[0] == -5.12);
    CHECK(make_objective("rosenbrock", 3).optimum_location()[0] == 1.0);
    CHECK_THROWS_AS(make_objective("sphere", 3), std::invalid_argument);
    CHECK_THROWS_AS(make_objective("Ackley", 3), std::invalid_argument); // lowercase only
    CHECK_THROWS_AS(make_objective("rosenbrock", 1), std::invalid_argument);
    CHECK(objective_names() == std::vector<std::string>{"ackley", "griewank", "rosenbrock"});
}
