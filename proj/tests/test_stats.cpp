#include <doctest.h>

#include <cmath>

#include "dpde/manifest.hpp"
#include "dpde/rng.hpp"
#include "dpde/stats.hpp"

using namespace dpde;

TEST_CASE("chi_square_gof: accepts data drawn from the law itself") {
    const double cr = 0.5;
    const int d = 10;
    const GeometricLaw law = GeometricLaw::truncated(cr, d);

    int passes = 0;
    const int seeds = 100;
    for (int s = 0; s < seeds; ++s) {
        Histogram hist(d);
        for (int length : sample_lengths_batch(cr, d, 100000, RngStream(1000 + s))) {
            hist.add(length);
        }
        const auto gof = chi_square_gof(hist, law);
        passes += gof.p_value > 0.01;
    }
    // p is uniform for a correct sampler, so ~99 of 100 seeds pass; 95 leaves
    // comfortable slack against binomial fluctuation.
    CHECK(passes >= 95);
}

TEST_CASE("chi_square_gof: 10^6 direct samples at cr=0.5, d=10") {
    const double cr = 0.5;
    const int d = 10;
    Histogram hist(d);
    for (int length : sample_lengths_batch(cr, d, 1000000, RngStream(424242))) {
        hist.add(length);
    }
    const auto gof = chi_square_gof(hist, GeometricLaw::truncated(cr, d));
    CHECK(gof.p_value > 0.01);
}

TEST_CASE("chi_square_gof: grossly wrong data is rejected hard") {
    const int d = 10;
    Histogram hist(d);
    for (int k = 0; k < 100000; ++k) {
        hist.add(1);
    }
    const auto gof = chi_square_gof(hist, GeometricLaw::truncated(0.9, d));
    CHECK(gof.p_value < 1e-6);
}

TEST_CASE("chi_square_gof: rejects inadequate sample sizes") {
    const int d = 10;
    Histogram hist(d);
    for (int k = 0; k < 50; ++k) {
        hist.add(1);
    }
    CHECK_THROWS_AS(chi_square_gof(hist, GeometricLaw::truncated(0.5, d)),
                    std::invalid_argument);
}

TEST_CASE("compare_crossover_lengths: oracle and direct sampler agree") {
    const auto cmp = compare_crossover_lengths(0.2, 10, 100000, RngStream(7));
    CHECK(cmp.gof_exp.p_value > 0.01);
    CHECK(cmp.gof_nec.p_value > 0.01);
    CHECK(cmp.two_sample.p_value > 0.01);
    CHECK(cmp.hist_exp.total == 100000);
    CHECK(cmp.hist_nec.total == 100000);
}

TEST_CASE("compare_crossover_lengths: degenerate rates") {
    const auto zero = compare_crossover_lengths(0.0, 10, 20000, RngStream(8));
    CHECK(zero.hist_exp.counts[0] == 20000);
    CHECK(zero.hist_nec.counts[0] == 20000);
    CHECK(zero.two_sample.p_value == 1.0);

    const auto one = compare_crossover_lengths(1.0, 6, 20000, RngStream(9));
    CHECK(one.hist_exp.counts[5] == 20000);
    CHECK(one.hist_nec.counts[5] == 20000);

    CHECK_THROWS_AS(compare_crossover_lengths(0.5, 10, 100, RngStream(1)),
                    std::invalid_argument);
}

TEST_CASE("two_sample_chi_square separates shifted distributions") {
    Histogram a(5);
    Histogram b(5);
    RngStream rng(14);
    for (int k = 0; k < 50000; ++k) {
        RngStream s = rng.derive(static_cast<std::uint64_t>(k));
        a.add(sample_length(0.5, 5, s.next_open01()));
        const double u = s.next_open01();
        b.add(sample_length(0.5, 5, u * u)); // biased draw
    }
    CHECK(two_sample_chi_square(a, b).p_value < 1e-6);
}

TEST_CASE("TimingReport summarizes samples correctly") {
    const auto report = TimingReport::from_samples("demo", {3.0, 1.0, 2.0, 5.0, 4.0});
    CHECK(report.repeats == 5);
    CHECK(report.median == 3.0);
    CHECK(report.mean == 3.0);
    CHECK(report.min == 1.0);
    CHECK(report.max == 5.0);
    CHECK(report.median <= report.max);
    CHECK(report.median >= report.min);

    const auto even = TimingReport::from_samples("demo", {1.0, 2.0, 3.0, 4.0});
    CHECK(even.median == 2.5);
}

TEST_CASE("bench_crossover: sample bookkeeping") {
    const auto report = bench_crossover(CrossoverKind::NecParallel, 0.5, 32, 8, 5);
    CHECK(report.repeats == 5);
    CHECK(report.seconds.size() == 5);
    CHECK(report.median <= report.max);
    CHECK(report.label == "nec-par");
    CHECK_THROWS_AS(bench_crossover(CrossoverKind::Binomial, 0.5, 8, 8, 2),
                    std::invalid_argument);
}

TEST_CASE("bench_crossover_set: one report per kind, in order") {
    const auto reports = bench_crossover_set(
        {CrossoverKind::Binomial, CrossoverKind::ExponentialTraditional}, 0.4, 16, 8, 4);
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].label == "bin");
    CHECK(reports[1].label == "exp");
    CHECK(reports[0].repeats == 4);
    CHECK(reports[1].seconds.size() == 4);
}

TEST_CASE("bench_engine: reports both engines and their ratio") {
    const Objective obj = make_objective("ackley", 6);
    DeConfig config;
    config.np = 8;
    config.d = 6;
    config.max_gen = 5;
    config.lower = obj.lower();
    config.upper = obj.upper();
    const auto report = bench_engine(config, obj, 3, 2);
    CHECK(report.sequential.repeats == 3);
    CHECK(report.parallel.repeats == 3);
    CHECK(report.speedup == report.sequential.median / report.parallel.median);
    CHECK(report.parallel_threads == 2);

    // single-thread-forced parallel engine: ratio recorded, not asserted
    const auto single = bench_engine(config, obj, 3, 1);
    MESSAGE("single-thread parallel/sequential ratio: ", single.speedup);
    CHECK(single.parallel_threads == 1);
}

TEST_CASE("timing and histogram reports serialize with the schema tag") {
    const auto report = TimingReport::from_samples("x", {1.0, 2.0, 3.0});
    const auto rj = to_json(report);
    CHECK(rj.at("schema_version") == 1);
    CHECK(rj.at("samples").size() == 3);
    CHECK(rj.at("summary").at("median") == 2.0);

    Histogram hist(3);
    hist.add(1);
    hist.add(3);
    const auto hj = to_json(hist);
    CHECK(hj.at("schema_version") == 1);
    CHECK(hj.at("total") == 2);
    CHECK(hj.at("counts").size() == 3);
}
