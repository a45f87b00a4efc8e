#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dpde/config.hpp"
#include "dpde/engine.hpp"
#include "dpde/objectives.hpp"
#include "dpde/rng.hpp"
#include "dpde/variation.hpp"

namespace dpde {

/// Counts of segment lengths L in [1, d].
struct Histogram {
    int d = 1;
    std::vector<std::uint64_t> counts; // counts[k] holds L = k+1
    std::uint64_t total = 0;

    explicit Histogram(int d_) : d(d_), counts(static_cast<std::size_t>(d_), 0) {}
    Histogram() = default;

    void add(int length) {
        counts[static_cast<std::size_t>(length - 1)]++;
        total++;
    }
    double frequency(int length) const {
        return total == 0 ? 0.0
                          : static_cast<double>(counts[static_cast<std::size_t>(length - 1)]) /
                                static_cast<double>(total);
    }
};

struct GofResult {
    double statistic = 0.0;
    double p_value = 1.0;
    int dof = 0;
};

/// Pearson goodness-of-fit against the truncated geometric pmf. Bins with
/// expected count < 5 are pooled into their successor; requires
/// total >= 10 * d.
GofResult chi_square_gof(const Histogram& observed, const GeometricLaw& expected);

/// Pearson homogeneity test of two length histograms over the same support.
/// Bins are pooled until each group's combined count is >= 10.
GofResult two_sample_chi_square(const Histogram& a, const Histogram& b);

struct LengthComparison {
    Histogram hist_exp;
    Histogram hist_nec;
    GofResult gof_exp;     // exp-oracle lengths vs the law
    GofResult gof_nec;     // direct-sampled lengths vs the law
    GofResult two_sample;  // homogeneity of the two histograms
};

/// Draws n_samples copied-segment lengths from the traditional exponential
/// crossover and n_samples from the direct inverse-CDF sampler, then tests
/// the two histograms against each other and against the law.
LengthComparison compare_crossover_lengths(double cr, int d, std::int64_t n_samples,
                                           RngStream rng);

struct TimingReport {
    std::string label;
    int repeats = 0;
    std::vector<double> seconds; // one entry per kept repeat
    double median = 0.0;
    double mean = 0.0;
    double stddev = 0.0;
    double min = 0.0;
    double max = 0.0;

    static TimingReport from_samples(std::string label, std::vector<double> seconds);
};

/// Interleaved benchmark of several crossover builders at one configuration:
/// mask construction for the mask kinds, whole-row crossover application for
/// the sequential kinds. Every repeat round alternates the kinds through
/// short sub-blocks over the same pre-seeded streams, so machine drift hits
/// all kinds alike and paired medians resolve sub-percent differences; a
/// round's sample is reported as seconds per pass. Buffers and streams live
/// outside the timed regions, and one full warm-up round is discarded.
/// `threads` applies to the mask builders only; the row-sequential kinds are
/// single-threaded references.
std::vector<TimingReport> bench_crossover_set(const std::vector<CrossoverKind>& kinds, double cr,
                                              int np, int d, int repeats, int threads = 1);

/// Single-kind convenience wrapper around bench_crossover_set.
TimingReport bench_crossover(CrossoverKind kind, double cr, int np, int d, int repeats,
                             int threads = 1);

struct EngineBenchReport {
    TimingReport sequential;
    TimingReport parallel;
    double speedup = 0.0; // sequential median / parallel median
    int parallel_threads = 1;
};

/// End-to-end wall time of full runs under both engines at identical config.
/// threads = 0 uses the global cap for the parallel engine.
EngineBenchReport bench_engine(const DeConfig& config, const Objective& objective, int repeats,
                               int threads = 0);

} // namespace dpde
