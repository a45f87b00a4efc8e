#include "dpde/stats.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

#include <boost/math/special_functions/gamma.hpp>

#include "dpde/threading.hpp"

namespace dpde {

namespace {

using Clock = std::chrono::steady_clock;

double chi_square_survival(double statistic, int dof) {
    if (dof <= 0) {
        return 1.0;
    }
    return boost::math::gamma_q(static_cast<double>(dof) / 2.0, statistic / 2.0);
}

struct PooledBins {
    std::vector<double> observed;
    std::vector<double> expected;
};

/// Pools adjacent length bins until every group's expected count is >= 5;
/// a deficient trailing group is merged into its predecessor.
PooledBins pool_by_expected(const Histogram& observed, const GeometricLaw& law) {
    PooledBins pooled;
    const double total = static_cast<double>(observed.total);
    double obs_acc = 0.0;
    double exp_acc = 0.0;
    for (int n = 1; n <= law.d; ++n) {
        obs_acc += static_cast<double>(observed.counts[static_cast<std::size_t>(n - 1)]);
        exp_acc += total * law.pmf[static_cast<std::size_t>(n - 1)];
        if (exp_acc >= 5.0) {
            pooled.observed.push_back(obs_acc);
            pooled.expected.push_back(exp_acc);
            obs_acc = 0.0;
            exp_acc = 0.0;
        }
    }
    if (exp_acc > 0.0 || obs_acc > 0.0) {
        if (pooled.expected.empty()) {
            pooled.observed.push_back(obs_acc);
            pooled.expected.push_back(exp_acc);
        } else {
            pooled.observed.back() += obs_acc;
            pooled.expected.back() += exp_acc;
        }
    }
    return pooled;
}

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    if (n % 2 == 1) {
        return values[n / 2];
    }
    return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

} // namespace

GofResult chi_square_gof(const Histogram& observed, const GeometricLaw& expected) {
    if (observed.d != expected.d) {
        throw std::invalid_argument("chi_square_gof: histogram and law support differ");
    }
    if (observed.total < static_cast<std::uint64_t>(10) * static_cast<std::uint64_t>(expected.d)) {
        throw std::invalid_argument("chi_square_gof: sample size must be >= 10 * d");
    }
    const PooledBins pooled = pool_by_expected(observed, expected);
    GofResult result;
    result.dof = static_cast<int>(pooled.expected.size()) - 1;
    for (std::size_t g = 0; g < pooled.expected.size(); ++g) {
        if (pooled.expected[g] > 0.0) {
            const double delta = pooled.observed[g] - pooled.expected[g];
            result.statistic += delta * delta / pooled.expected[g];
        }
    }
    result.p_value = chi_square_survival(result.statistic, result.dof);
    return result;
}

LengthComparison compare_crossover_lengths(double cr, int d, std::int64_t n_samples,
                                           RngStream rng) {
    if (n_samples < 10000) {
        throw std::invalid_argument("compare_crossover_lengths: need at least 10^4 samples");
    }
    LengthComparison cmp{Histogram(d), Histogram(d), {}, {}, {}};

    const std::vector<double> parent(static_cast<std::size_t>(d), 0.0);
    const std::vector<double> mutant(static_cast<std::size_t>(d), 1.0);
    std::vector<double> out(static_cast<std::size_t>(d));

    const RngStream exp_root = rng.derive(0);
    const RngStream nec_root = rng.derive(1);
    for (std::int64_t k = 0; k < n_samples; ++k) {
        RngStream s = exp_root.derive(static_cast<std::uint64_t>(k));
        exponential_crossover_oracle(parent, mutant, cr, s, out);
        int length = 0;
        for (double v : out) {
            length += v != 0.0;
        }
        cmp.hist_exp.add(length);
    }
    for (std::int64_t k = 0; k < n_samples; ++k) {
        RngStream s = nec_root.derive(static_cast<std::uint64_t>(k));
        cmp.hist_nec.add(sample_length(cr, d, s.next_open01()));
    }

    const GeometricLaw law = GeometricLaw::truncated(cr, d);
    cmp.gof_exp = chi_square_gof(cmp.hist_exp, law);
    cmp.gof_nec = chi_square_gof(cmp.hist_nec, law);
    cmp.two_sample = two_sample_chi_square(cmp.hist_exp, cmp.hist_nec);
    return cmp;
}

GofResult two_sample_chi_square(const Histogram& a, const Histogram& b) {
    if (a.d != b.d) {
        throw std::invalid_argument("two_sample_chi_square: histogram supports differ");
    }
    // Pool bins until each group's combined count is >= 10, then Pearson
    // over the 2 x G contingency table.
    std::vector<std::pair<double, double>> groups;
    double acc1 = 0.0;
    double acc2 = 0.0;
    for (int n = 1; n <= a.d; ++n) {
        acc1 += static_cast<double>(a.counts[static_cast<std::size_t>(n - 1)]);
        acc2 += static_cast<double>(b.counts[static_cast<std::size_t>(n - 1)]);
        if (acc1 + acc2 >= 10.0) {
            groups.emplace_back(acc1, acc2);
            acc1 = acc2 = 0.0;
        }
    }
    if (acc1 + acc2 > 0.0) {
        if (groups.empty()) {
            groups.emplace_back(acc1, acc2);
        } else {
            groups.back().first += acc1;
            groups.back().second += acc2;
        }
    }
    const double n1 = static_cast<double>(a.total);
    const double n2 = static_cast<double>(b.total);
    GofResult two;
    two.dof = static_cast<int>(groups.size()) - 1;
    for (const auto& [o1, o2] : groups) {
        const double row_total = o1 + o2;
        const double e1 = row_total * n1 / (n1 + n2);
        const double e2 = row_total * n2 / (n1 + n2);
        if (e1 > 0.0) {
            two.statistic += (o1 - e1) * (o1 - e1) / e1;
        }
        if (e2 > 0.0) {
            two.statistic += (o2 - e2) * (o2 - e2) / e2;
        }
    }
    two.p_value = chi_square_survival(two.statistic, two.dof);
    return two;
}

TimingReport TimingReport::from_samples(std::string label, std::vector<double> seconds) {
    if (seconds.empty()) {
        throw std::invalid_argument("TimingReport: need at least one sample");
    }
    TimingReport report;
    report.label = std::move(label);
    report.repeats = static_cast<int>(seconds.size());
    report.median = median_of(seconds);
    report.mean = std::accumulate(seconds.begin(), seconds.end(), 0.0) /
                  static_cast<double>(seconds.size());
    double variance = 0.0;
    for (double s : seconds) {
        variance += (s - report.mean) * (s - report.mean);
    }
    report.stddev = seconds.size() > 1
                        ? std::sqrt(variance / static_cast<double>(seconds.size() - 1))
                        : 0.0;
    report.min = *std::min_element(seconds.begin(), seconds.end());
    report.max = *std::max_element(seconds.begin(), seconds.end());
    report.seconds = std::move(seconds);
    return report;
}

namespace {

// Each repeat round is split into short sub-blocks that alternate through
// the benchmarked kinds, so machine drift on timescales above a few
// milliseconds hits every kind alike and cancels out of the comparison.
// Many sub-blocks per round integrate enough wall time that paired medians
// resolve differences well under 1% on shared hardware.
constexpr int kSubBlocksPerRound = 32;
constexpr double kSubBlockSeconds = 0.008;
constexpr int kMaxPassesPerSubBlock = 32;
constexpr int kMaxPassesPerRound = kSubBlocksPerRound * kMaxPassesPerSubBlock;

} // namespace

std::vector<TimingReport> bench_crossover_set(const std::vector<CrossoverKind>& kinds, double cr,
                                              int np, int d, int repeats, int threads) {
    if (repeats < 3) {
        throw std::invalid_argument("bench_crossover_set: repeats must be >= 3");
    }
    if (kinds.empty()) {
        throw std::invalid_argument("bench_crossover_set: need at least one kind");
    }
    const std::size_t rows = static_cast<std::size_t>(np);
    const std::size_t cols = static_cast<std::size_t>(d);

    // Inputs, output buffers, and pass streams all live outside the timed
    // regions; only crossover work is measured.
    RngStream fill(0x5eedf00dULL);
    Matrix parent(rows, cols);
    Matrix mutant(rows, cols);
    for (double& v : parent.storage()) {
        v = fill.next_open01();
    }
    for (double& v : mutant.storage()) {
        v = fill.next_open01();
    }
    Matrix trial(rows, cols);
    CrossoverMask mask(rows, cols);
    std::vector<RngStream> pass_streams;
    const int max_passes = (repeats + 1) * kMaxPassesPerRound;
    pass_streams.reserve(static_cast<std::size_t>(max_passes));
    RngStream bench_root(0xbe7c4a11ULL);
    for (int k = 0; k < max_passes; ++k) {
        pass_streams.push_back(bench_root.derive(static_cast<std::uint64_t>(k)));
    }

    const auto run_pass = [&](CrossoverKind kind, const RngStream& stream) {
        switch (kind) {
        case CrossoverKind::Binomial:
            fill_binomial_mask(mask, cr, stream, threads);
            break;
        case CrossoverKind::NecParallel:
            fill_nec_parallel_mask(mask, cr, stream, threads);
            break;
        case CrossoverKind::ExponentialTraditional:
            exponential_crossover_rows(parent, mutant, cr, stream, trial);
            break;
        case CrossoverKind::NecSequential:
            nec_crossover_rows(parent, mutant, cr, stream, trial);
            break;
        }
    };

    // Size each kind's passes per sub-block from one quick pass.
    std::vector<int> block_passes(kinds.size(), 1);
    for (std::size_t k = 0; k < kinds.size(); ++k) {
        const auto t0 = Clock::now();
        run_pass(kinds[k], pass_streams[0]);
        const double warm = std::chrono::duration<double>(Clock::now() - t0).count();
        block_passes[k] = std::clamp(
            static_cast<int>(std::ceil(kSubBlockSeconds / std::max(warm, 1e-7))), 1,
            kMaxPassesPerSubBlock);
    }

    // Round 0 is a full discarded warm-up, bringing caches, branch state and
    // the frequency governor to steady state before anything is recorded.
    // The kind order also rotates per round, so no kind always runs in the
    // cache or frequency state left behind by the same predecessor.
    std::vector<std::vector<double>> samples(kinds.size());
    std::vector<double> round_elapsed(kinds.size());
    for (int r = 0; r <= repeats; ++r) {
        std::fill(round_elapsed.begin(), round_elapsed.end(), 0.0);
        const std::size_t base = static_cast<std::size_t>(r * kMaxPassesPerRound);
        for (int sub = 0; sub < kSubBlocksPerRound; ++sub) {
            for (std::size_t slot = 0; slot < kinds.size(); ++slot) {
                const std::size_t k = (slot + static_cast<std::size_t>(r)) % kinds.size();
                const int n_pass = block_passes[k];
                const std::size_t offset = static_cast<std::size_t>(sub * n_pass);
                const auto t0 = Clock::now();
                for (int p = 0; p < n_pass; ++p) {
                    run_pass(kinds[k], pass_streams[base + offset + static_cast<std::size_t>(p)]);
                }
                round_elapsed[k] += std::chrono::duration<double>(Clock::now() - t0).count();
            }
        }
        if (r == 0) {
            continue;
        }
        for (std::size_t k = 0; k < kinds.size(); ++k) {
            samples[k].push_back(round_elapsed[k] /
                                 (kSubBlocksPerRound * block_passes[k]));
        }
    }

    std::vector<TimingReport> reports;
    reports.reserve(kinds.size());
    for (std::size_t k = 0; k < kinds.size(); ++k) {
        reports.push_back(TimingReport::from_samples(std::string(to_string(kinds[k])),
                                                     std::move(samples[k])));
    }
    return reports;
}

TimingReport bench_crossover(CrossoverKind kind, double cr, int np, int d, int repeats,
                             int threads) {
    return bench_crossover_set({kind}, cr, np, d, repeats, threads)[0];
}

EngineBenchReport bench_engine(const DeConfig& config, const Objective& objective, int repeats,
                               int threads) {
    if (repeats < 3) {
        throw std::invalid_argument("bench_engine: repeats must be >= 3");
    }
    const int workers = threads <= 0 ? static_cast<int>(max_threads()) : threads;

    std::vector<double> seq_samples;
    std::vector<double> par_samples;
    for (int r = 0; r <= repeats; ++r) { // r = 0 is warm-up
        const auto t0 = Clock::now();
        run_sequential(config, objective);
        const double s = std::chrono::duration<double>(Clock::now() - t0).count();
        if (r > 0) {
            seq_samples.push_back(s);
        }
    }
    for (int r = 0; r <= repeats; ++r) {
        const auto t0 = Clock::now();
        run_parallel(config, objective, workers);
        const double s = std::chrono::duration<double>(Clock::now() - t0).count();
        if (r > 0) {
            par_samples.push_back(s);
        }
    }

    EngineBenchReport report;
    report.sequential = TimingReport::from_samples("sequential", std::move(seq_samples));
    report.parallel = TimingReport::from_samples("parallel", std::move(par_samples));
    report.speedup = report.sequential.median / report.parallel.median;
    report.parallel_threads = workers;
    return report;
}

} // namespace dpde
