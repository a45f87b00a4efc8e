#include "dpde/variation.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "dpde/threading.hpp"

namespace dpde {

namespace {

void check_rate(double cr) {
    if (!(cr >= 0.0 && cr <= 1.0)) {
        throw std::invalid_argument("crossover rate must lie in [0,1]");
    }
}

void check_shape(int np, int d) {
    if (np < 1 || d < 1) {
        throw std::invalid_argument("population shape must satisfy np >= 1, d >= 1");
    }
}

} // namespace

GeometricLaw GeometricLaw::truncated(double cr, int d) {
    check_rate(cr);
    if (d < 1) {
        throw std::invalid_argument("GeometricLaw: d must be >= 1");
    }
    GeometricLaw law;
    law.cr = cr;
    law.d = d;
    law.pmf.assign(static_cast<std::size_t>(d), 0.0);
    if (d == 1) {
        law.pmf[0] = 1.0;
        return law;
    }
    if (cr == 0.0) {
        law.pmf[0] = 1.0;
        return law;
    }
    if (cr == 1.0) {
        law.pmf[static_cast<std::size_t>(d - 1)] = 1.0;
        return law;
    }
    double tail = 1.0; // cr^(n-1), running
    for (int n = 1; n < d; ++n) {
        law.pmf[static_cast<std::size_t>(n - 1)] = tail * (1.0 - cr);
        tail *= cr;
    }
    law.pmf[static_cast<std::size_t>(d - 1)] = tail; // min(., d) clamp absorbs the rest
    return law;
}

int sample_length(double cr, int d, double u) {
    check_rate(cr);
    if (d < 1) {
        throw std::invalid_argument("sample_length: d must be >= 1");
    }
    if (!(u > 0.0 && u < 1.0)) {
        throw std::invalid_argument("sample_length: u must lie strictly inside (0,1)");
    }
    if (cr == 0.0) {
        return 1;
    }
    if (cr == 1.0) {
        return d;
    }
    const double ratio = std::log(u) / std::log(cr);
    if (ratio >= static_cast<double>(d)) {
        return d;
    }
    return std::max(1, static_cast<int>(std::ceil(ratio)));
}

SegmentLengths sample_lengths_batch(double cr, int d, int np, RngStream rng) {
    check_shape(np, d);
    SegmentLengths ls(static_cast<std::size_t>(np));
    for (int i = 0; i < np; ++i) {
        RngStream row = rng.derive(static_cast<std::uint64_t>(i));
        ls[static_cast<std::size_t>(i)] = sample_length(cr, d, row.next_open01());
    }
    return ls;
}

void fill_binomial_mask(CrossoverMask& mask, double cr, RngStream rng, int threads) {
    check_rate(cr);
    const std::size_t np = mask.rows();
    const std::size_t d = mask.cols();
    parallel_for(np, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            RngStream row = rng.derive(i);
            const std::size_t j_rand = row.next_index(d);
            auto bits = mask.row(i);
            for (std::size_t j = 0; j < d; ++j) {
                bits[j] = static_cast<std::uint8_t>(row.next_open01() < cr || j == j_rand);
            }
        }
    });
}

CrossoverMask binomial_mask(double cr, int np, int d, RngStream rng, int threads) {
    check_shape(np, d);
    CrossoverMask mask(static_cast<std::size_t>(np), static_cast<std::size_t>(d));
    fill_binomial_mask(mask, cr, rng, threads);
    return mask;
}

void fill_exponential_mask(CrossoverMask& mask, double cr, RngStream rng, int threads) {
    check_rate(cr);
    const std::size_t np = mask.rows();
    const int d = static_cast<int>(mask.cols());
    parallel_for(np, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            RngStream row = rng.derive(i);
            auto bits = mask.row(i);
            std::fill(bits.begin(), bits.end(), std::uint8_t{0});
            int j = static_cast<int>(row.next_index(static_cast<std::uint64_t>(d)));
            int copied = 0;
            do {
                bits[static_cast<std::size_t>(j)] = 1;
                j = (j + 1) % d;
                ++copied;
            } while (row.next_open01() < cr && copied < d);
        }
    });
}

CrossoverMask exponential_mask(double cr, int np, int d, RngStream rng, int threads) {
    check_shape(np, d);
    CrossoverMask mask(static_cast<std::size_t>(np), static_cast<std::size_t>(d));
    fill_exponential_mask(mask, cr, rng, threads);
    return mask;
}

void fill_nec_parallel_mask(CrossoverMask& mask, double cr, RngStream rng, int threads) {
    check_rate(cr);
    const std::size_t np = mask.rows();
    const int d = static_cast<int>(mask.cols());
    parallel_for(np, threads, [&](std::size_t begin, std::size_t end) {
        const int cols = d;
        for (std::size_t i = begin; i < end; ++i) {
            RngStream row = rng.derive(i);
            const int j_rand = static_cast<int>(row.next_index(static_cast<std::uint64_t>(cols)));
            const int length = sample_length(cr, cols, row.next_open01());
            std::uint8_t* bits = mask.row(i).data();
            // row = segment of `length` ones from j_rand, wrapping modulo d;
            // written as constant runs, the fastest store pattern
            const int end_col = j_rand + length;
            if (end_col <= cols) {
                std::memset(bits, 0, static_cast<std::size_t>(j_rand));
                std::memset(bits + j_rand, 1, static_cast<std::size_t>(length));
                std::memset(bits + end_col, 0, static_cast<std::size_t>(cols - end_col));
            } else {
                const int wrapped = end_col - cols;
                std::memset(bits, 1, static_cast<std::size_t>(wrapped));
                std::memset(bits + wrapped, 0, static_cast<std::size_t>(j_rand - wrapped));
                std::memset(bits + j_rand, 1, static_cast<std::size_t>(cols - j_rand));
            }
        }
    });
}

CrossoverMask nec_parallel_mask(double cr, int np, int d, RngStream rng, int threads) {
    check_shape(np, d);
    CrossoverMask mask(static_cast<std::size_t>(np), static_cast<std::size_t>(d));
    fill_nec_parallel_mask(mask, cr, rng, threads);
    return mask;
}

void exponential_crossover_oracle(std::span<const double> parent, std::span<const double> mutant,
                                  double cr, RngStream& rng, std::span<double> out) {
    check_rate(cr);
    if (parent.size() != mutant.size() || parent.size() != out.size() || parent.empty()) {
        throw std::invalid_argument("exponential_crossover_oracle: rows must share length >= 1");
    }
    const int d = static_cast<int>(parent.size());
    std::copy(parent.begin(), parent.end(), out.begin());
    int j = static_cast<int>(rng.next_index(static_cast<std::uint64_t>(d)));
    int copied = 0;
    do {
        out[static_cast<std::size_t>(j)] = mutant[static_cast<std::size_t>(j)];
        j = (j + 1) % d;
        ++copied;
    } while (rng.next_open01() < cr && copied < d);
}

std::vector<double> exponential_crossover_oracle(std::span<const double> parent,
                                                 std::span<const double> mutant, double cr,
                                                 RngStream rng) {
    std::vector<double> out(parent.size());
    exponential_crossover_oracle(parent, mutant, cr, rng, out);
    return out;
}

namespace {

// Short segments dominate at realistic rates; an inline loop avoids the
// memmove dispatch for runtime lengths.
inline void copy_run(const double* src, double* dst, int n) {
    if (n <= 16) {
        for (int k = 0; k < n; ++k) {
            dst[k] = src[k];
        }
    } else {
        std::copy_n(src, n, dst);
    }
}

} // namespace

void copy_segment(std::span<const double> mutant, std::span<double> out, int start, int length) {
    const int d = static_cast<int>(out.size());
    const int first = std::min(length, d - start);
    copy_run(mutant.data() + start, out.data() + start, first);
    if (length > first) {
        copy_run(mutant.data(), out.data(), length - first);
    }
}

void nec_sequential(std::span<const double> parent, std::span<const double> mutant, double cr,
                    RngStream& rng, std::span<double> out) {
    check_rate(cr);
    if (parent.size() != mutant.size() || parent.size() != out.size() || parent.empty()) {
        throw std::invalid_argument("nec_sequential: rows must share length >= 1");
    }
    const int d = static_cast<int>(parent.size());
    const int j_rand = static_cast<int>(rng.next_index(static_cast<std::uint64_t>(d)));
    const int length = sample_length(cr, d, rng.next_open01());
    std::copy(parent.begin(), parent.end(), out.begin());
    copy_segment(mutant, out, j_rand, length);
}

std::vector<double> nec_sequential(std::span<const double> parent,
                                   std::span<const double> mutant, double cr, RngStream rng) {
    std::vector<double> out(parent.size());
    nec_sequential(parent, mutant, cr, rng, out);
    return out;
}

void exponential_crossover_rows(const Matrix& parents, const Matrix& mutants, double cr,
                                RngStream rng, Matrix& out) {
    check_rate(cr);
    if (parents.rows() != mutants.rows() || parents.cols() != mutants.cols() ||
        out.rows() != parents.rows() || out.cols() != parents.cols() || parents.cols() == 0) {
        throw std::invalid_argument("exponential_crossover_rows: shape mismatch");
    }
    const int d = static_cast<int>(parents.cols());
    for (std::size_t i = 0; i < parents.rows(); ++i) {
        RngStream row = rng.derive(i);
        const auto parent = parents.row(i);
        const auto mutant = mutants.row(i);
        auto trial = out.row(i);
        std::copy(parent.begin(), parent.end(), trial.begin());
        int j = static_cast<int>(row.next_index(static_cast<std::uint64_t>(d)));
        int copied = 0;
        do {
            trial[static_cast<std::size_t>(j)] = mutant[static_cast<std::size_t>(j)];
            j = (j + 1) % d;
            ++copied;
        } while (row.next_open01() < cr && copied < d);
    }
}

void nec_crossover_rows(const Matrix& parents, const Matrix& mutants, double cr, RngStream rng,
                        Matrix& out) {
    check_rate(cr);
    if (parents.rows() != mutants.rows() || parents.cols() != mutants.cols() ||
        out.rows() != parents.rows() || out.cols() != parents.cols() || parents.cols() == 0) {
        throw std::invalid_argument("nec_crossover_rows: shape mismatch");
    }
    const int d = static_cast<int>(parents.cols());
    // ln(cr) is a constant of the whole batch; only ln(u) stays per row.
    // Dividing (not multiplying by the reciprocal) keeps every length
    // bit-identical to sample_length.
    const bool interior = cr > 0.0 && cr < 1.0;
    const double log_cr = interior ? std::log(cr) : 1.0;
    for (std::size_t i = 0; i < parents.rows(); ++i) {
        RngStream row = rng.derive(i);
        const int j_rand = static_cast<int>(row.next_index(static_cast<std::uint64_t>(d)));
        const double u = row.next_open01();
        int length;
        if (!interior) {
            length = cr == 0.0 ? 1 : d;
        } else {
            const double ratio = std::log(u) / log_cr;
            length = ratio >= static_cast<double>(d)
                         ? d
                         : std::max(1, static_cast<int>(std::ceil(ratio)));
        }
        const double* parent = parents.row(i).data();
        const double* mutant = mutants.row(i).data();
        double* trial = out.row(i).data();
        std::memcpy(trial, parent, static_cast<std::size_t>(d) * sizeof(double));
        const int first = std::min(length, d - j_rand);
        copy_run(mutant + j_rand, trial + j_rand, first);
        if (length > first) {
            copy_run(mutant, trial, length - first);
        }
    }
}

std::pair<int, int> draw_distinct_partners(int i, int r0, int np, RngStream& rng) {
    if (np < 4) {
        throw std::invalid_argument("draw_distinct_partners: np must be >= 4");
    }
    int r1;
    do {
        const int offset = 1 + static_cast<int>(rng.next_index(static_cast<std::uint64_t>(np - 1)));
        r1 = (r0 + offset) % np; // offset >= 1, so r1 != r0
    } while (r1 == i);
    int r2;
    do {
        const int offset = 1 + static_cast<int>(rng.next_index(static_cast<std::uint64_t>(np - 1)));
        r2 = (r1 + offset) % np; // offset >= 1, so r2 != r1
    } while (r2 == i || r2 == r0);
    return {r1, r2};
}

TrialBatch masked_mutation(const Population& population, const BaseIndexVector& r0,
                           const CrossoverMask& mask, double f, RngStream rng, int threads) {
    const std::size_t np = population.genomes.rows();
    const std::size_t d = population.genomes.cols();
    if (np < 4) {
        throw std::invalid_argument("masked_mutation: np must be >= 4");
    }
    if (r0.size() != np || mask.rows() != np || mask.cols() != d) {
        throw std::invalid_argument("masked_mutation: shape mismatch");
    }

    TrialBatch trials;
    trials.genomes = population.genomes; // u_g starts as a copy of x_g
    trials.fitness.assign(np, 0.0);

    const Matrix& x = population.genomes;
    parallel_for(np, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            RngStream row = rng.derive(i);
            const auto [r1, r2] = draw_distinct_partners(
                static_cast<int>(i), r0[i], static_cast<int>(np), row);
            const auto base = x.row(static_cast<std::size_t>(r0[i]));
            const auto a = x.row(static_cast<std::size_t>(r1));
            const auto b = x.row(static_cast<std::size_t>(r2));
            const auto bits = mask.row(i);
            auto out = trials.genomes.row(i);
            for (std::size_t j = 0; j < d; ++j) {
                if (bits[j]) {
                    out[j] = base[j] + f * (a[j] - b[j]);
                }
            }
        }
    });
    return trials;
}

} // namespace dpde
