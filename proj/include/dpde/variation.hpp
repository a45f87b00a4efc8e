#pragma once

#include <span>
#include <utility>
#include <vector>

#include "dpde/matrix.hpp"
#include "dpde/population.hpp"
#include "dpde/rng.hpp"
#include "dpde/selection.hpp"

namespace dpde {

/// Per-row crossed segment lengths, each in [1, d].
using SegmentLengths = std::vector<int>;

/// Truncated geometric law of the crossed-segment length:
///   P{L = n} = cr^(n-1) * (1 - cr)   for 1 <= n < d,
///   P{L = d} = cr^(d-1)              (all remaining mass).
struct GeometricLaw {
    double cr = 0.0;
    int d = 1;
    std::vector<double> pmf; // pmf[k] is P{L = k+1}

    static GeometricLaw truncated(double cr, int d);
};

/// Inverse-CDF draw of the segment length from one uniform u in (0,1):
/// 1 when cr = 0, d when cr = 1, otherwise ceil(ln u / ln cr) clamped to [1, d].
int sample_length(double cr, int d, double u);

/// ls[i] = sample_length(cr, d, u_i) with u_i drawn from the row-i substream.
SegmentLengths sample_lengths_batch(double cr, int d, int np, RngStream rng);

// Mask builders. Each row i consumes only the substream rng.derive(i), so
// rows are independent and any row-parallel schedule yields the same bits.
// The fill_* forms write into a preallocated mask of matching shape.

/// Bit (i,j) set iff j == j_rand[i] or the (i,j) uniform draw < cr.
CrossoverMask binomial_mask(double cr, int np, int d, RngStream rng, int threads = 1);
void fill_binomial_mask(CrossoverMask& mask, double cr, RngStream rng, int threads = 1);

/// Per-row do-while loop of the traditional exponential crossover, recorded
/// as mask bits. Consumes draws exactly like exponential_crossover_oracle.
CrossoverMask exponential_mask(double cr, int np, int d, RngStream rng, int threads = 1);
void fill_exponential_mask(CrossoverMask& mask, double cr, RngStream rng, int threads = 1);

/// Row i holds the modular contiguous segment of length ls[i] starting at
/// j_rand[i], built from whole-row comparisons against the column index.
CrossoverMask nec_parallel_mask(double cr, int np, int d, RngStream rng, int threads = 1);
void fill_nec_parallel_mask(CrossoverMask& mask, double cr, RngStream rng, int threads = 1);

/// Faithful do-while exponential crossover: start at a random gene, copy
/// consecutive mutant genes modulo d while rand < cr and fewer than d copied.
void exponential_crossover_oracle(std::span<const double> parent,
                                  std::span<const double> mutant, double cr, RngStream& rng,
                                  std::span<double> out);
std::vector<double> exponential_crossover_oracle(std::span<const double> parent,
                                                 std::span<const double> mutant, double cr,
                                                 RngStream rng);

/// Segment-sampling exponential crossover: draws L once via sample_length,
/// then copies mutant genes at j_rand, ..., j_rand+L-1 (mod d).
void nec_sequential(std::span<const double> parent, std::span<const double> mutant, double cr,
                    RngStream& rng, std::span<double> out);
std::vector<double> nec_sequential(std::span<const double> parent,
                                   std::span<const double> mutant, double cr, RngStream rng);

// Whole-population forms of the two sequential crossovers, row i consuming
// the substream rng.derive(i). The segment-sampling form hoists ln(cr) once
// per batch; the do-while form has nothing to hoist. Draws per row match the
// single-row operations exactly.
void exponential_crossover_rows(const Matrix& parents, const Matrix& mutants, double cr,
                                RngStream rng, Matrix& out);
void nec_crossover_rows(const Matrix& parents, const Matrix& mutants, double cr, RngStream rng,
                        Matrix& out);

/// Copies `length` mutant genes starting at `start`, wrapping modulo the row
/// length. out must already hold the parent genes.
void copy_segment(std::span<const double> mutant, std::span<double> out, int start, int length);

/// Draws r1, r2 so that r1, r2, r0 and i are pairwise distinct (r0 == i is
/// tolerated when the selection scheme produced it). Requires np >= 4.
std::pair<int, int> draw_distinct_partners(int i, int r0, int np, RngStream& rng);

/// Trial batch u_g: copy of the parents with masked entries replaced by
/// x[r0] + f * (x[r1] - x[r2]). Mutant values exist only at masked entries.
TrialBatch masked_mutation(const Population& population, const BaseIndexVector& r0,
                           const CrossoverMask& mask, double f, RngStream rng, int threads = 1);

} // namespace dpde
