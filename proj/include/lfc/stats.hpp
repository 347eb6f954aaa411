#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

// Nonparametric statistics for comparing optimizer run distributions:
// descriptive summaries, the tie-corrected Friedman rank test with Kendall's
// W, pairwise post-hoc z comparisons, the Wilcoxon signed-rank large-sample
// test, and Levene's variance-homogeneity test (mean / median / trimmed-mean
// centering).

namespace lfc {

struct stat_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A test was asked to run on no data at all.
struct empty_input : stat_error {
    using stat_error::stat_error;
};

// Data shape is valid but carries no usable variation (e.g. every block of a
// Friedman table is fully tied).
struct degenerate_input : stat_error {
    using stat_error::stat_error;
};

// Wilcoxon: every paired difference is exactly zero.
struct all_ties : stat_error {
    using stat_error::stat_error;
};

// Wilcoxon: fewer than five nonzero pairs, too few for the normal
// approximation.
struct too_few_pairs : stat_error {
    using stat_error::stat_error;
};

struct descriptive_stats {
    std::size_t n = 0;
    double mean = 0.0;
    double stddev = 0.0; // sample standard deviation (n - 1), 0 when n == 1
    double min = 0.0;
    double max = 0.0;
    double median = 0.0;
};

descriptive_stats describe(const std::vector<double>& values);

// Ascending mid-ranks (1-based); tied values share the average of the ranks
// they would occupy.
std::vector<double> mid_ranks(const std::vector<double>& values);

struct friedman_result {
    std::size_t n_blocks = 0;
    std::size_t k_groups = 0;
    std::vector<double> rank_sums;  // per group, across blocks
    std::vector<double> mean_ranks; // rank_sums / n_blocks
    double tie_correction = 1.0;    // denominator 1 - sum(t^3 - t)/(N k (k^2-1))
    double chi2 = 0.0;
    double df = 0.0;
    double p_value = 1.0;
    double kendall_w = 0.0; // chi2 / (N (k - 1))
};

// blocks: one row per block (run index), one column per group (algorithm).
friedman_result friedman(const std::vector<std::vector<double>>& blocks);

struct posthoc_comparison {
    std::size_t group_i = 0;
    std::size_t group_j = 0;
    double delta_mean_rank = 0.0; // mean_ranks[i] - mean_ranks[j]
    double z = 0.0;
    double p_raw = 0.0;
    double p_adjusted = 0.0; // Bonferroni over all k(k-1)/2 pairs, capped at 1
};

// Standard error of a mean-rank difference: sqrt(k (k + 1) / (6 N)).
double posthoc_standard_error(std::size_t k_groups, std::size_t n_blocks);

std::vector<posthoc_comparison> friedman_posthoc(const friedman_result& fr);

struct wilcoxon_result {
    std::size_t n_pairs = 0;   // pairs supplied
    std::size_t n_nonzero = 0; // pairs remaining after zero differences drop
    double w_plus = 0.0;
    double w_minus = 0.0;
    double z = 0.0; // (W+ - m(m+1)/4) / sqrt(m(m+1)(2m+1)/24)
    double p_value = 1.0;
};

wilcoxon_result wilcoxon_signed_rank(const std::vector<double>& first,
                                     const std::vector<double>& second);

// z statistic for a given positive-rank sum and nonzero-pair count; exposed
// so reported rank sums can be replayed directly.
double wilcoxon_z_from_rank_sum(double w_plus, std::size_t n_nonzero);

enum class levene_center { mean, median, trimmed_mean };

struct levene_result {
    double f = 0.0;
    double df1 = 0.0;
    double df2 = 0.0;
    double p_value = 1.0;
};

// Brown-Forsythe family: one-way ANOVA F on absolute deviations from the
// chosen per-group center. trimmed_mean drops floor(0.05 n) values from each
// end of the sorted group before averaging.
levene_result levene(const std::vector<std::vector<double>>& groups,
                     levene_center center = levene_center::mean);

const char* levene_center_name(levene_center center);

} // namespace lfc
