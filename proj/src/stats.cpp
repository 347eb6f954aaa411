#include "lfc/stats.hpp"

#include "lfc/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace lfc {
namespace {

double mean_of(const std::vector<double>& v) {
    return std::accumulate(v.begin(), v.end(), 0.0) /
           static_cast<double>(v.size());
}

double median_of_sorted(const std::vector<double>& s) {
    const std::size_t n = s.size();
    return n % 2 == 1 ? s[n / 2] : 0.5 * (s[n / 2 - 1] + s[n / 2]);
}

// Sum of (t^3 - t) over tie groups of a sorted value sequence.
double tie_term_sorted(const std::vector<double>& s) {
    double total = 0.0;
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t j = i + 1;
        while (j < s.size() && s[j] == s[i]) ++j;
        const double t = static_cast<double>(j - i);
        total += t * t * t - t;
        i = j;
    }
    return total;
}

} // namespace

descriptive_stats describe(const std::vector<double>& values) {
    if (values.empty())
        throw empty_input("describe requires at least one value");
    descriptive_stats out;
    out.n = values.size();
    out.mean = mean_of(values);
    std::vector<double> s = values;
    std::sort(s.begin(), s.end());
    out.min = s.front();
    out.max = s.back();
    out.median = median_of_sorted(s);
    if (out.n > 1) {
        double ss = 0.0;
        for (double v : values) {
            const double d = v - out.mean;
            ss += d * d;
        }
        out.stddev = std::sqrt(ss / static_cast<double>(out.n - 1));
    }
    return out;
}

std::vector<double> mid_ranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return values[a] < values[b];
    });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i + 1;
        while (j < n && values[order[j]] == values[order[i]]) ++j;
        // Positions i..j-1 (0-based) share the mid-rank.
        const double shared = 0.5 * (static_cast<double>(i + 1) +
                                     static_cast<double>(j));
        for (std::size_t t = i; t < j; ++t) ranks[order[t]] = shared;
        i = j;
    }
    return ranks;
}

friedman_result friedman(const std::vector<std::vector<double>>& blocks) {
    if (blocks.empty())
        throw empty_input("friedman requires at least one block");
    const std::size_t k = blocks.front().size();
    if (k < 2)
        throw degenerate_input("friedman requires at least two groups");
    for (const auto& row : blocks)
        if (row.size() != k)
            throw stat_error("friedman blocks must all have the same width");

    const std::size_t n = blocks.size();
    friedman_result out;
    out.n_blocks = n;
    out.k_groups = k;
    out.rank_sums.assign(k, 0.0);
    double tie_sum = 0.0;
    for (const auto& row : blocks) {
        const std::vector<double> ranks = mid_ranks(row);
        for (std::size_t j = 0; j < k; ++j) out.rank_sums[j] += ranks[j];
        std::vector<double> sorted = row;
        std::sort(sorted.begin(), sorted.end());
        tie_sum += tie_term_sorted(sorted);
    }
    out.mean_ranks.resize(k);
    for (std::size_t j = 0; j < k; ++j)
        out.mean_ranks[j] = out.rank_sums[j] / static_cast<double>(n);

    const double nd = static_cast<double>(n);
    const double kd = static_cast<double>(k);
    double sum_sq = 0.0;
    for (double rj : out.rank_sums) sum_sq += rj * rj;
    const double uncorrected =
        12.0 / (nd * kd * (kd + 1.0)) * sum_sq - 3.0 * nd * (kd + 1.0);
    out.tie_correction = 1.0 - tie_sum / (nd * kd * (kd * kd - 1.0));
    if (out.tie_correction <= 0.0)
        throw degenerate_input(
            "friedman is undefined when every block is fully tied");
    out.chi2 = uncorrected / out.tie_correction;
    out.df = kd - 1.0;
    out.p_value = chi2_sf(out.chi2, out.df);
    out.kendall_w = out.chi2 / (nd * (kd - 1.0));
    return out;
}

double posthoc_standard_error(std::size_t k_groups, std::size_t n_blocks) {
    const double kd = static_cast<double>(k_groups);
    const double nd = static_cast<double>(n_blocks);
    return std::sqrt(kd * (kd + 1.0) / (6.0 * nd));
}

std::vector<posthoc_comparison> friedman_posthoc(const friedman_result& fr) {
    const std::size_t k = fr.k_groups;
    const double se = posthoc_standard_error(k, fr.n_blocks);
    const double n_pairs = 0.5 * static_cast<double>(k) *
                           static_cast<double>(k - 1);
    std::vector<posthoc_comparison> out;
    out.reserve(static_cast<std::size_t>(n_pairs));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            posthoc_comparison c;
            c.group_i = i;
            c.group_j = j;
            c.delta_mean_rank = fr.mean_ranks[i] - fr.mean_ranks[j];
            c.z = c.delta_mean_rank / se;
            c.p_raw = normal_two_sided_p(c.z);
            c.p_adjusted = std::min(1.0, c.p_raw * n_pairs);
            out.push_back(c);
        }
    }
    return out;
}

double wilcoxon_z_from_rank_sum(double w_plus, std::size_t n_nonzero) {
    const double m = static_cast<double>(n_nonzero);
    const double mean = m * (m + 1.0) / 4.0;
    const double sd = std::sqrt(m * (m + 1.0) * (2.0 * m + 1.0) / 24.0);
    return (w_plus - mean) / sd;
}

wilcoxon_result wilcoxon_signed_rank(const std::vector<double>& first,
                                     const std::vector<double>& second) {
    if (first.size() != second.size())
        throw stat_error("wilcoxon pairs must have equal length");
    if (first.empty())
        throw empty_input("wilcoxon requires at least one pair");

    std::vector<double> diffs;
    diffs.reserve(first.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
        const double d = first[i] - second[i];
        if (d != 0.0) diffs.push_back(d);
    }
    wilcoxon_result out;
    out.n_pairs = first.size();
    out.n_nonzero = diffs.size();
    if (out.n_nonzero == 0)
        throw all_ties("wilcoxon: every paired difference is zero");
    if (out.n_nonzero < 5)
        throw too_few_pairs(
            "wilcoxon: need at least 5 nonzero pairs for the normal "
            "approximation");

    std::vector<double> abs_d(diffs.size());
    for (std::size_t i = 0; i < diffs.size(); ++i) abs_d[i] = std::abs(diffs[i]);
    const std::vector<double> ranks = mid_ranks(abs_d);
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        if (diffs[i] > 0.0)
            out.w_plus += ranks[i];
        else
            out.w_minus += ranks[i];
    }
    out.z = wilcoxon_z_from_rank_sum(out.w_plus, out.n_nonzero);
    out.p_value = normal_two_sided_p(out.z);
    return out;
}

const char* levene_center_name(levene_center center) {
    switch (center) {
    case levene_center::mean: return "mean";
    case levene_center::median: return "median";
    case levene_center::trimmed_mean: return "trimmed_mean";
    }
    return "unknown";
}

levene_result levene(const std::vector<std::vector<double>>& groups,
                     levene_center center) {
    if (groups.size() < 2)
        throw degenerate_input("levene requires at least two groups");
    for (const auto& g : groups)
        if (g.empty())
            throw empty_input("levene groups must be nonempty");

    std::vector<std::vector<double>> dev(groups.size());
    std::size_t n_total = 0;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        std::vector<double> sorted = groups[gi];
        std::sort(sorted.begin(), sorted.end());
        double c = 0.0;
        switch (center) {
        case levene_center::mean:
            c = mean_of(sorted);
            break;
        case levene_center::median:
            c = median_of_sorted(sorted);
            break;
        case levene_center::trimmed_mean: {
            const std::size_t cut = static_cast<std::size_t>(
                std::floor(0.05 * static_cast<double>(sorted.size())));
            const std::vector<double> core(sorted.begin() + cut,
                                           sorted.end() - cut);
            c = mean_of(core);
            break;
        }
        }
        dev[gi].reserve(groups[gi].size());
        for (double v : groups[gi]) dev[gi].push_back(std::abs(v - c));
        n_total += groups[gi].size();
    }

    const std::size_t k = groups.size();
    if (n_total <= k)
        throw degenerate_input(
            "levene requires more observations than groups");

    double grand = 0.0;
    std::vector<double> group_mean(k);
    for (std::size_t gi = 0; gi < k; ++gi) {
        group_mean[gi] = mean_of(dev[gi]);
        grand += group_mean[gi] * static_cast<double>(dev[gi].size());
    }
    grand /= static_cast<double>(n_total);

    double ssb = 0.0, ssw = 0.0;
    for (std::size_t gi = 0; gi < k; ++gi) {
        const double dm = group_mean[gi] - grand;
        ssb += static_cast<double>(dev[gi].size()) * dm * dm;
        for (double z : dev[gi]) {
            const double dz = z - group_mean[gi];
            ssw += dz * dz;
        }
    }

    levene_result out;
    out.df1 = static_cast<double>(k - 1);
    out.df2 = static_cast<double>(n_total - k);
    if (ssw == 0.0) {
        if (ssb == 0.0)
            throw degenerate_input(
                "levene: absolute deviations carry no variation");
        out.f = std::numeric_limits<double>::infinity();
        out.p_value = 0.0;
        return out;
    }
    out.f = (ssb / out.df1) / (ssw / out.df2);
    out.p_value = f_sf(out.f, out.df1, out.df2);
    return out;
}

} // namespace lfc
