#include "lfc/config.hpp"
#include "lfc/harness.hpp"
#include "lfc/stats.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;
using lfc::config_error;

std::string default_out_dir() {
    const char* env = std::getenv("LFCBENCH_OUT");
    return env && *env ? env : "out";
}

int parse_case_label(const std::string& label) {
    std::string digits = label;
    const std::string prefix = "case-";
    if (digits.rfind(prefix, 0) == 0) digits = digits.substr(prefix.size());
    try {
        std::size_t used = 0;
        const int id = std::stoi(digits, &used);
        if (used != digits.size()) throw std::invalid_argument(digits);
        return id;
    } catch (const std::exception&) {
        throw config_error("cannot parse case label '" + label +
                           "' (expected e.g. 3 or case-3)");
    }
}

std::vector<double> parse_gain_list(const std::string& text) {
    std::vector<double> out;
    std::string normalized = text;
    std::replace(normalized.begin(), normalized.end(), ',', ' ');
    std::stringstream ss(normalized);
    std::string tok;
    while (ss >> tok) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw config_error("cannot parse gain value '" + tok + "'");
        }
    }
    if (out.size() != 6)
        throw config_error("gain vector must have exactly 6 values, got " +
                           std::to_string(out.size()));
    return out;
}

std::string fixed4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw config_error("cannot create output directory " + dir + ": " +
                           ec.message());
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw config_error("cannot write " + path);
    return out;
}

void print_gains(const lfc::pid_gains& g) {
    std::cout << "gains: kp1=" << fixed4(g.kp1) << " ki1=" << fixed4(g.ki1)
              << " kd1=" << fixed4(g.kd1) << " kp2=" << fixed4(g.kp2)
              << " ki2=" << fixed4(g.ki2) << " kd2=" << fixed4(g.kd2) << '\n';
    std::cout << "gains_raw: " << lfc::format_double(g.kp1) << ','
              << lfc::format_double(g.ki1) << ',' << lfc::format_double(g.kd1)
              << ',' << lfc::format_double(g.kp2) << ','
              << lfc::format_double(g.ki2) << ',' << lfc::format_double(g.kd2)
              << '\n';
}

void print_signal(const char* name, const lfc::signal_metrics& m) {
    std::cout << name << ": peak=" << lfc::format_double(m.peak)
              << " overshoot=" << lfc::format_double(m.overshoot)
              << " settling_time_s=" << lfc::format_double(m.settling_time)
              << '\n';
}

struct global_options {
    std::string config_path;
    std::string out_dir = default_out_dir();
    std::string profile;
    std::vector<std::string> overrides;
    std::string kernel;
};

lfc::app_config resolve_config(const global_options& g) {
    lfc::app_config cfg = g.config_path.empty()
                              ? lfc::default_config()
                              : lfc::load_config_file(g.config_path);
    if (!g.profile.empty()) lfc::apply_profile(cfg, g.profile);
    for (const std::string& ov : g.overrides) lfc::apply_override(cfg, ov);
    lfc::validate(cfg);
    if (!g.kernel.empty() && !lfc::set_kernel(g.kernel))
        throw config_error("unknown or unsupported kernel '" + g.kernel +
                           "' (have: scalar"
#if defined(__AVX2__) || defined(__x86_64__)
                           ", avx2 when the CPU supports it"
#endif
                           ")");
    return cfg;
}

// ---------------------------------------------------------------- simulate

int cmd_simulate(const global_options& g, const std::string& case_label,
                 const std::string& gains_text, const std::string& from_runs,
                 const std::string& row_algorithm,
                 std::optional<std::uint64_t> row_seed,
                 std::optional<double> w1_override,
                 std::optional<double> w2_override,
                 std::string traj_path) {
    const lfc::app_config cfg = resolve_config(g);
    const int case_id = parse_case_label(case_label);
    lfc::load_case lc = lfc::case_in_config(cfg, case_id);
    if (w1_override) lc.w1 = *w1_override;
    if (w2_override) lc.w2 = *w2_override;
    lfc::validate(lc);

    lfc::pid_gains gains;
    if (!gains_text.empty()) {
        gains = lfc::gains_from_vector(parse_gain_list(gains_text));
    } else if (!from_runs.empty()) {
        const auto records = lfc::read_runs_csv(from_runs);
        const lfc::run_record* pick = nullptr;
        for (const auto& r : records) {
            if (r.case_id != case_id) continue;
            if (!row_algorithm.empty() && r.algorithm != row_algorithm)
                continue;
            if (row_seed && r.seed != *row_seed) continue;
            if (!pick || r.best_itae < pick->best_itae) pick = &r;
        }
        if (!pick)
            throw config_error("no row in " + from_runs +
                               " matches the requested case/algorithm/seed");
        gains = pick->gains;
        std::cout << "row: algorithm=" << pick->algorithm
                  << " seed=" << pick->seed << '\n';
    } else {
        throw config_error("simulate needs --gains or --from-runs");
    }

    const lfc::closed_loop_matrix cl = lfc::build_closed_loop(cfg.plant, gains);
    const lfc::trajectory traj = lfc::integrate(cl, lc, cfg.sim);

    ensure_dir(g.out_dir);
    if (traj_path.empty())
        traj_path = (fs::path(g.out_dir) / "trajectory.csv").string();
    std::ofstream out = open_out(traj_path);
    lfc::write_trajectory_csv(out, traj, cfg.plant);

    const double itae_value = lfc::itae(traj);
    const lfc::settling_report rep = lfc::settling_metrics(traj);
    std::cout << "case: " << case_id << " (w1=" << lfc::format_double(lc.w1)
              << ", w2=" << lfc::format_double(lc.w2) << ")\n";
    print_gains(gains);
    std::cout << "itae: " << lfc::format_double(itae_value) << '\n';
    std::cout << "itae_4dp: " << fixed4(itae_value) << '\n';
    print_signal("x1", rep.x1);
    print_signal("x4", rep.x4);
    print_signal("x7", rep.x7);
    std::cout << "trajectory: " << traj_path << '\n';
    return 0;
}

// -------------------------------------------------------------------- tune

int cmd_tune(const global_options& g, const std::string& algorithm,
             const std::string& case_label,
             std::optional<std::uint64_t> seed) {
    const lfc::app_config cfg = resolve_config(g);
    const auto& names = lfc::algorithm_names();
    if (std::find(names.begin(), names.end(), algorithm) == names.end())
        throw config_error("unknown algorithm '" + algorithm + "'");
    const int case_id = parse_case_label(case_label);
    const lfc::load_case lc = lfc::case_in_config(cfg, case_id);

    lfc::optimizer_config oc = cfg.optimizers.at(algorithm);
    oc.seed = seed ? *seed : cfg.plan.base_seed;
    const lfc::objective_spec obj = lfc::make_objective(cfg, lc);
    const lfc::run_trace tr = lfc::run_algorithm(algorithm, obj, oc);

    ensure_dir(g.out_dir);
    std::ostringstream name;
    name << "tune_" << algorithm << "_case-" << case_id << "_seed-" << oc.seed
         << ".csv";
    const std::string conv_path = (fs::path(g.out_dir) / name.str()).string();
    std::ofstream out = open_out(conv_path);
    out << lfc::convergence_csv_header << '\n';
    for (std::size_t it = 0; it < tr.best_fitness_per_iteration.size(); ++it)
        out << algorithm << ',' << case_id << ',' << oc.seed << ',' << it + 1
            << ',' << lfc::format_double(tr.best_fitness_per_iteration[it])
            << '\n';

    std::cout << "algorithm: " << algorithm << '\n';
    std::cout << "case: " << case_id << '\n';
    std::cout << "seed: " << oc.seed << '\n';
    std::cout << "population: " << oc.population << '\n';
    std::cout << "iterations: " << oc.max_iterations << '\n';
    std::cout << "evaluations: " << tr.evaluations << '\n';
    print_gains(lfc::gains_from_vector(tr.final_gains));
    std::cout << "best_itae: " << lfc::format_double(tr.final_fitness) << '\n';
    std::cout << "best_itae_4dp: " << fixed4(tr.final_fitness) << '\n';
    std::cout << "convergence: " << conv_path << '\n';
    return 0;
}

// --------------------------------------------------------------- benchmark

int cmd_benchmark(const global_options& g, bool quiet) {
    const lfc::app_config cfg = resolve_config(g);
    const auto result = lfc::run_experiment(
        cfg, g.out_dir,
        [&](const lfc::run_record& r, std::size_t done, std::size_t total) {
            if (quiet) return;
            std::cout << '[' << done << '/' << total << "] " << r.algorithm
                      << " case-" << r.case_id << " seed " << r.seed
                      << " itae=" << fixed4(r.best_itae) << std::endl;
        });
    std::cout << "resumed: " << result.resumed
              << " executed: " << result.executed
              << " failed: " << result.failures.size() << '\n';
    for (const auto& f : result.failures)
        std::cout << "failure: " << f.algorithm << " case-" << f.case_id
                  << " seed " << f.seed << ": " << f.message << '\n';

    const auto cells = lfc::summarize(result.records);
    if (!cells.empty()) {
        std::cout << "algorithm,case,runs,best,worst,mean\n";
        for (const auto& c : cells)
            std::cout << c.algorithm << ',' << c.case_id << ',' << c.runs
                      << ',' << fixed4(c.best) << ',' << fixed4(c.worst)
                      << ',' << fixed4(c.mean) << '\n';
    }
    const bool attempted =
        result.executed + result.failures.size() > 0;
    if (attempted && result.executed == 0 && !result.failures.empty())
        return 1; // every attempted cell failed
    return 0;
}

// ------------------------------------------------------------------- stats

int cmd_stats(const global_options& g, const std::string& runs_path_in) {
    const std::string runs_path =
        runs_path_in.empty() ? (fs::path(g.out_dir) / "runs.csv").string()
                             : runs_path_in;
    const auto records = lfc::read_runs_csv(runs_path);
    if (records.empty()) throw config_error(runs_path + " holds no runs");
    ensure_dir(g.out_dir);

    // Canonical algorithm order restricted to those present.
    std::vector<std::string> algs;
    for (const std::string& a : lfc::algorithm_names()) {
        for (const auto& r : records)
            if (r.algorithm == a) {
                algs.push_back(a);
                break;
            }
    }
    for (const auto& r : records)
        if (std::find(algs.begin(), algs.end(), r.algorithm) == algs.end())
            algs.push_back(r.algorithm);

    // --- descriptive per (algorithm, case), Table-9 layout ----------------
    {
        auto out = open_out(
            (fs::path(g.out_dir) / "stats_descriptive.csv").string());
        out << "algorithm,case,runs,best,worst,mean,stddev,median\n";
        for (const auto& c : lfc::summarize(records))
            out << c.algorithm << ',' << c.case_id << ',' << c.runs << ','
                << lfc::format_double(c.best) << ','
                << lfc::format_double(c.worst) << ','
                << lfc::format_double(c.mean) << ','
                << lfc::format_double(c.stddev) << ','
                << lfc::format_double(c.median) << '\n';
    }

    // --- pooled per-algorithm groups --------------------------------------
    std::map<std::string, std::vector<double>> pooled;
    for (const auto& r : records) pooled[r.algorithm].push_back(r.best_itae);
    std::vector<std::vector<double>> groups;
    for (const std::string& a : algs) groups.push_back(pooled[a]);

    // --- Levene across algorithms, three centerings ------------------------
    {
        auto out =
            open_out((fs::path(g.out_dir) / "stats_levene.csv").string());
        out << "center,f,df1,df2,p_value,note\n";
        for (const auto center :
             {lfc::levene_center::mean, lfc::levene_center::median,
              lfc::levene_center::trimmed_mean}) {
            const char* cname = lfc::levene_center_name(center);
            try {
                const auto lr = lfc::levene(groups, center);
                out << cname << ',' << lfc::format_double(lr.f) << ','
                    << lfc::format_double(lr.df1) << ','
                    << lfc::format_double(lr.df2) << ','
                    << lfc::format_double(lr.p_value) << ",\n";
                std::cout << "levene[" << cname << "]: F=" << fixed4(lr.f)
                          << " df=(" << lr.df1 << ',' << lr.df2
                          << ") p=" << lfc::format_double(lr.p_value) << '\n';
            } catch (const lfc::stat_error& e) {
                out << cname << ",,,,," << e.what() << '\n';
                std::cout << "levene[" << cname << "] skipped: " << e.what()
                          << '\n';
            }
        }
    }

    // --- Friedman blocks: one row per (case, seed) complete across algs ----
    std::map<std::pair<int, std::uint64_t>,
             std::map<std::string, double>>
        by_block;
    for (const auto& r : records)
        by_block[{r.case_id, r.seed}][r.algorithm] = r.best_itae;
    std::vector<std::vector<double>> blocks;
    std::map<std::string, std::vector<double>> paired; // per algorithm
    for (const auto& [key, row] : by_block) {
        if (row.size() != algs.size()) continue; // incomplete block
        std::vector<double> b;
        b.reserve(algs.size());
        for (const std::string& a : algs) b.push_back(row.at(a));
        blocks.push_back(b);
        for (std::size_t i = 0; i < algs.size(); ++i)
            paired[algs[i]].push_back(b[i]);
    }
    std::cout << "blocks: " << blocks.size() << " complete of "
              << by_block.size() << " (algorithms: " << algs.size() << ")\n";

    try {
        const auto fr = lfc::friedman(blocks);
        {
            auto out = open_out(
                (fs::path(g.out_dir) / "stats_friedman_ranks.csv").string());
            out << "algorithm,rank_sum,mean_rank\n";
            for (std::size_t i = 0; i < algs.size(); ++i)
                out << algs[i] << ',' << lfc::format_double(fr.rank_sums[i])
                    << ',' << lfc::format_double(fr.mean_ranks[i]) << '\n';
        }
        {
            auto out = open_out(
                (fs::path(g.out_dir) / "stats_friedman_test.csv").string());
            out << "n_blocks,k_groups,chi2,df,p_value,kendall_w,"
                   "tie_correction\n";
            out << fr.n_blocks << ',' << fr.k_groups << ','
                << lfc::format_double(fr.chi2) << ','
                << lfc::format_double(fr.df) << ','
                << lfc::format_double(fr.p_value) << ','
                << lfc::format_double(fr.kendall_w) << ','
                << lfc::format_double(fr.tie_correction) << '\n';
        }
        std::cout << "friedman: chi2=" << fixed4(fr.chi2) << " df=" << fr.df
                  << " p=" << lfc::format_double(fr.p_value)
                  << " kendall_w=" << fixed4(fr.kendall_w) << '\n';
        for (std::size_t i = 0; i < algs.size(); ++i)
            std::cout << "mean_rank[" << algs[i]
                      << "]=" << fixed4(fr.mean_ranks[i]) << '\n';

        const double se =
            lfc::posthoc_standard_error(fr.k_groups, fr.n_blocks);
        std::cout << "pairwise_se: " << fixed4(se) << '\n';
        auto out = open_out(
            (fs::path(g.out_dir) / "stats_friedman_pairwise.csv").string());
        out << "algorithm_a,algorithm_b,delta_mean_rank,z,p_raw,p_adjusted\n";
        for (const auto& c : lfc::friedman_posthoc(fr))
            out << algs[c.group_i] << ',' << algs[c.group_j] << ','
                << lfc::format_double(c.delta_mean_rank) << ','
                << lfc::format_double(c.z) << ','
                << lfc::format_double(c.p_raw) << ','
                << lfc::format_double(c.p_adjusted) << '\n';
    } catch (const lfc::stat_error& e) {
        std::cout << "friedman skipped: " << e.what() << '\n';
    }

    // --- all-pairs Wilcoxon -------------------------------------------------
    {
        auto out =
            open_out((fs::path(g.out_dir) / "stats_wilcoxon.csv").string());
        out << "algorithm_a,algorithm_b,n_pairs,n_nonzero,w_plus,w_minus,z,"
               "p_value,note\n";
        for (std::size_t i = 0; i < algs.size(); ++i) {
            for (std::size_t j = i + 1; j < algs.size(); ++j) {
                const auto& xa = paired[algs[i]];
                const auto& xb = paired[algs[j]];
                try {
                    const auto wr = lfc::wilcoxon_signed_rank(xa, xb);
                    out << algs[i] << ',' << algs[j] << ',' << wr.n_pairs
                        << ',' << wr.n_nonzero << ','
                        << lfc::format_double(wr.w_plus) << ','
                        << lfc::format_double(wr.w_minus) << ','
                        << lfc::format_double(wr.z) << ','
                        << lfc::format_double(wr.p_value) << ",\n";
                    std::cout << "wilcoxon " << algs[i] << " vs " << algs[j]
                              << ": z=" << fixed4(wr.z)
                              << " p=" << lfc::format_double(wr.p_value)
                              << '\n';
                } catch (const lfc::stat_error& e) {
                    out << algs[i] << ',' << algs[j] << ',' << xa.size()
                        << ",,,,,," << e.what() << '\n';
                    std::cout << "wilcoxon " << algs[i] << " vs " << algs[j]
                              << " skipped: " << e.what() << '\n';
                }
            }
        }
    }
    return 0;
}

// ------------------------------------------------------------------ report

int cmd_report(const global_options& g, std::string runs_path,
               std::string conv_path, const std::string& case_label,
               int first_k) {
    if (first_k < 1) throw config_error("--first-k must be at least 1");
    if (runs_path.empty())
        runs_path = (fs::path(g.out_dir) / "runs.csv").string();
    if (conv_path.empty())
        conv_path = (fs::path(g.out_dir) / "convergence.csv").string();
    const int case_id = parse_case_label(case_label);
    const auto records = lfc::read_runs_csv(runs_path);
    const auto conv = lfc::read_convergence_csv(conv_path);
    ensure_dir(g.out_dir);

    // Group curves: algorithm -> seed -> best fitness per iteration.
    std::map<std::string, std::map<std::uint64_t, std::vector<double>>> curves;
    for (const auto& row : conv) {
        if (row.case_id != case_id) continue;
        auto& c = curves[row.algorithm][row.seed];
        if (static_cast<std::size_t>(row.iteration) > c.size())
            c.resize(row.iteration, 0.0);
        c[row.iteration - 1] = row.best_fitness;
    }
    if (curves.empty())
        throw config_error("no convergence rows for case " +
                           std::to_string(case_id) + " in " + conv_path);

    std::vector<std::string> algs;
    for (const std::string& a : lfc::algorithm_names())
        if (curves.count(a)) algs.push_back(a);
    for (const auto& kv : curves)
        if (std::find(algs.begin(), algs.end(), kv.first) == algs.end())
            algs.push_back(kv.first);

    auto median_of = [](std::vector<double> v) {
        std::sort(v.begin(), v.end());
        const std::size_t n = v.size();
        return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
    };

    {
        auto out = open_out(
            (fs::path(g.out_dir) / "report_curves.csv").string());
        out << "algorithm,iteration,median_best_fitness,min_best_fitness\n";
        for (const std::string& a : algs) {
            std::size_t len = 0;
            for (const auto& [seed, c] : curves[a])
                len = std::max(len, c.size());
            for (std::size_t it = 0; it < len; ++it) {
                std::vector<double> vals;
                for (const auto& [seed, c] : curves[a])
                    if (it < c.size()) vals.push_back(c[it]);
                const double med = median_of(vals);
                const double mn = *std::min_element(vals.begin(), vals.end());
                out << a << ',' << it + 1 << ',' << lfc::format_double(med)
                    << ',' << lfc::format_double(mn) << '\n';
            }
        }
    }

    // Median wall time per algorithm for this case (for the time-to-k column).
    std::map<std::string, std::vector<double>> wall;
    std::map<std::string, const lfc::run_record*> best_row;
    for (const auto& r : records) {
        if (r.case_id != case_id) continue;
        wall[r.algorithm].push_back(r.wall_time_s);
        auto it = best_row.find(r.algorithm);
        if (it == best_row.end() || r.best_itae < it->second->best_itae)
            best_row[r.algorithm] = &r;
    }

    {
        auto out = open_out(
            (fs::path(g.out_dir) / "report_after_k.csv").string());
        out << "algorithm,first_k,fitness_after_k,final_fitness,"
               "median_time_to_k_s,truncated\n";
        std::cout << "case " << case_id << ", after " << first_k
                  << " iterations:\n";
        std::cout << "algorithm,fitness_after_k,final_fitness,truncated\n";
        for (const std::string& a : algs) {
            std::vector<double> at_k, at_end;
            std::size_t len = 0;
            for (const auto& [seed, c] : curves[a]) {
                if (c.empty()) continue;
                len = std::max(len, c.size());
                const std::size_t k_eff =
                    std::min<std::size_t>(first_k, c.size());
                at_k.push_back(c[k_eff - 1]);
                at_end.push_back(c.back());
            }
            const bool truncated = static_cast<std::size_t>(first_k) > len;
            const double med_k = median_of(at_k);
            const double med_end = median_of(at_end);
            double t_k = 0.0;
            if (wall.count(a) && len > 0) {
                const double med_wall = median_of(wall[a]);
                t_k = med_wall *
                      (static_cast<double>(std::min<std::size_t>(first_k, len)) /
                       static_cast<double>(len));
            }
            out << a << ',' << first_k << ',' << lfc::format_double(med_k)
                << ',' << lfc::format_double(med_end) << ','
                << lfc::format_double(t_k) << ','
                << (truncated ? "true" : "false") << '\n';
            std::cout << a << ',' << fixed4(med_k) << ',' << fixed4(med_end)
                      << ',' << (truncated ? "true" : "false") << '\n';
        }
    }

    {
        auto out = open_out(
            (fs::path(g.out_dir) / "report_best_gains.csv").string());
        out << "algorithm,case,seed,best_itae,kp1,ki1,kd1,kp2,ki2,kd2\n";
        for (const std::string& a : algs) {
            if (!best_row.count(a)) continue;
            const lfc::run_record& r = *best_row[a];
            out << a << ',' << r.case_id << ',' << r.seed << ','
                << lfc::format_double(r.best_itae) << ','
                << lfc::format_double(r.gains.kp1) << ','
                << lfc::format_double(r.gains.ki1) << ','
                << lfc::format_double(r.gains.kd1) << ','
                << lfc::format_double(r.gains.kp2) << ','
                << lfc::format_double(r.gains.ki2) << ','
                << lfc::format_double(r.gains.kd2) << '\n';
        }
    }
    std::cout << "report files written under " << g.out_dir << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Two-area power-system PID tuning benchmark: simulate the plant, "
        "tune controllers with six metaheuristics, run the full benchmark "
        "grid, and analyze the results"};
    app.require_subcommand(1);

    global_options g;
    app.add_option("--config", g.config_path,
                   "JSON config file (defaults are built in)");
    app.add_option("--out", g.out_dir,
                   "output directory (env LFCBENCH_OUT, default 'out')");
    app.add_option("--profile", g.profile, "named profile: desk or full");
    app.add_option("--set", g.overrides,
                   "config override, dotted key=value (repeatable)");
    app.add_option("--kernel", g.kernel,
                   "force stepping kernel: scalar or avx2/neon");

    // simulate
    auto* sim_cmd = app.add_subcommand(
        "simulate", "integrate the closed loop for one case and gain set");
    sim_cmd->fallthrough();
    std::string sim_case = "1", sim_gains, sim_from_runs, sim_row_alg,
                sim_traj;
    std::optional<std::uint64_t> sim_row_seed;
    std::optional<double> sim_w1, sim_w2;
    sim_cmd->add_option("--case", sim_case, "load case (e.g. 1 or case-1)");
    sim_cmd->add_option("--gains", sim_gains,
                        "six comma-separated values kp1,ki1,kd1,kp2,ki2,kd2");
    sim_cmd->add_option("--from-runs", sim_from_runs,
                        "pick gains from a runs.csv (best matching row)");
    sim_cmd->add_option("--algorithm", sim_row_alg,
                        "restrict --from-runs rows to one algorithm");
    sim_cmd->add_option("--seed", sim_row_seed,
                        "restrict --from-runs rows to one seed");
    sim_cmd->add_option("--w1", sim_w1, "override area-1 step load (pu)");
    sim_cmd->add_option("--w2", sim_w2, "override area-2 step load (pu)");
    sim_cmd->add_option("--traj", sim_traj,
                        "trajectory CSV path (default <out>/trajectory.csv)");

    // tune
    auto* tune_cmd = app.add_subcommand(
        "tune", "run one seeded optimization for an algorithm and case");
    tune_cmd->fallthrough();
    std::string tune_alg, tune_case = "1";
    std::optional<std::uint64_t> tune_seed;
    tune_cmd->add_option("algorithm", tune_alg,
                         "egbo | gbo | pso | gwo | sca | choa")
        ->required();
    tune_cmd->add_option("case", tune_case, "load case (e.g. 1 or case-1)");
    tune_cmd->add_option("--seed", tune_seed,
                         "RNG seed (default: plan.base_seed)");

    // benchmark
    auto* bench_cmd = app.add_subcommand(
        "benchmark", "run the full plan with resume; writes runs.csv, "
                     "convergence.csv, manifest.json");
    bench_cmd->fallthrough();
    bool bench_quiet = false;
    bench_cmd->add_flag("--quiet", bench_quiet, "suppress per-run progress");

    // stats
    auto* stats_cmd = app.add_subcommand(
        "stats", "nonparametric analysis of a runs.csv");
    stats_cmd->fallthrough();
    std::string stats_runs;
    stats_cmd->add_option("runs", stats_runs,
                          "runs.csv path (default <out>/runs.csv)");

    // report
    auto* report_cmd = app.add_subcommand(
        "report", "plot-ready convergence/report tables for one case");
    report_cmd->fallthrough();
    std::string report_runs, report_conv, report_case = "1";
    int report_first_k = 50;
    report_cmd->add_option("--runs", report_runs,
                           "runs.csv path (default <out>/runs.csv)");
    report_cmd->add_option("--convergence", report_conv,
                           "convergence.csv path (default <out>/convergence.csv)");
    report_cmd->add_option("--case", report_case,
                           "load case (e.g. 5 or case-5)");
    report_cmd->add_option("--first-k", report_first_k,
                           "iteration cut for the after-k table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sim_cmd->parsed())
            return cmd_simulate(g, sim_case, sim_gains, sim_from_runs,
                                sim_row_alg, sim_row_seed, sim_w1, sim_w2,
                                sim_traj);
        if (tune_cmd->parsed()) return cmd_tune(g, tune_alg, tune_case,
                                                tune_seed);
        if (bench_cmd->parsed()) return cmd_benchmark(g, bench_quiet);
        if (stats_cmd->parsed()) return cmd_stats(g, stats_runs);
        if (report_cmd->parsed())
            return cmd_report(g, report_runs, report_conv, report_case,
                              report_first_k);
    } catch (const lfc::divergence_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
