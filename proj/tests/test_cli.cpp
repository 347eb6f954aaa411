#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct cli_result {
    int code = -1;
    std::string text; // stdout and stderr interleaved
};

cli_result run_cli(const std::string& args) {
    const std::string cmd = std::string(LFCBENCH_BINARY) + " " + args + " 2>&1";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    cli_result result;
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0)
        result.text.append(buf, n);
    const int status = ::pclose(pipe);
    result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

struct scratch_dir {
    fs::path path;
    explicit scratch_dir(const std::string& tag) {
        path = fs::temp_directory_path() /
               ("lfc_cli_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
    }
    ~scratch_dir() { fs::remove_all(path); }
    std::string str() const { return path.string(); }
};

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::size_t count_lines(const std::string& text) {
    std::size_t lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    return lines;
}

const char* reference_gain_list =
    "'-15.1838,-43.5993,-5.7641,-15.1738,-45.0,-5.761'";

// Cheap settings shared by the heavier subcommand tests.
std::string fast_flags() {
    return "--set sim.t_final=10 --set optimizers.pso.population=8 "
           "--set optimizers.pso.max_iterations=5 "
           "--set optimizers.sca.population=8 "
           "--set optimizers.sca.max_iterations=5 ";
}

} // namespace

TEST_CASE("cli rejects empty and malformed invocations") {
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("conquer").code == 2);
    CHECK(run_cli("--help").code == 0);
    CHECK(contains(run_cli("--help").text, "simulate"));
    CHECK(run_cli("simulate --no-such-flag").code == 2);
}

TEST_CASE("simulate replays a published gain row") {
    scratch_dir dir("simulate");
    const cli_result r = run_cli("--out " + dir.str() +
                                 " simulate --case 1 --gains " +
                                 reference_gain_list);
    CHECK(r.code == 0);
    CHECK(contains(r.text, "case: 1 (w1=0.15, w2=0.15)"));
    CHECK(contains(r.text, "itae_4dp: 0.2376"));
    CHECK(contains(r.text, "kp1=-15.1838"));
    CHECK(contains(r.text, "x1: peak="));
    CHECK(contains(r.text, "settling_time_s="));

    const fs::path traj = dir.path / "trajectory.csv";
    REQUIRE(fs::exists(traj));
    const std::string body = slurp(traj);
    CHECK(contains(body, "t,x1,x2,x3,x4,x5,x6,x7,u1,u2,ace1,ace2"));
    CHECK(count_lines(body) == 1 + 4001); // header + samples at dt 0.01, t 40
}

TEST_CASE("simulate validates its inputs") {
    scratch_dir dir("simulate_bad");
    const std::string base = "--out " + dir.str() + " simulate --case 1 ";
    CHECK(run_cli(base).code == 2); // neither --gains nor --from-runs
    const cli_result short_gains = run_cli(base + "--gains '1,2,3'");
    CHECK(short_gains.code == 2);
    CHECK(contains(short_gains.text, "exactly 6"));
    CHECK(run_cli(base + "--gains 'a,b,c,d,e,f'").code == 2);
    CHECK(run_cli("--out " + dir.str() +
                  " simulate --case 9 --gains " + reference_gain_list)
              .code == 2);

    const cli_result diverged =
        run_cli(base + "--gains '100,100,100,100,100,100'");
    CHECK(diverged.code == 3);
    CHECK(contains(diverged.text, "diverged at t"));
}

TEST_CASE("simulate accepts disturbance overrides") {
    scratch_dir dir("simulate_w");
    const cli_result r = run_cli(
        "--out " + dir.str() + " --set sim.t_final=5 simulate --case 1 "
        "--w1 0 --w2 0 --gains " + reference_gain_list);
    CHECK(r.code == 0);
    CHECK(contains(r.text, "(w1=0, w2=0)"));
    CHECK(contains(r.text, "itae: 0\n"));
}

TEST_CASE("tune runs one seeded optimization deterministically") {
    scratch_dir a("tune_a");
    scratch_dir b("tune_b");
    const std::string invocation =
        fast_flags() + "tune pso case-2 --seed 7";

    const cli_result ra = run_cli("--out " + a.str() + " " + invocation);
    CHECK(ra.code == 0);
    CHECK(contains(ra.text, "algorithm: pso"));
    CHECK(contains(ra.text, "case: 2"));
    CHECK(contains(ra.text, "seed: 7"));
    CHECK(contains(ra.text, "evaluations: 48"));
    CHECK(contains(ra.text, "best_itae:"));
    CHECK(contains(ra.text, "gains_raw:"));

    const fs::path conv = a.path / "tune_pso_case-2_seed-7.csv";
    REQUIRE(fs::exists(conv));
    const std::string curve = slurp(conv);
    CHECK(contains(curve, "algorithm,case,seed,iteration,best_fitness"));
    CHECK(count_lines(curve) == 1 + 5);

    // Identical invocation in a fresh directory: byte-identical output.
    const cli_result rb = run_cli("--out " + b.str() + " " + invocation);
    CHECK(rb.code == 0);
    std::string ta = ra.text, tb = rb.text;
    const auto scrub = [](std::string& s, const std::string& dir) {
        for (std::size_t at = s.find(dir); at != std::string::npos;
             at = s.find(dir))
            s.erase(at, dir.size());
    };
    scrub(ta, a.str());
    scrub(tb, b.str());
    CHECK(ta == tb);
    CHECK(curve == slurp(b.path / "tune_pso_case-2_seed-7.csv"));
}

TEST_CASE("tune rejects unknown algorithms and bad cases") {
    scratch_dir dir("tune_bad");
    const cli_result unknown =
        run_cli("--out " + dir.str() + " tune cmaes 1");
    CHECK(unknown.code == 2);
    CHECK(contains(unknown.text, "unknown algorithm"));
    CHECK(run_cli("--out " + dir.str() + " tune pso case-77").code == 2);
}

TEST_CASE("benchmark runs the plan, resumes, and summarizes") {
    scratch_dir dir("bench");
    const std::string invocation =
        "--out " + dir.str() + " " + fast_flags() +
        "--set 'plan.algorithms=[\"pso\",\"sca\"]' --set plan.cases=[1] "
        "--set plan.runs_per_cell=5 --set plan.base_seed=42 "
        "benchmark --quiet";

    const cli_result first = run_cli(invocation);
    CHECK(first.code == 0);
    CHECK(contains(first.text, "resumed: 0 executed: 10 failed: 0"));
    CHECK(contains(first.text, "algorithm,case,runs,best,worst,mean"));
    CHECK(contains(first.text, "pso,1,5,"));
    CHECK(contains(first.text, "sca,1,5,"));
    REQUIRE(fs::exists(dir.path / "runs.csv"));
    REQUIRE(fs::exists(dir.path / "convergence.csv"));
    REQUIRE(fs::exists(dir.path / "manifest.json"));
    CHECK(count_lines(slurp(dir.path / "runs.csv")) == 1 + 10);
    CHECK(count_lines(slurp(dir.path / "convergence.csv")) == 1 + 10 * 5);

    const cli_result second = run_cli(invocation);
    CHECK(second.code == 0);
    CHECK(contains(second.text, "resumed: 10 executed: 0 failed: 0"));
    CHECK(count_lines(slurp(dir.path / "runs.csv")) == 1 + 10);

    // The stats and report stages consume the same artifact directory.
    const cli_result stats = run_cli("--out " + dir.str() + " stats");
    CHECK(stats.code == 0);
    CHECK(contains(stats.text, "blocks: 5 complete of 5"));
    CHECK(contains(stats.text, "friedman: chi2="));
    CHECK(contains(stats.text, "wilcoxon pso vs sca:"));
    for (const char* name :
         {"stats_descriptive.csv", "stats_levene.csv",
          "stats_friedman_ranks.csv", "stats_friedman_test.csv",
          "stats_friedman_pairwise.csv", "stats_wilcoxon.csv"})
        CHECK(fs::exists(dir.path / name));

    const cli_result report =
        run_cli("--out " + dir.str() + " report --case 1 --first-k 3");
    CHECK(report.code == 0);
    CHECK(contains(report.text, "case 1, after 3 iterations:"));
    for (const char* name : {"report_curves.csv", "report_after_k.csv",
                             "report_best_gains.csv"})
        CHECK(fs::exists(dir.path / name));
    const std::string after_k = slurp(dir.path / "report_after_k.csv");
    CHECK(contains(after_k, "pso,3,"));
    CHECK(contains(after_k, ",false"));

    // simulate --from-runs picks the best row out of the campaign.
    const cli_result replay = run_cli(
        "--out " + dir.str() + " --set sim.t_final=10 simulate --case 1 "
        "--from-runs " + (dir.path / "runs.csv").string() +
        " --algorithm pso");
    CHECK(replay.code == 0);
    CHECK(contains(replay.text, "row: algorithm=pso seed="));

    const cli_result no_match = run_cli(
        "--out " + dir.str() + " simulate --case 3 --from-runs " +
        (dir.path / "runs.csv").string());
    CHECK(no_match.code == 2);
}

TEST_CASE("benchmark reports total failure with its own exit code") {
    scratch_dir dir("bench_fail");
    const cli_result r = run_cli(
        "--out " + dir.str() +
        " --set 'plan.algorithms=[\"gbo\"]' --set plan.cases=[1] "
        "--set plan.runs_per_cell=2 --set optimizers.gbo.population=5 "
        "--set sim.t_final=5 benchmark --quiet");
    CHECK(r.code == 1);
    CHECK(contains(r.text, "failed: 2"));
    CHECK(contains(r.text, "failure: gbo case-1"));
}

TEST_CASE("stats and report demand usable inputs") {
    scratch_dir dir("stats_bad");
    CHECK(run_cli("--out " + dir.str() + " stats").code == 2);
    CHECK(run_cli("--out " + dir.str() + " report --case 1").code == 2);
    CHECK(run_cli("--out " + dir.str() + " report --case 1 --first-k 0")
              .code == 2);
}

TEST_CASE("global options reach the subcommands") {
    scratch_dir dir("globals");

    SUBCASE("kernel pinning") {
        CHECK(run_cli("--out " + dir.str() +
                      " --kernel scalar --set sim.t_final=5 simulate "
                      "--case 1 --gains " + reference_gain_list)
                  .code == 0);
        const cli_result bad = run_cli(
            "--out " + dir.str() + " --kernel quantum --set sim.t_final=5 "
            "simulate --case 1 --gains " + reference_gain_list);
        CHECK(bad.code == 2);
        CHECK(contains(bad.text, "kernel"));
    }

    SUBCASE("bad override is a config error") {
        CHECK(run_cli("--out " + dir.str() +
                      " --set nope=1 simulate --case 1 --gains " +
                      reference_gain_list)
                  .code == 2);
        CHECK(run_cli("--out " + dir.str() +
                      " --profile turbo simulate --case 1 --gains " +
                      reference_gain_list)
                  .code == 2);
    }

    SUBCASE("config file feeds every stage") {
        fs::create_directories(dir.path);
        const fs::path cfg_path = dir.path / "config.json";
        {
            std::ofstream out(cfg_path);
            out << "{\"sim\": {\"t_final\": 5.0}}";
        }
        const cli_result r = run_cli(
            "--out " + dir.str() + " --config " + cfg_path.string() +
            " simulate --case 1 --gains " + reference_gain_list);
        CHECK(r.code == 0);
        const std::string traj = slurp(dir.path / "trajectory.csv");
        CHECK(count_lines(traj) == 1 + 501); // the shorter horizon applied

        std::ofstream(cfg_path) << "{\"simm\": {}}";
        CHECK(run_cli("--out " + dir.str() + " --config " +
                      cfg_path.string() + " simulate --case 1 --gains " +
                      reference_gain_list)
                  .code == 2);
    }

    SUBCASE("environment default for the output directory") {
        fs::create_directories(dir.path);
        const std::string cmd =
            "LFCBENCH_OUT=" + dir.str() + " " + std::string(LFCBENCH_BINARY) +
            " --set sim.t_final=5 simulate --case 1 --gains " +
            std::string(reference_gain_list) + " >/dev/null 2>&1";
        CHECK(std::system(cmd.c_str()) == 0);
        CHECK(fs::exists(dir.path / "trajectory.csv"));
    }
}
