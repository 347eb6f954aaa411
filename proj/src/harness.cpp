#include "lfc/harness.hpp"

#include "lfc/stats.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <system_error>
#include <thread>

namespace lfc {

const char* const runs_csv_header =
    "algorithm,case,seed,best_itae,wall_time_s,evaluations,"
    "kp1,ki1,kd1,kp2,ki2,kd2";

const char* const convergence_csv_header =
    "algorithm,case,seed,iteration,best_fitness";

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_double_field(const std::string& s, const std::string& where) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw config_error(where + ": cannot parse number '" + s + "'");
    }
}

long long parse_int_field(const std::string& s, const std::string& where) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw config_error(where + ": cannot parse integer '" + s + "'");
    }
}

std::uint64_t parse_seed_field(const std::string& s, const std::string& where) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw config_error(where + ": cannot parse seed '" + s + "'");
    }
}

struct run_key {
    std::string algorithm;
    int case_id = 0;
    std::uint64_t seed = 0;

    bool operator<(const run_key& o) const {
        if (algorithm != o.algorithm) return algorithm < o.algorithm;
        if (case_id != o.case_id) return case_id < o.case_id;
        return seed < o.seed;
    }
};

std::string run_row(const run_record& r) {
    std::ostringstream os;
    os << r.algorithm << ',' << r.case_id << ',' << r.seed << ','
       << format_double(r.best_itae) << ',' << format_double(r.wall_time_s)
       << ',' << r.evaluations << ',' << format_double(r.gains.kp1) << ','
       << format_double(r.gains.ki1) << ',' << format_double(r.gains.kd1)
       << ',' << format_double(r.gains.kp2) << ','
       << format_double(r.gains.ki2) << ',' << format_double(r.gains.kd2);
    return os.str();
}

std::string utc_timestamp() {
    const std::time_t now =
        std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Drops convergence rows whose run never finished (no runs.csv row), so a
// crashed campaign resumes without duplicated iteration curves.
void reconcile_convergence(const std::string& conv_path,
                           const std::set<run_key>& completed) {
    std::ifstream in(conv_path);
    if (!in) return;
    std::vector<std::string> kept;
    std::string line;
    bool first = true;
    bool dropped = false;
    while (std::getline(in, line)) {
        if (first) {
            first = false;
            if (line != convergence_csv_header)
                throw config_error(conv_path + ": unexpected header '" + line +
                                   "'");
            continue;
        }
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 5)
            throw config_error(conv_path + ": expected 5 fields, got " +
                               std::to_string(fields.size()));
        run_key k{fields[0],
                  static_cast<int>(parse_int_field(fields[1], conv_path)),
                  parse_seed_field(fields[2], conv_path)};
        if (completed.count(k))
            kept.push_back(line);
        else
            dropped = true;
    }
    in.close();
    if (!dropped) return;
    std::ofstream out(conv_path, std::ios::trunc);
    out << convergence_csv_header << '\n';
    for (const std::string& l : kept) out << l << '\n';
}

} // namespace

std::vector<run_record> read_runs_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open runs file: " + path);
    std::string line;
    if (!std::getline(in, line))
        throw config_error(path + ": empty runs file");
    if (line != runs_csv_header)
        throw config_error(path + ": unexpected header '" + line +
                           "' (expected '" + runs_csv_header + "')");
    std::vector<run_record> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 12)
            throw config_error(path + ": expected 12 fields, got " +
                               std::to_string(f.size()) + " in '" + line +
                               "'");
        run_record r;
        r.algorithm = f[0];
        r.case_id = static_cast<int>(parse_int_field(f[1], path));
        r.seed = parse_seed_field(f[2], path);
        r.best_itae = parse_double_field(f[3], path);
        r.wall_time_s = parse_double_field(f[4], path);
        r.evaluations = parse_int_field(f[5], path);
        r.gains.kp1 = parse_double_field(f[6], path);
        r.gains.ki1 = parse_double_field(f[7], path);
        r.gains.kd1 = parse_double_field(f[8], path);
        r.gains.kp2 = parse_double_field(f[9], path);
        r.gains.ki2 = parse_double_field(f[10], path);
        r.gains.kd2 = parse_double_field(f[11], path);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<convergence_row> read_convergence_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open convergence file: " + path);
    std::string line;
    if (!std::getline(in, line))
        throw config_error(path + ": empty convergence file");
    if (line != convergence_csv_header)
        throw config_error(path + ": unexpected header '" + line +
                           "' (expected '" + convergence_csv_header + "')");
    std::vector<convergence_row> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 5)
            throw config_error(path + ": expected 5 fields, got " +
                               std::to_string(f.size()) + " in '" + line +
                               "'");
        convergence_row r;
        r.algorithm = f[0];
        r.case_id = static_cast<int>(parse_int_field(f[1], path));
        r.seed = parse_seed_field(f[2], path);
        r.iteration = static_cast<int>(parse_int_field(f[3], path));
        r.best_fitness = parse_double_field(f[4], path);
        out.push_back(std::move(r));
    }
    return out;
}

load_case case_in_config(const app_config& cfg, int id) {
    for (const load_case& c : cfg.cases)
        if (c.id == id) return c;
    throw config_error("unknown case id " + std::to_string(id));
}

objective_spec make_objective(const app_config& cfg, const load_case& lc) {
    if (cfg.space.lower.size() != 6)
        throw config_error(
            "the controller objective needs a 6-dimensional search space");
    objective_spec obj;
    obj.dimension = 6;
    obj.space = cfg.space;
    const plant_params plant = cfg.plant;
    const sim_config sim = cfg.sim;
    const load_case c = lc;
    obj.eval = [plant, sim, c](const std::vector<double>& v) {
        return evaluate(plant, gains_from_vector(v), c, sim);
    };
    return obj;
}

experiment_result run_experiment(
    const app_config& cfg, const std::string& out_dir,
    const std::function<void(const run_record&, std::size_t done,
                             std::size_t total)>& on_run) {
    validate(cfg);
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        throw config_error("cannot create output directory " + out_dir + ": " +
                           ec.message());
    const std::string runs_path = (fs::path(out_dir) / "runs.csv").string();
    const std::string conv_path =
        (fs::path(out_dir) / "convergence.csv").string();
    const std::string manifest_path =
        (fs::path(out_dir) / "manifest.json").string();

    experiment_result result;
    std::set<run_key> completed;
    if (fs::exists(runs_path)) {
        result.records = read_runs_csv(runs_path);
        for (const run_record& r : result.records)
            completed.insert({r.algorithm, r.case_id, r.seed});
    }
    reconcile_convergence(conv_path, completed);

    struct job {
        std::string algorithm;
        load_case lc;
        std::uint64_t seed = 0;
    };
    std::vector<job> jobs;
    std::size_t planned = 0;
    for (const std::string& alg : cfg.plan.algorithms) {
        for (int case_id : cfg.plan.cases) {
            const load_case lc = case_in_config(cfg, case_id);
            for (int r = 0; r < cfg.plan.runs_per_cell; ++r) {
                ++planned;
                const std::uint64_t seed =
                    cfg.plan.base_seed + static_cast<std::uint64_t>(r);
                if (completed.count({alg, case_id, seed})) {
                    ++result.resumed;
                    continue;
                }
                jobs.push_back({alg, lc, seed});
            }
        }
    }

    const bool fresh = !fs::exists(runs_path);
    std::ofstream runs_out(runs_path, std::ios::app);
    std::ofstream conv_out(conv_path, std::ios::app);
    if (!runs_out || !conv_out)
        throw config_error("cannot open output files under " + out_dir);
    if (fresh) runs_out << runs_csv_header << '\n';
    if (!fs::exists(conv_path) || fs::file_size(conv_path) == 0)
        conv_out << convergence_csv_header << '\n';
    runs_out.flush();
    conv_out.flush();

    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> done{0};
    std::mutex io_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) break;
            const job& jb = jobs[i];
            optimizer_config oc = cfg.optimizers.at(jb.algorithm);
            oc.seed = jb.seed;
            const objective_spec obj = make_objective(cfg, jb.lc);
            try {
                const run_trace tr = run_algorithm(jb.algorithm, obj, oc);
                run_record rec;
                rec.algorithm = jb.algorithm;
                rec.case_id = jb.lc.id;
                rec.seed = jb.seed;
                rec.best_itae = tr.final_fitness;
                rec.wall_time_s = tr.wall_time_s;
                rec.evaluations = tr.evaluations;
                rec.gains = gains_from_vector(tr.final_gains);

                std::lock_guard<std::mutex> lock(io_mutex);
                for (std::size_t it = 0;
                     it < tr.best_fitness_per_iteration.size(); ++it)
                    conv_out << jb.algorithm << ',' << jb.lc.id << ','
                             << jb.seed << ',' << it + 1 << ','
                             << format_double(
                                    tr.best_fitness_per_iteration[it])
                             << '\n';
                conv_out.flush();
                // The runs.csv row lands last: it marks the run as complete
                // for resume purposes.
                runs_out << run_row(rec) << '\n';
                runs_out.flush();
                result.records.push_back(rec);
                ++result.executed;
                const std::size_t d = done.fetch_add(1) + 1;
                if (on_run) on_run(rec, d, jobs.size());
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(io_mutex);
                result.failures.push_back(
                    {jb.algorithm, jb.lc.id, jb.seed, e.what()});
                done.fetch_add(1);
            }
        }
    };

    unsigned n_workers = cfg.plan.workers > 0
                             ? static_cast<unsigned>(cfg.plan.workers)
                             : std::max(1u, std::thread::hardware_concurrency());
    n_workers = std::min<unsigned>(
        n_workers, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1)));
    if (n_workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(n_workers);
        for (unsigned t = 0; t < n_workers; ++t) threads.emplace_back(worker);
        for (std::thread& t : threads) t.join();
    }

    nlohmann::json manifest;
    manifest["created_utc"] = utc_timestamp();
    manifest["kernel"] = kernel_name();
    manifest["config"] = config_to_json(cfg);
    manifest["planned_runs"] = planned;
    manifest["completed_runs"] = result.records.size();
    manifest["executed_runs"] = result.executed;
    manifest["resumed_runs"] = result.resumed;
    manifest["failures"] = nlohmann::json::array();
    for (const run_failure& f : result.failures)
        manifest["failures"].push_back({{"algorithm", f.algorithm},
                                        {"case", f.case_id},
                                        {"seed", f.seed},
                                        {"message", f.message}});
    std::ofstream mf(manifest_path, std::ios::trunc);
    mf << manifest.dump(2) << '\n';
    return result;
}

std::vector<cell_summary> summarize(const std::vector<run_record>& records) {
    std::map<std::pair<std::string, int>, std::vector<const run_record*>>
        cells;
    for (const run_record& r : records)
        cells[{r.algorithm, r.case_id}].push_back(&r);

    // Canonical algorithm order first, then any unknown names alphabetically.
    auto alg_rank = [](const std::string& a) {
        const auto& names = algorithm_names();
        const auto it = std::find(names.begin(), names.end(), a);
        return it == names.end() ? names.size()
                                 : static_cast<std::size_t>(it - names.begin());
    };
    std::vector<std::pair<std::string, int>> keys;
    keys.reserve(cells.size());
    for (const auto& [key, rows] : cells) keys.push_back(key);
    std::sort(keys.begin(), keys.end(), [&](const auto& a, const auto& b) {
        const auto ra = alg_rank(a.first), rb = alg_rank(b.first);
        if (ra != rb) return ra < rb;
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });

    std::vector<cell_summary> out;
    out.reserve(keys.size());
    for (const auto& key : keys) {
        const auto& rows = cells[key];
        std::vector<double> itaes;
        itaes.reserve(rows.size());
        double wall = 0.0;
        const run_record* best_row = rows.front();
        for (const run_record* r : rows) {
            itaes.push_back(r->best_itae);
            wall += r->wall_time_s;
            if (r->best_itae < best_row->best_itae) best_row = r;
        }
        const descriptive_stats d = describe(itaes);
        cell_summary cs;
        cs.algorithm = key.first;
        cs.case_id = key.second;
        cs.runs = rows.size();
        cs.best = d.min;
        cs.worst = d.max;
        cs.mean = d.mean;
        cs.stddev = d.stddev;
        cs.median = d.median;
        cs.mean_wall_time_s = wall / static_cast<double>(rows.size());
        cs.best_seed = best_row->seed;
        cs.best_gains = best_row->gains;
        out.push_back(cs);
    }
    return out;
}

void write_trajectory_csv(std::ostream& out, const trajectory& traj,
                          const plant_params& p) {
    out << "t,x1,x2,x3,x4,x5,x6,x7,u1,u2,ace1,ace2\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const state_vector& x = traj.states[i];
        const auto [a1, a2] = ace(p, x);
        out << format_double(traj.times[i]);
        for (double v : x) out << ',' << format_double(v);
        out << ',' << format_double(a1) << ',' << format_double(a2) << '\n';
    }
}

} // namespace lfc
