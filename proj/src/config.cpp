#include "lfc/config.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>

namespace lfc {
namespace {

using nlohmann::json;

void require_object(const json& j, const std::string& where) {
    if (!j.is_object())
        throw config_error("config section '" + where + "' must be an object");
}

void check_keys(const json& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
    for (const auto& item : j.items()) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
                return item.key() == k;
            }) == allowed.end())
            throw config_error("unknown config key '" + where + "." +
                               item.key() + "'");
    }
}

double read_number(const json& j, const std::string& path) {
    if (!j.is_number())
        throw config_error("config value '" + path + "' must be a number");
    return j.get<double>();
}

int read_int(const json& j, const std::string& path) {
    if (!j.is_number_integer())
        throw config_error("config value '" + path + "' must be an integer");
    return j.get<int>();
}

std::uint64_t read_uint(const json& j, const std::string& path) {
    if (!j.is_number_integer() || j.is_number_float() || j.get<long long>() < 0)
        throw config_error("config value '" + path +
                           "' must be a nonnegative integer");
    return j.get<std::uint64_t>();
}

void assign_if(const json& j, const char* key, const std::string& where,
               double& target) {
    if (j.contains(key)) target = read_number(j[key], where + "." + key);
}

void parse_plant(const json& j, plant_params& p) {
    require_object(j, "plant");
    check_keys(j, "plant",
               {"r1", "r2", "b1", "b2", "tsg1", "tsg2", "tt1", "tt2", "tps1",
                "tps2", "kps1", "kps2", "t12", "a12"});
    assign_if(j, "r1", "plant", p.r1);
    assign_if(j, "r2", "plant", p.r2);
    assign_if(j, "b1", "plant", p.b1);
    assign_if(j, "b2", "plant", p.b2);
    assign_if(j, "tsg1", "plant", p.tsg1);
    assign_if(j, "tsg2", "plant", p.tsg2);
    assign_if(j, "tt1", "plant", p.tt1);
    assign_if(j, "tt2", "plant", p.tt2);
    assign_if(j, "tps1", "plant", p.tps1);
    assign_if(j, "tps2", "plant", p.tps2);
    assign_if(j, "kps1", "plant", p.kps1);
    assign_if(j, "kps2", "plant", p.kps2);
    assign_if(j, "t12", "plant", p.t12);
    assign_if(j, "a12", "plant", p.a12);
}

void parse_sim(const json& j, sim_config& s) {
    require_object(j, "sim");
    check_keys(j, "sim", {"dt", "t_final", "record_stride"});
    assign_if(j, "dt", "sim", s.dt);
    assign_if(j, "t_final", "sim", s.t_final);
    if (j.contains("record_stride"))
        s.record_stride = read_int(j["record_stride"], "sim.record_stride");
}

std::vector<double> read_number_array(const json& j, const std::string& path) {
    if (!j.is_array())
        throw config_error("config value '" + path + "' must be an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        out.push_back(read_number(j[i], path + "." + std::to_string(i)));
    return out;
}

void parse_space(const json& j, search_space& s) {
    require_object(j, "search_space");
    check_keys(j, "search_space", {"lower", "upper"});
    if (j.contains("lower"))
        s.lower = read_number_array(j["lower"], "search_space.lower");
    if (j.contains("upper"))
        s.upper = read_number_array(j["upper"], "search_space.upper");
}

void parse_cases(const json& j, std::vector<load_case>& cases) {
    if (!j.is_array())
        throw config_error("config section 'cases' must be an array");
    cases.clear();
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string where = "cases." + std::to_string(i);
        require_object(j[i], where);
        check_keys(j[i], where, {"id", "w1", "w2"});
        load_case c;
        if (!j[i].contains("id"))
            throw config_error("config value '" + where + ".id' is required");
        c.id = read_int(j[i]["id"], where + ".id");
        if (j[i].contains("w1")) c.w1 = read_number(j[i]["w1"], where + ".w1");
        if (j[i].contains("w2")) c.w2 = read_number(j[i]["w2"], where + ".w2");
        cases.push_back(c);
    }
}

void parse_optimizer(const json& j, const std::string& where,
                     optimizer_config& oc) {
    require_object(j, where);
    check_keys(j, where,
               {"population", "max_iterations", "pr", "lc0", "w_max", "w_min",
                "c1", "c2", "a"});
    if (j.contains("population"))
        oc.population = read_int(j["population"], where + ".population");
    if (j.contains("max_iterations"))
        oc.max_iterations =
            read_int(j["max_iterations"], where + ".max_iterations");
    assign_if(j, "pr", where, oc.pr);
    assign_if(j, "lc0", where, oc.lc0);
    assign_if(j, "w_max", where, oc.w_max);
    assign_if(j, "w_min", where, oc.w_min);
    assign_if(j, "c1", where, oc.c1);
    assign_if(j, "c2", where, oc.c2);
    assign_if(j, "a", where, oc.a);
}

void parse_plan(const json& j, benchmark_plan& plan) {
    require_object(j, "plan");
    check_keys(j, "plan",
               {"algorithms", "cases", "runs_per_cell", "base_seed",
                "workers"});
    if (j.contains("algorithms")) {
        const json& a = j["algorithms"];
        if (!a.is_array())
            throw config_error("config value 'plan.algorithms' must be an array");
        plan.algorithms.clear();
        for (const auto& item : a) {
            if (!item.is_string())
                throw config_error(
                    "config value 'plan.algorithms' must hold strings");
            plan.algorithms.push_back(item.get<std::string>());
        }
    }
    if (j.contains("cases")) {
        const json& c = j["cases"];
        if (!c.is_array())
            throw config_error("config value 'plan.cases' must be an array");
        plan.cases.clear();
        for (std::size_t i = 0; i < c.size(); ++i)
            plan.cases.push_back(
                read_int(c[i], "plan.cases." + std::to_string(i)));
    }
    if (j.contains("runs_per_cell"))
        plan.runs_per_cell = read_int(j["runs_per_cell"], "plan.runs_per_cell");
    if (j.contains("base_seed"))
        plan.base_seed = read_uint(j["base_seed"], "plan.base_seed");
    if (j.contains("workers"))
        plan.workers = read_int(j["workers"], "plan.workers");
}

} // namespace

app_config default_config() {
    app_config cfg;
    const auto catalog = case_catalog();
    cfg.cases.assign(catalog.begin(), catalog.end());
    for (const std::string& name : algorithm_names())
        cfg.optimizers[name] = optimizer_config{};
    cfg.plan.algorithms = algorithm_names();
    for (const load_case& c : cfg.cases) cfg.plan.cases.push_back(c.id);
    return cfg;
}

app_config config_from_json(const nlohmann::json& j) {
    require_object(j, "(root)");
    check_keys(j, "(root)",
               {"plant", "sim", "search_space", "cases", "optimizers",
                "plan"});
    app_config cfg = default_config();
    if (j.contains("plant")) parse_plant(j["plant"], cfg.plant);
    if (j.contains("sim")) parse_sim(j["sim"], cfg.sim);
    if (j.contains("search_space")) parse_space(j["search_space"], cfg.space);
    if (j.contains("cases")) parse_cases(j["cases"], cfg.cases);
    if (j.contains("optimizers")) {
        require_object(j["optimizers"], "optimizers");
        const auto& names = algorithm_names();
        for (const auto& item : j["optimizers"].items()) {
            if (std::find(names.begin(), names.end(), item.key()) ==
                names.end())
                throw config_error("unknown config key 'optimizers." +
                                   item.key() + "'");
            parse_optimizer(item.value(), "optimizers." + item.key(),
                            cfg.optimizers[item.key()]);
        }
    }
    if (j.contains("plan")) parse_plan(j["plan"], cfg.plan);
    validate(cfg);
    return cfg;
}

nlohmann::json config_to_json(const app_config& cfg) {
    json j;
    j["plant"] = {{"r1", cfg.plant.r1},     {"r2", cfg.plant.r2},
                  {"b1", cfg.plant.b1},     {"b2", cfg.plant.b2},
                  {"tsg1", cfg.plant.tsg1}, {"tsg2", cfg.plant.tsg2},
                  {"tt1", cfg.plant.tt1},   {"tt2", cfg.plant.tt2},
                  {"tps1", cfg.plant.tps1}, {"tps2", cfg.plant.tps2},
                  {"kps1", cfg.plant.kps1}, {"kps2", cfg.plant.kps2},
                  {"t12", cfg.plant.t12},   {"a12", cfg.plant.a12}};
    j["sim"] = {{"dt", cfg.sim.dt},
                {"t_final", cfg.sim.t_final},
                {"record_stride", cfg.sim.record_stride}};
    j["search_space"] = {{"lower", cfg.space.lower},
                         {"upper", cfg.space.upper}};
    j["cases"] = json::array();
    for (const load_case& c : cfg.cases)
        j["cases"].push_back({{"id", c.id}, {"w1", c.w1}, {"w2", c.w2}});
    j["optimizers"] = json::object();
    for (const auto& [name, oc] : cfg.optimizers)
        j["optimizers"][name] = {
            {"population", oc.population},
            {"max_iterations", oc.max_iterations},
            {"pr", oc.pr},
            {"lc0", oc.lc0},
            {"w_max", oc.w_max},
            {"w_min", oc.w_min},
            {"c1", oc.c1},
            {"c2", oc.c2},
            {"a", oc.a}};
    j["plan"] = {{"algorithms", cfg.plan.algorithms},
                 {"cases", cfg.plan.cases},
                 {"runs_per_cell", cfg.plan.runs_per_cell},
                 {"base_seed", cfg.plan.base_seed},
                 {"workers", cfg.plan.workers}};
    return j;
}

app_config load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw config_error("config file " + path +
                           " is not valid JSON: " + e.what());
    }
    return config_from_json(j);
}

void apply_profile(app_config& cfg, const std::string& profile) {
    int population = 0, iterations = 0, runs = 0;
    if (profile == "desk") {
        population = 50;
        iterations = 100;
        runs = 5;
    } else if (profile == "full") {
        population = 100;
        iterations = 500;
        runs = 30;
    } else {
        throw config_error("unknown profile '" + profile +
                           "' (expected 'desk' or 'full')");
    }
    for (auto& [name, oc] : cfg.optimizers) {
        oc.population = population;
        oc.max_iterations = iterations;
    }
    cfg.plan.runs_per_cell = runs;
}

void apply_override(app_config& cfg, const std::string& key_value) {
    const std::size_t eq = key_value.find('=');
    if (eq == std::string::npos || eq == 0)
        throw config_error("override must look like section.key=value, got '" +
                           key_value + "'");
    const std::string key = key_value.substr(0, eq);
    const std::string value_text = key_value.substr(eq + 1);

    json root = config_to_json(cfg);
    json* node = &root;
    std::stringstream parts(key);
    std::string part;
    std::vector<std::string> segments;
    while (std::getline(parts, part, '.')) segments.push_back(part);
    if (segments.empty())
        throw config_error("override key must not be empty");

    for (std::size_t i = 0; i + 1 < segments.size(); ++i) {
        const std::string& seg = segments[i];
        if (node->is_array()) {
            std::size_t idx = 0;
            try {
                idx = std::stoul(seg);
            } catch (...) {
                throw config_error("override path '" + key +
                                   "': '" + seg + "' is not an array index");
            }
            if (idx >= node->size())
                throw config_error("override path '" + key +
                                   "': index " + seg + " out of range");
            node = &(*node)[idx];
        } else if (node->is_object()) {
            if (!node->contains(seg))
                throw config_error("unknown config key '" + seg +
                                   "' in override '" + key + "'");
            node = &(*node)[seg];
        } else {
            throw config_error("override path '" + key +
                               "' descends into a scalar at '" + seg + "'");
        }
    }

    json value;
    try {
        value = json::parse(value_text);
    } catch (const json::parse_error&) {
        value = value_text; // unquoted strings pass through verbatim
    }
    const std::string& leaf = segments.back();
    if (node->is_array()) {
        std::size_t idx = 0;
        try {
            idx = std::stoul(leaf);
        } catch (...) {
            throw config_error("override path '" + key + "': '" + leaf +
                               "' is not an array index");
        }
        if (idx >= node->size())
            throw config_error("override path '" + key + "': index " + leaf +
                               " out of range");
        (*node)[idx] = value;
    } else if (node->is_object()) {
        (*node)[leaf] = value;
    } else {
        throw config_error("override path '" + key +
                           "' descends into a scalar at '" + leaf + "'");
    }
    cfg = config_from_json(root); // re-parse for strict checking
}

void validate(const app_config& cfg) {
    validate(cfg.plant);
    validate(cfg.sim);
    validate(cfg.space);
    if (cfg.cases.empty())
        throw config_error("config must define at least one load case");
    std::set<int> ids;
    for (const load_case& c : cfg.cases) {
        validate(c);
        if (!ids.insert(c.id).second)
            throw config_error("duplicate case id " + std::to_string(c.id));
    }
    const auto& names = algorithm_names();
    for (const auto& [name, oc] : cfg.optimizers) {
        if (std::find(names.begin(), names.end(), name) == names.end())
            throw config_error("unknown optimizer '" + name + "'");
        validate(oc);
    }
    if (cfg.plan.algorithms.empty())
        throw config_error("plan.algorithms must not be empty");
    std::set<std::string> seen;
    for (const std::string& a : cfg.plan.algorithms) {
        if (std::find(names.begin(), names.end(), a) == names.end())
            throw config_error("plan.algorithms contains unknown algorithm '" +
                               a + "'");
        if (!seen.insert(a).second)
            throw config_error("plan.algorithms repeats '" + a + "'");
        if (cfg.optimizers.find(a) == cfg.optimizers.end())
            throw config_error("plan.algorithms entry '" + a +
                               "' has no optimizer settings");
    }
    if (cfg.plan.cases.empty())
        throw config_error("plan.cases must not be empty");
    std::set<int> seen_cases;
    for (int id : cfg.plan.cases) {
        if (ids.find(id) == ids.end())
            throw config_error("plan.cases references unknown case id " +
                               std::to_string(id));
        if (!seen_cases.insert(id).second)
            throw config_error("plan.cases repeats case id " +
                               std::to_string(id));
    }
    if (cfg.plan.runs_per_cell < 1)
        throw config_error("plan.runs_per_cell must be at least 1");
    if (cfg.plan.workers < 0)
        throw config_error("plan.workers must be nonnegative");
}

} // namespace lfc
