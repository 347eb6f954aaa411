#pragma once

#include "lfc/model.hpp"
#include "lfc/optimizers.hpp"
#include "lfc/sim.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

// Application configuration: plant, simulation, search space, load cases,
// per-algorithm optimizer settings, and the benchmark plan. Parsed from JSON
// with strict unknown-key rejection; every parse failure throws config_error.

namespace lfc {

struct benchmark_plan {
    std::vector<std::string> algorithms; // default: all six, canonical order
    std::vector<int> cases;              // default: 1..5
    int runs_per_cell = 30;
    std::uint64_t base_seed = 1000; // run r of every cell uses base_seed + r
    int workers = 0;                // 0 = one per hardware thread
};

struct app_config {
    plant_params plant;
    sim_config sim;
    search_space space;
    std::vector<load_case> cases; // default catalog
    std::map<std::string, optimizer_config> optimizers; // keyed by name
    benchmark_plan plan;
};

// Fully populated defaults (all six optimizers at their standard settings).
app_config default_config();

// Strict parse: unknown keys anywhere raise config_error naming the key.
app_config config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const app_config& cfg);

// Reads and parses a JSON config file; missing file or bad JSON -> config_error.
app_config load_config_file(const std::string& path);

// "desk" (population 50, 100 iterations, 5 runs/cell) or
// "full" (population 100, 500 iterations, 30 runs/cell).
void apply_profile(app_config& cfg, const std::string& profile);

// Dotted-path override, e.g. "sim.t_final=80" or
// "optimizers.egbo.population=20". The value is parsed as JSON when
// possible, otherwise taken as a string.
void apply_override(app_config& cfg, const std::string& key_value);

void validate(const app_config& cfg);

} // namespace lfc
