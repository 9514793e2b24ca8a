#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "colperc/estimator.hpp"
#include "colperc/oriented.hpp"
#include "colperc/renorm.hpp"

namespace colperc {

inline constexpr const char* kBuildId = "colperc-0.1.0";
inline constexpr const char* kCsvSchema = "colperc-csv-v1";

// One batch experiment, loadable from JSON and overridable by CLI flags.
// Round-trips losslessly through its JSON encoding.
struct ExperimentConfig {
    std::string experiment_id = "experiment";
    std::string command = "estimate";
    std::string event = "rect:lo=0,0;hi=16,16;axis=h";

    double p = 0.5;
    double q = 0.5;
    double rho = 0.0;
    double eta = 0.3;

    std::string lambda_mode = "annealed";  // or "quenched"
    Interval lambda_range{0, -1};
    std::vector<int> lambda_members;

    std::uint64_t samples = 1000;
    std::uint64_t seed = 1;
    int workers = 1;
    std::string out_path;
    bool timings = false;

    // sweep
    std::string sweep_param = "p";
    std::vector<double> sweep_values;

    // correlation length
    double epsilon = 0.1;
    int n_max = 64;

    // russo / renorm
    int n = 3;
    std::vector<int> window;       // renorm window [lo1, lo2, hi1, hi2]
    std::string dump_fields_path;  // renorm: write sampled block fields as text

    // oriented
    double p_good = 0.7;
    double p_bad = 0.7;
    double rho_prime = 1.0;
    std::vector<int> depths;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig load_config_file(const std::string& path);

// Runs the configured experiment and writes the CSV to `csv`. Output bytes
// depend only on (config minus workers/out_path, seed); wall-time cells are 0
// unless `timings` is set. Returns a process exit status.
int run_experiment(const ExperimentConfig& config, std::ostream& csv, std::ostream& log);

std::string csv_header();

}  // namespace colperc
