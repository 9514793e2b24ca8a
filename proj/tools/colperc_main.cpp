#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "colperc/runner.hpp"
#include "colperc/validate.hpp"

namespace {

int run_with_output(const colperc::ExperimentConfig& config) {
    if (!config.out_path.empty()) {
        std::ofstream out(config.out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot open output file " << config.out_path << "\n";
            return 2;
        }
        return colperc::run_experiment(config, out, std::cerr);
    }
    return colperc::run_experiment(config, std::cout, std::cerr);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo laboratory for bond percolation with columnar enhancements"};
    app.require_subcommand(1);

    colperc::ExperimentConfig config;
    std::string config_path;
    std::string sweep_values_text;
    std::string depths_text;
    std::string lambda_members_text;
    std::vector<int> lambda_range_pair;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON experiment file (flags override it)");
        cmd->add_option("--id", config.experiment_id, "experiment id (stream key)");
        cmd->add_option("--p", config.p, "weight on enhanced vertical edges");
        cmd->add_option("--q", config.q, "weight on all other edges");
        cmd->add_option("--rho", config.rho, "column density");
        cmd->add_option("--eta", config.eta, "sprinkling parameter");
        cmd->add_option("--n", config.n, "scale parameter");
        cmd->add_option("--seed", config.seed, "master seed");
        cmd->add_option("--samples", config.samples, "sample count");
        cmd->add_option("--workers", config.workers, "worker threads");
        cmd->add_option("--out", config.out_path, "output CSV path (default stdout)");
        cmd->add_option("--lambda-mode", config.lambda_mode, "annealed or quenched");
        cmd->add_option("--lambda-range", lambda_range_pair, "quenched column range lo hi")
            ->expected(2);
        cmd->add_option("--lambda-members", lambda_members_text,
                        "comma-separated quenched columns");
        cmd->add_flag("--timings", config.timings,
                      "record wall times (breaks byte determinism)");
    };

    CLI::App* cmd_estimate = app.add_subcommand("estimate", "estimate one event probability");
    cmd_estimate->add_option("--event", config.event, "event spec, e.g. annulus:n=8;center=0,0");
    add_common(cmd_estimate);

    CLI::App* cmd_sweep = app.add_subcommand("sweep", "estimate across a parameter grid");
    cmd_sweep->add_option("--event", config.event, "event spec");
    cmd_sweep->add_option("--param", config.sweep_param, "grid parameter: p, q, rho or n");
    cmd_sweep->add_option("--values", sweep_values_text, "comma-separated grid values");
    add_common(cmd_sweep);

    CLI::App* cmd_length = app.add_subcommand("length", "correlation length L_eps(p)");
    cmd_length->add_option("--epsilon", config.epsilon, "crossing tolerance");
    cmd_length->add_option("--n-max", config.n_max, "largest scale scanned");
    add_common(cmd_length);

    CLI::App* cmd_russo = app.add_subcommand("russo", "pivotality sums over annulus edges");
    add_common(cmd_russo);

    CLI::App* cmd_renorm = app.add_subcommand("renorm", "renormalised block field statistics");
    cmd_renorm->add_option("--window", config.window, "window rect lo1 lo2 hi1 hi2")
        ->expected(4);
    cmd_renorm->add_option("--dump-fields", config.dump_fields_path,
                           "write every sampled block field to this file as text");
    add_common(cmd_renorm);

    CLI::App* cmd_oriented = app.add_subcommand("oriented", "oriented survival curves");
    cmd_oriented->add_option("--p-good", config.p_good, "occupation probability, good columns");
    cmd_oriented->add_option("--p-bad", config.p_bad, "occupation probability, bad columns");
    cmd_oriented->add_option("--rho-prime", config.rho_prime, "good-column density");
    cmd_oriented->add_option("--depths", depths_text, "comma-separated survival depths");
    add_common(cmd_oriented);

    CLI::App* cmd_validate = app.add_subcommand("validate", "run the oracle cross-checks");
    double validate_scale = 1.0;
    cmd_validate->add_option("--seed", config.seed, "master seed");
    cmd_validate->add_option("--scale", validate_scale, "sample-count scale factor");

    CLI11_PARSE(app, argc, argv);

    try {
        CLI::App* active = app.get_subcommands().front();
        if (active == cmd_validate) {
            return colperc::run_validation(std::cout, config.seed, validate_scale) ? 0 : 1;
        }

        // Layering: config file first, then every flag the user passed on top.
        colperc::ExperimentConfig base;
        if (!config_path.empty()) base = colperc::load_config_file(config_path);

        auto overridden = [&](const char* flag) { return active->count(flag) > 0; };
        auto split_ints = [](const std::string& text) {
            std::vector<int> values;
            std::size_t pos = 0;
            while (pos <= text.size()) {
                std::size_t comma = text.find(',', pos);
                if (comma == std::string::npos) comma = text.size();
                values.push_back(std::stoi(text.substr(pos, comma - pos)));
                pos = comma + 1;
            }
            return values;
        };
        if (overridden("--id")) base.experiment_id = config.experiment_id;
        if (overridden("--p")) base.p = config.p;
        if (overridden("--q")) base.q = config.q;
        if (overridden("--rho")) base.rho = config.rho;
        if (overridden("--eta")) base.eta = config.eta;
        if (overridden("--n")) base.n = config.n;
        if (overridden("--seed")) base.seed = config.seed;
        if (overridden("--samples")) base.samples = config.samples;
        if (overridden("--workers")) base.workers = config.workers;
        if (overridden("--out")) base.out_path = config.out_path;
        if (overridden("--timings")) base.timings = config.timings;
        if (overridden("--lambda-mode")) base.lambda_mode = config.lambda_mode;
        if (overridden("--lambda-range"))
            base.lambda_range = {lambda_range_pair[0], lambda_range_pair[1]};
        if (overridden("--lambda-members"))
            base.lambda_members = split_ints(lambda_members_text);

        if (active == cmd_estimate) {
            base.command = "estimate";
            if (overridden("--event")) base.event = config.event;
        } else if (active == cmd_sweep) {
            base.command = "sweep";
            if (overridden("--event")) base.event = config.event;
            if (overridden("--param")) base.sweep_param = config.sweep_param;
            if (overridden("--values")) {
                base.sweep_values.clear();
                std::size_t pos = 0;
                while (pos <= sweep_values_text.size()) {
                    std::size_t comma = sweep_values_text.find(',', pos);
                    if (comma == std::string::npos) comma = sweep_values_text.size();
                    base.sweep_values.push_back(
                        std::stod(sweep_values_text.substr(pos, comma - pos)));
                    pos = comma + 1;
                }
            }
        } else if (active == cmd_length) {
            base.command = "length";
            if (overridden("--epsilon")) base.epsilon = config.epsilon;
            if (overridden("--n-max")) base.n_max = config.n_max;
        } else if (active == cmd_russo) {
            base.command = "russo";
        } else if (active == cmd_renorm) {
            base.command = "renorm";
            if (overridden("--window")) base.window = config.window;
            if (overridden("--dump-fields")) base.dump_fields_path = config.dump_fields_path;
        } else if (active == cmd_oriented) {
            base.command = "oriented";
            if (overridden("--p-good")) base.p_good = config.p_good;
            if (overridden("--p-bad")) base.p_bad = config.p_bad;
            if (overridden("--rho-prime")) base.rho_prime = config.rho_prime;
            if (overridden("--depths")) base.depths = split_ints(depths_text);
        }
        return run_with_output(base);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
}
