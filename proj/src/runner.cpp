#include "colperc/runner.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "colperc/validate.hpp"
#include "json.hpp"

namespace colperc {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", v);
    return buffer;
}

struct CsvRow {
    std::string event;
    std::optional<int> n;
    double p = 0.0, q = 0.0, rho = 0.0, eta = 0.0;
    std::uint64_t samples = 0, successes = 0;
    double p_hat = 0.0, std_err = 0.0;
    std::uint64_t seed = 0, wall_time_ms = 0;
};

void emit(std::ostream& out, const std::string& experiment_id, const CsvRow& row) {
    out << experiment_id << ',' << row.event << ',';
    if (row.n) out << *row.n;
    out << ',' << fmt(row.p) << ',' << fmt(row.q) << ',' << fmt(row.rho) << ',' << fmt(row.eta)
        << ',' << row.samples << ',' << row.successes << ',' << fmt(row.p_hat) << ','
        << fmt(row.std_err) << ',' << row.seed << ',' << row.wall_time_ms << '\n';
}

LambdaSource lambda_source(const ExperimentConfig& config) {
    if (config.lambda_mode == "annealed") return LambdaSource::annealed();
    if (config.lambda_mode == "quenched")
        return LambdaSource::quenched(
            ColumnSet::of(config.lambda_range, config.lambda_members));
    throw std::invalid_argument("lambda_mode must be 'annealed' or 'quenched', got '" +
                                config.lambda_mode + "'");
}

SweepParam sweep_param(const std::string& name) {
    if (name == "p") return SweepParam::P;
    if (name == "q") return SweepParam::Q;
    if (name == "rho") return SweepParam::Rho;
    if (name == "n") return SweepParam::N;
    throw std::invalid_argument("sweep_param must be one of p, q, rho, n; got '" + name + "'");
}

RandomStream experiment_stream(const ExperimentConfig& config) {
    return RandomStream(config.seed).derive(hash_string64(config.experiment_id));
}

CsvRow row_from_record(const ExperimentConfig& config, const EstimateRecord& rec) {
    CsvRow row;
    row.event = format_event(rec.event);
    row.n = event_scale(rec.event);
    row.p = rec.params.p;
    row.q = rec.params.q;
    row.rho = rec.params.rho;
    row.eta = config.eta;
    row.samples = rec.n_samples;
    row.successes = rec.successes;
    row.p_hat = rec.p_hat;
    row.std_err = rec.std_err;
    row.seed = config.seed;
    row.wall_time_ms = config.timings ? rec.wall_time_ms : 0;
    return row;
}

void run_estimate(const ExperimentConfig& config, std::ostream& csv) {
    if (config.samples == 0) return;  // header-only output
    const EstimateRecord rec =
        estimate(parse_event(config.event), {config.p, config.q, config.rho},
                 lambda_source(config), config.samples, experiment_stream(config),
                 config.workers);
    emit(csv, config.experiment_id, row_from_record(config, rec));
}

void run_sweep(const ExperimentConfig& config, std::ostream& csv) {
    if (config.samples == 0) return;
    const std::vector<EstimateRecord> records =
        sweep(parse_event(config.event), sweep_param(config.sweep_param), config.sweep_values,
              {config.p, config.q, config.rho}, lambda_source(config), config.samples,
              experiment_stream(config), config.workers);
    for (const EstimateRecord& rec : records)
        emit(csv, config.experiment_id, row_from_record(config, rec));
}

void run_length(const ExperimentConfig& config, std::ostream& csv) {
    if (config.samples == 0) return;
    const CorrelationLengthResult result =
        correlation_length(config.p, config.epsilon, config.n_max, config.samples,
                           experiment_stream(config), config.workers);
    for (const CurvePoint& point : result.curve) {
        CsvRow row;
        row.event = format_event(HardCrossing{point.n});
        row.n = point.n;
        row.p = config.p;
        row.q = config.p;
        row.eta = config.eta;
        row.samples = point.samples;
        row.successes = static_cast<std::uint64_t>(
            point.p_hat * static_cast<double>(point.samples) + 0.5);
        row.p_hat = point.p_hat;
        row.std_err = point.std_err;
        row.seed = config.seed;
        emit(csv, config.experiment_id, row);
    }
    CsvRow summary;
    summary.event = "length:eps=" + fmt(config.epsilon);
    summary.n = result.length.value_or(-1);
    summary.p = config.p;
    summary.q = config.p;
    summary.eta = config.eta;
    summary.samples = config.samples;
    summary.p_hat = result.length ? 1.0 : 0.0;
    summary.seed = config.seed;
    emit(csv, config.experiment_id, summary);
}

void run_russo(const ExperimentConfig& config, std::ostream& csv) {
    if (config.samples == 0) return;
    const Interval span{-(2 * config.n - 1), 2 * config.n - 1};
    ColumnSet columns = config.lambda_mode == "quenched"
                            ? ColumnSet::of(config.lambda_range, config.lambda_members)
                            : sample_columns(config.rho, span,
                                             experiment_stream(config).derive(
                                                 stream_tag::columns));
    const RussoSums sums = russo_sums(columns, config.p, config.q, config.n, config.samples,
                                      experiment_stream(config), config.workers);
    auto emit_sum = [&](const char* cls, double sum, double err, std::size_t edges) {
        CsvRow row;
        row.event = std::string("russo:class=") + cls + ";n=" + std::to_string(config.n);
        row.n = config.n;
        row.p = config.p;
        row.q = config.q;
        row.rho = config.rho;
        row.eta = config.eta;
        row.samples = config.samples;
        row.successes = edges;  // edge count of the class
        row.p_hat = sum;
        row.std_err = err;
        row.seed = config.seed;
        emit(csv, config.experiment_id, row);
    };
    emit_sum("enhanced", sums.sum_enhanced, sums.err_enhanced, sums.enhanced_edges);
    emit_sum("base", sums.sum_base, sums.err_base, sums.base_edges);
}

void run_renorm(const ExperimentConfig& config, std::ostream& csv) {
    if (config.samples == 0) return;
    if (config.window.size() != 4)
        throw std::invalid_argument("renorm: window must be [lo1, lo2, hi1, hi2]");
    const BlockWindow window = BlockWindow::make(
        config.n, Rect{{config.window[0], config.window[1]},
                       {config.window[2], config.window[3]}});
    const Interval span = block_field_column_span(window);
    const RandomStream stream = experiment_stream(config);
    const SamplerParams params{config.p, config.q, config.rho};

    std::ofstream dump;
    if (!config.dump_fields_path.empty()) {
        dump.open(config.dump_fields_path, std::ios::binary);
        if (!dump)
            throw std::invalid_argument("renorm: cannot open dump file " +
                                        config.dump_fields_path);
    }

    std::vector<std::uint64_t> w_hits(window.sites.size(), 0);
    Interval xi_cols = window.vrect.xspan();
    std::vector<std::uint64_t> xi_col_hits(static_cast<std::size_t>(xi_cols.length()), 0);
    for (std::uint64_t i = 0; i < config.samples; ++i) {
        const RandomStream sample_stream = stream.derive(i);
        const ColumnSet columns =
            config.lambda_mode == "quenched"
                ? ColumnSet::of(config.lambda_range, config.lambda_members)
                : sample_columns(config.rho, span,
                                 sample_stream.derive(stream_tag::columns));
        const BlockField field = block_field(columns, window, params, config.eta,
                                             sample_stream);
        if (dump.is_open()) dump << block_field_to_text(field) << "\n";
        for (std::size_t s = 0; s < window.sites.size(); ++s) w_hits[s] += field.w[s];
        for (int c = xi_cols.lo; c <= xi_cols.hi; ++c)
            xi_col_hits[static_cast<std::size_t>(c - xi_cols.lo)] += field.xi_at(c) ? 1 : 0;
    }
    for (std::size_t s = 0; s < window.sites.size(); ++s) {
        CsvRow row;
        row.event = "block:v=" + std::to_string(window.sites[s].x1) + "," +
                    std::to_string(window.sites[s].x2) + ";n=" + std::to_string(config.n);
        row.n = config.n;
        row.p = config.p;
        row.q = config.q;
        row.rho = config.rho;
        row.eta = config.eta;
        row.samples = config.samples;
        row.successes = w_hits[s];
        row.p_hat = static_cast<double>(w_hits[s]) / static_cast<double>(config.samples);
        row.std_err = binomial_stderr(w_hits[s], config.samples);
        row.seed = config.seed;
        emit(csv, config.experiment_id, row);
    }
    for (int c = xi_cols.lo; c <= xi_cols.hi; ++c) {
        const std::uint64_t hits = xi_col_hits[static_cast<std::size_t>(c - xi_cols.lo)];
        CsvRow row;
        row.event = "xi:i=" + std::to_string(c) + ";n=" + std::to_string(config.n);
        row.n = config.n;
        row.p = config.p;
        row.q = config.q;
        row.rho = config.rho;
        row.eta = config.eta;
        row.samples = config.samples;
        row.successes = hits;
        row.p_hat = static_cast<double>(hits) / static_cast<double>(config.samples);
        row.std_err = binomial_stderr(hits, config.samples);
        row.seed = config.seed;
        emit(csv, config.experiment_id, row);
    }
}

void run_oriented(const ExperimentConfig& config, std::ostream& csv) {
    if (config.samples == 0) return;
    std::vector<int> depths = config.depths;
    if (depths.empty()) depths = {64, 128, 256};
    const OrientedParams params{config.rho_prime, config.p_good, config.p_bad};
    const std::vector<SurvivalPoint> curve = survival_curve(
        params, depths, config.samples, experiment_stream(config), config.workers);
    for (const SurvivalPoint& point : curve) {
        CsvRow row;
        row.event = "oriented:depth=" + std::to_string(point.depth);
        row.n = point.depth;
        row.p = config.p_good;
        row.q = config.p_bad;
        row.rho = config.rho_prime;
        row.eta = config.eta;
        row.samples = point.samples;
        row.successes = point.survivors;
        row.p_hat = point.p_hat;
        row.std_err = point.std_err;
        row.seed = config.seed;
        emit(csv, config.experiment_id, row);
    }
}

}  // namespace

std::string csv_header() {
    std::ostringstream out;
    out << "# " << kCsvSchema << " build=" << kBuildId << "\n";
    out << "experiment_id,event,n,p,q,rho,eta,samples,successes,p_hat,stderr,seed,"
           "wall_time_ms\n";
    return out.str();
}

std::string config_to_json(const ExperimentConfig& c) {
    json j;
    j["experiment_id"] = c.experiment_id;
    j["command"] = c.command;
    j["event"] = c.event;
    j["p"] = c.p;
    j["q"] = c.q;
    j["rho"] = c.rho;
    j["eta"] = c.eta;
    j["lambda_mode"] = c.lambda_mode;
    if (!c.lambda_range.empty()) j["lambda_range"] = {c.lambda_range.lo, c.lambda_range.hi};
    if (!c.lambda_members.empty()) j["lambda_members"] = c.lambda_members;
    j["samples"] = c.samples;
    j["seed"] = c.seed;
    j["workers"] = c.workers;
    if (!c.out_path.empty()) j["out"] = c.out_path;
    j["timings"] = c.timings;
    j["sweep_param"] = c.sweep_param;
    if (!c.sweep_values.empty()) j["sweep_values"] = c.sweep_values;
    j["epsilon"] = c.epsilon;
    j["n_max"] = c.n_max;
    j["n"] = c.n;
    if (!c.window.empty()) j["window"] = c.window;
    if (!c.dump_fields_path.empty()) j["dump_fields"] = c.dump_fields_path;
    j["p_good"] = c.p_good;
    j["p_bad"] = c.p_bad;
    j["rho_prime"] = c.rho_prime;
    if (!c.depths.empty()) j["depths"] = c.depths;
    return j.dump(2);
}

ExperimentConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& err) {
        throw std::invalid_argument(std::string("config parse error: ") + err.what());
    }
    ExperimentConfig c;
    auto get_to = [&](const char* key, auto& field) {
        if (j.contains(key)) j.at(key).get_to(field);
    };
    get_to("experiment_id", c.experiment_id);
    get_to("command", c.command);
    get_to("event", c.event);
    get_to("p", c.p);
    get_to("q", c.q);
    get_to("rho", c.rho);
    get_to("eta", c.eta);
    get_to("lambda_mode", c.lambda_mode);
    if (j.contains("lambda_range")) {
        const auto range = j.at("lambda_range");
        if (!range.is_array() || range.size() != 2)
            throw std::invalid_argument("config field lambda_range: expected [lo, hi]");
        c.lambda_range = {range[0].get<int>(), range[1].get<int>()};
    }
    get_to("lambda_members", c.lambda_members);
    get_to("samples", c.samples);
    get_to("seed", c.seed);
    get_to("workers", c.workers);
    get_to("out", c.out_path);
    get_to("timings", c.timings);
    get_to("sweep_param", c.sweep_param);
    get_to("sweep_values", c.sweep_values);
    get_to("epsilon", c.epsilon);
    get_to("n_max", c.n_max);
    get_to("n", c.n);
    get_to("window", c.window);
    get_to("dump_fields", c.dump_fields_path);
    get_to("p_good", c.p_good);
    get_to("p_bad", c.p_bad);
    get_to("rho_prime", c.rho_prime);
    get_to("depths", c.depths);
    return c;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return config_from_json(buffer.str());
}

int run_experiment(const ExperimentConfig& config, std::ostream& csv, std::ostream& log) {
    try {
        csv << csv_header();
        if (config.command == "estimate") {
            run_estimate(config, csv);
        } else if (config.command == "sweep") {
            run_sweep(config, csv);
        } else if (config.command == "length") {
            run_length(config, csv);
        } else if (config.command == "russo") {
            run_russo(config, csv);
        } else if (config.command == "renorm") {
            run_renorm(config, csv);
        } else if (config.command == "oriented") {
            run_oriented(config, csv);
        } else if (config.command == "validate") {
            return run_validation(log, config.seed) ? 0 : 1;
        } else {
            log << "error: unknown command '" << config.command << "'\n";
            return 2;
        }
    } catch (const std::exception& err) {
        log << "error: experiment '" << config.experiment_id << "': " << err.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace colperc
