#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "colperc/renorm.hpp"
#include "colperc/runner.hpp"
#include "colperc/validate.hpp"
#include "doctest.h"

using namespace colperc;

namespace {

std::string run_to_string(const ExperimentConfig& config) {
    std::ostringstream csv, log;
    const int status = run_experiment(config, csv, log);
    REQUIRE_MESSAGE(status == 0, log.str());
    return csv.str();
}

ExperimentConfig demo_config() {
    ExperimentConfig config;
    config.experiment_id = "demo";
    config.command = "estimate";
    config.event = "annulus:n=3;center=0,0";
    config.p = 0.62;
    config.q = 0.48;
    config.rho = 0.25;
    config.samples = 400;
    config.seed = 4242;
    return config;
}

}  // namespace

TEST_CASE("experiment config round-trips through JSON") {
    ExperimentConfig config = demo_config();
    config.command = "sweep";
    config.sweep_param = "n";
    config.sweep_values = {8, 16, 32};
    config.lambda_mode = "quenched";
    config.lambda_range = {-40, 40};
    config.lambda_members = {-8, 0, 3, 17};
    config.window = {-1, -1, 1, 1};
    config.dump_fields_path = "fields.txt";
    config.depths = {64, 128};
    config.out_path = "out.csv";
    config.timings = true;
    config.workers = 8;
    const ExperimentConfig back = config_from_json(config_to_json(config));
    CHECK(back == config);
}

TEST_CASE("malformed configs fail with diagnostics") {
    CHECK_THROWS_AS(config_from_json("{ not json"), std::invalid_argument);
    CHECK_THROWS_AS(config_from_json("{\"lambda_range\": [1]}"), std::invalid_argument);
    ExperimentConfig config = demo_config();
    config.lambda_mode = "sideways";
    std::ostringstream csv, log;
    CHECK(run_experiment(config, csv, log) != 0);
    CHECK(log.str().find("lambda_mode") != std::string::npos);
}

TEST_CASE("zero-sample run emits a header-only CSV") {
    ExperimentConfig config = demo_config();
    config.samples = 0;
    CHECK(run_to_string(config) == csv_header());
}

TEST_CASE("csv bytes are identical across worker counts") {
    for (const char* command : {"estimate", "sweep", "oriented"}) {
        ExperimentConfig config = demo_config();
        config.command = command;
        if (config.command == "sweep") {
            config.sweep_param = "p";
            config.sweep_values = {0.45, 0.55};
            config.samples = 200;
        }
        if (config.command == "oriented") {
            config.p_good = 0.8;
            config.p_bad = 0.2;
            config.rho_prime = 0.9;
            config.depths = {16, 64};
            config.samples = 300;
        }
        std::string reference;
        for (int workers : {1, 4, 8}) {
            config.workers = workers;
            const std::string bytes = run_to_string(config);
            if (reference.empty())
                reference = bytes;
            else
                CHECK(bytes == reference);
        }
        CHECK(reference.find("demo,") != std::string::npos);
    }
}

TEST_CASE("rows carry provenance and wall time stays deterministic by default") {
    const std::string csv = run_to_string(demo_config());
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    CHECK(line.find(kCsvSchema) != std::string::npos);
    CHECK(line.find(kBuildId) != std::string::npos);
    std::getline(lines, line);  // column header
    std::getline(lines, line);  // data row
    CHECK(line.find("demo,annulus:n=3;center=0,0,3,") == 0);
    CHECK(line.find(",4242,0") != std::string::npos);  // seed, wall_time_ms
}

TEST_CASE("golden regression: pinned small experiment") {
    ExperimentConfig config;
    config.experiment_id = "golden";
    config.command = "estimate";
    config.event = "rect:lo=0,0;hi=6,6;axis=h";
    config.p = 0.55;
    config.q = 0.55;
    config.rho = 0.0;
    config.samples = 250;
    config.seed = 20240101;
    const std::string expected =
        "# colperc-csv-v1 build=colperc-0.1.0\n"
        "experiment_id,event,n,p,q,rho,eta,samples,successes,p_hat,stderr,seed,wall_time_ms\n"
        "golden,rect:lo=0,0;hi=6,6;axis=h,,0.55,0.55,0,0.3,250,188,0.752,0.0273127076651,"
        "20240101,0\n";
    CHECK(run_to_string(config) == expected);
}

TEST_CASE("length and russo commands produce well-formed rows") {
    ExperimentConfig length = demo_config();
    length.command = "length";
    length.p = 0.8;
    length.epsilon = 0.1;
    length.n_max = 16;
    length.samples = 300;
    const std::string csv = run_to_string(length);
    CHECK(csv.find("length:eps=0.1") != std::string::npos);

    ExperimentConfig russo = demo_config();
    russo.command = "russo";
    russo.n = 2;
    russo.samples = 100;
    russo.lambda_mode = "quenched";
    russo.lambda_range = {-4, 4};
    russo.lambda_members = {3};
    const std::string rcsv = run_to_string(russo);
    CHECK(rcsv.find("russo:class=enhanced;n=2") != std::string::npos);
    CHECK(rcsv.find("russo:class=base;n=2") != std::string::npos);
}

TEST_CASE("renorm command reports block and goodness frequencies") {
    ExperimentConfig config = demo_config();
    config.command = "renorm";
    config.n = 2;
    config.window = {-1, -1, 1, 1};
    config.samples = 50;
    config.rho = 0.6;
    const std::string csv = run_to_string(config);
    CHECK(csv.find("block:v=0,0;n=2") != std::string::npos);
    CHECK(csv.find("xi:i=0;n=2") != std::string::npos);

    // dumped fields parse back
    config.samples = 3;
    config.dump_fields_path = "/tmp/colperc_fields_test.txt";
    run_to_string(config);
    std::ifstream in(config.dump_fields_path);
    REQUIRE(in.good());
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    const std::size_t second = text.find("blockfield v1", 1);
    REQUIRE(second != std::string::npos);
    const BlockField first = block_field_from_text(text.substr(0, second));
    CHECK(first.window.n == 2);
    CHECK(first.window.sites.size() == 5);
    std::remove(config.dump_fields_path.c_str());
}

TEST_CASE("validation suite passes at reduced scale") {
    std::ostringstream report;
    CHECK(run_validation(report, 7, 0.05));
    CHECK(report.str().find("FAIL") == std::string::npos);
}

TEST_CASE("a broken dual convention would be caught by the oracle suite") {
    // Mutation sanity for the cross-check machinery: an off-by-one in the
    // annulus membership rule must disagree with the winding oracle quickly.
    auto broken_annulus = [](const BondConfig& config, Site x, int n) {
        const int lo1 = x.x1 - 2 * n + 1, hi1 = x.x1 + 2 * n - 2;
        const int lo2 = x.x2 - 2 * n + 1, hi2 = x.x2 + 2 * n - 2;
        auto in_shifted = [&](Site s) {
            const int d = linf_norm(s - x);
            return d >= n && d <= 2 * n - 2;  // wrong rings on both sides
        };
        auto blocked = [&](const Edge& e) {
            return in_shifted(e.a) && in_shifted(e.b) && config.is_open(e);
        };
        std::vector<std::pair<int, int>> stack{{x.x1, x.x2}};
        std::vector<std::uint8_t> seen(
            static_cast<std::size_t>(hi1 - lo1 + 1) * (hi2 - lo2 + 1), 0);
        auto idx = [&](int u1, int u2) {
            return static_cast<std::size_t>(u2 - lo2) * (hi1 - lo1 + 1) + (u1 - lo1);
        };
        seen[idx(x.x1, x.x2)] = 1;
        while (!stack.empty()) {
            auto [u1, u2] = stack.back();
            stack.pop_back();
            struct Step {
                Edge edge;
                int v1, v2;
            };
            const Step steps[4] = {
                {Edge{{u1 + 1, u2}, {u1 + 1, u2 + 1}}, u1 + 1, u2},
                {Edge{{u1, u2}, {u1, u2 + 1}}, u1 - 1, u2},
                {Edge{{u1, u2 + 1}, {u1 + 1, u2 + 1}}, u1, u2 + 1},
                {Edge{{u1, u2}, {u1 + 1, u2}}, u1, u2 - 1},
            };
            for (const Step& step : steps) {
                if (blocked(step.edge)) continue;
                if (step.v1 < lo1 || step.v1 > hi1 || step.v2 < lo2 || step.v2 > hi2)
                    return false;
                if (!seen[idx(step.v1, step.v2)]) {
                    seen[idx(step.v1, step.v2)] = 1;
                    stack.push_back({step.v1, step.v2});
                }
            }
        }
        return true;
    };

    RandomStream root(99);
    const int n = 3;
    const Rect region = Rect::box({0, 0}, 2 * n - 1);
    const ColumnSet columns = ColumnSet::none(region.xspan());
    int disagreements = 0;
    for (int i = 0; i < 300; ++i) {
        // circuits must be reasonably likely for the fault to surface
        const BondConfig config =
            sample_config(region, columns, {0.85, 0.85, 0.0}, root.derive(i));
        if (broken_annulus(config, {0, 0}, n) != annulus_circuit_oracle(config, {0, 0}, n))
            ++disagreements;
    }
    CHECK(disagreements > 0);
}

TEST_CASE("cli binary end to end") {
    const char* cli = std::getenv("COLPERC_CLI");
    if (cli == nullptr) return;  // library-only run
    const std::string out = "/tmp/colperc_cli_test.csv";

    const std::string cmd = std::string(cli) +
                            " estimate --event 'rect:lo=0,0;hi=4,4;axis=h' --p 0.6 --q 0.6 " +
                            "--samples 50 --seed 7 --id cli-e2e --out " + out;
    REQUIRE(std::system(cmd.c_str()) == 0);
    std::ifstream in(out);
    REQUIRE(in.good());
    std::string first_line;
    std::getline(in, first_line);
    CHECK(first_line.find(kCsvSchema) != std::string::npos);
    std::remove(out.c_str());

    // determinism through the real binary
    const std::string out1 = "/tmp/colperc_cli_w1.csv", out8 = "/tmp/colperc_cli_w8.csv";
    const std::string base = std::string(cli) +
                             " sweep --event onearm:n=4 --param p --values 0.4,0.6 " +
                             "--samples 120 --seed 11 --id cli-det";
    REQUIRE(std::system((base + " --workers 1 --out " + out1).c_str()) == 0);
    REQUIRE(std::system((base + " --workers 8 --out " + out8).c_str()) == 0);
    std::ifstream a(out1), b(out8);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
    CHECK(sa.str().find("cli-det") != std::string::npos);
    std::remove(out1.c_str());
    std::remove(out8.c_str());

    REQUIRE(std::system((std::string(cli) + " validate --scale 0.05 > /dev/null").c_str()) ==
            0);
}
