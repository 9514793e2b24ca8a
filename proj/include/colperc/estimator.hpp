#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "colperc/events.hpp"

namespace colperc {

enum class LambdaMode { Annealed, Quenched };

// Where the column set comes from: a fresh draw per sample (annealed, density
// taken from SamplerParams::rho) or one fixed realisation (quenched).
struct LambdaSource {
    LambdaMode mode = LambdaMode::Annealed;
    std::optional<ColumnSet> fixed;

    static LambdaSource annealed() { return {}; }
    static LambdaSource quenched(ColumnSet columns) {
        return {LambdaMode::Quenched, std::move(columns)};
    }
};

struct EstimateRecord {
    EventSpec event;
    SamplerParams params;
    LambdaMode lambda_mode = LambdaMode::Annealed;
    std::uint64_t n_samples = 0;
    std::uint64_t successes = 0;
    double p_hat = 0.0;
    double std_err = 0.0;
    std::uint64_t stream_origin = 0;  // origin word of the experiment stream
    std::uint64_t wall_time_ms = 0;
};

// Monte Carlo estimate of P(event) under P^Λ_{p,q}. One fresh configuration
// per sample; sample i uses stream.derive(i), so results are independent of
// scheduling and worker count.
EstimateRecord estimate(const EventSpec& event, const SamplerParams& params,
                        const LambdaSource& lambda, std::uint64_t n_samples,
                        RandomStream stream, int workers = 1);

// Deterministic worker-pool map-reduce over sample indices.
std::uint64_t count_successes(std::uint64_t n_samples, int workers,
                              const std::function<bool(std::uint64_t)>& sample_one);

struct CurvePoint {
    int n = 0;
    double p_hat = 0.0;
    double std_err = 0.0;
    std::uint64_t samples = 0;
};

struct CorrelationLengthResult {
    double p = 0.0;
    double epsilon = 0.0;
    std::optional<int> length;  // nullopt: threshold unmet up to n_max
    int n_max = 0;
    std::vector<CurvePoint> curve;
};

// L_eps(p): smallest n whose hard-way crossing estimate clears 1-eps, located
// by a doubling scan plus bisection. The threshold test uses the estimate's
// lower 3-sigma bound.
CorrelationLengthResult correlation_length(double p, double epsilon, int n_max,
                                           std::uint64_t samples_per_n, RandomStream stream,
                                           int workers = 1);

struct RussoSums {
    double sum_enhanced = 0.0;   // sum over F of P(f pivotal for A_n) — dP/dp
    double err_enhanced = 0.0;
    double sum_base = 0.0;       // sum over E\F — dP/dq
    double err_base = 0.0;
    std::uint64_t n_samples = 0;
    std::size_t enhanced_edges = 0;
    std::size_t base_edges = 0;
};

// Pivotality sums over the annulus edge sets of A_n, all edges evaluated on
// shared samples.
RussoSums russo_sums(const ColumnSet& columns, double p, double q, int n,
                     std::uint64_t n_samples, RandomStream stream, int workers = 1);

enum class SweepParam { P, Q, Rho, N };

// One estimate per grid value. All grid points replay the same per-sample
// streams, so sweeps of monotone events are coupled monotone.
std::vector<EstimateRecord> sweep(const EventSpec& base_event, SweepParam param,
                                  const std::vector<double>& values, SamplerParams fixed,
                                  const LambdaSource& lambda, std::uint64_t samples,
                                  RandomStream stream, int workers = 1);

double binomial_stderr(std::uint64_t successes, std::uint64_t n);

}  // namespace colperc
