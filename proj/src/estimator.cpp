#include "colperc/estimator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace colperc {

double binomial_stderr(std::uint64_t successes, std::uint64_t n) {
    if (n == 0) return 0.0;
    const double p = static_cast<double>(successes) / static_cast<double>(n);
    return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

namespace {

[[noreturn]] void rethrow_with_sample(std::uint64_t i) {
    try {
        throw;
    } catch (const std::exception& err) {
        throw std::runtime_error("sample " + std::to_string(i) + ": " + err.what());
    }
}

}  // namespace

std::uint64_t count_successes(std::uint64_t n_samples, int workers,
                              const std::function<bool(std::uint64_t)>& sample_one) {
    if (workers < 1) throw std::invalid_argument("count_successes: workers >= 1 required");
    if (workers == 1 || n_samples < 2) {
        std::uint64_t hits = 0;
        for (std::uint64_t i = 0; i < n_samples; ++i) {
            try {
                if (sample_one(i)) ++hits;
            } catch (...) {
                rethrow_with_sample(i);
            }
        }
        return hits;
    }
    // Strided partition; integer partial sums commute, so any schedule gives
    // the same total. The first failure is carried back to the caller.
    std::vector<std::uint64_t> partial(static_cast<std::size_t>(workers), 0);
    std::vector<std::exception_ptr> failures(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            std::uint64_t hits = 0;
            for (std::uint64_t i = static_cast<std::uint64_t>(w); i < n_samples;
                 i += static_cast<std::uint64_t>(workers)) {
                try {
                    if (sample_one(i)) ++hits;
                } catch (...) {
                    try {
                        rethrow_with_sample(i);
                    } catch (...) {
                        failures[static_cast<std::size_t>(w)] = std::current_exception();
                    }
                    return;
                }
            }
            partial[static_cast<std::size_t>(w)] = hits;
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& failure : failures)
        if (failure) std::rethrow_exception(failure);
    std::uint64_t total = 0;
    for (auto h : partial) total += h;
    return total;
}

namespace {

ColumnSet columns_for_sample(const LambdaSource& lambda, const SamplerParams& params,
                             Interval span, const RandomStream& sample_stream) {
    if (lambda.mode == LambdaMode::Quenched) {
        if (!lambda.fixed) throw std::invalid_argument("quenched lambda without a column set");
        return *lambda.fixed;
    }
    return sample_columns(params.rho, span, sample_stream.derive(stream_tag::columns));
}

}  // namespace

EstimateRecord estimate(const EventSpec& event, const SamplerParams& params,
                        const LambdaSource& lambda, std::uint64_t n_samples,
                        RandomStream stream, int workers) {
    if (n_samples < 1) throw std::invalid_argument("estimate: n_samples >= 1 required");
    params.validate();
    const Rect region = required_region(event);
    if (lambda.mode == LambdaMode::Quenched && lambda.fixed &&
        !lambda.fixed->range().contains(region.xspan()))
        throw std::invalid_argument("estimate: quenched column set does not cover the region");

    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t successes =
        count_successes(n_samples, workers, [&](std::uint64_t i) {
            const RandomStream sample_stream = stream.derive(i);
            const ColumnSet columns =
                columns_for_sample(lambda, params, region.xspan(), sample_stream);
            const BondConfig config = sample_config(
                region, columns, params, sample_stream.derive(stream_tag::bonds));
            return evaluate(event, config);
        });
    const auto t1 = std::chrono::steady_clock::now();

    EstimateRecord rec;
    rec.event = event;
    rec.params = params;
    rec.lambda_mode = lambda.mode;
    rec.n_samples = n_samples;
    rec.successes = successes;
    rec.p_hat = static_cast<double>(successes) / static_cast<double>(n_samples);
    rec.std_err = binomial_stderr(successes, n_samples);
    rec.stream_origin = stream.origin();
    rec.wall_time_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count());
    return rec;
}

CorrelationLengthResult correlation_length(double p, double epsilon, int n_max,
                                           std::uint64_t samples_per_n, RandomStream stream,
                                           int workers) {
    if (epsilon <= 0.0 || epsilon >= 0.5)
        throw std::invalid_argument("correlation_length: epsilon in (0, 1/2) required");
    if (n_max < 1) throw std::invalid_argument("correlation_length: n_max >= 1 required");

    CorrelationLengthResult result;
    result.p = p;
    result.epsilon = epsilon;
    result.n_max = n_max;

    const SamplerParams params{p, p, 0.0};
    auto eval_point = [&](int n) {
        const EstimateRecord rec =
            estimate(HardCrossing{n}, params, LambdaSource::annealed(), samples_per_n,
                     stream.derive(static_cast<std::uint64_t>(n)), workers);
        result.curve.push_back({n, rec.p_hat, rec.std_err, rec.n_samples});
        // Conservative: only declare the threshold met when the lower
        // 3-sigma bound clears it.
        return rec.p_hat - 3.0 * rec.std_err >= 1.0 - epsilon;
    };

    // Doubling scan for the first passing scale.
    int fail = 0;  // largest known-failing n (0 = none tested)
    int pass = -1;
    for (int n = 1; n <= n_max; n = n == n_max ? n_max + 1 : std::min(2 * n, n_max)) {
        if (eval_point(n)) {
            pass = n;
            break;
        }
        fail = n;
    }
    if (pass < 0) {
        std::sort(result.curve.begin(), result.curve.end(),
                  [](const CurvePoint& a, const CurvePoint& b) { return a.n < b.n; });
        return result;  // NotFound
    }
    while (pass - fail > 1) {
        const int mid = fail + (pass - fail) / 2;
        if (eval_point(mid))
            pass = mid;
        else
            fail = mid;
    }
    result.length = pass;
    std::sort(result.curve.begin(), result.curve.end(),
              [](const CurvePoint& a, const CurvePoint& b) { return a.n < b.n; });
    return result;
}

RussoSums russo_sums(const ColumnSet& columns, double p, double q, int n,
                     std::uint64_t n_samples, RandomStream stream, int workers) {
    if (n < 2) throw std::invalid_argument("russo_sums: n >= 2 required");
    if (n_samples < 1) throw std::invalid_argument("russo_sums: n_samples >= 1 required");
    const SamplerParams params{p, q, 0.0};
    params.validate();

    const AnnulusEdges edges = annulus_edge_sets({0, 0}, n, columns);
    const EventSpec circuit = AnnulusCircuit{{0, 0}, n};
    const Rect region = required_region(circuit);
    if (!columns.range().contains(region.xspan()))
        throw std::invalid_argument("russo_sums: column set does not cover B_{2n-1}");

    // Per-sample totals of pivotal enhanced/base edges; the estimator of each
    // sum is the mean of its totals, with the matching sample variance.
    struct Totals {
        std::uint64_t enhanced = 0;
        std::uint64_t base = 0;
    };
    std::vector<Totals> totals(static_cast<std::size_t>(n_samples));
    count_successes(n_samples, workers, [&](std::uint64_t i) {
        const RandomStream sample_stream = stream.derive(i);
        BondConfig config =
            sample_config(region, columns, params, sample_stream.derive(stream_tag::bonds));
        Totals t;
        for (std::size_t k = 0; k < edges.all.size(); ++k) {
            if (!is_pivotal_inplace(config, edges.all[k], circuit)) continue;
            if (edges.enhanced[k])
                ++t.enhanced;
            else
                ++t.base;
        }
        totals[static_cast<std::size_t>(i)] = t;
        return false;
    });

    auto reduce = [&](auto pick) {
        double mean = 0.0;
        for (const Totals& t : totals) mean += static_cast<double>(pick(t));
        mean /= static_cast<double>(n_samples);
        double var = 0.0;
        for (const Totals& t : totals) {
            const double d = static_cast<double>(pick(t)) - mean;
            var += d * d;
        }
        var = n_samples > 1 ? var / static_cast<double>(n_samples - 1) : 0.0;
        return std::pair<double, double>{mean,
                                         std::sqrt(var / static_cast<double>(n_samples))};
    };

    RussoSums sums;
    std::tie(sums.sum_enhanced, sums.err_enhanced) =
        reduce([](const Totals& t) { return t.enhanced; });
    std::tie(sums.sum_base, sums.err_base) = reduce([](const Totals& t) { return t.base; });
    sums.n_samples = n_samples;
    sums.enhanced_edges = edges.enhanced_count();
    sums.base_edges = edges.all.size() - sums.enhanced_edges;
    return sums;
}

std::vector<EstimateRecord> sweep(const EventSpec& base_event, SweepParam param,
                                  const std::vector<double>& values, SamplerParams fixed,
                                  const LambdaSource& lambda, std::uint64_t samples,
                                  RandomStream stream, int workers) {
    if (values.empty()) throw std::invalid_argument("sweep: empty grid");
    std::vector<EstimateRecord> records;
    records.reserve(values.size());
    for (double v : values) {
        SamplerParams params = fixed;
        EventSpec event = base_event;
        switch (param) {
            case SweepParam::P: params.p = v; break;
            case SweepParam::Q: params.q = v; break;
            case SweepParam::Rho: params.rho = v; break;
            case SweepParam::N: event = with_scale(base_event, static_cast<int>(v)); break;
        }
        // Shared seed discipline: the same experiment stream at every grid
        // point couples the sweep through identical per-sample uniforms.
        records.push_back(estimate(event, params, lambda, samples, stream, workers));
    }
    return records;
}

}  // namespace colperc
