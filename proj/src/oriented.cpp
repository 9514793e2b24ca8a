#include "colperc/oriented.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "colperc/estimator.hpp"

namespace colperc {

void OrientedParams::validate() const {
    auto in01 = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!in01(rho_prime) || !in01(p_good) || !in01(p_bad))
        throw std::invalid_argument("OrientedParams: probabilities must lie in [0,1]");
}

namespace {

// Keyed draws shared by materialised configs and the streaming survival scan,
// so both see the same configuration for the same stream.
bool draw_good(const RandomStream& stream, double rho_prime, int column) {
    return stream.bernoulli_at(rho_prime, stream_tag::oriented_column,
                               static_cast<std::uint64_t>(static_cast<std::uint32_t>(column)));
}

bool draw_occupied(const RandomStream& stream, double prob, int column, int row) {
    const std::uint64_t key =
        (static_cast<std::uint64_t>(static_cast<std::uint32_t>(column)) << 32) |
        static_cast<std::uint64_t>(static_cast<std::uint32_t>(row));
    return stream.bernoulli_at(prob, stream_tag::oriented_site, key);
}

}  // namespace

OrientedConfig::OrientedConfig(OrientedParams params, OrientedWindow window,
                               RandomStream stream)
    : window_(window) {
    params.validate();
    if (window_.depth < 0 || window_.halfwidth < 0)
        throw std::invalid_argument("OrientedConfig: negative window");
    good_.resize(static_cast<std::size_t>(window_.depth) + 1);
    for (int i = 0; i <= window_.depth; ++i)
        good_[static_cast<std::size_t>(i)] = draw_good(stream, params.rho_prime, i) ? 1 : 0;

    const int rows = 2 * window_.halfwidth + 1;
    occupied_.assign(static_cast<std::size_t>(window_.depth + 1) * rows, 0);
    for (int i = 0; i <= window_.depth; ++i) {
        const double prob = good_[static_cast<std::size_t>(i)] ? params.p_good : params.p_bad;
        for (int j = -window_.halfwidth; j <= window_.halfwidth; ++j) {
            if (((i + j) % 2 + 2) % 2 != 0) continue;
            occupied_[site_slot(i, j)] = draw_occupied(stream, prob, i, j) ? 1 : 0;
        }
    }
}

OrientedConfig OrientedConfig::from_sites(OrientedWindow window,
                                          std::vector<std::uint8_t> good_columns,
                                          std::span<const std::pair<int, int>> occupied_sites) {
    if (static_cast<int>(good_columns.size()) != window.depth + 1)
        throw std::invalid_argument("OrientedConfig::from_sites: goodness size mismatch");
    OrientedConfig config;
    config.window_ = window;
    config.good_ = std::move(good_columns);
    config.occupied_.assign(
        static_cast<std::size_t>(window.depth + 1) * (2 * window.halfwidth + 1), 0);
    for (const auto& [i, j] : occupied_sites) {
        if (i < 0 || i > window.depth || j < -window.halfwidth || j > window.halfwidth ||
            ((i + j) % 2 + 2) % 2 != 0)
            throw std::invalid_argument("OrientedConfig::from_sites: bad site");
        config.occupied_[config.site_slot(i, j)] = 1;
    }
    return config;
}

std::size_t OrientedConfig::site_slot(int column, int row) const {
    return static_cast<std::size_t>(column) * (2 * window_.halfwidth + 1) +
           static_cast<std::size_t>(row + window_.halfwidth);
}

bool OrientedConfig::good_column(int column) const {
    if (column < 0 || column > window_.depth)
        throw std::out_of_range("OrientedConfig::good_column: column outside window");
    return good_[static_cast<std::size_t>(column)] != 0;
}

bool OrientedConfig::occupied(int column, int row) const {
    if (column < 0 || column > window_.depth || row < -window_.halfwidth ||
        row > window_.halfwidth)
        throw std::out_of_range("OrientedConfig::occupied: site outside window");
    if (((column + row) % 2 + 2) % 2 != 0)
        throw std::invalid_argument("OrientedConfig::occupied: odd-parity site");
    return occupied_[site_slot(column, row)] != 0;
}

OrientedConfig sample_oriented(const OrientedParams& params, const OrientedWindow& window,
                               RandomStream stream) {
    return OrientedConfig(params, window, stream);
}

std::vector<std::vector<int>> reachable_front(const OrientedConfig& config,
                                              std::span<const int> source_rows) {
    const OrientedWindow& window = config.window();
    std::vector<std::vector<int>> fronts;
    fronts.reserve(static_cast<std::size_t>(window.depth) + 1);

    std::vector<int> current;
    for (int j : source_rows)
        if (config.occupied(0, j)) current.push_back(j);
    fronts.push_back(current);

    for (int i = 1; i <= window.depth && !current.empty(); ++i) {
        std::vector<std::uint8_t> from(static_cast<std::size_t>(2 * window.halfwidth + 3), 0);
        for (int j : current) from[static_cast<std::size_t>(j + window.halfwidth + 1)] = 1;
        std::vector<int> next;
        for (int j = -window.halfwidth; j <= window.halfwidth; ++j) {
            if (((i + j) % 2 + 2) % 2 != 0) continue;
            const bool fed = from[static_cast<std::size_t>(j - 1 + window.halfwidth + 1)] ||
                             from[static_cast<std::size_t>(j + 1 + window.halfwidth + 1)];
            if (fed && config.occupied(i, j)) next.push_back(j);
        }
        current = std::move(next);
        fronts.push_back(current);
    }
    while (fronts.size() < static_cast<std::size_t>(window.depth) + 1) fronts.push_back({});
    return fronts;
}

namespace {

// Streaming front scan from the origin; returns the last column with a live
// front. Only sites adjacent to the front are drawn, which the keyed RNG makes
// equivalent to materialising the full window.
int survival_depth(const OrientedParams& params, int max_depth, const RandomStream& stream) {
    if (!draw_occupied(stream, draw_good(stream, params.rho_prime, 0) ? params.p_good
                                                                      : params.p_bad,
                       0, 0))
        return -1;
    std::vector<int> current{0};
    for (int i = 1; i <= max_depth; ++i) {
        const double prob =
            draw_good(stream, params.rho_prime, i) ? params.p_good : params.p_bad;
        std::vector<int> next;
        next.reserve(current.size() + 1);
        int last = INT32_MIN;
        for (std::size_t k = 0; k < current.size(); ++k) {
            for (int j : {current[k] - 1, current[k] + 1}) {
                if (j <= last) continue;  // candidates arrive sorted
                if (draw_occupied(stream, prob, i, j)) {
                    next.push_back(j);
                    last = j;
                } else {
                    last = j > last ? j : last;
                }
            }
        }
        if (next.empty()) return i - 1;
        current = std::move(next);
    }
    return max_depth;
}

}  // namespace

std::vector<SurvivalPoint> survival_curve(const OrientedParams& params,
                                          std::span<const int> depth_grid,
                                          std::uint64_t n_samples, RandomStream stream,
                                          int workers) {
    params.validate();
    if (depth_grid.empty()) throw std::invalid_argument("survival_curve: empty depth grid");
    int max_depth = 0;
    for (std::size_t k = 0; k < depth_grid.size(); ++k) {
        if (depth_grid[k] < 0) throw std::invalid_argument("survival_curve: negative depth");
        if (k > 0 && depth_grid[k] <= depth_grid[k - 1])
            throw std::invalid_argument("survival_curve: depths must increase");
        max_depth = depth_grid[k];
    }

    const int nworkers = workers < 1 ? 1 : workers;
    std::vector<std::vector<std::uint64_t>> partial(
        static_cast<std::size_t>(nworkers),
        std::vector<std::uint64_t>(depth_grid.size(), 0));
    count_successes(n_samples, nworkers, [&](std::uint64_t i) {
        const int reached = survival_depth(params, max_depth, stream.derive(i));
        auto& mine = partial[static_cast<std::size_t>(i % nworkers)];
        for (std::size_t k = 0; k < depth_grid.size(); ++k)
            if (reached >= depth_grid[k]) ++mine[k];
        return false;
    });

    std::vector<SurvivalPoint> curve;
    for (std::size_t k = 0; k < depth_grid.size(); ++k) {
        std::uint64_t survivors = 0;
        for (const auto& p : partial) survivors += p[k];
        SurvivalPoint point;
        point.depth = depth_grid[k];
        point.samples = n_samples;
        point.survivors = survivors;
        point.p_hat = n_samples ? static_cast<double>(survivors) / n_samples : 0.0;
        point.std_err = binomial_stderr(survivors, n_samples);
        curve.push_back(point);
    }
    return curve;
}

}  // namespace colperc
