#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "colperc/rng.hpp"

namespace colperc {

// Site occupation probabilities for good/bad columns and the good-column
// density of the oriented model.
struct OrientedParams {
    double rho_prime = 1.0;
    double p_good = 0.5;
    double p_bad = 0.5;

    void validate() const;
};

// Columns 0..depth, rows -halfwidth..halfwidth, sites with even coordinate sum.
struct OrientedWindow {
    int depth = 0;
    int halfwidth = 0;
};

// A sampled oriented configuration: per-column goodness plus per-site
// occupation. Occupation and goodness are keyed draws, so a site's state is a
// pure function of (stream, column, row) independent of enumeration order.
class OrientedConfig {
public:
    OrientedConfig(OrientedParams params, OrientedWindow window, RandomStream stream);

    // Explicit configuration for hand-built cases.
    static OrientedConfig from_sites(OrientedWindow window,
                                     std::vector<std::uint8_t> good_columns,
                                     std::span<const std::pair<int, int>> occupied_sites);

    const OrientedWindow& window() const { return window_; }
    bool good_column(int column) const;
    bool occupied(int column, int row) const;  // requires (column+row) even

private:
    OrientedConfig() = default;
    OrientedWindow window_;
    std::vector<std::uint8_t> good_;
    std::vector<std::uint8_t> occupied_;
    std::size_t site_slot(int column, int row) const;
};

OrientedConfig sample_oriented(const OrientedParams& params, const OrientedWindow& window,
                               RandomStream stream);

// Depth-synchronous reachability from occupied sources in column 0: site
// (i+1, j) is reachable iff occupied and one of (i, j-1), (i, j+1) is.
// Returns the reachable rows per column, empty once the front dies.
std::vector<std::vector<int>> reachable_front(const OrientedConfig& config,
                                              std::span<const int> source_rows);

struct SurvivalPoint {
    int depth = 0;
    std::uint64_t samples = 0;
    std::uint64_t survivors = 0;
    double p_hat = 0.0;
    double std_err = 0.0;
};

// Frequency that the front from the origin is alive at each grid depth. The
// per-sample survival indicator is nonincreasing in depth by construction.
std::vector<SurvivalPoint> survival_curve(const OrientedParams& params,
                                          std::span<const int> depth_grid,
                                          std::uint64_t n_samples, RandomStream stream,
                                          int workers = 1);

}  // namespace colperc
