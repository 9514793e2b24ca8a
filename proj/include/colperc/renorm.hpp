#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "colperc/estimator.hpp"

namespace colperc {

// k = ceil((2/rho) * ln(2n)); natural log, forced by the e^{-rho k} <= (2n)^{-2}
// step behind the 1/n bad-column bound.
int syndetic_gap_bound(int n, double rho);

// Column i of the oriented block lattice is good when the column set meets
// every window of diameter k inside [2n(i-1), 2n(i+1)].
bool column_good(const ColumnSet& columns, int i, int n, double rho);

// column_good over a range of indices; adjacent outputs are 1-dependent since
// their windows overlap.
std::vector<std::uint8_t> goodness_field(const ColumnSet& columns, Interval indices, int n,
                                         double rho);

// Finite window of the oriented lattice: sites v with v1+v2 even inside vrect.
struct BlockWindow {
    int n = 1;
    Rect vrect{{0, 0}, {0, 0}};
    std::vector<Site> sites;

    static BlockWindow make(int n, Rect vrect);
    int site_index(Site v) const;  // -1 if absent
};

// Renormalised fields on a window: X(v) = 1[A_n(2nv)] on one shared bond
// configuration, Y iid Bernoulli(1-eta), W = X*Y, and per-column goodness.
struct BlockField {
    BlockWindow window;
    std::vector<std::uint8_t> x;
    std::vector<std::uint8_t> y;
    std::vector<std::uint8_t> w;
    Interval xi_columns;
    std::vector<std::uint8_t> xi;

    bool xi_at(int column) const;
};

BlockField block_field(const ColumnSet& columns, const BlockWindow& window,
                       const SamplerParams& params, double eta, RandomStream stream);

// Bounding rectangle of the union of the blocks B_{2n-1}(2nv), v in window.
Rect block_field_region(const BlockWindow& window);
// Columns that must be covered to compute goodness for every window column.
Interval block_field_column_span(const BlockWindow& window);

std::string block_field_to_text(const BlockField& field);
BlockField block_field_from_text(std::string_view text);

struct PairCorrelation {
    Site v;
    Site w;
    int distance = 0;  // L1
    double corr = 0.0;
};

struct OneDependenceReport {
    std::uint64_t n_samples = 0;
    double max_far_abs_corr = 0.0;
    std::size_t far_pairs = 0;
    std::vector<PairCorrelation> near_pairs;  // distance <= 2, reported only
    std::vector<PairCorrelation> far_outliers;  // |corr| >= 0.02
};

// Sample correlations of X over all site pairs; far pairs (L1 distance > 2)
// are expected uncorrelated. Requires at least 10^4 field samples.
OneDependenceReport one_dependence_check(std::span<const BlockField> fields);

struct ConditionalBoundRow {
    std::array<std::uint8_t, 4> pattern{};  // W at (1,1), (1,-1), (-1,1), (-1,-1)
    std::uint64_t count = 0;
    std::uint64_t successes = 0;
    double p_cond = 0.0;
    double bound = 0.0;  // eta^4 * marginal estimate
    double sigma = 0.0;  // combined standard error of the comparison
    bool covered = false;  // count >= 100
    bool pass = true;
};

struct ConditionalBoundReport {
    std::uint64_t n_samples = 0;
    double p_marginal = 0.0;
    double eta = 0.0;
    std::vector<ConditionalBoundRow> rows;
    bool all_covered_pass = true;
    bool partial = false;  // some pattern below the coverage threshold
};

// Sprinkling decoupling check: conditionally on each observed 4-neighbour W
// pattern, P(W(0)=1 | pattern) >= eta^4 * P(W(0)=1) within 3 sigma.
ConditionalBoundReport conditional_bound_check(const ColumnSet& columns,
                                               const SamplerParams& params, int n, double eta,
                                               std::uint64_t n_samples, RandomStream stream,
                                               int workers = 1);

struct RenormalisedParameters {
    double eta = 0.0;
    double p_bad = 0.0;
    double p_good = 0.0;
};

// Canonical parameter choices handed from the block construction to the
// directed target model: eta = (1 - p_c(oriented))/3, p_bad =
// eta^4 (1-eta) * inf_n P(circuit at scale n), p_good = 1 - 2 eta.
RenormalisedParameters renormalised_parameters(double pc_oriented,
                                               double circuit_probability_floor);

}  // namespace colperc
