#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "colperc/geometry.hpp"
#include "colperc/rng.hpp"

namespace colperc {

// Edge weights: p on enhanced vertical edges, q elsewhere; rho is the column
// density used when the column set itself is sampled.
struct SamplerParams {
    double p = 0.5;
    double q = 0.5;
    double rho = 0.0;

    void validate() const;
};

// Open/closed bits for the edges of a region, in canonical edge order.
class BondConfig {
public:
    BondConfig(Rect region, std::vector<std::uint8_t> open);

    static BondConfig uniform(const Rect& region, bool open);

    const Rect& region() const { return region_; }
    std::size_t edge_count() const { return open_.size(); }

    bool is_open(const Edge& e) const { return open_[index_of(e)] != 0; }
    void set_open(const Edge& e, bool open) { open_[index_of(e)] = open ? 1 : 0; }

    bool open_at(std::size_t idx) const { return open_[idx] != 0; }
    long long open_count() const;

    const std::vector<std::uint8_t>& bits() const { return open_; }

private:
    std::size_t index_of(const Edge& e) const {
        return static_cast<std::size_t>(edge_index(region_, e));
    }

    Rect region_;
    std::vector<std::uint8_t> open_;
};

// Each column of `range` joins independently with probability rho.
ColumnSet sample_columns(double rho, Interval range, RandomStream stream);

// One uniform is consumed per edge in canonical order regardless of the
// parameters, so configs sampled from the same stream at different (p,q) are
// coupled through shared uniforms.
BondConfig sample_config(const Rect& region, const ColumnSet& columns,
                         const SamplerParams& params, RandomStream stream);

// True iff every width-(k+1) window [l, l+k] inside `interval` meets the set.
// If k exceeds the interval's diameter the whole interval is the only window.
bool is_syndetic(const ColumnSet& columns, int k, Interval interval);

// Distance to the next member strictly right of x, or nullopt if none exists
// within the stated range.
std::optional<int> next_gap(const ColumnSet& columns, int x);

}  // namespace colperc
