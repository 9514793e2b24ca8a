#include "colperc/sampling.hpp"

#include <stdexcept>

namespace colperc {

void SamplerParams::validate() const {
    auto in01 = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!in01(p) || !in01(q) || !in01(rho))
        throw std::invalid_argument("SamplerParams: p, q, rho must lie in [0,1]");
}

BondConfig::BondConfig(Rect region, std::vector<std::uint8_t> open)
    : region_(region), open_(std::move(open)) {
    if (static_cast<long long>(open_.size()) != region_.edge_count())
        throw std::invalid_argument("BondConfig: bit count does not match region edge count");
}

BondConfig BondConfig::uniform(const Rect& region, bool open) {
    return BondConfig(region, std::vector<std::uint8_t>(
                                  static_cast<std::size_t>(region.edge_count()), open ? 1 : 0));
}

long long BondConfig::open_count() const {
    long long c = 0;
    for (auto b : open_) c += b;
    return c;
}

ColumnSet sample_columns(double rho, Interval range, RandomStream stream) {
    if (rho < 0.0 || rho > 1.0) throw std::invalid_argument("sample_columns: rho outside [0,1]");
    std::vector<std::uint8_t> member(range.length());
    for (auto& m : member) m = stream.bernoulli(rho) ? 1 : 0;
    return ColumnSet(range, std::move(member));
}

BondConfig sample_config(const Rect& region, const ColumnSet& columns,
                         const SamplerParams& params, RandomStream stream) {
    params.validate();
    if (!columns.range().contains(region.xspan()))
        throw std::invalid_argument("sample_config: column set does not cover region x-span");

    const int w = region.width();
    std::vector<std::uint8_t> enhanced_col(static_cast<std::size_t>(w));
    for (int x = region.lo.x1; x <= region.hi.x1; ++x)
        enhanced_col[static_cast<std::size_t>(x - region.lo.x1)] = columns.contains(x) ? 1 : 0;

    std::vector<std::uint8_t> open;
    open.reserve(static_cast<std::size_t>(region.edge_count()));
    for (int y = region.lo.x2; y <= region.hi.x2; ++y) {
        for (int x = region.lo.x1; x <= region.hi.x1; ++x) {
            if (x + 1 <= region.hi.x1) open.push_back(stream.bernoulli(params.q) ? 1 : 0);
            if (y + 1 <= region.hi.x2) {
                double weight =
                    enhanced_col[static_cast<std::size_t>(x - region.lo.x1)] ? params.p : params.q;
                open.push_back(stream.bernoulli(weight) ? 1 : 0);
            }
        }
    }
    return BondConfig(region, std::move(open));
}

bool is_syndetic(const ColumnSet& columns, int k, Interval interval) {
    if (k < 0) throw std::invalid_argument("is_syndetic: negative k");
    if (interval.empty()) return true;
    if (!columns.range().contains(interval))
        throw std::out_of_range("is_syndetic: interval outside column range");

    const long long diameter = static_cast<long long>(interval.hi) - interval.lo;
    if (k >= diameter) {
        // The interval itself is the only window of diameter >= k that fits.
        for (int i = interval.lo; i <= interval.hi; ++i)
            if (columns.contains(i)) return true;
        return false;
    }

    // Some window [l, l+k] misses the set iff a member-free stretch longer
    // than k sits inside the interval; one pass over the gaps decides it.
    long long prev = static_cast<long long>(interval.lo) - 1;
    for (int i = interval.lo; i <= interval.hi; ++i) {
        if (!columns.contains(i)) continue;
        if (i - prev > k + 1) return false;
        prev = i;
    }
    return (static_cast<long long>(interval.hi) + 1) - prev <= k + 1;
}

std::optional<int> next_gap(const ColumnSet& columns, int x) {
    if (!columns.range().contains(x)) throw std::out_of_range("next_gap: x outside range");
    for (int w = x + 1; w <= columns.range().hi; ++w)
        if (columns.contains(w)) return w - x;
    return std::nullopt;
}

}  // namespace colperc
