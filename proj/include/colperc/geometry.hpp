#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace colperc {

struct Site {
    int x1 = 0;
    int x2 = 0;

    friend bool operator==(const Site&, const Site&) = default;
    friend auto operator<=>(const Site&, const Site&) = default;
};

inline Site operator+(Site a, Site b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
inline Site operator-(Site a, Site b) { return {a.x1 - b.x1, a.x2 - b.x2}; }

inline int linf_norm(Site s) {
    int ax = s.x1 < 0 ? -s.x1 : s.x1;
    int ay = s.x2 < 0 ? -s.x2 : s.x2;
    return ax > ay ? ax : ay;
}
inline int l1_norm(Site s) {
    int ax = s.x1 < 0 ? -s.x1 : s.x1;
    int ay = s.x2 < 0 ? -s.x2 : s.x2;
    return ax + ay;
}

// Closed integer interval [lo,hi]; lo > hi encodes the empty interval.
struct Interval {
    int lo = 0;
    int hi = -1;

    bool empty() const { return lo > hi; }
    long long length() const { return empty() ? 0 : static_cast<long long>(hi) - lo + 1; }
    bool contains(int i) const { return !empty() && lo <= i && i <= hi; }
    bool contains(Interval other) const {
        return other.empty() || (!empty() && lo <= other.lo && other.hi <= hi);
    }

    friend bool operator==(const Interval&, const Interval&) = default;
};

// Nearest-neighbour edge of Z^2, stored with the lexicographically smaller
// endpoint first so configurations serialize in one canonical order.
struct Edge {
    Site a;
    Site b;

    Edge(Site u, Site v) {
        if (l1_norm(u - v) != 1)
            throw std::invalid_argument("Edge: endpoints are not nearest neighbours");
        if (v < u) {
            a = v;
            b = u;
        } else {
            a = u;
            b = v;
        }
    }

    bool vertical() const { return a.x1 == b.x1; }
    // For vertical edges both endpoints share x1; for horizontal edges this is
    // the left endpoint's column.
    int column() const { return a.x1; }

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

// A dual site (x1,x2) stands for the point (x1+1/2, x2+1/2).
struct DualSite {
    int x1 = 0;
    int x2 = 0;
    friend bool operator==(const DualSite&, const DualSite&) = default;
    friend auto operator<=>(const DualSite&, const DualSite&) = default;
};

struct DualEdge {
    DualSite a;
    DualSite b;

    DualEdge(DualSite u, DualSite v) {
        int dx = u.x1 - v.x1, dy = u.x2 - v.x2;
        if ((dx < 0 ? -dx : dx) + (dy < 0 ? -dy : dy) != 1)
            throw std::invalid_argument("DualEdge: endpoints are not nearest neighbours");
        if (v < u) {
            a = v;
            b = u;
        } else {
            a = u;
            b = v;
        }
    }

    bool vertical() const { return a.x1 == b.x1; }
    friend bool operator==(const DualEdge&, const DualEdge&) = default;
    friend auto operator<=>(const DualEdge&, const DualEdge&) = default;
};

// Midpoints doubled to stay integral: (2*mx, 2*my).
inline std::pair<int, int> midpoint_times2(const Edge& e) {
    return {e.a.x1 + e.b.x1, e.a.x2 + e.b.x2};
}
inline std::pair<int, int> midpoint_times2(const DualEdge& e) {
    return {e.a.x1 + e.b.x1 + 1, e.a.x2 + e.b.x2 + 1};
}

// Axis-aligned rectangle of sites [lo.x1,hi.x1] x [lo.x2,hi.x2]; never empty.
struct Rect {
    Site lo;
    Site hi;

    Rect(Site l, Site h) : lo(l), hi(h) {
        if (hi.x1 < lo.x1 || hi.x2 < lo.x2)
            throw std::invalid_argument("Rect: hi must dominate lo coordinatewise");
    }

    static Rect box(Site center, int radius) {
        if (radius < 0) throw std::invalid_argument("Rect::box: negative radius");
        return Rect{{center.x1 - radius, center.x2 - radius},
                    {center.x1 + radius, center.x2 + radius}};
    }

    bool contains(Site s) const {
        return lo.x1 <= s.x1 && s.x1 <= hi.x1 && lo.x2 <= s.x2 && s.x2 <= hi.x2;
    }
    bool contains(const Rect& r) const { return contains(r.lo) && contains(r.hi); }

    int width() const { return hi.x1 - lo.x1 + 1; }   // sites per row
    int height() const { return hi.x2 - lo.x2 + 1; }  // rows
    long long site_count() const { return static_cast<long long>(width()) * height(); }
    long long edge_count() const {
        long long w = width(), h = height();
        return h * (w - 1) + w * (h - 1);
    }

    bool is_centered_box() const { return width() == height() && width() % 2 == 1; }
    Site center() const {
        if (!is_centered_box()) throw std::logic_error("Rect: not a centred box");
        return {(lo.x1 + hi.x1) / 2, (lo.x2 + hi.x2) / 2};
    }
    int radius() const {
        if (!is_centered_box()) throw std::logic_error("Rect: not a centred box");
        return (hi.x1 - lo.x1) / 2;
    }

    Interval xspan() const { return {lo.x1, hi.x1}; }

    long long site_index(Site s) const {
        if (!contains(s)) throw std::out_of_range("Rect::site_index: site outside region");
        return static_cast<long long>(s.x2 - lo.x2) * width() + (s.x1 - lo.x1);
    }

    friend bool operator==(const Rect&, const Rect&) = default;
};

enum class EdgeClass { HorizontalBase, VerticalBase, VerticalEnhanced };

// Membership of a finite set of enhanced columns over an explicit range.
// Out-of-range queries throw instead of reading as "not a member".
class ColumnSet {
public:
    ColumnSet(Interval range, std::vector<std::uint8_t> member)
        : range_(range), member_(std::move(member)) {
        if (static_cast<long long>(member_.size()) != range_.length())
            throw std::invalid_argument("ColumnSet: membership size does not match range");
    }

    static ColumnSet none(Interval range) {
        return ColumnSet(range, std::vector<std::uint8_t>(range.length(), 0));
    }
    static ColumnSet all(Interval range) {
        return ColumnSet(range, std::vector<std::uint8_t>(range.length(), 1));
    }
    static ColumnSet of(Interval range, const std::vector<int>& members) {
        ColumnSet cs = none(range);
        for (int i : members) {
            if (!range.contains(i))
                throw std::out_of_range("ColumnSet::of: member outside range");
            cs.member_[static_cast<std::size_t>(i - range.lo)] = 1;
        }
        return cs;
    }

    bool contains(int i) const {
        if (!range_.contains(i))
            throw std::out_of_range("ColumnSet: column " + std::to_string(i) +
                                    " outside stated range [" + std::to_string(range_.lo) +
                                    "," + std::to_string(range_.hi) + "]");
        return member_[static_cast<std::size_t>(i - range_.lo)] != 0;
    }

    Interval range() const { return range_; }
    long long count() const {
        long long c = 0;
        for (auto m : member_) c += m;
        return c;
    }
    const std::vector<std::uint8_t>& raw() const { return member_; }

private:
    Interval range_;
    std::vector<std::uint8_t> member_;
};

// Edges with both endpoints in `region`, enumerated row by row (x2 ascending,
// then x1 ascending), horizontal-before-vertical at each site. This is the
// canonical order used by edge indices and bond configurations.
std::vector<Edge> edges_of_region(const Rect& region);

// Index of an edge within the canonical enumeration of `region`.
long long edge_index(const Rect& region, const Edge& e);

// The dual edge crossing `e` at its midpoint.
DualEdge dual_edge(const Edge& e);
// The primal edge crossing a dual edge at its midpoint (inverse of dual_edge).
Edge primal_edge(const DualEdge& e);

// VerticalEnhanced iff vertical with column in the set. Horizontal edges never
// query the set; vertical edges outside its range throw.
EdgeClass classify_edge(const Edge& e, const ColumnSet& columns);

// Sites of B_{2n-1}(x) \ B_n(x).
inline bool in_annulus(Site s, Site x, int n) {
    int d = linf_norm(s - x);
    return d >= n + 1 && d <= 2 * n - 1;
}

struct AnnulusEdges {
    std::vector<Edge> all;               // E: both endpoints in B_{2n-1}(x) \ B_n(x)
    std::vector<std::uint8_t> enhanced;  // per edge of `all`: member of F
    std::size_t enhanced_count() const {
        std::size_t c = 0;
        for (auto m : enhanced) c += m;
        return c;
    }
};

// (E, F) for the annulus around x at scale n>=2. F = E ∩ E_ver(Λ x Z).
AnnulusEdges annulus_edge_sets(Site x, int n, const ColumnSet& columns);

// Inner boundary: sites of the region with a neighbour outside it.
std::vector<Site> boundary_sites(const Rect& region);

}  // namespace colperc
