#include "colperc/geometry.hpp"

namespace colperc {

std::vector<Edge> edges_of_region(const Rect& region) {
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(region.edge_count()));
    for (int y = region.lo.x2; y <= region.hi.x2; ++y) {
        for (int x = region.lo.x1; x <= region.hi.x1; ++x) {
            if (x + 1 <= region.hi.x1) edges.push_back(Edge{{x, y}, {x + 1, y}});
            if (y + 1 <= region.hi.x2) edges.push_back(Edge{{x, y}, {x, y + 1}});
        }
    }
    return edges;
}

long long edge_index(const Rect& region, const Edge& e) {
    if (!region.contains(e.a) || !region.contains(e.b))
        throw std::out_of_range("edge_index: edge not inside region");
    const long long w = region.width();
    const long long h = region.height();
    const long long row = e.a.x2 - region.lo.x2;
    const long long col = e.a.x1 - region.lo.x1;
    const bool top_row = (row == h - 1);
    // Full non-top rows carry (w-1) horizontal + w vertical edges each.
    const long long before_rows = row * (2 * w - 1);
    if (e.vertical()) {
        return before_rows + 2 * col + (col < w - 1 ? 1 : 0);
    }
    return before_rows + (top_row ? col : 2 * col);
}

DualEdge dual_edge(const Edge& e) {
    if (e.vertical()) {
        // {(x,y),(x,y+1)} -> horizontal dual through (x, y+1/2)
        return DualEdge{{e.a.x1 - 1, e.a.x2}, {e.a.x1, e.a.x2}};
    }
    // {(x,y),(x+1,y)} -> vertical dual through (x+1/2, y)
    return DualEdge{{e.a.x1, e.a.x2 - 1}, {e.a.x1, e.a.x2}};
}

Edge primal_edge(const DualEdge& e) {
    if (e.vertical()) {
        // {(x+1/2,y-1/2),(x+1/2,y+1/2)} -> horizontal primal {(x,y),(x+1,y)}
        return Edge{{e.a.x1, e.a.x2 + 1}, {e.a.x1 + 1, e.a.x2 + 1}};
    }
    // {(x-1/2,y+1/2),(x+1/2,y+1/2)} -> vertical primal {(x,y),(x,y+1)}
    return Edge{{e.b.x1, e.a.x2}, {e.b.x1, e.a.x2 + 1}};
}

EdgeClass classify_edge(const Edge& e, const ColumnSet& columns) {
    if (!e.vertical()) return EdgeClass::HorizontalBase;
    return columns.contains(e.column()) ? EdgeClass::VerticalEnhanced : EdgeClass::VerticalBase;
}

AnnulusEdges annulus_edge_sets(Site x, int n, const ColumnSet& columns) {
    if (n < 2) throw std::invalid_argument("annulus_edge_sets: empty annulus, need n >= 2");
    AnnulusEdges result;
    const Rect outer = Rect::box(x, 2 * n - 1);
    for (const Edge& e : edges_of_region(outer)) {
        if (!in_annulus(e.a, x, n) || !in_annulus(e.b, x, n)) continue;
        result.all.push_back(e);
        result.enhanced.push_back(classify_edge(e, columns) == EdgeClass::VerticalEnhanced ? 1
                                                                                           : 0);
    }
    return result;
}

std::vector<Site> boundary_sites(const Rect& region) {
    std::vector<Site> out;
    if (region.width() == 1 || region.height() == 1) {
        // Degenerate strips: every site has an outside neighbour.
        for (int y = region.lo.x2; y <= region.hi.x2; ++y)
            for (int x = region.lo.x1; x <= region.hi.x1; ++x) out.push_back({x, y});
        return out;
    }
    for (int x = region.lo.x1; x <= region.hi.x1; ++x) out.push_back({x, region.lo.x2});
    for (int y = region.lo.x2 + 1; y < region.hi.x2; ++y) {
        out.push_back({region.lo.x1, y});
        out.push_back({region.hi.x1, y});
    }
    for (int x = region.lo.x1; x <= region.hi.x1; ++x) out.push_back({x, region.hi.x2});
    return out;
}

}  // namespace colperc
