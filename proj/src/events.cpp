#include "colperc/events.hpp"

#include <queue>
#include <stdexcept>

namespace colperc {

Pivotal::Pivotal(Edge e, EventSpec inner_spec)
    : edge(e), inner(std::make_shared<const EventSpec>(std::move(inner_spec))) {
    const Rect region = required_region(*inner);
    if (!region.contains(edge.a) || !region.contains(edge.b))
        throw std::invalid_argument("Pivotal: edge outside the inner event's region");
}

Rect required_region(const EventSpec& spec) {
    return std::visit(
        [](const auto& ev) -> Rect {
            using T = std::decay_t<decltype(ev)>;
            if constexpr (std::is_same_v<T, HardCrossing>) {
                if (ev.n < 1) throw std::invalid_argument("HardCrossing: n >= 1 required");
                return Rect{{0, 0}, {2 * ev.n, ev.n}};
            } else if constexpr (std::is_same_v<T, RectCrossing>) {
                return ev.rect;
            } else if constexpr (std::is_same_v<T, AnnulusCircuit>) {
                if (ev.n < 2) throw std::invalid_argument("AnnulusCircuit: n >= 2 required");
                return Rect::box(ev.center, 2 * ev.n - 1);
            } else if constexpr (std::is_same_v<T, Pivotal>) {
                return required_region(*ev.inner);
            } else {
                if (ev.n < 1) throw std::invalid_argument("arm event: n >= 1 required");
                return Rect::box({0, 0}, ev.n);
            }
        },
        spec);
}

bool evaluate(const EventSpec& spec, const BondConfig& config) {
    return std::visit(
        [&](const auto& ev) -> bool {
            using T = std::decay_t<decltype(ev)>;
            if constexpr (std::is_same_v<T, HardCrossing>) {
                return hard_crossing(config, ev.n);
            } else if constexpr (std::is_same_v<T, RectCrossing>) {
                return rect_crossing(config, ev.rect, ev.axis);
            } else if constexpr (std::is_same_v<T, AnnulusCircuit>) {
                return annulus_circuit(config, ev.center, ev.n);
            } else if constexpr (std::is_same_v<T, FourArm>) {
                return four_arm(config, ev.n);
            } else if constexpr (std::is_same_v<T, FiveArm>) {
                return five_arm(config, ev.n);
            } else if constexpr (std::is_same_v<T, OneArm>) {
                return one_arm(config, ev.n);
            } else {
                return is_pivotal(config, ev.edge, *ev.inner);
            }
        },
        spec);
}

std::optional<int> event_scale(const EventSpec& spec) {
    return std::visit(
        [](const auto& ev) -> std::optional<int> {
            using T = std::decay_t<decltype(ev)>;
            if constexpr (std::is_same_v<T, RectCrossing> || std::is_same_v<T, Pivotal>)
                return std::nullopt;
            else
                return ev.n;
        },
        spec);
}

EventSpec with_scale(const EventSpec& spec, int n) {
    return std::visit(
        [&](const auto& ev) -> EventSpec {
            using T = std::decay_t<decltype(ev)>;
            if constexpr (std::is_same_v<T, RectCrossing> || std::is_same_v<T, Pivotal>) {
                throw std::invalid_argument("with_scale: event has no scale parameter");
            } else {
                T copy = ev;
                copy.n = n;
                return copy;
            }
        },
        spec);
}

namespace {

void require_covers(const BondConfig& config, const Rect& region, const char* who) {
    if (!config.region().contains(region))
        throw std::invalid_argument(std::string(who) + ": configuration region too small");
}

}  // namespace

bool rect_crossing(const BondConfig& config, const Rect& rect, Axis axis) {
    require_covers(config, rect, "rect_crossing");
    if (axis == Axis::Horizontal && rect.lo.x1 == rect.hi.x1) return true;
    if (axis == Axis::Vertical && rect.lo.x2 == rect.hi.x2) return true;

    const long long nsites = rect.site_count();
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(nsites), 0);
    std::queue<Site> queue;
    auto push = [&](Site s) {
        auto idx = static_cast<std::size_t>(rect.site_index(s));
        if (!seen[idx]) {
            seen[idx] = 1;
            queue.push(s);
        }
    };
    if (axis == Axis::Horizontal) {
        for (int y = rect.lo.x2; y <= rect.hi.x2; ++y) push({rect.lo.x1, y});
    } else {
        for (int x = rect.lo.x1; x <= rect.hi.x1; ++x) push({x, rect.lo.x2});
    }
    while (!queue.empty()) {
        Site s = queue.front();
        queue.pop();
        if (axis == Axis::Horizontal ? s.x1 == rect.hi.x1 : s.x2 == rect.hi.x2) return true;
        const Site nbrs[4] = {
            {s.x1 + 1, s.x2}, {s.x1 - 1, s.x2}, {s.x1, s.x2 + 1}, {s.x1, s.x2 - 1}};
        for (const Site& t : nbrs) {
            if (!rect.contains(t)) continue;
            if (!config.is_open(Edge{s, t})) continue;
            push(t);
        }
    }
    return false;
}

bool hard_way_crossing(const BondConfig& config, const Rect& span, Axis axis) {
    require_covers(config, span, "hard_way_crossing");
    if (axis == Axis::Horizontal && span.lo.x1 == span.hi.x1) return true;
    if (axis == Axis::Vertical && span.lo.x2 == span.hi.x2) return true;

    // Intermediate sites must stay off the two sides parallel to the
    // crossing; their coordinate along the crossing is unrestricted.
    auto intermediate = [&](Site s) {
        if (!span.contains(s)) return false;
        if (axis == Axis::Horizontal) return s.x2 > span.lo.x2 && s.x2 < span.hi.x2;
        return s.x1 > span.lo.x1 && s.x1 < span.hi.x1;
    };
    auto is_end = [&](Site s) {
        return axis == Axis::Horizontal ? s.x1 == span.hi.x1 : s.x2 == span.hi.x2;
    };

    const long long nsites = span.site_count();
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(nsites), 0);
    std::queue<Site> queue;
    auto expand = [&](Site s) {
        const Site nbrs[4] = {
            {s.x1 + 1, s.x2}, {s.x1 - 1, s.x2}, {s.x1, s.x2 + 1}, {s.x1, s.x2 - 1}};
        for (const Site& t : nbrs) {
            if (!span.contains(t)) continue;
            if (!config.is_open(Edge{s, t})) continue;
            if (is_end(t)) return true;
            if (!intermediate(t)) continue;
            auto idx = static_cast<std::size_t>(span.site_index(t));
            if (!seen[idx]) {
                seen[idx] = 1;
                queue.push(t);
            }
        }
        return false;
    };

    // Step off the start side first; start sites are never re-entered.
    for (int c = (axis == Axis::Horizontal ? span.lo.x2 : span.lo.x1);
         c <= (axis == Axis::Horizontal ? span.hi.x2 : span.hi.x1); ++c) {
        Site s = axis == Axis::Horizontal ? Site{span.lo.x1, c} : Site{c, span.lo.x2};
        if (expand(s)) return true;
    }
    while (!queue.empty()) {
        Site s = queue.front();
        queue.pop();
        if (expand(s)) return true;
    }
    return false;
}

bool hard_crossing(const BondConfig& config, int n) {
    if (n < 1) throw std::invalid_argument("hard_crossing: n >= 1 required");
    return hard_way_crossing(config, Rect{{0, 0}, {2 * n, n}}, Axis::Horizontal);
}

bool dual_blocking_path(const BondConfig& config, const Rect& rect, Axis axis) {
    require_covers(config, rect, "dual_blocking_path");
    // Work in coordinates rotated so the blocked crossing is always
    // horizontal: dual sites (u1,u2) with u1 in [lo.x1, hi.x1-1] and u2 in
    // [lo.x2-1, hi.x2]; the two virtual rows u2 = lo.x2-1 and u2 = hi.x2 are
    // the multi-source and the goal.
    const bool horizontal = axis == Axis::Horizontal;
    const int ulo1 = horizontal ? rect.lo.x1 : rect.lo.x2;
    const int uhi1 = horizontal ? rect.hi.x1 - 1 : rect.hi.x2 - 1;
    const int ulo2 = horizontal ? rect.lo.x2 - 1 : rect.lo.x1 - 1;
    const int uhi2 = horizontal ? rect.hi.x2 : rect.hi.x1;
    if (uhi1 < ulo1) return false;  // width-1 rectangle: nothing to block

    // Primal edge crossed when stepping "up" from (u1,u2): the side edge at
    // height u2+1 spanning columns u1..u1+1 (in rotated coordinates).
    auto cross_up_closed = [&](int u1, int u2) {
        Edge e = horizontal ? Edge{{u1, u2 + 1}, {u1 + 1, u2 + 1}}
                            : Edge{{u2 + 1, u1}, {u2 + 1, u1 + 1}};
        return !config.is_open(e);
    };
    auto cross_side_closed = [&](int u1_from, int u2, int dir) {
        // step right (dir=+1) crosses the primal edge between u1_from+1's
        // column at rows u2, u2+1; step left crosses at u1_from's column.
        int col = dir > 0 ? u1_from + 1 : u1_from;
        Edge e = horizontal ? Edge{{col, u2}, {col, u2 + 1}} : Edge{{u2, col}, {u2 + 1, col}};
        return !config.is_open(e);
    };

    const int w = uhi1 - ulo1 + 1;
    const int h = uhi2 - ulo2 + 1;
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(w) * h, 0);
    auto idx = [&](int u1, int u2) {
        return static_cast<std::size_t>(u2 - ulo2) * w + (u1 - ulo1);
    };
    std::queue<std::pair<int, int>> queue;
    for (int u1 = ulo1; u1 <= uhi1; ++u1) {
        seen[idx(u1, ulo2)] = 1;
        queue.push({u1, ulo2});
    }
    while (!queue.empty()) {
        auto [u1, u2] = queue.front();
        queue.pop();
        if (u2 == uhi2) return true;
        // up
        if (cross_up_closed(u1, u2) && !seen[idx(u1, u2 + 1)]) {
            seen[idx(u1, u2 + 1)] = 1;
            queue.push({u1, u2 + 1});
        }
        // down (crosses the side edge at height u2)
        if (u2 > ulo2 && cross_up_closed(u1, u2 - 1) && !seen[idx(u1, u2 - 1)]) {
            seen[idx(u1, u2 - 1)] = 1;
            queue.push({u1, u2 - 1});
        }
        // sideways only between the virtual rows
        if (u2 > ulo2 && u2 < uhi2) {
            if (u1 + 1 <= uhi1 && cross_side_closed(u1, u2, +1) && !seen[idx(u1 + 1, u2)]) {
                seen[idx(u1 + 1, u2)] = 1;
                queue.push({u1 + 1, u2});
            }
            if (u1 - 1 >= ulo1 && cross_side_closed(u1, u2, -1) && !seen[idx(u1 - 1, u2)]) {
                seen[idx(u1 - 1, u2)] = 1;
                queue.push({u1 - 1, u2});
            }
        }
    }
    return false;
}

bool annulus_circuit(const BondConfig& config, Site x, int n) {
    if (n < 2) throw std::invalid_argument("annulus_circuit: n >= 2 required");
    require_covers(config, Rect::box(x, 2 * n - 1), "annulus_circuit");

    // Dual squares [u1,u1+1]x[u2,u2+1] fully inside B_{2n-1}(x); the walk
    // starts at the four squares incident to x and tries to escape the box.
    // A step is blocked exactly when the crossed primal edge lies in the
    // annulus edge set and is open. No escape <=> a winding circuit exists.
    const int lo1 = x.x1 - 2 * n + 1, hi1 = x.x1 + 2 * n - 2;
    const int lo2 = x.x2 - 2 * n + 1, hi2 = x.x2 + 2 * n - 2;
    const int w = hi1 - lo1 + 1;
    const int h = hi2 - lo2 + 1;

    auto blocked = [&](const Edge& e) {
        return in_annulus(e.a, x, n) && in_annulus(e.b, x, n) && config.is_open(e);
    };

    std::vector<std::uint8_t> seen(static_cast<std::size_t>(w) * h, 0);
    auto idx = [&](int u1, int u2) {
        return static_cast<std::size_t>(u2 - lo2) * w + (u1 - lo1);
    };
    std::vector<std::pair<int, int>> stack;
    for (int u1 : {x.x1 - 1, x.x1})
        for (int u2 : {x.x2 - 1, x.x2}) {
            seen[idx(u1, u2)] = 1;
            stack.push_back({u1, u2});
        }
    while (!stack.empty()) {
        auto [u1, u2] = stack.back();
        stack.pop_back();
        // right: crosses vertical primal at column u1+1
        if (!blocked(Edge{{u1 + 1, u2}, {u1 + 1, u2 + 1}})) {
            if (u1 + 1 > hi1) return false;
            if (!seen[idx(u1 + 1, u2)]) {
                seen[idx(u1 + 1, u2)] = 1;
                stack.push_back({u1 + 1, u2});
            }
        }
        // left: crosses vertical primal at column u1
        if (!blocked(Edge{{u1, u2}, {u1, u2 + 1}})) {
            if (u1 - 1 < lo1) return false;
            if (!seen[idx(u1 - 1, u2)]) {
                seen[idx(u1 - 1, u2)] = 1;
                stack.push_back({u1 - 1, u2});
            }
        }
        // up: crosses horizontal primal at height u2+1
        if (!blocked(Edge{{u1, u2 + 1}, {u1 + 1, u2 + 1}})) {
            if (u2 + 1 > hi2) return false;
            if (!seen[idx(u1, u2 + 1)]) {
                seen[idx(u1, u2 + 1)] = 1;
                stack.push_back({u1, u2 + 1});
            }
        }
        // down: crosses horizontal primal at height u2
        if (!blocked(Edge{{u1, u2}, {u1 + 1, u2}})) {
            if (u2 - 1 < lo2) return false;
            if (!seen[idx(u1, u2 - 1)]) {
                seen[idx(u1, u2 - 1)] = 1;
                stack.push_back({u1, u2 - 1});
            }
        }
    }
    return true;
}

bool annulus_circuit_oracle(const BondConfig& config, Site x, int n) {
    if (n < 2) throw std::invalid_argument("annulus_circuit_oracle: n >= 2 required");
    require_covers(config, Rect::box(x, 2 * n - 1), "annulus_circuit_oracle");

    // Winding cover: each annulus site gets one copy per sheet; open edges
    // crossing the eastward cut ray from x move one sheet up or down, all
    // other open edges stay on their sheet. A winding walk exists iff some
    // site joins its own copy one sheet above. A simple circuit crosses each
    // of the n-1 cut edges at most once, so n+1 sheets of slack per side make
    // the truncation exact.
    const Rect outer = Rect::box(x, 2 * n - 1);
    const long long box_sites = outer.site_count();
    std::vector<int> annulus_id(static_cast<std::size_t>(box_sites), -1);
    int count = 0;
    for (int y = outer.lo.x2; y <= outer.hi.x2; ++y)
        for (int xx = outer.lo.x1; xx <= outer.hi.x1; ++xx)
            if (in_annulus({xx, y}, x, n))
                annulus_id[static_cast<std::size_t>(outer.site_index({xx, y}))] = count++;

    const int sheets = 2 * (n + 1) + 3;
    const int mid = n + 2;
    UnionFind uf(static_cast<std::size_t>(count) * sheets);
    auto node = [&](int site, int sheet) { return site * sheets + sheet; };

    auto is_cut_edge = [&](const Edge& e) {
        // vertical edges {(a, x.x2), (a, x.x2+1)} with a > x.x1 cross the ray
        return e.vertical() && e.a.x2 == x.x2 && e.b.x2 == x.x2 + 1 && e.a.x1 > x.x1;
    };

    for (const Edge& e : edges_of_region(outer)) {
        if (!in_annulus(e.a, x, n) || !in_annulus(e.b, x, n)) continue;
        if (!config.is_open(e)) continue;
        int ia = annulus_id[static_cast<std::size_t>(outer.site_index(e.a))];
        int ib = annulus_id[static_cast<std::size_t>(outer.site_index(e.b))];
        if (is_cut_edge(e)) {
            // e.a below the cut, e.b above: crossing upward gains a sheet
            for (int k = 0; k + 1 < sheets; ++k) uf.unite(node(ia, k), node(ib, k + 1));
        } else {
            for (int k = 0; k < sheets; ++k) uf.unite(node(ia, k), node(ib, k));
        }
    }
    for (int site = 0; site < count; ++site)
        if (uf.find(node(site, mid)) == uf.find(node(site, mid + 1))) return true;
    return false;
}

bool four_arm(const BondConfig& config, int n) {
    if (n < 1) throw std::invalid_argument("four_arm: n >= 1 required");
    const Rect box = Rect::box({0, 0}, n);
    require_covers(config, box, "four_arm");
    const ClusterLabeling labeling(config, box);
    const int l0 = labeling.label({0, 0});
    const int lx = labeling.label({1, 0});
    if (l0 == lx) return false;
    bool reach0 = false, reachx = false;
    for (const Site& b : boundary_sites(box)) {
        const int lb = labeling.label(b);
        reach0 = reach0 || lb == l0;
        reachx = reachx || lb == lx;
        if (reach0 && reachx) return true;
    }
    return false;
}

bool five_arm(const BondConfig& config, int n) {
    if (!four_arm(config, n)) return false;
    const Rect box = Rect::box({0, 0}, n);
    const std::vector<Site> boundary = boundary_sites(box);
    return two_vertex_disjoint_paths(config, {0, 0}, boundary, box);
}

bool one_arm(const BondConfig& config, int n) {
    if (n < 1) throw std::invalid_argument("one_arm: n >= 1 required");
    const Rect box = Rect::box({0, 0}, n);
    require_covers(config, box, "one_arm");
    const ClusterLabeling labeling(config, box);
    const std::vector<Site> boundary = boundary_sites(box);
    return reaches_set(labeling, {0, 0}, boundary);
}

bool is_pivotal(const BondConfig& config, const Edge& e, const EventSpec& spec) {
    BondConfig scratch = config;
    return is_pivotal_inplace(scratch, e, spec);
}

bool is_pivotal_inplace(BondConfig& scratch, const Edge& e, const EventSpec& spec) {
    const Rect region = required_region(spec);
    if (!region.contains(e.a) || !region.contains(e.b))
        throw std::invalid_argument("is_pivotal: edge outside the event's region");
    const bool original = scratch.is_open(e);
    scratch.set_open(e, true);
    const bool with_open = evaluate(spec, scratch);
    scratch.set_open(e, false);
    const bool with_closed = evaluate(spec, scratch);
    scratch.set_open(e, original);
    return with_open != with_closed;
}

}  // namespace colperc
