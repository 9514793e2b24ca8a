#include <queue>
#include <vector>

#include "colperc/clusters.hpp"
#include "doctest.h"

using namespace colperc;

namespace {

// Plain BFS reachability, kept independent of the union-find path.
bool bfs_connected(const BondConfig& config, Site from, Site to) {
    const Rect& region = config.region();
    std::vector<std::uint8_t> seen(static_cast<std::size_t>(region.site_count()), 0);
    std::queue<Site> queue;
    seen[static_cast<std::size_t>(region.site_index(from))] = 1;
    queue.push(from);
    while (!queue.empty()) {
        Site s = queue.front();
        queue.pop();
        if (s == to) return true;
        for (const Site t : {Site{s.x1 + 1, s.x2}, Site{s.x1 - 1, s.x2}, Site{s.x1, s.x2 + 1},
                             Site{s.x1, s.x2 - 1}}) {
            if (!region.contains(t) || !config.is_open(Edge{s, t})) continue;
            auto idx = static_cast<std::size_t>(region.site_index(t));
            if (!seen[idx]) {
                seen[idx] = 1;
                queue.push(t);
            }
        }
    }
    return false;
}

// All simple open paths from `from` to any target, by depth-first search.
void enumerate_paths(const BondConfig& config, Site at,
                     const std::vector<std::uint8_t>& targets, std::vector<Site>& path,
                     std::vector<std::uint8_t>& used,
                     std::vector<std::vector<Site>>& out) {
    const Rect& region = config.region();
    if (targets[static_cast<std::size_t>(region.site_index(at))]) {
        out.push_back(path);
        return;  // stop at the first boundary hit; extensions add nothing
    }
    for (const Site t : {Site{at.x1 + 1, at.x2}, Site{at.x1 - 1, at.x2},
                         Site{at.x1, at.x2 + 1}, Site{at.x1, at.x2 - 1}}) {
        if (!region.contains(t) || !config.is_open(Edge{at, t})) continue;
        auto idx = static_cast<std::size_t>(region.site_index(t));
        if (used[idx]) continue;
        used[idx] = 1;
        path.push_back(t);
        enumerate_paths(config, t, targets, path, used, out);
        path.pop_back();
        used[idx] = 0;
    }
}

// Literal reading of the two-path predicate: some pair of enumerated simple
// paths shares nothing but the source.
bool path_pair_oracle(const BondConfig& config, Site source, std::span<const Site> targets) {
    const Rect& region = config.region();
    std::vector<std::uint8_t> target_mask(static_cast<std::size_t>(region.site_count()), 0);
    for (const Site& t : targets) {
        if (t == source) return true;
        target_mask[static_cast<std::size_t>(region.site_index(t))] = 1;
    }
    std::vector<std::vector<Site>> paths;
    std::vector<Site> path;
    std::vector<std::uint8_t> used(static_cast<std::size_t>(region.site_count()), 0);
    used[static_cast<std::size_t>(region.site_index(source))] = 1;
    enumerate_paths(config, source, target_mask, path, used, paths);
    for (std::size_t i = 0; i < paths.size(); ++i) {
        std::vector<std::uint8_t> on_i(static_cast<std::size_t>(region.site_count()), 0);
        for (const Site& s : paths[i]) on_i[static_cast<std::size_t>(region.site_index(s))] = 1;
        for (std::size_t j = i + 1; j < paths.size(); ++j) {
            bool disjoint = true;
            for (const Site& s : paths[j])
                if (on_i[static_cast<std::size_t>(region.site_index(s))]) {
                    disjoint = false;
                    break;
                }
            if (disjoint) return true;
        }
    }
    return false;
}

}  // namespace

TEST_CASE("clusters of uniform configurations") {
    const Rect region = Rect::box({0, 0}, 2);
    const ClusterLabeling closed(BondConfig::uniform(region, false));
    std::vector<int> labels;
    for (int y = -2; y <= 2; ++y)
        for (int x = -2; x <= 2; ++x) labels.push_back(closed.label({x, y}));
    std::sort(labels.begin(), labels.end());
    CHECK(std::unique(labels.begin(), labels.end()) == labels.end());  // all distinct

    const ClusterLabeling open(BondConfig::uniform(region, true));
    for (int y = -2; y <= 2; ++y)
        for (int x = -2; x <= 2; ++x) CHECK(open.label({x, y}) == open.label({0, 0}));
}

TEST_CASE("hand-built L-shaped path is one cluster") {
    const Rect region{{0, 0}, {2, 2}};
    BondConfig config = BondConfig::uniform(region, false);
    config.set_open(Edge{{0, 2}, {0, 1}}, true);
    config.set_open(Edge{{0, 1}, {0, 0}}, true);
    config.set_open(Edge{{0, 0}, {1, 0}}, true);
    const ClusterLabeling labeling(config);
    const std::vector<Site> on_path = {{0, 2}, {0, 1}, {0, 0}, {1, 0}};
    for (const Site& s : on_path) CHECK(connected(labeling, s, {0, 0}));
    CHECK_FALSE(connected(labeling, {1, 1}, {0, 0}));
    CHECK_FALSE(connected(labeling, {2, 0}, {0, 0}));
}

TEST_CASE("connected: trivial cases and range errors") {
    const Rect region = Rect::box({0, 0}, 1);
    const ClusterLabeling closed(BondConfig::uniform(region, false));
    CHECK(connected(closed, {1, 1}, {1, 1}));  // a = b always connected
    CHECK_FALSE(connected(closed, {0, 0}, {1, 0}));
    CHECK_THROWS_AS(closed.label({5, 5}), std::out_of_range);
}

TEST_CASE("exhaustive 3x3 oracle: union-find equals BFS for every pair") {
    const Rect region{{0, 0}, {2, 2}};
    const auto edges = edges_of_region(region);
    REQUIRE(edges.size() == 12);
    std::vector<Site> sites;
    for (int y = 0; y <= 2; ++y)
        for (int x = 0; x <= 2; ++x) sites.push_back({x, y});
    for (std::uint32_t mask = 0; mask < (1u << 12); ++mask) {
        std::vector<std::uint8_t> bits(12);
        for (std::size_t b = 0; b < 12; ++b) bits[b] = (mask >> b) & 1u;
        const BondConfig config(region, bits);
        const ClusterLabeling labeling(config);
        for (const Site& a : sites)
            for (const Site& b : sites)
                CHECK(connected(labeling, a, b) == bfs_connected(config, a, b));
    }
}

TEST_CASE("reaches_set basics") {
    const Rect region = Rect::box({0, 0}, 2);
    const std::vector<Site> boundary = boundary_sites(region);
    const ClusterLabeling open(BondConfig::uniform(region, true));
    CHECK(reaches_set(open, {0, 0}, boundary));
    const ClusterLabeling closed(BondConfig::uniform(region, false));
    CHECK_FALSE(reaches_set(closed, {0, 0}, boundary));
    CHECK_FALSE(reaches_set(open, {0, 0}, std::vector<Site>{}));

    BondConfig ray = BondConfig::uniform(region, false);
    ray.set_open(Edge{{0, 0}, {1, 0}}, true);
    ray.set_open(Edge{{1, 0}, {2, 0}}, true);
    CHECK(reaches_set(ClusterLabeling(ray), {0, 0}, boundary));
}

TEST_CASE("two vertex-disjoint paths: hand cases") {
    const Rect region = Rect::box({0, 0}, 2);
    const std::vector<Site> boundary = boundary_sites(region);

    CHECK(two_vertex_disjoint_paths(BondConfig::uniform(region, true), {0, 0}, boundary));
    CHECK_FALSE(two_vertex_disjoint_paths(BondConfig::uniform(region, false), {0, 0}, boundary));

    // single straight path: Menger says no
    BondConfig single = BondConfig::uniform(region, false);
    single.set_open(Edge{{0, 0}, {1, 0}}, true);
    single.set_open(Edge{{1, 0}, {2, 0}}, true);
    CHECK_FALSE(two_vertex_disjoint_paths(single, {0, 0}, boundary));

    // cross: two straight rays meeting only at the origin
    BondConfig cross = single;
    cross.set_open(Edge{{0, 0}, {-1, 0}}, true);
    cross.set_open(Edge{{-1, 0}, {-2, 0}}, true);
    CHECK(two_vertex_disjoint_paths(cross, {0, 0}, boundary));

    // two paths forced through one shared boundary endpoint: strictly false
    const Rect small{{0, 0}, {2, 2}};
    BondConfig shared = BondConfig::uniform(small, false);
    shared.set_open(Edge{{1, 1}, {0, 1}}, true);
    shared.set_open(Edge{{1, 1}, {1, 0}}, true);
    shared.set_open(Edge{{0, 1}, {0, 0}}, true);
    shared.set_open(Edge{{1, 0}, {0, 0}}, true);
    CHECK_FALSE(two_vertex_disjoint_paths(shared, {1, 1}, std::vector<Site>{{0, 0}}));
}

TEST_CASE("exhaustive 3x3: flow equals path-pair enumeration") {
    const Rect region{{0, 0}, {2, 2}};
    const std::vector<Site> targets = boundary_sites(region);
    const Site source{1, 1};
    for (std::uint32_t mask = 0; mask < (1u << 12); ++mask) {
        std::vector<std::uint8_t> bits(12);
        for (std::size_t b = 0; b < 12; ++b) bits[b] = (mask >> b) & 1u;
        const BondConfig config(region, bits);
        CHECK(two_vertex_disjoint_paths(config, source, targets) ==
              path_pair_oracle(config, source, targets));
    }
}

TEST_CASE("random 5x5: flow equals cut-enumeration oracle") {
    const Rect region = Rect::box({0, 0}, 2);
    const std::vector<Site> targets = boundary_sites(region);
    const ColumnSet columns = ColumnSet::none(region.xspan());
    RandomStream root(808);
    for (int i = 0; i < 1000; ++i) {
        const double p = 0.3 + 0.05 * static_cast<double>(i % 9);
        const BondConfig config = sample_config(region, columns, {p, p, 0.0}, root.derive(i));
        CHECK(two_vertex_disjoint_paths(config, {0, 0}, targets) ==
              two_vertex_disjoint_paths_oracle(config, {0, 0}, targets));
    }
}

TEST_CASE("monotonicity: opening an edge never disconnects") {
    const Rect region = Rect::box({0, 0}, 2);
    const ColumnSet columns = ColumnSet::none(region.xspan());
    const auto edges = edges_of_region(region);
    RandomStream root(99);
    for (int i = 0; i < 200; ++i) {
        BondConfig config = sample_config(region, columns, {0.4, 0.4, 0.0}, root.derive(i));
        const ClusterLabeling before(config);
        const Edge extra = edges[root.derive(i, 1).next_u64() % edges.size()];
        config.set_open(extra, true);
        const ClusterLabeling after(config);
        for (int y = -2; y <= 2; ++y)
            for (int x = -2; x <= 2; ++x)
                if (connected(before, {x, y}, {0, 0})) CHECK(connected(after, {x, y}, {0, 0}));
    }
}
