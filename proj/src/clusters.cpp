#include "colperc/clusters.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace colperc {

namespace {

std::vector<int> build_labels(const BondConfig& config, const Rect& sub) {
    const int w = sub.width();
    UnionFind uf(static_cast<std::size_t>(sub.site_count()));
    for (int y = sub.lo.x2; y <= sub.hi.x2; ++y) {
        for (int x = sub.lo.x1; x <= sub.hi.x1; ++x) {
            const int idx = (y - sub.lo.x2) * w + (x - sub.lo.x1);
            if (x + 1 <= sub.hi.x1 && config.is_open(Edge{{x, y}, {x + 1, y}}))
                uf.unite(idx, idx + 1);
            if (y + 1 <= sub.hi.x2 && config.is_open(Edge{{x, y}, {x, y + 1}}))
                uf.unite(idx, idx + w);
        }
    }
    std::vector<int> labels(uf.parent.size());
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = uf.find(static_cast<int>(i));
    return labels;
}

}  // namespace

ClusterLabeling::ClusterLabeling(const BondConfig& config)
    : region_(config.region()), labels_(build_labels(config, config.region())) {}

ClusterLabeling::ClusterLabeling(const BondConfig& config, const Rect& sub)
    : region_(sub), labels_(build_labels(config, sub)) {
    if (!config.region().contains(sub))
        throw std::invalid_argument("ClusterLabeling: sub-rectangle outside config region");
}

bool connected(const ClusterLabeling& labeling, Site a, Site b) {
    return labeling.label(a) == labeling.label(b);
}

bool reaches_set(const ClusterLabeling& labeling, Site a, std::span<const Site> targets) {
    const int la = labeling.label(a);
    for (const Site& t : targets)
        if (labeling.label(t) == la) return true;
    return false;
}

namespace {

// Vertex-split max-flow limited to value 2. Node 2i = in, 2i+1 = out.
struct SplitFlowGraph {
    struct Arc {
        int to;
        int cap;
        int rev;  // index of the reverse arc in adj[to]
    };

    explicit SplitFlowGraph(int nodes) : adj(static_cast<std::size_t>(nodes)) {}

    void add_arc(int from, int to, int cap) {
        adj[static_cast<std::size_t>(from)].push_back(
            {to, cap, static_cast<int>(adj[static_cast<std::size_t>(to)].size())});
        adj[static_cast<std::size_t>(to)].push_back(
            {from, 0, static_cast<int>(adj[static_cast<std::size_t>(from)].size()) - 1});
    }

    // One BFS augmentation of unit flow; returns false when sink unreachable.
    bool augment(int source, int sink) {
        const int n = static_cast<int>(adj.size());
        std::vector<int> prev_node(static_cast<std::size_t>(n), -1);
        std::vector<int> prev_arc(static_cast<std::size_t>(n), -1);
        std::queue<int> queue;
        prev_node[static_cast<std::size_t>(source)] = source;
        queue.push(source);
        while (!queue.empty() && prev_node[static_cast<std::size_t>(sink)] < 0) {
            int v = queue.front();
            queue.pop();
            const auto& arcs = adj[static_cast<std::size_t>(v)];
            for (int i = 0; i < static_cast<int>(arcs.size()); ++i) {
                const Arc& a = arcs[static_cast<std::size_t>(i)];
                if (a.cap <= 0 || prev_node[static_cast<std::size_t>(a.to)] >= 0) continue;
                prev_node[static_cast<std::size_t>(a.to)] = v;
                prev_arc[static_cast<std::size_t>(a.to)] = i;
                queue.push(a.to);
            }
        }
        if (prev_node[static_cast<std::size_t>(sink)] < 0) return false;
        for (int v = sink; v != source; v = prev_node[static_cast<std::size_t>(v)]) {
            int u = prev_node[static_cast<std::size_t>(v)];
            Arc& a = adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(
                prev_arc[static_cast<std::size_t>(v)])];
            a.cap -= 1;
            adj[static_cast<std::size_t>(a.to)][static_cast<std::size_t>(a.rev)].cap += 1;
        }
        return true;
    }

    std::vector<std::vector<Arc>> adj;
};

}  // namespace

bool two_vertex_disjoint_paths(const BondConfig& config, Site source,
                               std::span<const Site> targets) {
    return two_vertex_disjoint_paths(config, source, targets, config.region());
}

bool two_vertex_disjoint_paths(const BondConfig& config, Site source,
                               std::span<const Site> targets, const Rect& within) {
    if (targets.empty()) return false;
    if (!config.region().contains(within))
        throw std::invalid_argument("two_vertex_disjoint_paths: sub-rectangle outside config");
    const Rect& region = within;
    if (!region.contains(source))
        throw std::out_of_range("two_vertex_disjoint_paths: source outside region");

    const long long nsites = region.site_count();
    std::vector<std::uint8_t> is_target(static_cast<std::size_t>(nsites), 0);
    for (const Site& t : targets) {
        if (t == source) return true;  // zero-length paths
        is_target[static_cast<std::size_t>(region.site_index(t))] = 1;
    }

    const int big = 4;  // anything >= 2 acts as unlimited here
    const int sink = static_cast<int>(2 * nsites);
    SplitFlowGraph graph(sink + 1);
    const int source_idx = static_cast<int>(region.site_index(source));
    for (long long i = 0; i < nsites; ++i) {
        // Only the source is exempt from the unit vertex capacity: the two
        // paths may share nothing else, not even a target endpoint.
        const bool exempt = i == source_idx;
        graph.add_arc(static_cast<int>(2 * i), static_cast<int>(2 * i + 1), exempt ? big : 1);
        if (is_target[static_cast<std::size_t>(i)])
            graph.add_arc(static_cast<int>(2 * i + 1), sink, 1);
    }
    for (int y = region.lo.x2; y <= region.hi.x2; ++y) {
        for (int x = region.lo.x1; x <= region.hi.x1; ++x) {
            const long long i = region.site_index({x, y});
            if (x + 1 <= region.hi.x1 && config.is_open(Edge{{x, y}, {x + 1, y}})) {
                const long long j = i + 1;
                graph.add_arc(static_cast<int>(2 * i + 1), static_cast<int>(2 * j), 1);
                graph.add_arc(static_cast<int>(2 * j + 1), static_cast<int>(2 * i), 1);
            }
            if (y + 1 <= region.hi.x2 && config.is_open(Edge{{x, y}, {x, y + 1}})) {
                const long long j = i + region.width();
                graph.add_arc(static_cast<int>(2 * i + 1), static_cast<int>(2 * j), 1);
                graph.add_arc(static_cast<int>(2 * j + 1), static_cast<int>(2 * i), 1);
            }
        }
    }

    const int src = 2 * source_idx + 1;  // leave from source's out-node
    if (!graph.augment(src, sink)) return false;
    return graph.augment(src, sink);
}

bool two_vertex_disjoint_paths_oracle(const BondConfig& config, Site source,
                                      std::span<const Site> targets) {
    if (targets.empty()) return false;
    const Rect& region = config.region();
    const long long nsites = region.site_count();

    std::vector<std::uint8_t> is_target(static_cast<std::size_t>(nsites), 0);
    for (const Site& t : targets) {
        if (t == source) return true;
        is_target[static_cast<std::size_t>(region.site_index(t))] = 1;
    }
    const int source_idx = static_cast<int>(region.site_index(source));

    // Reachability with one site banned (-1 = no ban).
    auto reaches = [&](int banned) {
        std::vector<std::uint8_t> seen(static_cast<std::size_t>(nsites), 0);
        std::queue<int> queue;
        seen[static_cast<std::size_t>(source_idx)] = 1;
        queue.push(source_idx);
        const int w = region.width();
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop();
            if (is_target[static_cast<std::size_t>(v)]) return true;
            Site s{region.lo.x1 + v % w, region.lo.x2 + v / w};
            const Site nbrs[4] = {{s.x1 + 1, s.x2}, {s.x1 - 1, s.x2},
                                  {s.x1, s.x2 + 1}, {s.x1, s.x2 - 1}};
            for (const Site& t : nbrs) {
                if (!region.contains(t)) continue;
                int u = static_cast<int>(region.site_index(t));
                if (u == banned || seen[static_cast<std::size_t>(u)]) continue;
                if (!config.is_open(Edge{s, t})) continue;
                seen[static_cast<std::size_t>(u)] = 1;
                queue.push(u);
            }
        }
        return false;
    };

    if (!reaches(-1)) return false;
    for (long long v = 0; v < nsites; ++v) {
        if (v == source_idx) continue;
        if (!reaches(static_cast<int>(v))) return false;  // v is a cut vertex
    }
    return true;
}

}  // namespace colperc
