#pragma once

#include <span>
#include <vector>

#include "colperc/sampling.hpp"

namespace colperc {

// Union-by-size with path compression.
struct UnionFind {
    explicit UnionFind(std::size_t n) : parent(n), size(n, 1) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
    }

    int find(int v) {
        int root = v;
        while (parent[root] != root) root = parent[root];
        while (parent[v] != root) {
            int next = parent[v];
            parent[v] = root;
            v = next;
        }
        return root;
    }

    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
    }

    std::vector<int> parent;
    std::vector<int> size;
};

// Cluster labels of a sub-rectangle of a configuration: two sites share a
// label iff an open path inside `sub` joins them.
class ClusterLabeling {
public:
    explicit ClusterLabeling(const BondConfig& config);
    ClusterLabeling(const BondConfig& config, const Rect& sub);

    const Rect& region() const { return region_; }
    int label(Site s) const {
        return labels_[static_cast<std::size_t>(region_.site_index(s))];
    }

private:
    Rect region_;
    std::vector<int> labels_;
};

bool connected(const ClusterLabeling& labeling, Site a, Site b);
bool reaches_set(const ClusterLabeling& labeling, Site a, std::span<const Site> targets);

// Two open paths from `source` to `targets` sharing no site except `source`
// (Menger). Unit capacity on every vertex but the source.
bool two_vertex_disjoint_paths(const BondConfig& config, Site source,
                               std::span<const Site> targets);
// Same, with paths confined to `within`.
bool two_vertex_disjoint_paths(const BondConfig& config, Site source,
                               std::span<const Site> targets, const Rect& within);

// Independent route for the same predicate: source reaches targets, and no
// single interior vertex removal disconnects them.
bool two_vertex_disjoint_paths_oracle(const BondConfig& config, Site source,
                                      std::span<const Site> targets);

}  // namespace colperc
