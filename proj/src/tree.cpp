#include "hypconst/tree.hpp"

#include <algorithm>
#include <queue>

namespace hypconst {

WeightedTree::WeightedTree(std::vector<std::string> labels,
                           std::vector<Edge> edges)
    : n_(static_cast<int>(labels.size())), labels_(std::move(labels)) {
    if (n_ < 1) throw std::invalid_argument("WeightedTree: no vertices");
    if (edges.size() != static_cast<size_t>(n_ - 1))
        throw std::invalid_argument(
            "WeightedTree: a tree on n vertices has n-1 edges");
    adj_.resize(n_);
    for (const auto& e : edges) {
        if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_ || e.u == e.v)
            throw std::invalid_argument("WeightedTree: bad edge endpoints");
        if (!(e.length > 0.0))
            throw std::invalid_argument(
                "WeightedTree: edge lengths must be positive");
        adj_[e.u].emplace_back(e.v, e.length);
        adj_[e.v].emplace_back(e.u, e.length);
    }

    dist_.assign(static_cast<size_t>(n_) * n_, -1.0);
    parent_.assign(static_cast<size_t>(n_) * n_, -1);
    for (int root = 0; root < n_; ++root) {
        dist_[root * n_ + root] = 0.0;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            const int v = q.front();
            q.pop();
            for (const auto& [w, len] : adj_[v]) {
                if (dist_[root * n_ + w] >= 0.0) continue;
                dist_[root * n_ + w] = dist_[root * n_ + v] + len;
                parent_[root * n_ + w] = v;
                q.push(w);
            }
        }
    }
    for (int v = 0; v < n_; ++v)
        if (dist_[v] < 0.0)
            throw std::invalid_argument("WeightedTree: graph is not connected");
    // Edge-length sums accumulate in root order; mirror the upper triangle
    // so d(a,b) == d(b,a) exactly.
    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j) dist_[j * n_ + i] = dist_[i * n_ + j];
}

int WeightedTree::index_of(const std::string& label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end())
        throw std::invalid_argument("WeightedTree: unknown vertex label '" +
                                    label + "'");
    return static_cast<int>(it - labels_.begin());
}

std::vector<int> WeightedTree::path_vertices(int a, int b) const {
    check_point(a);
    check_point(b);
    std::vector<int> path;
    // parent_ rooted at a: walk back from b.
    for (int v = b; v != -1 && v != a; v = parent_[a * n_ + v])
        path.push_back(v);
    path.push_back(a);
    std::reverse(path.begin(), path.end());
    return path;
}

WeightedTree::Segment WeightedTree::geodesic(int a, int b) const {
    if (a == b)
        throw std::invalid_argument("WeightedTree: degenerate geodesic");
    Segment seg;
    seg.vertices = path_vertices(a, b);
    seg.offsets.resize(seg.vertices.size());
    seg.offsets[0] = 0.0;
    for (size_t i = 1; i < seg.vertices.size(); ++i)
        seg.offsets[i] = distance(seg.vertices[0], seg.vertices[i]);
    return seg;
}

double WeightedTree::project(const Segment& seg, int p) const {
    check_point(p);
    const int a = seg.vertices.front();
    const int b = seg.vertices.back();
    return 0.5 * (distance(a, b) + distance(a, p) - distance(b, p));
}

}  // namespace hypconst
