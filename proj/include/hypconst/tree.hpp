#pragma once

// Metric-tree backend: points are vertex indices of a weighted tree; the
// gate (closest-point projection) onto a vertex path is computed from
// pairwise distances, so all projections are exact sums of edge lengths.

#include <stdexcept>
#include <string>
#include <vector>

namespace hypconst {

class WeightedTree {
  public:
    struct Edge {
        int u = 0, v = 0;
        double length = 1.0;
    };

    WeightedTree() = default;

    // Validates connectivity, acyclicity and positive edge lengths.
    WeightedTree(std::vector<std::string> labels, std::vector<Edge> edges);

    int size() const { return n_; }
    const std::vector<std::string>& labels() const { return labels_; }
    int index_of(const std::string& label) const;

    double distance(int a, int b) const { return dist_[a * n_ + b]; }
    std::vector<int> path_vertices(int a, int b) const;

    using Point = int;

    struct Segment {
        std::vector<int> vertices;     // vertex path from a to b
        std::vector<double> offsets;   // arc length of each vertex from a
        double length() const { return offsets.back(); }
    };

    Segment geodesic(int a, int b) const;

    // Gate parameter of p on the path [a, b]: the median point of (a, b, p)
    // is a vertex of the tree, at arc position (d(a,b)+d(a,p)-d(b,p))/2.
    double project(const Segment& seg, int p) const;

    void check_point(int p) const {
        if (p < 0 || p >= n_)
            throw std::invalid_argument("WeightedTree: unknown vertex index " +
                                        std::to_string(p));
    }

  private:
    int n_ = 0;
    std::vector<std::string> labels_;
    std::vector<std::vector<std::pair<int, double>>> adj_;
    std::vector<double> dist_;    // n x n
    std::vector<int> parent_;     // n x n: parent_[root*n+v] on path to root
};

}  // namespace hypconst
