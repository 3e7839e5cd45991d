#pragma once

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypconst {

// A metric-axiom failure found while validating a distance matrix.
struct MetricAxiomError : std::runtime_error {
    int i = -1, j = -1, k = -1;
    MetricAxiomError(const std::string& what, int i_, int j_, int k_ = -1)
        : std::runtime_error(what), i(i_), j(j_), k(k_) {}
};

// Labeled points with a validated symmetric distance matrix.
class FiniteMetricSpace {
  public:
    FiniteMetricSpace() = default;

    // Validates zero diagonal, symmetry, nonnegativity and the triangle
    // inequality (with a small relative slack for rounded inputs); throws
    // MetricAxiomError with the offending triple otherwise.
    FiniteMetricSpace(std::vector<std::string> labels,
                      std::vector<std::vector<double>> matrix);

    int size() const { return n_; }
    double dist(int i, int j) const { return d_[i * n_ + j]; }
    const std::vector<std::string>& labels() const { return labels_; }
    int index_of(const std::string& label) const;

  private:
    int n_ = 0;
    std::vector<std::string> labels_;
    std::vector<double> d_;
};

// One guessed path per unordered pair, stored once with the smaller index
// first and reversed on demand.
class PathSystem {
  public:
    PathSystem() = default;

    // Each path must start and end at its key's points.
    void add(int x, int y, std::vector<int> path);

    // Path from x to y; a singleton for x == y. Throws if the pair is
    // missing.
    std::vector<int> path(int x, int y) const;

    bool covers_all_pairs(const FiniteMetricSpace& space) const;
    bool empty() const { return paths_.empty(); }

    const std::map<std::pair<int, int>, std::vector<int>>& stored() const {
        return paths_;
    }

  private:
    std::map<std::pair<int, int>, std::vector<int>> paths_;
};

// max over consecutive pairs of dist; 0 for singletons.
double min_coarse_connectivity(std::span<const int> path,
                               const FiniteMetricSpace& space);

double diameter(std::span<const int> points, const FiniteMetricSpace& space);

double dist_point_to_set(int p, std::span<const int> set,
                         const FiniteMetricSpace& space);

double hausdorff(std::span<const int> a, std::span<const int> b,
                 const FiniteMetricSpace& space);

}  // namespace hypconst
