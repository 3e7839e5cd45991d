#include "hypconst/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hypconst {

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels,
                                     std::vector<std::vector<double>> matrix)
    : n_(static_cast<int>(labels.size())), labels_(std::move(labels)) {
    if (matrix.size() != labels_.size())
        throw std::invalid_argument("FiniteMetricSpace: matrix size mismatch");
    d_.assign(static_cast<size_t>(n_) * n_, 0.0);
    double scale = 0.0;
    for (int i = 0; i < n_; ++i) {
        if (matrix[i].size() != static_cast<size_t>(n_))
            throw std::invalid_argument(
                "FiniteMetricSpace: matrix row size mismatch");
        for (int j = 0; j < n_; ++j) {
            const double v = matrix[i][j];
            if (!std::isfinite(v) || v < 0.0)
                throw MetricAxiomError(
                    "FiniteMetricSpace: entries must be finite and >= 0", i, j);
            d_[i * n_ + j] = v;
            scale = std::max(scale, v);
        }
    }
    const double slack = 1e-9 * std::max(scale, 1.0);
    for (int i = 0; i < n_; ++i) {
        if (dist(i, i) != 0.0)
            throw MetricAxiomError("FiniteMetricSpace: nonzero diagonal", i, i);
        for (int j = i + 1; j < n_; ++j) {
            if (dist(i, j) != dist(j, i))
                throw MetricAxiomError("FiniteMetricSpace: asymmetric matrix",
                                       i, j);
        }
    }
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            for (int k = 0; k < n_; ++k)
                if (dist(i, k) > dist(i, j) + dist(j, k) + slack)
                    throw MetricAxiomError(
                        "FiniteMetricSpace: triangle inequality fails for (" +
                            labels_[i] + ", " + labels_[j] + ", " + labels_[k] +
                            ")",
                        i, j, k);
}

int FiniteMetricSpace::index_of(const std::string& label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end())
        throw std::invalid_argument("FiniteMetricSpace: unknown label '" +
                                    label + "'");
    return static_cast<int>(it - labels_.begin());
}

void PathSystem::add(int x, int y, std::vector<int> path) {
    if (path.empty())
        throw std::invalid_argument("PathSystem: empty path");
    if (path.front() != x || path.back() != y)
        throw std::invalid_argument(
            "PathSystem: path endpoints do not match its key");
    if (x == y) {
        if (path.size() != 1)
            throw std::invalid_argument(
                "PathSystem: a loop path must be a singleton");
        return;  // the trivial singleton path is implicit
    }
    if (x > y) {
        std::reverse(path.begin(), path.end());
        std::swap(x, y);
    }
    paths_[{x, y}] = std::move(path);
}

std::vector<int> PathSystem::path(int x, int y) const {
    if (x == y) return {x};
    const bool flip = x > y;
    if (flip) std::swap(x, y);
    const auto it = paths_.find({x, y});
    if (it == paths_.end())
        throw std::invalid_argument("PathSystem: no path for pair (" +
                                    std::to_string(x) + ", " +
                                    std::to_string(y) + ")");
    auto p = it->second;
    if (flip) std::reverse(p.begin(), p.end());
    return p;
}

bool PathSystem::covers_all_pairs(const FiniteMetricSpace& space) const {
    for (int i = 0; i < space.size(); ++i)
        for (int j = i + 1; j < space.size(); ++j)
            if (!paths_.count({i, j})) return false;
    return true;
}

double min_coarse_connectivity(std::span<const int> path,
                               const FiniteMetricSpace& space) {
    if (path.empty())
        throw std::invalid_argument("min_coarse_connectivity: empty path");
    for (int p : path)
        if (p < 0 || p >= space.size())
            throw std::invalid_argument(
                "min_coarse_connectivity: unknown point index " +
                std::to_string(p));
    double c = 0.0;
    for (size_t i = 1; i < path.size(); ++i)
        c = std::max(c, space.dist(path[i - 1], path[i]));
    return c;
}

double diameter(std::span<const int> points, const FiniteMetricSpace& space) {
    double d = 0.0;
    for (size_t i = 0; i < points.size(); ++i)
        for (size_t j = i + 1; j < points.size(); ++j)
            d = std::max(d, space.dist(points[i], points[j]));
    return d;
}

double dist_point_to_set(int p, std::span<const int> set,
                         const FiniteMetricSpace& space) {
    double d = std::numeric_limits<double>::infinity();
    for (int s : set) d = std::min(d, space.dist(p, s));
    return d;
}

double hausdorff(std::span<const int> a, std::span<const int> b,
                 const FiniteMetricSpace& space) {
    double h = 0.0;
    for (int p : a) h = std::max(h, dist_point_to_set(p, b, space));
    for (int p : b) h = std::max(h, dist_point_to_set(p, a, space));
    return h;
}

}  // namespace hypconst
