#pragma once

// Euclidean R^n backend: points are coordinate vectors, geodesics are
// straight segments with arc-length parametrization.

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace hypconst {

using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

struct EuclideanBackend {
    int dim = 1;

    using Point = Vec;

    struct Segment {
        Vec a;
        Vec b;
        Vec unit;       // (b - a) / |b - a|
        double len = 0.0;

        double length() const { return len; }

        Vec at(double s) const {
            Vec p = a;
            for (size_t i = 0; i < p.size(); ++i) p[i] += s * unit[i];
            return p;
        }
    };

    void check_point(const Point& p) const {
        if (static_cast<int>(p.size()) != dim)
            throw std::invalid_argument(
                "EuclideanBackend: point dimension mismatch");
    }

    double distance(const Point& p, const Point& q) const {
        check_point(p);
        check_point(q);
        double s = 0.0;
        for (int i = 0; i < dim; ++i) s += (p[i] - q[i]) * (p[i] - q[i]);
        return std::sqrt(s);
    }

    Segment geodesic(const Point& p, const Point& q) const {
        check_point(p);
        check_point(q);
        Segment seg;
        seg.a = p;
        seg.b = q;
        seg.len = distance(p, q);
        if (seg.len == 0.0)
            throw std::invalid_argument(
                "EuclideanBackend: degenerate geodesic");
        seg.unit.resize(dim);
        for (int i = 0; i < dim; ++i) seg.unit[i] = (q[i] - p[i]) / seg.len;
        return seg;
    }

    // Closest-point projection parameter, clamped to [0, len].
    double project(const Segment& seg, const Point& p) const {
        check_point(p);
        double s = 0.0;
        for (int i = 0; i < dim; ++i) s += (p[i] - seg.a[i]) * seg.unit[i];
        return std::clamp(s, 0.0, seg.len);
    }
};

}  // namespace hypconst
