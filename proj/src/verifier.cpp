#include "hypconst/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hypconst {

namespace {

void check_system(const PathSystem& system, const FiniteMetricSpace& space) {
    if (system.empty() && space.size() > 1)
        throw std::invalid_argument("verifier: empty path system");
    if (!system.covers_all_pairs(space))
        throw std::invalid_argument(
            "verifier: path system does not cover every pair");
    for (const auto& [key, path] : system.stored())
        for (int p : path)
            if (p < 0 || p >= space.size())
                throw std::invalid_argument(
                    "verifier: path point outside the space");
}

// Distance from each point of side to the union of the other sides.
double side_in_union_defect(const std::vector<int>& side,
                            std::span<const std::vector<int>> others,
                            const FiniteMetricSpace& space) {
    double worst = 0.0;
    for (int p : side) {
        double best = std::numeric_limits<double>::infinity();
        for (const auto& other : others)
            best = std::min(best, dist_point_to_set(p, other, space));
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace

double g1_constant(const PathSystem& system, const FiniteMetricSpace& space) {
    check_system(system, space);
    double D = 0.0;
    for (const auto& [key, path] : system.stored()) {
        const double d = space.dist(key.first, key.second);
        if (d <= 0.0) continue;  // vacuous pairs impose no constraint
        D = std::max(D, 2.0 * diameter(path, space) / d);
    }
    return D;
}

double g2_constant(const PathSystem& system, const FiniteMetricSpace& space) {
    check_system(system, space);
    double D = 0.0;
    for (const auto& [key, path] : system.stored()) {
        const int len = static_cast<int>(path.size());
        for (int s = 0; s < len; ++s)
            for (int t = s; t < len; ++t) {
                const std::span<const int> sub(path.data() + s, t - s + 1);
                const auto guessed = system.path(path[s], path[t]);
                D = std::max(D, hausdorff(sub, guessed, space));
            }
    }
    return D;
}

double g3_constant(const PathSystem& system, const FiniteMetricSpace& space) {
    check_system(system, space);
    const int n = space.size();
    double D = 0.0;
    // Ordered triples, repeats included; degenerate ones contribute 0.
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                const auto xy = system.path(x, y);
                const std::vector<int> sides[2] = {system.path(x, z),
                                                   system.path(z, y)};
                D = std::max(D, side_in_union_defect(xy, sides, space));
            }
    return D;
}

double four_point_delta_exact(const FiniteMetricSpace& space) {
    const int n = space.size();
    if (n < 4) return 0.0;
    double delta = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k)
                for (int l = k + 1; l < n; ++l) {
                    double s[3] = {space.dist(i, j) + space.dist(k, l),
                                   space.dist(i, k) + space.dist(j, l),
                                   space.dist(i, l) + space.dist(j, k)};
                    std::sort(s, s + 3);
                    delta = std::max(delta, s[2] - s[1]);
                }
    return delta;
}

double thin_triangle_constant(const PathSystem& system,
                              const FiniteMetricSpace& space) {
    // Each side in each role is covered by the ordered-triple scan.
    return g3_constant(system, space);
}

double thin_quadrilateral_constant(const PathSystem& system,
                                   const FiniteMetricSpace& space) {
    check_system(system, space);
    const int n = space.size();
    double eps = 0.0;
    // Ordered distinct 4-tuples; tuples with repeated points only produce
    // sides that already appear among the remaining ones.
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (b == a) continue;
            for (int c = 0; c < n; ++c) {
                if (c == a || c == b) continue;
                for (int d = 0; d < n; ++d) {
                    if (d == a || d == b || d == c) continue;
                    const std::vector<int> sides[4] = {
                        system.path(a, b), system.path(b, c),
                        system.path(c, d), system.path(d, a)};
                    for (int s = 0; s < 4; ++s) {
                        const std::vector<int> others[3] = {
                            sides[(s + 1) % 4], sides[(s + 2) % 4],
                            sides[(s + 3) % 4]};
                        eps = std::max(
                            eps, side_in_union_defect(sides[s], others, space));
                    }
                }
            }
        }
    return eps;
}

double rough_geodesic_defect(int n, const std::function<double(int, int)>& dist,
                             std::span<const double> parametrization) {
    if (static_cast<int>(parametrization.size()) != n)
        throw std::invalid_argument(
            "rough_geodesic_defect: parametrization length mismatch");
    for (int i = 1; i < n; ++i)
        if (!(parametrization[i] > parametrization[i - 1]))
            throw std::invalid_argument(
                "rough_geodesic_defect: parametrization must be strictly "
                "increasing");
    double q = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            q = std::max(q, std::abs(dist(i, j) - (parametrization[j] -
                                                   parametrization[i])));
    return q;
}

double rough_geodesic_defect(std::span<const int> path,
                             const FiniteMetricSpace& space,
                             std::span<const double> parametrization) {
    for (int p : path)
        if (p < 0 || p >= space.size())
            throw std::invalid_argument(
                "rough_geodesic_defect: unknown point index");
    return rough_geodesic_defect(
        static_cast<int>(path.size()),
        [&](int i, int j) { return space.dist(path[i], path[j]); },
        parametrization);
}

VerifierReport certify(const PathSystem& system, const FiniteMetricSpace& space,
                       double q) {
    if (!(q >= 1.0))
        throw std::domain_error("certify: q must be >= 1");
    check_system(system, space);

    VerifierReport r;
    for (const auto& [key, path] : system.stored())
        r.coarse_c =
            std::max(r.coarse_c, min_coarse_connectivity(path, space));
    r.D_g1 = g1_constant(system, space);
    r.D_g2 = g2_constant(system, space);
    r.D_g3 = g3_constant(system, space);
    r.D_combined = std::max({r.coarse_c, r.D_g1, r.D_g2, r.D_g3});
    r.delta_four_exact = four_point_delta_exact(space);
    r.thin_triangle = thin_triangle_constant(system, space);
    r.thin_quad = thin_quadrilateral_constant(system, space);

    if (!(r.D_combined > 0.0))
        throw std::invalid_argument(
            "certify: degenerate instance with D_combined = 0");
    r.certified = fixed_point_bounds(QuasiParams::rough(q, r.D_combined));
    r.four_point_within_certified = r.delta_four_exact <= r.certified.delta;
    return r;
}

}  // namespace hypconst
