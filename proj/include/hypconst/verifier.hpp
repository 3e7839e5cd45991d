#pragma once

// Guessing-geodesics hypothesis verification on finite metric instances:
// minimal constants for (G1)-(G3) and coarse connectivity, exact four-point
// delta, thin-triangle and thin-quadrilateral constants, and the composed
// certificate against the constants engine.

#include <functional>
#include <span>
#include <vector>

#include "hypconst/constants.hpp"
#include "hypconst/metric_space.hpp"

namespace hypconst {

// Minimal D with diam(eta_xy) <= D d(x,y) / 2 for all pairs at positive
// distance.
double g1_constant(const PathSystem& system, const FiniteMetricSpace& space);

// Minimal D bounding, over all pairs and index pairs s <= t, the Hausdorff
// distance between the contiguous subsequence eta_xy[s..t] and the system
// path between its endpoints.
double g2_constant(const PathSystem& system, const FiniteMetricSpace& space);

// Minimal D with eta_xy inside the D-neighbourhood of eta_xz u eta_zy over
// all ordered triples.
double g3_constant(const PathSystem& system, const FiniteMetricSpace& space);

// Minimal delta making d(x,z)+d(y,w) <= max of the other two pairing sums
// plus delta over all quadruples; 0 for spaces with fewer than 4 points.
double four_point_delta_exact(const FiniteMetricSpace& space);

// Minimal delta' such that every side of every path-system triangle lies in
// the delta'-neighbourhood of the union of the other two sides. Coincides
// with g3_constant's scan extended over all side roles.
double thin_triangle_constant(const PathSystem& system,
                              const FiniteMetricSpace& space);

// Minimal eps such that every side of every path-system quadrilateral lies
// in the eps-neighbourhood of the union of the other three.
double thin_quadrilateral_constant(const PathSystem& system,
                                   const FiniteMetricSpace& space);

// max over index pairs of | dist(path[i], path[j]) - |t_i - t_j| |: the
// minimal q for which (path, t) is a (1,q)-quasi-geodesic.
double rough_geodesic_defect(std::span<const int> path,
                             const FiniteMetricSpace& space,
                             std::span<const double> parametrization);

// Same defect over an arbitrary pairwise distance callable (used where the
// distances come from bounds rather than a validated matrix).
double rough_geodesic_defect(
    int n, const std::function<double(int, int)>& dist,
    std::span<const double> parametrization);

struct VerifierReport {
    double coarse_c = 0.0;
    double D_g1 = 0.0;
    double D_g2 = 0.0;
    double D_g3 = 0.0;
    double D_combined = 0.0;
    double delta_four_exact = 0.0;
    double thin_triangle = 0.0;
    double thin_quad = 0.0;
    HyperbolicityBounds certified;
    bool four_point_within_certified = false;
};

// Extracts all hypothesis constants, then certifies delta'/delta through
// the constants engine with params (1, q, D_combined). Requires q >= 1 and
// a system covering every pair.
VerifierReport certify(const PathSystem& system, const FiniteMetricSpace& space,
                       double q);

}  // namespace hypconst
