#pragma once

// JSON schemas shared by the CLI and the tests:
//   space   {"labels": [...], "dist": [[...]]}
//   paths   {"paths": {"x|y": ["p0", ..., "pk"]}}
//   backend {"type": "euclidean", "dim": n}
//           {"type": "tree", "vertices": [...], "edges": [[u, v, len]]}

#include <json.hpp>
#include <string>

#include "hypconst/constants.hpp"
#include "hypconst/curtain.hpp"
#include "hypconst/metric_space.hpp"
#include "hypconst/tree.hpp"
#include "hypconst/verifier.hpp"

namespace hypconst {

nlohmann::json load_json_file(const std::string& path);

FiniteMetricSpace space_from_json(const nlohmann::json& j);
nlohmann::json space_to_json(const FiniteMetricSpace& space);

PathSystem paths_from_json(const nlohmann::json& j,
                           const FiniteMetricSpace& space);
nlohmann::json paths_to_json(const PathSystem& system,
                             const FiniteMetricSpace& space);

struct BackendSpec {
    enum class Kind { euclidean, tree } kind = Kind::euclidean;
    int dim = 1;
    WeightedTree tree;
};

BackendSpec backend_from_json(const nlohmann::json& j);

// Candidate curtain families as (geodesic endpoints, pole position), for
// reproducing a run from its report.
nlohmann::json curtains_to_json(
    const std::vector<Curtain<EuclideanBackend>>& curtains);
nlohmann::json curtains_to_json(const WeightedTree& tree,
                                const std::vector<Curtain<WeightedTree>>& curtains);

nlohmann::json certificate_to_json(const KappaCertificate& cert);
nlohmann::json bounds_to_json(const HyperbolicityBounds& bounds);
nlohmann::json report_to_json(const VerifierReport& report);
nlohmann::json distance_bounds_to_json(const DistanceBounds& bounds);

// Scientific notation with 3 significant figures, e.g. "5.27e+04".
std::string format_sci(double x);

}  // namespace hypconst
