#include "hypconst/io.hpp"

#include <cstdio>
#include <fstream>

namespace hypconst {

using nlohmann::json;

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open file '" + path + "'");
    json j;
    in >> j;
    return j;
}

FiniteMetricSpace space_from_json(const json& j) {
    if (!j.contains("labels") || !j.contains("dist"))
        throw std::invalid_argument(
            "space schema requires 'labels' and 'dist'");
    auto labels = j.at("labels").get<std::vector<std::string>>();
    auto matrix = j.at("dist").get<std::vector<std::vector<double>>>();
    return FiniteMetricSpace(std::move(labels), std::move(matrix));
}

json space_to_json(const FiniteMetricSpace& space) {
    json dist = json::array();
    for (int i = 0; i < space.size(); ++i) {
        json row = json::array();
        for (int k = 0; k < space.size(); ++k) row.push_back(space.dist(i, k));
        dist.push_back(std::move(row));
    }
    return {{"labels", space.labels()}, {"dist", std::move(dist)}};
}

PathSystem paths_from_json(const json& j, const FiniteMetricSpace& space) {
    if (!j.contains("paths"))
        throw std::invalid_argument("path schema requires 'paths'");
    PathSystem system;
    for (const auto& [key, value] : j.at("paths").items()) {
        const auto sep = key.find('|');
        if (sep == std::string::npos)
            throw std::invalid_argument("path key '" + key +
                                        "' is not of the form 'x|y'");
        const int x = space.index_of(key.substr(0, sep));
        const int y = space.index_of(key.substr(sep + 1));
        std::vector<int> path;
        for (const auto& label : value)
            path.push_back(space.index_of(label.get<std::string>()));
        system.add(x, y, std::move(path));
    }
    return system;
}

json paths_to_json(const PathSystem& system, const FiniteMetricSpace& space) {
    json paths = json::object();
    for (const auto& [key, path] : system.stored()) {
        json seq = json::array();
        for (int p : path) seq.push_back(space.labels()[p]);
        paths[space.labels()[key.first] + "|" + space.labels()[key.second]] =
            std::move(seq);
    }
    return {{"paths", std::move(paths)}};
}

BackendSpec backend_from_json(const json& j) {
    BackendSpec spec;
    const auto type = j.at("type").get<std::string>();
    if (type == "euclidean") {
        spec.kind = BackendSpec::Kind::euclidean;
        spec.dim = j.at("dim").get<int>();
        if (spec.dim < 1)
            throw std::invalid_argument("backend: dim must be >= 1");
        return spec;
    }
    if (type == "tree") {
        spec.kind = BackendSpec::Kind::tree;
        auto labels = j.at("vertices").get<std::vector<std::string>>();
        std::vector<WeightedTree::Edge> edges;
        std::vector<std::string> names = labels;
        auto index_of = [&](const std::string& name) {
            for (size_t i = 0; i < names.size(); ++i)
                if (names[i] == name) return static_cast<int>(i);
            throw std::invalid_argument("backend: unknown vertex '" + name +
                                        "'");
        };
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 3)
                throw std::invalid_argument(
                    "backend: edges must be [u, v, length] triples");
            edges.push_back({index_of(e[0].get<std::string>()),
                             index_of(e[1].get<std::string>()),
                             e[2].get<double>()});
        }
        spec.tree = WeightedTree(std::move(labels), std::move(edges));
        return spec;
    }
    throw std::invalid_argument("backend: unknown type '" + type + "'");
}

json curtains_to_json(const std::vector<Curtain<EuclideanBackend>>& curtains) {
    json out = json::array();
    for (const auto& h : curtains)
        out.push_back({{"a", h.base.a}, {"b", h.base.b}, {"r", h.r}});
    return out;
}

json curtains_to_json(const WeightedTree& tree,
                      const std::vector<Curtain<WeightedTree>>& curtains) {
    json out = json::array();
    for (const auto& h : curtains)
        out.push_back({{"a", tree.labels()[h.base.vertices.front()]},
                       {"b", tree.labels()[h.base.vertices.back()]},
                       {"r", h.r}});
    return out;
}

json certificate_to_json(const KappaCertificate& cert) {
    json witnesses = json::array();
    for (const auto& w : cert.witness_grid)
        witnesses.push_back({{"x", w.x}, {"f_minus_x", w.f_minus_x}});
    const char* method = cert.method == KappaMethod::fixed_point ? "fixed_point"
                         : cert.method == KappaMethod::kappa_n   ? "kappa_n"
                                                                 : "direct_bound";
    json j = {{"kappa", cert.kappa},
              {"method", method},
              {"residual", cert.residual},
              {"witness_grid", std::move(witnesses)}};
    if (cert.method == KappaMethod::kappa_n) j["n"] = cert.n;
    return j;
}

json bounds_to_json(const HyperbolicityBounds& bounds) {
    return {{"delta_prime", bounds.delta_prime},
            {"delta", bounds.delta},
            {"route", bounds.route},
            {"params",
             {{"q1", bounds.params.q1},
              {"q2", bounds.params.q2},
              {"D", bounds.params.D}}},
            {"certificate", certificate_to_json(bounds.certificate)}};
}

json report_to_json(const VerifierReport& report) {
    return {{"coarse_c", report.coarse_c},
            {"D_g1", report.D_g1},
            {"D_g2", report.D_g2},
            {"D_g3", report.D_g3},
            {"D_combined", report.D_combined},
            {"delta_four_exact", report.delta_four_exact},
            {"thin_triangle", report.thin_triangle},
            {"thin_quad", report.thin_quad},
            {"certified", bounds_to_json(report.certified)},
            {"four_point_within_certified",
             report.four_point_within_certified}};
}

json distance_bounds_to_json(const DistanceBounds& bounds) {
    json per_L = json::array();
    for (const auto& row : bounds.per_L)
        per_L.push_back({{"L", row.L},
                         {"lower", row.lower},
                         {"upper", row.upper},
                         {"chain_length", row.chain_length},
                         {"witness", row.witness}});
    return {{"lower", bounds.lower},
            {"upper", bounds.upper},
            {"per_L", std::move(per_L)}};
}

std::string format_sci(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2e", x);
    return buf;
}

}  // namespace hypconst
