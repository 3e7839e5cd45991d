#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hypconst/io.hpp"

using namespace hypconst;
using doctest::Approx;
using nlohmann::json;

namespace {

json square_space_json() {
    const double s = std::sqrt(2.0);
    return {{"labels", {"A", "B", "C", "D"}},
            {"dist",
             {{0.0, 1.0, s, 1.0},
              {1.0, 0.0, 1.0, s},
              {s, 1.0, 0.0, 1.0},
              {1.0, s, 1.0, 0.0}}}};
}

}  // namespace

TEST_CASE("space round-trips through its schema") {
    const auto space = space_from_json(square_space_json());
    CHECK(space.size() == 4);
    CHECK(space.index_of("C") == 2);
    CHECK(space.dist(0, 2) == Approx(std::sqrt(2.0)));

    const auto again = space_from_json(space_to_json(space));
    CHECK(again.size() == space.size());
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(again.dist(i, j) == space.dist(i, j));
}

TEST_CASE("space schema violations") {
    CHECK_THROWS_AS(space_from_json(json{{"labels", {"A"}}}),
                    std::invalid_argument);
    json bad = square_space_json();
    bad["dist"][0][2] = 10.0;
    bad["dist"][2][0] = 10.0;
    CHECK_THROWS_AS(space_from_json(bad), MetricAxiomError);
}

TEST_CASE("paths round-trip with reversal on demand") {
    const auto space = space_from_json(square_space_json());
    const json j = {
        {"paths",
         {{"A|B", {"A", "B"}},
          {"A|C", {"A", "B", "C"}},
          {"A|D", {"A", "D"}},
          {"B|C", {"B", "C"}},
          {"B|D", {"B", "C", "D"}},
          {"C|D", {"C", "D"}}}}};
    const auto system = paths_from_json(j, space);
    CHECK(system.covers_all_pairs(space));
    CHECK(system.path(0, 2) == std::vector<int>{0, 1, 2});
    CHECK(system.path(2, 0) == std::vector<int>{2, 1, 0});
    CHECK(system.path(3, 3) == std::vector<int>{3});

    const auto again = paths_from_json(paths_to_json(system, space), space);
    CHECK(again.path(1, 3) == system.path(1, 3));

    SUBCASE("bad key") {
        const json broken = {{"paths", {{"AB", {"A", "B"}}}}};
        CHECK_THROWS_AS(paths_from_json(broken, space),
                        std::invalid_argument);
    }
    SUBCASE("endpoint mismatch") {
        const json broken = {{"paths", {{"A|B", {"A", "C"}}}}};
        CHECK_THROWS_AS(paths_from_json(broken, space),
                        std::invalid_argument);
    }
}

TEST_CASE("backend schema") {
    SUBCASE("euclidean") {
        const auto spec =
            backend_from_json(json{{"type", "euclidean"}, {"dim", 3}});
        CHECK(spec.kind == BackendSpec::Kind::euclidean);
        CHECK(spec.dim == 3);
    }
    SUBCASE("tree") {
        const json j = {{"type", "tree"},
                        {"vertices", {"a", "b", "c"}},
                        {"edges", {{"a", "b", 1.5}, {"b", "c", 2.0}}}};
        const auto spec = backend_from_json(j);
        CHECK(spec.kind == BackendSpec::Kind::tree);
        CHECK(spec.tree.size() == 3);
        CHECK(spec.tree.distance(0, 2) == Approx(3.5));
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(backend_from_json(json{{"type", "torus"}}),
                        std::invalid_argument);
        const json cyclic = {{"type", "tree"},
                             {"vertices", {"a", "b"}},
                             {"edges",
                              {{"a", "b", 1.0}, {"b", "a", 1.0}}}};
        CHECK_THROWS_AS(backend_from_json(cyclic), std::invalid_argument);
    }
}

TEST_CASE("report serialization carries every field") {
    const auto space = space_from_json(square_space_json());
    PathSystem system;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) system.add(i, j, {i, j});
    const auto report = certify(system, space, 1.0);
    const json j = report_to_json(report);
    CHECK(j.at("D_g1").get<double>() == Approx(2.0));
    CHECK(j.at("four_point_within_certified").get<bool>());
    CHECK(j.at("certified").at("certificate").at("method") == "fixed_point");
    // re-parses as JSON text
    const auto text = j.dump();
    CHECK(json::parse(text) == j);
}

TEST_CASE("distance bounds serialization") {
    const EuclideanBackend line{1};
    const Vec x{0.0}, y{2.5};
    const auto bounds = curtain_distance_bounds(
        line, x, y, CurtainModelConfig::standard(),
        grid_candidates(line, x, y, 0.1));
    const json j = distance_bounds_to_json(bounds);
    CHECK(j.at("per_L").size() == 20);
    CHECK(j.at("lower").get<double>() <= j.at("upper").get<double>());
}

TEST_CASE("format_sci") {
    CHECK(format_sci(52663.299) == "5.27e+04");
    CHECK(format_sci(0.8284271) == "8.28e-01");
    CHECK(format_sci(11811796.98) == "1.18e+07");
}
