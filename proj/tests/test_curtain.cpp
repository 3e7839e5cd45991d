#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <random>

#include "hypconst/curtain.hpp"
#include "hypconst/verifier.hpp"

using namespace hypconst;
using doctest::Approx;

namespace {

using EuclidCurtain = Curtain<EuclideanBackend>;
using TreeCurtain = Curtain<WeightedTree>;

const EuclideanBackend LINE{1};
const EuclideanBackend PLANE{2};

// Long reference segment on the real line; absolute coordinate c maps to
// parameter c + 10.
EuclideanBackend::Segment line_segment() {
    return LINE.geodesic(Vec{-10.0}, Vec{10.0});
}

EuclidCurtain line_slab(double center) {
    return curtain_dual<EuclideanBackend>(line_segment(), center + 10.0);
}

// Grid of unit slabs with centers spacing apart, covering [-5, 5].
std::vector<EuclidCurtain> line_grid(double spacing) {
    std::vector<EuclidCurtain> out;
    for (double c = -5.0; c <= 5.0 + 1e-12; c += spacing)
        out.push_back(line_slab(c));
    return out;
}

// x-axis segment (-5,0)..(5,0) in the plane.
EuclideanBackend::Segment x_axis() {
    return PLANE.geodesic(Vec{-5.0, 0.0}, Vec{5.0, 0.0});
}

std::vector<std::string> number_labels(int n) {
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
    return labels;
}

double u01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Independent real-line oracle: earliest-end greedy packing of unit slabs
// strictly between x and y. On the line every disjoint pair of unit slabs
// is 1-separated (any slab meeting both must cover the gap, and two
// gap-covering slabs intersect), so for L >= 1 the packing is exactly the
// longest L-chain.
int greedy_line_packing(double x, double y, double step) {
    if (y < x) std::swap(x, y);
    const double len = y - x;
    std::vector<double> rs;
    for (int k = 1;; ++k) {
        const double r = k * step;
        if (!(r + 0.5 < len)) break;
        if (r - 0.5 > 0.0) rs.push_back(r);
    }
    int count = 0;
    double last = -1e100;
    for (double r : rs)
        if (r - last > 1.0) {
            ++count;
            last = r;
        }
    return count;
}

}  // namespace

TEST_CASE("closest point projection") {
    SUBCASE("orthogonal projection onto an axis") {
        const auto seg = x_axis();
        CHECK(PLANE.project(seg, Vec{3.0, 4.0}) == Approx(8.0));
    }
    SUBCASE("clamps to the endpoint") {
        const auto seg = x_axis();
        CHECK(PLANE.project(seg, Vec{9.0, 1.0}) == Approx(10.0));
        CHECK(PLANE.project(seg, Vec{-8.0, 2.0}) == Approx(0.0));
    }
    SUBCASE("tree gate of a hanging leaf") {
        // a - b - c path with unit edges, leaf p off b
        const WeightedTree tree(
            {"a", "b", "c", "p"},
            {{0, 1, 1.0}, {1, 2, 1.0}, {1, 3, 1.0}});
        const auto seg = tree.geodesic(0, 2);
        CHECK(tree.project(seg, 3) == Approx(1.0));
        CHECK(tree.project(seg, 0) == Approx(0.0));
        CHECK(tree.project(seg, 2) == Approx(2.0));
    }
    SUBCASE("1-Lipschitz on sampled pairs") {
        const auto seg = PLANE.geodesic(Vec{0.0, 0.0}, Vec{7.0, 3.0});
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 200; ++trial) {
            const Vec p{20 * u01(rng) - 10, 20 * u01(rng) - 10};
            const Vec q{20 * u01(rng) - 10, 20 * u01(rng) - 10};
            CHECK(std::abs(PLANE.project(seg, p) - PLANE.project(seg, q)) <=
                  PLANE.distance(p, q) + 1e-12);
        }
    }
    CHECK_THROWS_AS(PLANE.project(x_axis(), Vec{1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(PLANE.geodesic(Vec{1.0, 1.0}, Vec{1.0, 1.0}),
                    std::invalid_argument);
}

TEST_CASE("curtain_dual") {
    SUBCASE("slab of width one at the midpoint") {
        const auto h = curtain_dual<EuclideanBackend>(x_axis(), 5.0);
        CHECK(side_of(PLANE, h, Vec{0.0, 77.0}) == Side::on);
        CHECK(side_of(PLANE, h, Vec{0.49, -3.0}) == Side::on);
        CHECK(side_of(PLANE, h, Vec{0.51, 0.0}) == Side::plus);
    }
    SUBCASE("pole must sit inside the interior") {
        CHECK_THROWS_AS(curtain_dual<EuclideanBackend>(x_axis(), 0.4),
                        std::invalid_argument);
        CHECK_THROWS_AS(curtain_dual<EuclideanBackend>(x_axis(), 9.7),
                        std::invalid_argument);
        CHECK_THROWS_AS(curtain_dual<EuclideanBackend>(x_axis(), 0.5),
                        std::invalid_argument);
    }
    SUBCASE("real line: closed interval of length one") {
        const auto h = line_slab(0.0);
        CHECK(side_of(LINE, h, Vec{-0.5}) == Side::on);
        CHECK(side_of(LINE, h, Vec{0.5}) == Side::on);
        CHECK(side_of(LINE, h, Vec{-0.51}) == Side::minus);
        CHECK(side_of(LINE, h, Vec{0.51}) == Side::plus);
    }
}

TEST_CASE("side_of partitions the space") {
    const auto h = curtain_dual<EuclideanBackend>(x_axis(), 5.0);  // at x=0
    CHECK(side_of(PLANE, h, Vec{3.0, 4.0}) == Side::plus);
    CHECK(side_of(PLANE, h, Vec{0.0, 100.0}) == Side::on);
    CHECK(side_of(PLANE, h, Vec{-2.0, 1.0}) == Side::minus);
    CHECK(side_of(PLANE, h, Vec{-0.5, 9.0}) == Side::on);
    CHECK(side_of(PLANE, h, Vec{0.5, -9.0}) == Side::on);
}

TEST_CASE("separates_points") {
    const auto h = curtain_dual<EuclideanBackend>(x_axis(), 5.0);
    CHECK(separates_points(PLANE, h, Vec{-2.0, 0.0}, Vec{2.0, 7.0}));
    CHECK(separates_points(PLANE, h, Vec{2.0, 7.0}, Vec{-2.0, 0.0}));
    CHECK_FALSE(separates_points(PLANE, h, Vec{0.0, 0.0}, Vec{2.0, 0.0}));
    CHECK_FALSE(separates_points(PLANE, h, Vec{2.0, 0.0}, Vec{3.0, 0.0}));
}

TEST_CASE("is_chain") {
    SUBCASE("ordered disjoint slabs") {
        const std::vector<EuclidCurtain> chain{line_slab(-2), line_slab(0),
                                               line_slab(2)};
        CHECK(is_chain(LINE, chain));
    }
    SUBCASE("overlapping slabs cannot separate") {
        const std::vector<EuclidCurtain> bad{line_slab(0), line_slab(0.5)};
        CHECK_FALSE(is_chain(LINE, bad));
    }
    SUBCASE("single curtain") {
        const std::vector<EuclidCurtain> one{line_slab(1)};
        CHECK(is_chain(LINE, one));
    }
    SUBCASE("unordered middle fails the separation test") {
        const std::vector<EuclidCurtain> zigzag{line_slab(-2), line_slab(2),
                                                line_slab(0)};
        CHECK_FALSE(is_chain(LINE, zigzag));
    }
    SUBCASE("appending a separated curtain preserves the chain") {
        std::vector<EuclidCurtain> chain{line_slab(-3), line_slab(-1.5)};
        for (double c : {0.0, 1.2, 2.4, 4.0}) {
            chain.push_back(line_slab(c));
            CHECK(is_chain(LINE, chain));
        }
    }
    SUBCASE("transverse slabs in the plane intersect") {
        const auto hx = curtain_dual<EuclideanBackend>(x_axis(), 5.0);
        const auto y_axis = PLANE.geodesic(Vec{0.0, -5.0}, Vec{0.0, 5.0});
        const auto hy = curtain_dual<EuclideanBackend>(y_axis, 5.0);
        const std::vector<EuclidCurtain> mixed{hx, hy};
        CHECK_FALSE(is_chain(PLANE, mixed));
    }
    SUBCASE("anti-parallel base segments land on one axis") {
        const auto forward = LINE.geodesic(Vec{-10.0}, Vec{10.0});
        const auto backward = LINE.geodesic(Vec{10.0}, Vec{-10.0});
        // absolute slabs [0, 1] and [2, 3]
        const auto hf = curtain_dual<EuclideanBackend>(forward, 10.5);
        const auto hb = curtain_dual<EuclideanBackend>(backward, 7.5);
        CHECK(is_chain(LINE, std::vector<EuclidCurtain>{hf, hb}));
        CHECK(separates_points(LINE, hb, Vec{1.5}, Vec{4.0}));
        // overlapping variant: [0, 1] against [0.5, 1.5]
        const auto hb2 = curtain_dual<EuclideanBackend>(backward, 9.0);
        CHECK_FALSE(is_chain(LINE, std::vector<EuclidCurtain>{hf, hb2}));
    }
    SUBCASE("empty list is an error") {
        const std::vector<EuclidCurtain> none;
        CHECK_THROWS_AS(is_chain(LINE, none), std::invalid_argument);
    }
}

TEST_CASE("max_chain_meeting_both") {
    const auto h1 = line_slab(0.5);  // [0, 1]
    SUBCASE("only gap-covering slabs meet both; two cannot be disjoint") {
        const auto h2 = line_slab(2.5);  // [2, 3]
        CHECK(max_chain_meeting_both(LINE, h1, h2, line_grid(0.1)) == 1);
    }
    SUBCASE("gap 3 exceeds slab width") {
        const auto h2 = line_slab(4.5);  // [4, 5]
        const std::vector<EuclidCurtain> none;
        CHECK(max_chain_meeting_both(LINE, h1, h2, line_grid(0.1)) == 0);
        CHECK(max_chain_meeting_both(LINE, h1, h2, none) == 0);
    }
    SUBCASE("non-disjoint inputs are an error") {
        const auto h2 = line_slab(1.0);
        CHECK_THROWS_AS(max_chain_meeting_both(LINE, h1, h2, line_grid(0.5)),
                        std::invalid_argument);
    }
}

TEST_CASE("is_L_separated") {
    SUBCASE("disjoint unit slabs on the line are 1-separated") {
        const auto grid = line_grid(0.1);
        CHECK(is_L_separated(LINE, line_slab(0.0), line_slab(1.5), 1, grid));
        CHECK(is_L_separated(LINE, line_slab(-2.0), line_slab(2.0), 1, grid));
    }
    SUBCASE("a transverse 2-chain defeats 1-separation in the plane") {
        const auto h1 = curtain_dual<EuclideanBackend>(x_axis(), 3.0);
        const auto h2 = curtain_dual<EuclideanBackend>(x_axis(), 7.0);
        const auto vertical =
            PLANE.geodesic(Vec{0.0, -20.0}, Vec{0.0, 20.0});
        const std::vector<EuclidCurtain> witnesses{
            curtain_dual<EuclideanBackend>(vertical, 10.0),
            curtain_dual<EuclideanBackend>(vertical, 30.0)};
        CHECK(max_chain_meeting_both(PLANE, h1, h2, witnesses) == 2);
        CHECK_FALSE(is_L_separated(PLANE, h1, h2, 1, witnesses));
        CHECK(is_L_separated(PLANE, h1, h2, 2, witnesses));
    }
    SUBCASE("L beyond the family size is always true") {
        const auto grid = line_grid(0.5);
        CHECK(is_L_separated(LINE, line_slab(0.0), line_slab(1.2),
                             static_cast<int>(grid.size()) + 1, grid));
    }
    CHECK_THROWS_AS(
        is_L_separated(LINE, line_slab(0.0), line_slab(2.0), 0, line_grid(1)),
        std::invalid_argument);
}

TEST_CASE("longest_L_chain_separating and d_L_bounds on the line") {
    const Vec x{0.0}, y{2.5};
    const auto candidates = grid_candidates(LINE, x, y, 0.1);
    SUBCASE("the canonical 0..2.5 example") {
        const auto chain = longest_L_chain_separating(LINE, x, y, 1,
                                                      candidates);
        CHECK(chain.size() == 2);
        // members are genuinely a chain separating x from y
        std::vector<EuclidCurtain> picked;
        for (int i : chain) picked.push_back(candidates[i]);
        CHECK(is_chain(LINE, picked));
        for (const auto& h : picked)
            CHECK(separates_points(LINE, h, x, y));

        const auto b = d_L_bounds(LINE, x, y, 1, candidates);
        CHECK(b.lower == 3.0);
        CHECK(b.upper == Approx(3.5));
        CHECK(b.witness);
    }
    SUBCASE("coincident points") {
        const auto b = d_L_bounds(LINE, x, x, 1, candidates);
        CHECK(b.lower == 0.0);
        CHECK(b.upper == 0.0);
    }
    SUBCASE("nearby points admit no separating slab") {
        const Vec z{0.8};
        const auto close_candidates = grid_candidates(LINE, x, z, 0.05);
        CHECK(close_candidates.empty());
        const auto b = d_L_bounds(LINE, x, z, 1, close_candidates);
        CHECK(b.lower == 0.0);
        CHECK_FALSE(b.witness);
        CHECK(b.upper == 1.0);  // min(1 + 0.8, 0 + 1)
    }
}

TEST_CASE("tree chains and d_L") {
    SUBCASE("single midpoint curtain pins d_L = 2") {
        // path a - x - y - b; the x-y edge has length 2
        const WeightedTree tree(
            {"a", "x", "y", "b"},
            {{0, 1, 1.0}, {1, 2, 2.0}, {2, 3, 1.0}});
        const auto mids = edge_midpoint_candidates(tree, 1, 2);
        REQUIRE(mids.size() == 1);
        CHECK(separates_points(tree, mids[0], 1, 2));
        const auto b = d_L_bounds(tree, 1, 2, 1, mids);
        CHECK(b.lower == 2.0);
        CHECK(b.upper == 2.0);  // min(1 + 2, 1 + 1)
    }
    SUBCASE("branch-to-branch chain uses every admissible midpoint") {
        // star with three arms of two length-2 edges each
        std::vector<WeightedTree::Edge> edges;
        // center 0; arm i has vertices 2i+1 (inner), 2i+2 (outer)
        for (int arm = 0; arm < 3; ++arm) {
            edges.push_back({0, 2 * arm + 1, 2.0});
            edges.push_back({2 * arm + 1, 2 * arm + 2, 2.0});
        }
        const WeightedTree tree(number_labels(7), edges);
        const int x = 2, y = 4;  // outer vertices of arms 0 and 1
        const auto mids = edge_midpoint_candidates(tree, x, y);
        CHECK(mids.size() == 4);  // all four edges of the x..y path
        int separating = 0;
        for (const auto& h : mids)
            if (separates_points(tree, h, x, y)) ++separating;
        const auto chain = longest_L_chain_separating(tree, x, y, 1, mids);
        CHECK(static_cast<int>(chain.size()) == separating);
        CHECK(chain.size() == 4);
        const auto b = d_L_bounds(tree, x, y, 1, mids);
        CHECK(b.lower == 5.0);
        CHECK(b.upper == Approx(5.0));  // min(1 + 8, 4 + 1)
    }
    SUBCASE("curtains off the host line are rejected") {
        const WeightedTree star(number_labels(4),
                                {{0, 1, 3.0}, {0, 2, 3.0}, {0, 3, 3.0}});
        const auto seg12 = star.geodesic(1, 2);
        const auto seg13 = star.geodesic(1, 3);
        const std::vector<TreeCurtain> mixed{
            curtain_dual<WeightedTree>(seg12, 2.0),
            curtain_dual<WeightedTree>(seg13, 4.0)};
        CHECK_THROWS_AS(is_chain(star, mixed), std::invalid_argument);
    }
    SUBCASE("nested base geodesics stay comparable") {
        // path graph 0-1-2-3-4, curtains dual to [1,3] and to [0,4]
        const WeightedTree path(
            number_labels(5),
            {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 4, 1.0}});
        const auto inner = path.geodesic(1, 3);
        const auto outer = path.geodesic(0, 4);
        const std::vector<TreeCurtain> chain{
            curtain_dual<WeightedTree>(inner, 0.7),   // host interval [1.2, 2.2]
            curtain_dual<WeightedTree>(outer, 2.9)};  // [2.4, 3.4]
        CHECK(is_chain(path, chain));
        const std::vector<TreeCurtain> overlap{
            curtain_dual<WeightedTree>(inner, 0.7),
            curtain_dual<WeightedTree>(outer, 2.0)};  // [1.5, 2.5]
        CHECK_FALSE(is_chain(path, overlap));
    }
    SUBCASE("reversed base paths embed with flipped parameters") {
        const WeightedTree path(number_labels(7),
                                {{0, 1, 1.0},
                                 {1, 2, 1.0},
                                 {2, 3, 1.0},
                                 {3, 4, 1.0},
                                 {4, 5, 1.0},
                                 {5, 6, 1.0}});
        const auto up = path.geodesic(1, 5);
        const auto down = path.geodesic(5, 1);
        // in the 1..5 frame: poles [0.2, 1.2] and [2.8, 3.8]
        const auto h_up = curtain_dual<WeightedTree>(up, 0.7);
        const auto h_down = curtain_dual<WeightedTree>(down, 0.7);
        CHECK(is_chain(path, std::vector<TreeCurtain>{h_up, h_down}));
        // flipped pole [0.6, 1.6] overlaps [0.2, 1.2]
        const auto h_down2 = curtain_dual<WeightedTree>(down, 2.9);
        CHECK_FALSE(is_chain(path, std::vector<TreeCurtain>{h_up, h_down2}));
    }
}

TEST_CASE("real-line oracle: chain search equals greedy packing") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 12; ++trial) {
        const double x = 10.0 * u01(rng);
        const double y = x + 0.2 + 8.0 * u01(rng);
        const int L = 1 + static_cast<int>(rng() % 4);
        const Vec vx{x}, vy{y};
        const auto candidates = grid_candidates(LINE, vx, vy, 0.05);
        const auto chain =
            longest_L_chain_separating(LINE, vx, vy, L, candidates);
        CHECK(static_cast<int>(chain.size()) ==
              greedy_line_packing(x, y, 0.05));
        const auto b = d_L_bounds(LINE, vx, vy, L, candidates);
        CHECK(b.lower <= 1.0 + (y - x) + 1e-12);
    }
}

TEST_CASE("default_lambda and the standard config") {
    CHECK(default_lambda(1) == Approx(1.0 / 12.0));
    CHECK_THROWS_AS(default_lambda(0), std::invalid_argument);

    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (int L = 1; L <= 60; ++L) {
        s0 += default_lambda(L);
        s1 += L * default_lambda(L);
        s2 += double(L) * L * default_lambda(L);
    }
    CHECK(s0 == Approx(1.0 / 6.0).epsilon(1e-10));
    CHECK(s1 == Approx(1.0 / 3.0).epsilon(1e-10));
    CHECK(s2 == Approx(1.0).epsilon(1e-10));
    CHECK(s0 < s1);
    CHECK(s1 < s2);

    CHECK_NOTHROW(CurtainModelConfig::standard().validate());
    CurtainModelConfig broken = CurtainModelConfig::standard();
    broken.weight = [](int) { return 1.5; };
    CHECK_THROWS_AS(broken.validate(), std::invalid_argument);
}

TEST_CASE("curtain_distance_bounds") {
    const auto config = CurtainModelConfig::standard();
    SUBCASE("coincident points give exact zero") {
        const auto b = curtain_distance_bounds(LINE, Vec{1.0}, Vec{1.0},
                                               config, {});
        CHECK(b.lower == 0.0);
        CHECK(b.upper == 0.0);
    }
    SUBCASE("real line bracket at d = 2.5") {
        const Vec x{0.0}, y{2.5};
        const auto candidates = grid_candidates(LINE, x, y, 0.1);
        const auto b = curtain_distance_bounds(LINE, x, y, config, candidates);
        // every level packs two slabs: d_L = 3; weights sum to
        // (1 - 2^-20)/6
        const double wsum = (1.0 - std::pow(2.0, -20)) / 6.0;
        CHECK(b.lower == Approx(3.0 * wsum).epsilon(1e-12));
        CHECK(b.upper ==
              Approx(3.5 * wsum + std::pow(2.0, -20) / 6.0 * 3.5)
                  .epsilon(1e-12));
        CHECK(b.lower <= b.upper);
        REQUIRE(b.per_L.size() == 20);
        for (size_t i = 1; i < b.per_L.size(); ++i)
            CHECK(b.per_L[i].lower >= b.per_L[i - 1].lower);
        for (const auto& row : b.per_L)
            CHECK(row.lower <= 1.0 + LINE.distance(x, y) + 1e-12);
    }
    SUBCASE("bracketing holds on 100 random pairs") {
        std::mt19937_64 rng(99);
        for (int trial = 0; trial < 100; ++trial) {
            const Vec x{10 * u01(rng)}, y{10 * u01(rng)};
            if (x == y) continue;
            const auto candidates = grid_candidates(LINE, x, y, 0.25);
            const auto b =
                curtain_distance_bounds(LINE, x, y, config, candidates);
            CHECK(b.lower <= b.upper + 1e-12);
        }
    }
    SUBCASE("approximate triangle inequality of the bounds") {
        std::mt19937_64 rng(101);
        for (int trial = 0; trial < 15; ++trial) {
            Vec p{12 * u01(rng)}, q{12 * u01(rng)}, r{12 * u01(rng)};
            auto bounds = [&](const Vec& a, const Vec& b) {
                if (a == b) return DistanceBounds{};
                return curtain_distance_bounds(
                    LINE, a, b, config, grid_candidates(LINE, a, b, 0.25));
            };
            CHECK(bounds(p, r).lower <=
                  bounds(p, q).upper + bounds(q, r).upper + 1e-9);
        }
    }
    SUBCASE("reverse triangle along a line in the plane") {
        std::mt19937_64 rng(103);
        for (int trial = 0; trial < 10; ++trial) {
            const Vec origin{10 * u01(rng), 10 * u01(rng)};
            const double angle = 6.283185307179586 * u01(rng);
            const Vec dir{std::cos(angle), std::sin(angle)};
            double t1 = 8 * u01(rng), t2 = 8 * u01(rng), t3 = 8 * u01(rng);
            double lo = std::min({t1, t2, t3}), hi = std::max({t1, t2, t3});
            double mid = t1 + t2 + t3 - lo - hi;
            if (hi - lo < 1e-6) continue;
            auto at = [&](double t) {
                return Vec{origin[0] + t * dir[0], origin[1] + t * dir[1]};
            };
            const Vec x = at(lo), z = at(mid), y = at(hi);
            auto bounds = [&](const Vec& a, const Vec& b) {
                if (a == b) return DistanceBounds{};
                return curtain_distance_bounds(
                    PLANE, a, b, config, grid_candidates(PLANE, a, b, 0.25));
            };
            CHECK(bounds(x, z).lower + bounds(z, y).lower <=
                  bounds(x, y).upper + 6.0 * config.Lambda + 1e-9);
        }
    }
}

TEST_CASE("candidate families") {
    SUBCASE("grid candidates are admissible and separating") {
        const Vec x{0.0, 0.0}, y{4.0, 3.0};
        const auto candidates = grid_candidates(PLANE, x, y, 0.25);
        CHECK(!candidates.empty());
        for (const auto& h : candidates) {
            CHECK(h.r - 0.5 > 0.0);
            CHECK(h.r + 0.5 < h.base.length());
            CHECK(separates_points(PLANE, h, x, y));
        }
    }
    SUBCASE("random transverse candidates are valid and deterministic") {
        const Vec x{0.0, 0.0}, y{6.0, 0.0};
        const auto a = random_transverse_candidates(PLANE, x, y, 10, 42);
        const auto b = random_transverse_candidates(PLANE, x, y, 10, 42);
        REQUIRE(a.size() == 10);
        for (size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].r == b[i].r);
            CHECK(a[i].base.a == b[i].base.a);
            CHECK(a[i].r - 0.5 > 0.0);
            CHECK(a[i].r + 0.5 < a[i].base.length());
        }
        const auto c = random_transverse_candidates(PLANE, x, y, 10, 43);
        CHECK(a[0].base.a != c[0].base.a);
    }
}

TEST_CASE("four_point_defect_from_bounds") {
    SUBCASE("exact tree metric stays at zero") {
        std::mt19937_64 rng(7);
        std::vector<WeightedTree::Edge> edges;
        for (int v = 1; v < 10; ++v)
            edges.push_back({static_cast<int>(rng() % v), v,
                             0.5 + u01(rng)});
        const WeightedTree tree(number_labels(10), edges);
        const double defect = four_point_defect_from_bounds(
            tree.size(), [&](int i, int j) {
                return Interval(tree.distance(i, j));
            });
        CHECK(defect <= 1e-12);
    }
    SUBCASE("matches the exact scan when the oracle is exact") {
        std::mt19937_64 rng(13);
        std::vector<Vec> pts;
        for (int i = 0; i < 7; ++i)
            pts.push_back(Vec{10 * u01(rng), 10 * u01(rng)});
        const double from_bounds = four_point_defect_from_bounds(
            7, [&](int i, int j) {
                return Interval(PLANE.distance(pts[i], pts[j]));
            });
        std::vector<std::vector<double>> m(7, std::vector<double>(7, 0.0));
        for (int i = 0; i < 7; ++i)
            for (int j = 0; j < 7; ++j)
                m[i][j] = PLANE.distance(pts[i], pts[j]);
        std::vector<std::string> labels;
        for (int i = 0; i < 7; ++i) labels.push_back(std::to_string(i));
        CHECK(from_bounds ==
              Approx(four_point_delta_exact(FiniteMetricSpace(labels, m)))
                  .epsilon(1e-12));
    }
    SUBCASE("widening the intervals never raises the certified defect") {
        std::mt19937_64 rng(17);
        std::vector<Vec> pts;
        for (int i = 0; i < 6; ++i)
            pts.push_back(Vec{10 * u01(rng), 10 * u01(rng)});
        const auto exact = [&](int i, int j) {
            return Interval(PLANE.distance(pts[i], pts[j]));
        };
        const auto widened = [&](int i, int j) {
            const double d = PLANE.distance(pts[i], pts[j]);
            return Interval(d - 0.3, d + 0.3);
        };
        CHECK(four_point_defect_from_bounds(6, widened) <=
              four_point_defect_from_bounds(6, exact) + 1e-12);
    }
    SUBCASE("independent of the thread partition") {
        std::mt19937_64 rng(19);
        std::vector<Vec> pts;
        for (int i = 0; i < 12; ++i)
            pts.push_back(Vec{10 * u01(rng), 10 * u01(rng)});
        const auto oracle = [&](int i, int j) {
            return Interval(PLANE.distance(pts[i], pts[j]));
        };
        setenv("HYPCONST_THREADS", "1", 1);
        const double serial = four_point_defect_from_bounds(12, oracle);
        setenv("HYPCONST_THREADS", "3", 1);
        const double parallel = four_point_defect_from_bounds(12, oracle);
        unsetenv("HYPCONST_THREADS");
        CHECK(serial == parallel);
    }
}

TEST_CASE("empirical_four_point_delta") {
    SamplerConfig cfg;
    cfg.n_samples = 24;
    cfg.seed = 42;
    cfg.region = 10.0;
    SUBCASE("tree backend with the exact metric is flat") {
        std::mt19937_64 rng(29);
        std::vector<WeightedTree::Edge> edges;
        for (int v = 1; v < 9; ++v)
            edges.push_back({static_cast<int>(rng() % v), v, 0.5 + u01(rng)});
        const WeightedTree tree(number_labels(9), edges);
        const double defect = empirical_four_point_delta(
            tree,
            [&](int a, int b) { return Interval(tree.distance(a, b)); },
            cfg);
        CHECK(defect <= 1e-12);
    }
    SUBCASE("deterministic and bounded by the exact sample scan") {
        const auto metric = [&](const Vec& a, const Vec& b) {
            return Interval(PLANE.distance(a, b));
        };
        const double d1 = empirical_four_point_delta(PLANE, metric, cfg);
        const double d2 = empirical_four_point_delta(PLANE, metric, cfg);
        CHECK(d1 == d2);
        // equals the exact four-point scan of the induced finite space
        const auto pts = sample_box(2, cfg);
        std::vector<std::vector<double>> m(pts.size(),
                                           std::vector<double>(pts.size()));
        for (size_t i = 0; i < pts.size(); ++i)
            for (size_t j = 0; j < pts.size(); ++j)
                m[i][j] = PLANE.distance(pts[i], pts[j]);
        CHECK(d1 ==
              Approx(four_point_delta_exact(FiniteMetricSpace(
                         number_labels(static_cast<int>(pts.size())), m)))
                  .epsilon(1e-12));
    }
    SUBCASE("needs at least four samples") {
        SamplerConfig tiny = cfg;
        tiny.n_samples = 3;
        CHECK_THROWS_AS(
            empirical_four_point_delta(
                PLANE,
                [&](const Vec& a, const Vec& b) {
                    return Interval(PLANE.distance(a, b));
                },
                tiny),
            std::invalid_argument);
    }
}

TEST_CASE("sampling") {
    SamplerConfig cfg;
    cfg.n_samples = 50;
    cfg.seed = 42;
    cfg.region = 10.0;
    const auto pts = sample_box(2, cfg);
    REQUIRE(pts.size() == 50);
    for (const auto& p : pts) {
        CHECK(p.size() == 2);
        CHECK(p[0] >= 0.0);
        CHECK(p[0] <= 10.0);
    }
    CHECK(sample_box(2, cfg) == pts);  // deterministic
    SamplerConfig other = cfg;
    other.seed = 43;
    CHECK(sample_box(2, other) != pts);
}

TEST_CASE("reparametrize_to_rough_geodesic") {
    const auto config = CurtainModelConfig::standard();
    SUBCASE("line samples reparametrize with small defect") {
        std::vector<Vec> samples;
        for (double t = 0.0; t <= 30.0 + 1e-9; t += 0.5)
            samples.push_back(Vec{t});
        const auto metric = [&](int i, int j) {
            if (i == j) return Interval(0.0);
            const auto b = curtain_distance_bounds(
                LINE, samples[i], samples[j], config,
                grid_candidates(LINE, samples[i], samples[j], 0.25));
            return Interval(b.lower, b.upper);
        };
        const auto rep = reparametrize_to_rough_geodesic(
            static_cast<int>(samples.size()), metric, 7.0);
        CHECK(rep.indices.size() >= 4);
        CHECK(rep.defect <= 2.0);
        CHECK(rep.defect <= 7.0);  // the q = max{6 Lambda, 1} + 1 threshold
        for (size_t i = 1; i < rep.indices.size(); ++i)
            CHECK(rep.indices[i] > rep.indices[i - 1]);
    }
    SUBCASE("single sample") {
        const auto rep = reparametrize_to_rough_geodesic(
            1, [](int, int) { return Interval(0.0); }, 7.0);
        CHECK(rep.indices == std::vector<int>{0});
        CHECK(rep.defect == 0.0);
    }
    SUBCASE("density failure reports the first unreachable target") {
        // distances jump from 0.4 to 5: no sample lands in [1, 2]
        const std::vector<double> d{0.0, 0.4, 5.0, 5.4};
        const auto metric = [&](int i, int j) {
            return Interval(std::abs(d[i] - d[j]));
        };
        CHECK_THROWS_AS(reparametrize_to_rough_geodesic(4, metric, 7.0),
                        DensityError);
        try {
            reparametrize_to_rough_geodesic(4, metric, 7.0);
        } catch (const DensityError& e) {
            CHECK(e.t == 1.0);
        }
    }
    CHECK_THROWS_AS(reparametrize_to_rough_geodesic(
                        1, [](int, int) { return Interval(0.0); }, 1.0),
                    std::invalid_argument);
}
