#include "hypconst/curtain.hpp"

#include <cmath>
#include <random>

#include "hypconst/parallel.hpp"
#include "hypconst/verifier.hpp"

namespace hypconst {

namespace detail {

int longest_interval_chain(std::vector<SlabGeom> slabs) {
    if (slabs.empty()) return 0;
    std::sort(slabs.begin(), slabs.end(), [](const SlabGeom& a,
                                             const SlabGeom& b) {
        if (a.axis != b.axis) return a.axis < b.axis;
        return a.lo < b.lo;
    });
    const size_t m = slabs.size();
    std::vector<int> len(m, 1);
    int best = 1;
    for (size_t v = 0; v < m; ++v) {
        for (size_t u = 0; u < v; ++u)
            if (slabs[u].axis == slabs[v].axis && slabs[u].hi < slabs[v].lo)
                len[v] = std::max(len[v], len[u] + 1);
        best = std::max(best, len[v]);
    }
    return best;
}

}  // namespace detail

double default_lambda(int L) {
    if (L < 1) throw std::invalid_argument("default_lambda: L must be >= 1");
    return std::pow(2.0, -L) / 6.0;
}

CurtainModelConfig CurtainModelConfig::standard(int L_max) {
    CurtainModelConfig cfg;
    cfg.L_max = L_max;
    cfg.weight = default_lambda;
    cfg.tail = [](int n) { return std::pow(2.0, -n) / 6.0; };
    cfg.Lambda = 1.0;
    return cfg;
}

void CurtainModelConfig::validate() const {
    if (L_max < 1)
        throw std::invalid_argument("CurtainModelConfig: L_max must be >= 1");
    if (!weight || !tail)
        throw std::invalid_argument(
            "CurtainModelConfig: weight and tail must be set");
    if (!(Lambda > 0.0))
        throw std::invalid_argument("CurtainModelConfig: Lambda must be > 0");
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    const int horizon = std::max(L_max, 60);
    for (int L = 1; L <= horizon; ++L) {
        const double w = weight(L);
        if (!(w > 0.0) || !(w < 1.0))
            throw std::invalid_argument(
                "CurtainModelConfig: lambda_L must lie in (0, 1)");
        s0 += w;
        s1 += L * w;
        s2 += double(L) * L * w;
    }
    if (!(s0 < s1 && s1 < s2))
        throw std::invalid_argument(
            "CurtainModelConfig: partial sums must satisfy "
            "sum lambda < sum L lambda < sum L^2 lambda");
    if (s2 > Lambda + 1e-9)
        throw std::invalid_argument(
            "CurtainModelConfig: sum L^2 lambda exceeds Lambda");
    if (tail(L_max) < 0.0)
        throw std::invalid_argument("CurtainModelConfig: negative tail");
}

std::vector<Curtain<WeightedTree>> edge_midpoint_candidates(
    const WeightedTree& tree, int x, int y) {
    const auto seg = tree.geodesic(x, y);
    std::vector<Curtain<WeightedTree>> out;
    for (size_t i = 0; i + 1 < seg.offsets.size(); ++i) {
        const double r = 0.5 * (seg.offsets[i] + seg.offsets[i + 1]);
        if (r - 0.5 > 0.0 && r + 0.5 < seg.length())
            out.push_back({seg, r});
    }
    return out;
}

namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Box-Muller; avoids distribution objects so streams are identical across
// standard libraries.
double gaussian(std::mt19937_64& rng) {
    double u = 0.0;
    while (u == 0.0) u = uniform01(rng);
    const double v = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u)) *
           std::cos(2.0 * 3.14159265358979323846 * v);
}

}  // namespace

std::vector<Curtain<EuclideanBackend>> random_transverse_candidates(
    const EuclideanBackend& backend, const Vec& x, const Vec& y, int count,
    std::uint64_t seed) {
    if (count < 0)
        throw std::invalid_argument(
            "random_transverse_candidates: count must be >= 0");
    const auto base = backend.geodesic(x, y);
    std::mt19937_64 rng(seed);
    std::vector<Curtain<EuclideanBackend>> out;
    out.reserve(count);
    const double half = base.len + 2.0;
    while (static_cast<int>(out.size()) < count) {
        const Vec p = base.at(uniform01(rng) * base.len);
        Vec dir(backend.dim);
        for (int i = 0; i < backend.dim; ++i) dir[i] = gaussian(rng);
        const double n = norm(dir);
        if (n < 1e-9) continue;
        Vec lo = p, hi = p;
        for (int i = 0; i < backend.dim; ++i) {
            lo[i] -= half * dir[i] / n;
            hi[i] += half * dir[i] / n;
        }
        out.push_back(curtain_dual<EuclideanBackend>(
            backend.geodesic(lo, hi), half));
    }
    return out;
}

std::vector<Vec> sample_box(int dim, const SamplerConfig& config) {
    if (dim < 1) throw std::invalid_argument("sample_box: dim must be >= 1");
    if (config.n_samples < 0 || !(config.region > 0.0))
        throw std::invalid_argument("sample_box: bad sampler config");
    std::mt19937_64 rng(config.seed);
    std::vector<Vec> out;
    out.reserve(config.n_samples);
    for (int s = 0; s < config.n_samples; ++s) {
        Vec p(dim);
        for (int i = 0; i < dim; ++i) p[i] = uniform01(rng) * config.region;
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<int> sample_tree_vertices(const WeightedTree& tree,
                                      const SamplerConfig& config) {
    if (config.n_samples < 0)
        throw std::invalid_argument("sample_tree_vertices: bad sample count");
    std::mt19937_64 rng(config.seed);
    std::vector<int> out;
    out.reserve(config.n_samples);
    for (int s = 0; s < config.n_samples; ++s)
        out.push_back(static_cast<int>(rng() % tree.size()));
    return out;
}

double four_point_defect_from_bounds(
    int n, const std::function<Interval(int, int)>& metric) {
    if (n < 4) return 0.0;
    std::vector<Interval> m(static_cast<size_t>(n) * n);
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    parallel_for(static_cast<std::int64_t>(pairs.size()),
                 [&](std::int64_t begin, std::int64_t end) {
                     for (std::int64_t k = begin; k < end; ++k) {
                         const auto [i, j] = pairs[k];
                         m[i * n + j] = m[j * n + i] = metric(i, j);
                     }
                 });

    return parallel_max(n, 0.0, [&](std::int64_t begin, std::int64_t end) {
        double best = 0.0;
        for (std::int64_t i = begin; i < end; ++i)
            for (int j = static_cast<int>(i) + 1; j < n; ++j)
                for (int k = j + 1; k < n; ++k)
                    for (int l = k + 1; l < n; ++l) {
                        const Interval s0 = m[i * n + j] + m[k * n + l];
                        const Interval s1 = m[i * n + k] + m[j * n + l];
                        const Interval s2 = m[i * n + l] + m[j * n + k];
                        best = std::max(
                            {best, s0.lo - std::max(s1.hi, s2.hi),
                             s1.lo - std::max(s0.hi, s2.hi),
                             s2.lo - std::max(s0.hi, s1.hi)});
                    }
        return best;
    });
}

double empirical_four_point_delta(
    const EuclideanBackend& backend,
    const std::function<Interval(const Vec&, const Vec&)>& metric,
    const SamplerConfig& config) {
    if (config.n_samples < 4)
        throw std::invalid_argument(
            "empirical_four_point_delta: need at least 4 samples");
    const auto pts = sample_box(backend.dim, config);
    return four_point_defect_from_bounds(
        static_cast<int>(pts.size()),
        [&](int i, int j) { return metric(pts[i], pts[j]); });
}

double empirical_four_point_delta(
    const WeightedTree& tree, const std::function<Interval(int, int)>& metric,
    const SamplerConfig& config) {
    if (config.n_samples < 4)
        throw std::invalid_argument(
            "empirical_four_point_delta: need at least 4 samples");
    const auto verts = sample_tree_vertices(tree, config);
    return four_point_defect_from_bounds(
        static_cast<int>(verts.size()),
        [&](int i, int j) { return metric(verts[i], verts[j]); });
}

RoughReparam reparametrize_to_rough_geodesic(
    int n_samples, const std::function<Interval(int, int)>& metric, double q) {
    if (n_samples < 1)
        throw std::invalid_argument("reparametrize: need at least one sample");
    // q = max{6 Lambda, 1} + 1 >= 2 for every admissible Lambda.
    if (!(q >= 2.0))
        throw std::invalid_argument("reparametrize: q must be >= 2");

    RoughReparam out;
    out.indices.push_back(0);
    out.params.push_back(0.0);
    if (n_samples == 1) return out;

    std::vector<double> from_origin(n_samples, 0.0);
    double reach = 0.0;
    for (int i = 1; i < n_samples; ++i) {
        from_origin[i] = metric(0, i).mid();
        reach = std::max(reach, from_origin[i]);
    }

    const int t_end = static_cast<int>(std::floor(reach));
    int last = 0;
    for (int t = 1; t <= t_end; ++t) {
        int pick = -1;
        bool beyond = false;
        for (int i = last + 1; i < n_samples; ++i) {
            if (from_origin[i] >= t && from_origin[i] <= t + 1.0) {
                pick = i;
                break;
            }
            if (from_origin[i] > t + 1.0) beyond = true;
        }
        if (pick < 0) {
            // An unfilled window with samples beyond it is a genuine
            // density gap; otherwise the path ends inside the previous
            // window and the selection is complete.
            if (beyond) throw DensityError(static_cast<double>(t));
            break;
        }
        out.indices.push_back(pick);
        out.params.push_back(static_cast<double>(t));
        last = pick;
    }

    const int k = static_cast<int>(out.indices.size());
    out.defect = rough_geodesic_defect(
        k,
        [&](int i, int j) {
            return metric(out.indices[i], out.indices[j]).mid();
        },
        out.params);
    return out;
}

}  // namespace hypconst
