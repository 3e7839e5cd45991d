#pragma once

// Curtains, chains, L-separation, the L-metrics d_L and the curtain model
// D = sum of lambda_L d_L, instantiated over the Euclidean and tree
// backends. Curtains here are preimages of pole intervals under
// closest-point projection, so every curtain is a slab over an axis:
// separation, meeting and ordering reduce to exact interval arithmetic on
// a shared axis. Non-parallel Euclidean slabs always intersect; tree
// curtains are supported when their base geodesics lie on a common line.
//
// L-separation is certified relative to the supplied candidate family:
// chain lengths are lower bounds, the Remark bound d_L <= 1 + d(x,y) and
// the candidate count give the upper bounds.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "hypconst/euclidean.hpp"
#include "hypconst/interval.hpp"
#include "hypconst/tree.hpp"

namespace hypconst {

template <class B>
struct Curtain {
    typename B::Segment base;
    double r = 0.0;  // pole position along the base

    Interval pole() const { return {r - 0.5, r + 0.5}; }
};

// Requires [r-1/2, r+1/2] inside the interior of the base's interval.
template <class B>
Curtain<B> curtain_dual(const typename B::Segment& base, double r) {
    if (!(r - 0.5 > 0.0) || !(r + 0.5 < base.length()))
        throw std::invalid_argument(
            "curtain_dual: pole interval outside the interior of the base");
    return {base, r};
}

enum class Side { minus, on, plus };

template <class B>
Side side_of(const B& backend, const Curtain<B>& h,
             const typename B::Point& p) {
    const double s = backend.project(h.base, p);
    if (s < h.r - 0.5) return Side::minus;
    if (s > h.r + 0.5) return Side::plus;
    return Side::on;
}

template <class B>
bool separates_points(const B& backend, const Curtain<B>& h,
                      const typename B::Point& x,
                      const typename B::Point& y) {
    const Side sx = side_of(backend, h, x);
    const Side sy = side_of(backend, h, y);
    return (sx == Side::minus && sy == Side::plus) ||
           (sx == Side::plus && sy == Side::minus);
}

namespace detail {

struct SlabGeom {
    int axis = 0;
    double lo = 0.0, hi = 0.0;  // pole in absolute axis coordinates
};

// Axis registry for Euclidean slabs: one class per direction up to sign.
struct EuclideanAxes {
    const EuclideanBackend* backend = nullptr;
    std::vector<Vec> dirs;

    SlabGeom classify(const Curtain<EuclideanBackend>& h) {
        int axis = -1;
        double orient = 1.0;
        for (size_t a = 0; a < dirs.size(); ++a) {
            const double d = dot(dirs[a], h.base.unit);
            if (std::abs(d) >= 1.0 - 1e-12) {
                axis = static_cast<int>(a);
                orient = d > 0 ? 1.0 : -1.0;
                break;
            }
        }
        if (axis < 0) {
            dirs.push_back(h.base.unit);
            axis = static_cast<int>(dirs.size()) - 1;
            orient = 1.0;
        }
        const double off = dot(h.base.a, dirs[axis]);
        SlabGeom g;
        g.axis = axis;
        if (orient > 0) {
            g.lo = off + h.r - 0.5;
            g.hi = off + h.r + 0.5;
        } else {
            g.lo = off - (h.r + 0.5);
            g.hi = off - (h.r - 0.5);
        }
        return g;
    }

    double point_coord(int axis, const Vec& p) const {
        return dot(p, dirs[axis]);
    }

    // Non-parallel slabs in R^n contain points arbitrarily far along each
    // other's axis, so they always intersect and never separate.
    static constexpr bool transversal_pairs_meet = true;
};

// Axis registry for tree curtains: all base geodesics must lie on one
// host line (equal or nested vertex paths); poles map to arc intervals of
// the host.
struct TreeAxes {
    const WeightedTree* tree = nullptr;
    WeightedTree::Segment host;

    void set_host(std::span<const Curtain<WeightedTree>> curtains) {
        size_t best = 0;
        for (size_t i = 1; i < curtains.size(); ++i)
            if (curtains[i].base.vertices.size() >
                curtains[best].base.vertices.size())
                best = i;
        host = curtains[best].base;
    }

    SlabGeom classify(const Curtain<WeightedTree>& h) const {
        const auto& hv = host.vertices;
        const auto& bv = h.base.vertices;
        auto it = std::search(hv.begin(), hv.end(), bv.begin(), bv.end());
        SlabGeom g;
        g.axis = 0;
        if (it != hv.end()) {
            const double off = host.offsets[it - hv.begin()];
            g.lo = off + h.r - 0.5;
            g.hi = off + h.r + 0.5;
            return g;
        }
        it = std::search(hv.begin(), hv.end(), bv.rbegin(), bv.rend());
        if (it != hv.end()) {
            const double end =
                host.offsets[it - hv.begin() + bv.size() - 1];
            g.lo = end - (h.r + 0.5);
            g.hi = end - (h.r - 0.5);
            return g;
        }
        throw std::invalid_argument(
            "tree curtains must share a common base line");
    }

    double point_coord(int, int p) const { return tree->project(host, p); }

    static constexpr bool transversal_pairs_meet = false;
};

template <class B>
struct AxesFor;
template <>
struct AxesFor<EuclideanBackend> {
    using type = EuclideanAxes;
};
template <>
struct AxesFor<WeightedTree> {
    using type = TreeAxes;
};

// Longest chain among interval slabs: within an axis, a chain is a
// sequence of pairwise ordered disjoint intervals; across axes no pair is
// disjoint, so chains cannot mix axes.
int longest_interval_chain(std::vector<SlabGeom> slabs);

}  // namespace detail

// Exact pairwise relations for a family of curtains.
template <class B>
class CurtainGeometry {
  public:
    CurtainGeometry(const B& backend, std::span<const Curtain<B>> curtains) {
        if constexpr (std::is_same_v<B, WeightedTree>) {
            axes_.tree = &backend;
            if (!curtains.empty()) axes_.set_host(curtains);
        } else {
            axes_.backend = &backend;
        }
        slabs_.reserve(curtains.size());
        for (const auto& h : curtains) slabs_.push_back(axes_.classify(h));
    }

    int size() const { return static_cast<int>(slabs_.size()); }
    const detail::SlabGeom& slab(int i) const { return slabs_[i]; }

    bool comparable(int i, int j) const {
        return slabs_[i].axis == slabs_[j].axis;
    }
    bool disjoint(int i, int j) const {
        return comparable(i, j) && (slabs_[i].hi < slabs_[j].lo ||
                                    slabs_[j].hi < slabs_[i].lo);
    }
    bool meets(int i, int j) const {
        if (comparable(i, j)) return !disjoint(i, j);
        return axes_.transversal_pairs_meet;
    }
    bool before(int i, int j) const {
        return comparable(i, j) && slabs_[i].hi < slabs_[j].lo;
    }

    double point_coord(int axis, const typename B::Point& p) const {
        return axes_.point_coord(axis, p);
    }

  private:
    typename detail::AxesFor<B>::type axes_;
    std::vector<detail::SlabGeom> slabs_;
};

// True iff adjacent curtains are disjoint and every interior curtain
// separates its neighbours.
template <class B>
bool is_chain(const B& backend, std::type_identity_t<std::span<const Curtain<B>>> curtains) {
    if (curtains.empty())
        throw std::invalid_argument("is_chain: empty list");
    if (curtains.size() == 1) return true;
    CurtainGeometry<B> g(backend, curtains);
    const int n = g.size();
    for (int i = 0; i + 1 < n; ++i)
        if (!g.disjoint(i, i + 1)) return false;
    for (int i = 1; i + 1 < n; ++i) {
        const bool fwd = g.before(i - 1, i) && g.before(i, i + 1);
        const bool bwd = g.before(i + 1, i) && g.before(i, i - 1);
        if (!fwd && !bwd) return false;
    }
    return true;
}

// Longest chain drawn from the candidates every member of which meets
// both h1 and h2. A lower bound for the supremum over all curtains.
template <class B>
int max_chain_meeting_both(const B& backend, const Curtain<B>& h1,
                           const Curtain<B>& h2,
                           std::type_identity_t<std::span<const Curtain<B>>> candidates) {
    std::vector<Curtain<B>> all;
    all.reserve(candidates.size() + 2);
    all.push_back(h1);
    all.push_back(h2);
    all.insert(all.end(), candidates.begin(), candidates.end());
    CurtainGeometry<B> g(backend, all);
    if (!g.disjoint(0, 1))
        throw std::invalid_argument(
            "max_chain_meeting_both: curtains must be disjoint");
    std::vector<detail::SlabGeom> universe;
    for (int k = 2; k < g.size(); ++k)
        if (g.meets(k, 0) && g.meets(k, 1)) universe.push_back(g.slab(k));
    return detail::longest_interval_chain(std::move(universe));
}

// Candidate-relative L-separation: "true" is a claim relative to the
// family, "false" exhibits a witness chain and is unconditionally correct.
template <class B>
bool is_L_separated(const B& backend, const Curtain<B>& h1,
                    const Curtain<B>& h2, int L,
                    std::type_identity_t<std::span<const Curtain<B>>> candidates) {
    if (L < 1) throw std::invalid_argument("is_L_separated: L must be >= 1");
    return max_chain_meeting_both(backend, h1, h2, candidates) <= L;
}

namespace detail {

// Shared worker for the chain-separating searches. Nodes are the
// candidates separating x from y; edges connect same-axis pairs ordered
// from the x side to the y side whose separation level (longest candidate
// chain meeting both ends of the edge) is at most L. Separation levels
// are computed against the full candidate family over one shared
// geometry, matching is_L_separated's candidate-relative semantics.
template <class B>
class SeparatingChainSearch {
  public:
    SeparatingChainSearch(const B& backend, const typename B::Point& x,
                          const typename B::Point& y,
                          std::span<const Curtain<B>> candidates)
        : geom_(backend, candidates) {
        for (int i = 0; i < geom_.size(); ++i)
            if (separates_points(backend, candidates[i], x, y))
                nodes_.push_back(i);
        // Oriented interval per node: flipped so that x sits below and y
        // above on every axis.
        oriented_.reserve(nodes_.size());
        for (int i : nodes_) {
            const auto& s = geom_.slab(i);
            const double cx = geom_.point_coord(s.axis, x);
            const double cy = geom_.point_coord(s.axis, y);
            SlabGeom o = s;
            if (cx > cy) {
                o.lo = -s.hi;
                o.hi = -s.lo;
            }
            oriented_.push_back(o);
        }
        // Topological order: ascending oriented lower end per axis.
        order_.resize(nodes_.size());
        for (size_t i = 0; i < order_.size(); ++i) order_[i] = i;
        std::sort(order_.begin(), order_.end(), [&](size_t a, size_t b) {
            return oriented_[a].lo < oriented_[b].lo;
        });
    }

    int separating_count() const { return static_cast<int>(nodes_.size()); }

    // Longest path with edges gated at separation level <= L; returns
    // candidate indices in chain order.
    std::vector<int> longest_chain(int L) {
        const size_t m = nodes_.size();
        std::vector<int> len(m, 1), pred(m, -1);
        for (size_t oi = 0; oi < m; ++oi) {
            const size_t v = order_[oi];
            for (size_t oj = 0; oj < oi; ++oj) {
                const size_t u = order_[oj];
                if (!edge_possible(u, v)) continue;
                if (len[u] + 1 <= len[v]) continue;
                if (level(u, v) > L) continue;
                len[v] = len[u] + 1;
                pred[v] = static_cast<int>(u);
            }
        }
        int best = -1;
        for (size_t v = 0; v < m; ++v)
            if (best < 0 || len[v] > len[best]) best = static_cast<int>(v);
        std::vector<int> chain;
        for (int v = best; v >= 0; v = pred[v]) chain.push_back(nodes_[v]);
        std::reverse(chain.begin(), chain.end());
        return chain;
    }

    // Distinct separation levels over potential edges (for reusing chain
    // computations across L).
    std::vector<int> edge_levels() {
        std::vector<int> out;
        for (size_t a = 0; a < nodes_.size(); ++a)
            for (size_t b = a + 1; b < nodes_.size(); ++b)
                if (edge_possible(a, b) || edge_possible(b, a))
                    out.push_back(level(a, b));
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

  private:
    bool edge_possible(size_t u, size_t v) const {
        return oriented_[u].axis == oriented_[v].axis &&
               oriented_[u].hi < oriented_[v].lo;
    }

    static std::uint64_t pair_key(size_t a, size_t b) {
        if (a > b) std::swap(a, b);
        return (static_cast<std::uint64_t>(a) << 32) | b;
    }

    // Longest chain of candidates meeting both nodes a and b.
    int level(size_t a, size_t b) {
        const auto [it, inserted] =
            level_cache_.try_emplace(pair_key(a, b), 0);
        if (!inserted) return it->second;
        const int i = nodes_[a], j = nodes_[b];
        std::vector<SlabGeom> universe;
        for (int k = 0; k < geom_.size(); ++k)
            if (geom_.meets(k, i) && geom_.meets(k, j))
                universe.push_back(geom_.slab(k));
        it->second = longest_interval_chain(std::move(universe));
        return it->second;
    }

    CurtainGeometry<B> geom_;
    std::vector<int> nodes_;
    std::vector<SlabGeom> oriented_;
    std::vector<size_t> order_;
    std::map<std::uint64_t, int> level_cache_;
};

}  // namespace detail

// A maximum-length chain from the candidate family separating x from y
// whose adjacent pairs are L-separated relative to the family. Indices
// into `candidates`, ordered from the x side to the y side; empty when no
// candidate separates the points.
template <class B>
std::vector<int> longest_L_chain_separating(
    const B& backend, const typename B::Point& x, const typename B::Point& y,
    int L, std::type_identity_t<std::span<const Curtain<B>>> candidates) {
    if (L < 1)
        throw std::invalid_argument(
            "longest_L_chain_separating: L must be >= 1");
    if (candidates.empty()) return {};
    detail::SeparatingChainSearch<B> search(backend, x, y, candidates);
    if (search.separating_count() == 0) return {};
    return search.longest_chain(L);
}

struct DLBounds {
    double lower = 0.0;
    double upper = 0.0;
    int chain_length = 0;
    bool witness = false;  // false: no candidate separates the points
};

// lower = |longest L-chain| + 1 (0 with no witness when nothing
// separates); upper = min(1 + d(x,y), separating-candidate count + 1).
template <class B>
DLBounds d_L_bounds(const B& backend, const typename B::Point& x,
                    const typename B::Point& y, int L,
                    std::type_identity_t<std::span<const Curtain<B>>> candidates) {
    if (x == y) return {0.0, 0.0, 0, false};
    const auto chain = longest_L_chain_separating(backend, x, y, L, candidates);
    int n_sep = 0;
    for (const auto& h : candidates)
        if (separates_points(backend, h, x, y)) ++n_sep;
    DLBounds b;
    b.chain_length = static_cast<int>(chain.size());
    b.witness = !chain.empty();
    b.lower = chain.empty() ? 0.0 : static_cast<double>(chain.size()) + 1.0;
    b.upper = std::min(1.0 + backend.distance(x, y),
                       static_cast<double>(n_sep) + 1.0);
    return b;
}

// lambda_L = 2^-L / 6: sum lambda = 1/6, sum L lambda = 1/3,
// sum L^2 lambda = 1 = Lambda.
double default_lambda(int L);

struct CurtainModelConfig {
    int L_max = 20;
    std::function<double(int)> weight;  // lambda_L
    std::function<double(int)> tail;    // sum of lambda_L for L > n
    double Lambda = 1.0;

    static CurtainModelConfig standard(int L_max = 20);

    // Checks lambda_L in (0,1) and the partial sums of lambda, L lambda,
    // L^2 lambda being strictly ordered with the L^2 sum below Lambda.
    void validate() const;
};

struct PerLevelBounds {
    int L = 0;
    double lower = 0.0;
    double upper = 0.0;
    int chain_length = 0;
    bool witness = false;
};

struct DistanceBounds {
    double lower = 0.0;
    double upper = 0.0;
    std::vector<PerLevelBounds> per_L;
};

// Bracket for D(x,y) = sum lambda_L d_L(x,y): truncated sums of the per-L
// bounds, with the analytic weight tail times the Remark bound 1 + d
// closing the upper side.
template <class B>
DistanceBounds curtain_distance_bounds(const B& backend,
                                       const typename B::Point& x,
                                       const typename B::Point& y,
                                       const CurtainModelConfig& config,
                                       std::type_identity_t<std::span<const Curtain<B>>> candidates) {
    config.validate();
    DistanceBounds out;
    if (x == y) return out;
    const double d = backend.distance(x, y);

    int n_sep = 0;
    for (const auto& h : candidates)
        if (separates_points(backend, h, x, y)) ++n_sep;
    const double upper_L = std::min(1.0 + d, static_cast<double>(n_sep) + 1.0);

    std::vector<int> chain_at_level;  // chain length per distinct cutoff
    std::vector<int> levels;
    if (n_sep > 0 && !candidates.empty()) {
        detail::SeparatingChainSearch<B> search(backend, x, y, candidates);
        levels = search.edge_levels();
        for (int L = 1; L <= config.L_max; ++L) {
            // The edge set only changes at the distinct separation levels.
            const auto pos =
                std::upper_bound(levels.begin(), levels.end(), L) -
                levels.begin();
            if (static_cast<size_t>(pos) >= chain_at_level.size()) {
                const int len =
                    static_cast<int>(search.longest_chain(L).size());
                chain_at_level.resize(pos + 1, len);
            }
        }
    }

    for (int L = 1; L <= config.L_max; ++L) {
        PerLevelBounds row;
        row.L = L;
        if (n_sep > 0) {
            const auto pos =
                std::upper_bound(levels.begin(), levels.end(), L) -
                levels.begin();
            row.chain_length = chain_at_level[pos];
            row.witness = row.chain_length > 0;
            row.lower = row.witness ? row.chain_length + 1.0 : 0.0;
        }
        row.upper = upper_L;
        out.per_L.push_back(row);
        const double w = config.weight(L);
        out.lower += w * row.lower;
        out.upper += w * row.upper;
    }
    out.upper += config.tail(config.L_max) * (1.0 + d);
    return out;
}

// ---- candidate families -------------------------------------------------

// Family (a): curtains dual to the geodesic [x, y] at poles spaced by
// `step`; every admissible pole also separates x from y.
template <class B>
std::vector<Curtain<B>> grid_candidates(const B& backend,
                                        const typename B::Point& x,
                                        const typename B::Point& y,
                                        double step) {
    if (!(step > 0.0))
        throw std::invalid_argument("grid_candidates: step must be > 0");
    const auto seg = backend.geodesic(x, y);
    std::vector<Curtain<B>> out;
    for (int k = 1;; ++k) {
        const double r = k * step;
        if (!(r + 0.5 < seg.length())) break;
        if (r - 0.5 > 0.0) out.push_back({seg, r});
    }
    return out;
}

// Curtains dual to the geodesic [x, y] at the midpoints of its edges
// (admissible ones only).
std::vector<Curtain<WeightedTree>> edge_midpoint_candidates(
    const WeightedTree& tree, int x, int y);

// Family (b): curtains dual to seeded random lines through points of the
// segment [x, y] (Euclidean only).
std::vector<Curtain<EuclideanBackend>> random_transverse_candidates(
    const EuclideanBackend& backend, const Vec& x, const Vec& y, int count,
    std::uint64_t seed);

// ---- sampling and empirical hyperbolicity -------------------------------

struct SamplerConfig {
    int n_samples = 200;
    std::uint64_t seed = 0;
    double region = 10.0;  // Euclidean box [0, region]^dim
};

std::vector<Vec> sample_box(int dim, const SamplerConfig& config);
std::vector<int> sample_tree_vertices(const WeightedTree& tree,
                                      const SamplerConfig& config);

// Certified lower bound on the four-point defect over all quadruples of
// [0, n): max over quadruples of (one pairing sum's lower bound minus the
// larger of the other two upper bounds), clamped at 0. Never overstates a
// violation. The metric callable must be safe to invoke concurrently; the
// pair evaluations and the quadruple scan run partitioned across threads
// with a max-reduction, so the result is partition-independent.
double four_point_defect_from_bounds(
    int n, const std::function<Interval(int, int)>& metric);

// Seeded end-to-end scan: sample points from the backend, evaluate the
// metric oracle on every pair, and take the certified four-point defect
// over all quadruples. Deterministic given (seed, config). Requires
// n_samples >= 4.
double empirical_four_point_delta(
    const EuclideanBackend& backend,
    const std::function<Interval(const Vec&, const Vec&)>& metric,
    const SamplerConfig& config);
double empirical_four_point_delta(
    const WeightedTree& tree, const std::function<Interval(int, int)>& metric,
    const SamplerConfig& config);

// ---- rough-geodesic reparametrisation ------------------------------------

struct DensityError : std::runtime_error {
    double t;
    explicit DensityError(double t_)
        : std::runtime_error(
              "reparametrize: no sample with distance in [t, t+1] for t = " +
              std::to_string(t_)),
          t(t_) {}
};

struct RoughReparam {
    std::vector<int> indices;    // selected sample indices, increasing
    std::vector<double> params;  // parametrization (the integer targets)
    double defect = 0.0;         // rough-geodesic defect of the selection
};

// Greedy construction of Q: Q(0) is the first sample and Q(t) the first
// later sample whose distance from Q(0) lands in [t, t+1]. `metric` gives
// pairwise bounds over sample indices; midpoints are used for selection
// and for the defect.
RoughReparam reparametrize_to_rough_geodesic(
    int n_samples, const std::function<Interval(int, int)>& metric, double q);

}  // namespace hypconst
