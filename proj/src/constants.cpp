#include "hypconst/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hypconst {

void QuasiParams::validate() const {
    if (!(q1 >= 1.0))
        throw std::domain_error("QuasiParams: q1 must be >= 1, got " +
                                std::to_string(q1));
    if (!(q2 >= 0.0))
        throw std::domain_error("QuasiParams: q2 must be >= 0, got " +
                                std::to_string(q2));
    if (!(D > 0.0))
        throw std::domain_error("QuasiParams: D must be > 0, got " +
                                std::to_string(D));
}

double eval_f(const QuasiParams& p, double x) {
    p.validate();
    if (!(x >= 0.0))
        throw std::domain_error("eval_f: x must be >= 0, got " +
                                std::to_string(x));
    const double q13 = p.q1 * p.q1 * p.q1;
    const double arg = 8.0 * x * q13 + 7.0 * q13 * p.q2 + 2.0 * p.D * p.q1;
    return p.D * std::log2(arg) + 0.5 * (p.q1 + p.q2) * p.D + p.D;
}

namespace {

double max_q(const QuasiParams& p) { return std::max(p.q1, p.q2); }

// K_n and eps_n from the kappa_n construction.
double big_k(int n) {
    const double l = std::log2(double(n) + 8.0);
    return l + 9.0 + std::ceil(1.0 + std::log2(l + 9.0));
}

double eps_n(int n) { return 1.0 / std::log2(double(n) + 8.0); }

double kappa_n_value(double q, double D, int n) {
    return big_k(n) * q * std::pow(D, 1.0 + eps_n(n));
}

std::vector<KappaWitness> witness_grid_from(const QuasiParams& p,
                                            double kappa) {
    std::vector<KappaWitness> grid;
    for (double t : {0.0, 1.0, 10.0, 100.0, 1000.0}) {
        const double x = kappa + t;
        grid.push_back({x, eval_f(p, x) - x});
    }
    return grid;
}

}  // namespace

KappaCertificate solve_kappa(const QuasiParams& p, double rel_tolerance) {
    p.validate();
    if (!(rel_tolerance > 0.0))
        throw std::domain_error("solve_kappa: tolerance must be > 0");

    auto g = [&](double x) { return eval_f(p, x) - x; };

    // Upper end of the bracket: kappa_8 when the kappa_n hypothesis D >= 1
    // holds (q = max{q1,q2} >= q1 >= 1 always), otherwise double until
    // f(x) < x.
    double hi;
    if (p.D >= 1.0) {
        hi = kappa_n_value(max_q(p), p.D, 8);
    } else {
        hi = std::max(1.0, 2.0 * p.D);
        int guard = 0;
        while (g(hi) >= 0.0) {
            hi *= 2.0;
            if (++guard > 200)
                throw SolveError("solve_kappa: no upper bracket found", 0.0,
                                 hi);
        }
    }

    // Lower end. g(0) > 0 whenever the log argument at 0 is >= 2, which
    // holds for D >= 1; for small D the crossing of interest is the last
    // one, past the maximum of g (f is concave, so g has at most two
    // roots). Bracket from the argmax of g in that case.
    double lo = 0.0;
    if (g(lo) <= 0.0) {
        const double q13 = p.q1 * p.q1 * p.q1;
        const double c = 7.0 * q13 * p.q2 + 2.0 * p.D * p.q1;
        // f'(x) = 1 at 8 q1^3 x + c = 8 D q1^3 / ln 2.
        const double x_star =
            (8.0 * p.D * q13 / std::log(2.0) - c) / (8.0 * q13);
        if (!(x_star > 0.0) || g(x_star) <= 0.0)
            throw SolveError("solve_kappa: f has no fixed point above 0", lo,
                             hi);
        lo = x_star;
    }
    if (g(hi) > 0.0)
        throw SolveError("solve_kappa: upper bracket does not satisfy f(x) < x",
                         lo, hi);

    const double target = rel_tolerance * std::max(1.0, hi);
    double mid = 0.5 * (lo + hi);
    bool converged = false;
    for (int iter = 0; iter < 200; ++iter) {
        mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if (std::abs(gm) <= target) {
            converged = true;
            break;
        }
        if (gm > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    if (!converged)
        throw SolveError("solve_kappa: no convergence after 200 iterations",
                         lo, hi);

    KappaCertificate cert;
    cert.kappa = mid;
    cert.method = KappaMethod::fixed_point;
    cert.residual = std::abs(g(mid));
    cert.witness_grid = witness_grid_from(p, mid);
    return cert;
}

KappaCertificate kappa_n(const QuasiParams& p, int n) {
    p.validate();
    if (n < 1)
        throw std::domain_error("kappa_n: n must be >= 1");
    const double q = max_q(p);
    if (!(q >= 1.0) || !(p.D >= 1.0))
        throw std::domain_error(
            "kappa_n: requires q >= 1 and D >= 1 (got q=" + std::to_string(q) +
            ", D=" + std::to_string(p.D) + ")");

    KappaCertificate cert;
    cert.kappa = kappa_n_value(q, p.D, n);
    cert.method = KappaMethod::kappa_n;
    cert.n = n;
    cert.residual = 0.0;
    cert.witness_grid = witness_grid_from(p, cert.kappa);
    if (cert.witness_grid.front().f_minus_x > 0.0)
        throw std::logic_error("kappa_n: f(kappa_n) <= kappa_n failed");
    return cert;
}

KappaCertificate kappa_from_witness(const QuasiParams& p, double z) {
    p.validate();
    const double fz = eval_f(p, z);
    if (!(fz < z))
        throw std::domain_error("kappa_from_witness: f(z) < z required");
    KappaCertificate cert;
    cert.kappa = fz;
    cert.method = KappaMethod::direct_bound;
    cert.residual = 0.0;
    cert.witness_grid = {{z, fz - z}};
    return cert;
}

double delta_prime(const QuasiParams& p, double kappa) {
    p.validate();
    if (!(kappa >= 0.0))
        throw std::domain_error("delta_prime: kappa must be >= 0");
    const double q1sq = p.q1 * p.q1;
    return 2.0 * (0.5 * q1sq * (2.0 * kappa + p.D + p.q2) + p.q2 + kappa) +
           p.D;
}

double delta_from_delta_prime(double q, double dp) {
    if (!(q >= 0.0) || !(dp >= 0.0))
        throw std::domain_error(
            "delta_from_delta_prime: arguments must be >= 0");
    return 56.0 * dp + 6.0 * q;
}

HyperbolicityBounds theorem_b_bounds(double q, double D) {
    if (!(q >= 1.0) || !(D >= 1.0))
        throw std::domain_error("theorem_b_bounds: requires q >= 1 and D >= 1");
    const QuasiParams p = QuasiParams::rough(q, D);
    HyperbolicityBounds b;
    b.params = p;
    b.certificate = kappa_n(p, 8);
    b.delta_prime = delta_prime(p, b.certificate.kappa);
    b.delta = delta_from_delta_prime(q, b.delta_prime);
    b.route = "theorem-b";
    return b;
}

HyperbolicityBounds fixed_point_bounds(const QuasiParams& p,
                                       double rel_tolerance) {
    HyperbolicityBounds b;
    b.params = p;
    b.certificate = solve_kappa(p, rel_tolerance);
    b.delta_prime = delta_prime(p, b.certificate.kappa);
    // The four-point conversion 56 delta' + 6 q holds for roughly geodesic
    // spaces only.
    b.delta = p.is_rough()
                  ? delta_from_delta_prime(p.q2, b.delta_prime)
                  : std::numeric_limits<double>::quiet_NaN();
    b.route = "fixed-point";
    return b;
}

QuasiParams curtain_model_params(double Lambda) {
    if (!(Lambda > 0.0))
        throw std::domain_error("curtain_model_params: Lambda must be > 0");
    return {1.0, std::max(6.0 * Lambda, 1.0) + 1.0, 125.0 * Lambda};
}

std::vector<KappaTableRow> kappa_table(double q, double D, int n_max) {
    if (!(q >= 1.0) || !(D >= 1.0))
        throw std::domain_error("kappa_table: requires q >= 1 and D >= 1");
    if (n_max < 1)
        throw std::domain_error("kappa_table: n_max must be >= 1");

    std::vector<KappaTableRow> rows;
    rows.reserve(n_max);
    double best = 0.0;
    int best_n = 0;
    for (int n = 1; n <= n_max; ++n) {
        KappaTableRow row;
        row.n = n;
        row.K_n = big_k(n);
        row.eps_n = eps_n(n);
        row.kappa_n = kappa_n_value(q, D, n);
        if (best_n == 0 || row.kappa_n < best) {
            best = row.kappa_n;
            best_n = n;
        }
        row.running_min = best;
        row.running_argmin = best_n;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace hypconst
