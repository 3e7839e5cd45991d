#pragma once

// Closed-form hyperbolicity constants for quasi-geodesic metric spaces:
// the control function f, its fixed point kappa, the kappa_n estimate
// family, and the delta' / delta bounds derived from them.

#include <stdexcept>
#include <string>
#include <vector>

namespace hypconst {

// (q1, q2, D): multiplicative and additive quasi-geodesic constants plus
// the guessing-geodesics constant. q-roughly geodesic means q1 == 1.
struct QuasiParams {
    double q1 = 1.0;
    double q2 = 0.0;
    double D = 1.0;

    bool is_rough() const { return q1 == 1.0; }

    // Throws std::domain_error unless q1 >= 1, q2 >= 0, D > 0.
    void validate() const;

    static QuasiParams rough(double q, double D) { return {1.0, q, D}; }
};

enum class KappaMethod { fixed_point, kappa_n, direct_bound };

struct KappaWitness {
    double x = 0.0;
    double f_minus_x = 0.0;  // f(x) - x, negative past the crossing
};

// A value kappa together with numeric evidence that f(x) < x beyond it.
struct KappaCertificate {
    double kappa = 0.0;
    KappaMethod method = KappaMethod::fixed_point;
    int n = 0;               // estimate index when method == kappa_n
    double residual = 0.0;   // |f(kappa) - kappa| for fixed_point, else 0
    std::vector<KappaWitness> witness_grid;
};

struct HyperbolicityBounds {
    double delta_prime = 0.0;  // thin-triangle constant
    double delta = 0.0;        // four-point constant
    QuasiParams params;
    KappaCertificate certificate;
    std::string route;  // "fixed-point", "kappa-n" or "theorem-b"
};

// Thrown when the fixed-point search fails to converge; carries the last
// bracket examined.
struct SolveError : std::runtime_error {
    double lo, hi;
    SolveError(const std::string& what, double lo_, double hi_)
        : std::runtime_error(what), lo(lo_), hi(hi_) {}
};

// f(x) = D log2(8 x q1^3 + 7 q1^3 q2 + 2 D q1) + (q1+q2) D / 2 + D.
// Increasing and strictly concave in x. Requires x >= 0.
double eval_f(const QuasiParams& params, double x);

// Fixed point of f: the unique crossing of f with the identity (bisection,
// bracketed by [0, kappa_8] when D >= 1, otherwise by doubling).
// `rel_tolerance` scales with the bracket to give the residual target.
KappaCertificate solve_kappa(const QuasiParams& params,
                             double rel_tolerance = 1e-9);

// kappa_n = K_n q D^(1+eps_n) with q = max{q1, q2},
// K_n = log2(n+8) + 9 + ceil(1 + log2(log2(n+8)+9)) and
// eps_n = 1 / log2(n+8). Requires q >= 1, D >= 1, n >= 1.
KappaCertificate kappa_n(const QuasiParams& params, int n);

// kappa = f(z) for a user-supplied z with f(z) < z (a member of the set Z).
KappaCertificate kappa_from_witness(const QuasiParams& params, double z);

// delta'(q1,q2,D) = 2 (q1^2/2 (2 kappa + D + q2) + q2 + kappa) + D;
// reduces to 4 kappa + 2 D + 3 q2 when q1 == 1.
double delta_prime(const QuasiParams& params, double kappa);

// delta = 56 delta' + 6 q for q-roughly geodesic spaces.
double delta_from_delta_prime(double q, double delta_prime);

// Closed-form pair delta' <= 72 q D^(5/4) + 2D + 3q, delta = 56 delta' + 6q.
// Computed by composing kappa_n(.., 8) with the two formulas above.
HyperbolicityBounds theorem_b_bounds(double q, double D);

// Fixed-point route end to end: solve kappa, then delta' and delta.
HyperbolicityBounds fixed_point_bounds(const QuasiParams& params,
                                       double rel_tolerance = 1e-9);

// Curtain-model parameters (q1=1, q2=max{6 Lambda,1}+1, D=125 Lambda).
QuasiParams curtain_model_params(double Lambda);

struct KappaTableRow {
    int n = 0;
    double K_n = 0.0;
    double eps_n = 0.0;
    double kappa_n = 0.0;
    double running_min = 0.0;
    int running_argmin = 0;
};

// Rows for n = 1..n_max with the running minimum and its argmin.
std::vector<KappaTableRow> kappa_table(double q, double D, int n_max);

}  // namespace hypconst
