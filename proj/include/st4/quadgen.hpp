#ifndef ST4_QUADGEN_HPP
#define ST4_QUADGEN_HPP

#include "st4/basis.hpp"
#include "st4/decomp.hpp"
#include "st4/rule_types.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <vector>

namespace st4 {

// Symmetry-reduced moment system: one basis representative per equivalence
// class under the element's symmetry group. The right-hand side is zero
// except for the constant function, whose integral is 1/psi_0000.
struct MomentSystem {
    ElementKind kind;
    int strength;
    BasisSet full;                // all indices with total degree <= strength
    std::vector<int> rep_cols;    // representative positions into full.indices
    Eigen::VectorXd rhs;
};

MomentSystem build_moment_system(ElementKind kind, int strength);

// Images of a reference point under the element's full symmetry group.
std::vector<Point4<double>> group_images(ElementKind kind, const Point4<double>& p);

struct SolveConfig {
    int max_iterations = 200;
    double residual_tol = 1e-14;
    int n_starts = 8;
    std::uint64_t rng_seed = 0;
    bool penalty_on = true;
    bool extended = false;
    int jobs = 1;
    std::ostream* log = nullptr;  // one line per decomposition attempt
};

struct SearchResult {
    Decomposition decomposition;
    std::optional<QuadratureRule<double>> rule;
    double residual = std::numeric_limits<double>::infinity();
    int iterations_used = 0;
    int starts_used = 0;
};

// Splits the flat abscissa-parameter vector per orbit instance and clamps
// each block into its admissible box.
std::vector<std::vector<double>> split_and_clamp_params(const Decomposition& d,
                                                        const std::vector<double>& theta);

// A(r, o) = sum over the o-th orbit's points of psi_rep_r; columns follow the
// decomposition's orbit instances in signature order.
Eigen::MatrixXd orbit_moment_matrix(const MomentSystem& sys, const Decomposition& d,
                                    const std::vector<std::vector<double>>& orbit_params,
                                    std::vector<int>* orbit_sizes = nullptr);

// Moment residual at (theta, w); appends the weight-positivity penalty
// sum_i (w_i - |w_i|)/2 over all expanded points when penalty_on.
Eigen::VectorXd residual(const MomentSystem& sys, const Decomposition& d,
                         const std::vector<double>& theta, const Eigen::VectorXd& weights,
                         bool penalty_on);

// Weight elimination: minimum-norm linear least squares over the orbit
// weights at fixed abscissa parameters.
std::pair<Eigen::VectorXd, double> solve_weights(const MomentSystem& sys,
                                                 const Decomposition& d,
                                                 const std::vector<double>& theta);

// Levenberg-Marquardt over the abscissa parameters with the weights
// eliminated at every iteration. Returns the best (theta, w, residual norm).
struct LmResult {
    std::vector<double> theta;
    Eigen::VectorXd weights;
    double residual = std::numeric_limits<double>::infinity();
    int iterations = 0;
};

LmResult lm_minimize(const MomentSystem& sys, const Decomposition& d,
                     std::vector<double> theta0, const SolveConfig& cfg);

// Diagnostic mode: one joint LM over abscissa parameters and weights, no
// separability.
LmResult lm_minimize_full(const MomentSystem& sys, const Decomposition& d,
                          std::vector<double> theta0, Eigen::VectorXd w0,
                          const SolveConfig& cfg);

// Multi-start search across decompositions in free-parameter order; stops at
// the first decomposition yielding an admissible rule. Deterministic given
// cfg.rng_seed.
std::vector<SearchResult> search(ElementKind kind, int strength, int n_points,
                                 const SolveConfig& cfg);

// Gauss-Newton refinement of a converged rule in quad precision, so rule
// files carry the full 34 digits.
QuadratureRule<Quad> polish_rule_quad(const QuadratureRule<double>& rule, int strength);

struct VerifyReport {
    double max_rel_error = 0;
    std::array<int, 4> worst_monomial{};
    bool weights_positive = true;
    bool points_inside = true;
    bool exact = false; // max_rel_error within tolerance

    bool pass() const { return exact && weights_positive && points_inside; }
};

// Checks every monomial of total degree <= strength against the exact
// reference-element integral; errors are relative to max(1, |exact|).
template <typename R>
VerifyReport verify_rule(const QuadratureRule<R>& rule, int strength, R tol)
{
    VerifyReport rep;
    const std::size_t np = rule.points.size();

    for (std::size_t i = 0; i < np; ++i) {
        if (!(rule.weights[i] > 0))
            rep.weights_positive = false;
        if (!contains(ReferenceFrame{ rule.kind, Variant::Reference }, rule.points[i], R(1e-12)))
            rep.points_inside = false;
    }

    // per-point coordinate power tables
    std::vector<std::vector<R>> pows(np);
    for (std::size_t i = 0; i < np; ++i) {
        pows[i].resize(4 * (strength + 1));
        for (int c = 0; c < 4; ++c) {
            pows[i][c * (strength + 1)] = R(1);
            for (int e = 1; e <= strength; ++e)
                pows[i][c * (strength + 1) + e] = pows[i][c * (strength + 1) + e - 1] * rule.points[i][c];
        }
    }

    R max_err = 0;
    for (int r = 0; r <= strength; ++r)
        for (int s = 0; r + s <= strength; ++s)
            for (int t = 0; r + s + t <= strength; ++t)
                for (int v = 0; r + s + t + v <= strength; ++v) {
                    R quad = 0;
                    for (std::size_t i = 0; i < np; ++i)
                        quad += rule.weights[i] * pows[i][r] * pows[i][(strength + 1) + s]
                              * pows[i][2 * (strength + 1) + t] * pows[i][3 * (strength + 1) + v];
                    R exact = monomial_integral<R>({ rule.kind, Variant::Reference }, r, s, t, v);
                    R scale = real_abs(exact) > 1 ? real_abs(exact) : R(1);
                    R err = real_abs(quad - exact) / scale;
                    if (err > max_err) {
                        max_err = err;
                        rep.worst_monomial = { r, s, t, v };
                    }
                }
    rep.max_rel_error = static_cast<double>(max_err);
    rep.exact = max_err <= tol;
    return rep;
}

} // namespace st4

#endif
