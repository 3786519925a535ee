#ifndef ST4_HARNESS_HPP
#define ST4_HARNESS_HPP

#include "st4/basis.hpp"
#include "st4/rule_types.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace st4 {

// --- random polynomials ------------------------------------------------------

// Dense polynomial with one standard-normal coefficient per multi-index of
// total degree <= degree. Coefficients are drawn with a hand-rolled
// Box-Muller transform over splitmix64 output, so the draw is identical on
// every platform.
struct RandomPolynomial {
    int degree = 0;
    std::vector<std::array<int, 4>> exponents;
    std::vector<double> coefficients;

    template <typename R>
    R operator()(const Point4<R>& x) const
    {
        R sum = 0;
        for (std::size_t n = 0; n < exponents.size(); ++n) {
            R term = R(coefficients[n]);
            for (int c = 0; c < 4; ++c)
                for (int e = 0; e < exponents[n][c]; ++e)
                    term *= x[c];
            sum += term;
        }
        return sum;
    }
};

RandomPolynomial random_polynomial(int degree, std::uint64_t seed);

// --- exactness experiment ----------------------------------------------------

struct ExactnessRow {
    int strength;
    int p;
    double J;
    double J_inf;
    double percent_error;
};

// Integrates a seeded random polynomial of each order p <= p_max over the
// unit-variant single element with each rule; J_inf comes from the exact
// monomial integrals.
std::vector<ExactnessRow> exactness_experiment(ElementKind kind,
                                               const std::vector<QuadratureRule<double>>& rules,
                                               int p_max, std::uint64_t seed);

// --- Kuhn-Freudenthal grids --------------------------------------------------

// Affine cell x = T * x_ref + shift from the reference element into [0,1]^4.
struct GridCell {
    Eigen::Matrix4d T;
    Eigen::Vector4d shift;
    double volume;
};

struct Grid4 {
    ElementKind kind;
    int m = 0;
    std::vector<GridCell> cells;
};

// m^4 subcubes of [0,1]^4; simplex-type kinds split each subcube by the Kuhn
// triangulation of the first three (tet-prism, extruded in x4) or all four
// axes (pentatope).
Grid4 kuhn_freudenthal(ElementKind kind, int m);

// Unique cell index for a point of [0,1)^4 under the half-open membership
// convention (subcube by floor, simplex by stable coordinate ordering).
int locate_cell(const Grid4& grid, const Point4<double>& x);

using Field4 = std::function<double(const Point4<double>&)>;

// Sum over cells of the affinely mapped rule; weights scale by the constant
// Jacobian. Deterministic indexed reduction regardless of jobs.
double grid_integrate(const Grid4& grid, const QuadratureRule<double>& rule,
                      const Field4& f, int jobs = 1);

// --- transcendental convergence ----------------------------------------------

// f1 = exp(x^2 + 2 y^3 + 3 z^4 + 4 t^5)
// f2 = sin(x^2 + 2 y^3 + 3 z^4 + 4 t^5)
// f3 = sin(x^2 + y^2 + z^2 + t^2)
Field4 test_field(const std::string& f_id);

// Exact integral of f1..f3 over [0,1]^4, via the separable one-dimensional
// factorization evaluated with extended-precision Gauss-Legendre.
double test_field_integral(const std::string& f_id);

struct ConvergenceSeries {
    int strength = 0;
    std::vector<int> m_values;
    std::vector<double> h_values;
    std::vector<double> J_values;
    double J_inf = 0;
    std::vector<double> percent_errors;
    double slope = 0;      // log-log LSQ fit over the finest half
    bool slope_valid = false; // false when the series sits at the machine floor
};

ConvergenceSeries convergence_experiment(ElementKind kind, const QuadratureRule<double>& rule,
                                         int strength, const std::string& f_id,
                                         const std::vector<int>& m_list, int jobs = 1);

// --- CSV ---------------------------------------------------------------------

void write_exactness_csv(std::ostream& os, ElementKind kind,
                         const std::vector<ExactnessRow>& rows);
void write_convergence_csv(std::ostream& os, ElementKind kind,
                           const std::vector<ConvergenceSeries>& series);

} // namespace st4

#endif
