#include "st4/duffy.hpp"
#include "st4/harness.hpp"
#include "st4/rules.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace st4;

namespace {
const ElementKind all_kinds[] = { ElementKind::Tesseract, ElementKind::TetPrism,
                                  ElementKind::Pentatope };

std::size_t cells_per_subcube(ElementKind kind)
{
    switch (kind) {
        case ElementKind::Tesseract: return 1;
        case ElementKind::TetPrism: return 6;   // Kuhn tetrahedra in 3D, extruded
        case ElementKind::Pentatope: return 24; // Kuhn pentatopes in 4D
    }
    return 0;
}
} // namespace

TEST_CASE("random polynomials are deterministic and seed-sensitive")
{
    const auto a = random_polynomial(4, 42);
    const auto b = random_polynomial(4, 42);
    const auto c = random_polynomial(4, 43);
    REQUIRE(a.coefficients.size() == 70); // C(4+4, 4)
    CHECK(a.coefficients == b.coefficients);
    CHECK(a.coefficients != c.coefficients);

    // coefficients look standard normal, not degenerate
    double mean = 0, var = 0;
    for (double x : a.coefficients)
        mean += x;
    mean /= a.coefficients.size();
    for (double x : a.coefficients)
        var += (x - mean) * (x - mean);
    var /= a.coefficients.size();
    CHECK(std::abs(mean) < 0.5);
    CHECK(var > 0.4);
    CHECK(var < 2.5);
}

TEST_CASE("grid cell counts and volume partition")
{
    for (auto kind : all_kinds)
        for (int m : { 1, 2, 3 }) {
            const auto grid = kuhn_freudenthal(kind, m);
            const std::size_t subcubes = std::size_t(m) * m * m * m;
            CHECK(grid.cells.size() == subcubes * cells_per_subcube(kind));

            double vol = 0;
            for (const auto& cell : grid.cells) {
                CHECK(cell.volume > 0);
                vol += cell.volume;
            }
            CHECK(vol == doctest::Approx(1.0).epsilon(1e-12));
        }
}

TEST_CASE("cells map the reference element into the unit hypercube")
{
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto kind : all_kinds) {
        const auto grid = kuhn_freudenthal(kind, 2);
        const auto rule = duffy_rule<double>(kind, 2);
        for (const auto& cell : grid.cells)
            for (const auto& p : rule.points) {
                Eigen::Vector4d xr(p[0], p[1], p[2], p[3]);
                Eigen::Vector4d x = cell.T * xr + cell.shift;
                for (int c = 0; c < 4; ++c) {
                    CHECK(x(c) > -1e-12);
                    CHECK(x(c) < 1 + 1e-12);
                }
            }
    }
}

TEST_CASE("locate_cell: random points land in exactly the cell containing them")
{
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto kind : all_kinds) {
        const auto grid = kuhn_freudenthal(kind, 3);
        for (int t = 0; t < 10000 / 3; ++t) {
            const Point4<double> x{ u(rng), u(rng), u(rng), u(rng) };
            const int idx = locate_cell(grid, x);
            REQUIRE(idx >= 0);
            REQUIRE(idx < static_cast<int>(grid.cells.size()));
            const auto& cell = grid.cells[idx];
            Eigen::Vector4d xr = cell.T.inverse()
                               * (Eigen::Vector4d(x[0], x[1], x[2], x[3]) - cell.shift);
            CHECK(contains({ kind, Variant::Reference },
                           Point4<double>{ xr(0), xr(1), xr(2), xr(3) }, 1e-9));
        }
    }
}

TEST_CASE("grid integration reproduces exact polynomial integrals")
{
    for (auto kind : all_kinds) {
        const auto rule = duffy_rule<double>(kind, 5);
        const int degree = std::min(6, rule.strength);
        const auto poly = random_polynomial(degree, 7);

        double exact = 0;
        for (std::size_t n = 0; n < poly.exponents.size(); ++n) {
            double m = 1;
            for (int c = 0; c < 4; ++c)
                m /= (poly.exponents[n][c] + 1); // unit hypercube monomial integral
            exact += poly.coefficients[n] * m;
        }

        for (int m : { 1, 2 }) {
            const auto grid = kuhn_freudenthal(kind, m);
            const double J = grid_integrate(grid, rule,
                                            [&](const Point4<double>& x) { return poly(x); });
            CHECK(J == doctest::Approx(exact).epsilon(1e-12));
        }
    }
}

TEST_CASE("threaded grid integration is bit-identical to serial")
{
    const auto rule = duffy_rule<double>(ElementKind::Pentatope, 4);
    const auto grid = kuhn_freudenthal(ElementKind::Pentatope, 2);
    const auto f = test_field("f3");
    const double serial = grid_integrate(grid, rule, f, 1);
    const double threaded = grid_integrate(grid, rule, f, 4);
    CHECK(serial == threaded);
}

TEST_CASE("reference integrals of the transcendental test fields")
{
    // f3 = sin(|x|^2) factorizes; cross-check the tabulated value against an
    // independent fine-grid integration
    const auto rule = duffy_rule<double>(ElementKind::Tesseract, 6);
    const auto grid = kuhn_freudenthal(ElementKind::Tesseract, 3);
    for (const char* f_id : { "f1", "f2", "f3" }) {
        const double J = grid_integrate(grid, rule, test_field(f_id), 1);
        const double J_inf = test_field_integral(f_id);
        CHECK(std::abs(J - J_inf) / std::abs(J_inf) < 1e-5);
    }
    CHECK_THROWS_AS(test_field("f9"), std::invalid_argument);
}

TEST_CASE("exactness rows: tiny error up to the strength, visible error above")
{
    const auto catalog = bundled_rules();
    const auto rule = read_rule_file(catalog.at({ ElementKind::Pentatope, 9 }).path);
    const auto rows = exactness_experiment(ElementKind::Pentatope, { rule }, 10, 4);
    REQUIRE(rows.size() == 11);
    for (const auto& row : rows) {
        if (row.p <= 9)
            CHECK(row.percent_error < 1e-12);
        else
            CHECK(row.percent_error > 1e-8);
    }
}

TEST_CASE("convergence series: slope of a smooth field approaches the strength")
{
    const auto catalog = bundled_rules();
    const auto rule = read_rule_file(catalog.at({ ElementKind::Pentatope, 9 }).path);
    const auto series = convergence_experiment(ElementKind::Pentatope, rule, 9, "f3",
                                               { 1, 2, 3 }, 1);
    REQUIRE(series.m_values.size() == 3);
    for (std::size_t i = 1; i < series.h_values.size(); ++i)
        CHECK(series.h_values[i] < series.h_values[i - 1]);
    CHECK(series.slope_valid);
    CHECK(series.slope > 6.0);
}
