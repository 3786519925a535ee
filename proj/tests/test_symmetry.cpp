#include "st4/symmetry.hpp"

#include <doctest.h>

#include <random>

using namespace st4;

namespace {

const ElementKind all_kinds[] = { ElementKind::Tesseract, ElementKind::TetPrism,
                                  ElementKind::Pentatope };

// Generic parameters drawn uniformly from the interior of the sequential
// admissible box.
std::vector<double> generic_params(ElementKind kind, int family_id, std::mt19937_64& rng)
{
    const auto& fam = orbit_family(kind, family_id);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    std::vector<double> params(fam.n_params);
    for (int n = 0; n < fam.n_params; ++n) {
        double lo, hi;
        orbit_param_bounds(kind, family_id, params.data(), n, lo, hi);
        params[n] = lo + (hi - lo) * u(rng);
    }
    return params;
}

} // namespace

TEST_CASE("family tables: counts and cardinality sums")
{
    CHECK(orbit_families(ElementKind::Tesseract).size() == 12);
    CHECK(orbit_families(ElementKind::TetPrism).size() == 10);
    CHECK(orbit_families(ElementKind::Pentatope).size() == 7);

    // largest families realize the full group order
    CHECK(orbit_family(ElementKind::Tesseract, 12).cardinality == 384);
    CHECK(orbit_family(ElementKind::TetPrism, 10).cardinality == 48);
    CHECK(orbit_family(ElementKind::Pentatope, 7).cardinality == 120);
    CHECK_THROWS_AS(orbit_family(ElementKind::Pentatope, 8), std::invalid_argument);
}

TEST_CASE("orbit expansion sizes match the cardinality tables at generic parameters")
{
    std::mt19937_64 rng(17);
    for (auto kind : all_kinds)
        for (const auto& fam : orbit_families(kind))
            for (int draw = 0; draw < 50; ++draw) {
                const auto params = generic_params(kind, fam.family_id, rng);
                const auto pts = expand(kind, fam.family_id, params);
                CHECK(static_cast<int>(pts.size()) == fam.cardinality);
            }
}

TEST_CASE("expanded points of admissible parameters lie inside the element")
{
    std::mt19937_64 rng(23);
    for (auto kind : all_kinds)
        for (const auto& fam : orbit_families(kind))
            for (int draw = 0; draw < 10; ++draw) {
                const auto params = generic_params(kind, fam.family_id, rng);
                for (const auto& p : expand(kind, fam.family_id, params))
                    CHECK(contains({ kind, Variant::Reference }, p, 1e-12));
            }
}

TEST_CASE("coincident parameters degenerate to smaller orbits")
{
    // tesseract family 4 (a, b, 0, 0) with a == b collapses onto family 3
    auto pts = expand(ElementKind::Tesseract, 4, std::vector<double>{ 0.5, 0.5 });
    CHECK(pts.size() == 24);
    // pentatope family 7 with all four lambdas equal collapses onto family 2
    pts = expand(ElementKind::Pentatope, 7, std::vector<double>{ 0.1, 0.1, 0.1, 0.1 });
    CHECK(pts.size() == 5);
}

TEST_CASE("expansion argument validation")
{
    CHECK_THROWS_AS(expand(ElementKind::Pentatope, 2, std::vector<double>{}),
                    std::invalid_argument);
    CHECK_THROWS_AS(expand(ElementKind::Pentatope, 2, std::vector<double>{ 0.9 }, /*strict=*/true),
                    std::domain_error);
    CHECK_NOTHROW(expand(ElementKind::Pentatope, 2, std::vector<double>{ 0.2 }, /*strict=*/true));
}

TEST_CASE("splitmix64 is a fixed deterministic mix")
{
    CHECK(splitmix64(0) == 0xe220a8397b1dcdafULL);
    CHECK(splitmix64(1) != splitmix64(2));
}
