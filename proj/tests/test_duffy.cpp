#include "st4/duffy.hpp"
#include "st4/quadgen.hpp"

#include <doctest.h>

#include <cmath>

using namespace st4;

namespace {
const ElementKind all_kinds[] = { ElementKind::Tesseract, ElementKind::TetPrism,
                                  ElementKind::Pentatope };
}

TEST_CASE("weights are positive and sum to the reference volume")
{
    // the smallest admissible count is the one whose collapsed rule still
    // integrates constants (pts = 1 falls short on the simplex-type elements)
    for (auto kind : all_kinds)
        for (int pts : { duffy_pts_for_degree(kind, 0), 3, 6 }) {
            const auto rule = duffy_rule<double>(kind, pts);
            double sum = 0;
            for (std::size_t i = 0; i < rule.weights.size(); ++i) {
                CHECK(rule.weights[i] > 0);
                CHECK(contains({ kind, Variant::Reference }, rule.points[i], 1e-12));
                sum += rule.weights[i];
            }
            CHECK(sum == doctest::Approx(volume({ kind, Variant::Reference })).epsilon(1e-13));
        }
}

TEST_CASE("point counts are the full tensor grid")
{
    for (auto kind : all_kinds)
        for (int pts : { 2, 4 })
            CHECK(duffy_rule<double>(kind, pts).size()
                  == static_cast<std::size_t>(pts) * pts * pts * pts);
}

TEST_CASE("exact degree is sharp: exact at the claimed degree, wrong one above")
{
    for (auto kind : all_kinds)
        for (int pts : { 3, 4, 5 }) {
            const auto rule = duffy_rule<double>(kind, pts);
            const int deg = duffy_exact_degree(kind, pts);
            CHECK(verify_rule(rule, deg, 1e-12).exact);
            CHECK(verify_rule(rule, deg + 1, 1e-12).max_rel_error > 1e-4);
        }
}

TEST_CASE("per-axis counts needed for a target degree")
{
    CHECK(duffy_pts_for_degree(ElementKind::Tesseract, 6) == 4);  // 2*4-1 = 7
    CHECK(duffy_pts_for_degree(ElementKind::TetPrism, 6) == 5);   // 2*5-3 = 7
    CHECK(duffy_pts_for_degree(ElementKind::Pentatope, 6) == 5);  // 2*5-4 = 6
    CHECK(duffy_pts_for_degree(ElementKind::Pentatope, 8) == 6);
    CHECK_THROWS_AS(duffy_rule<double>(ElementKind::Pentatope, 0), std::invalid_argument);
    CHECK_THROWS_AS(duffy_rule<double>(ElementKind::Pentatope, 21), std::invalid_argument);
}

TEST_CASE("extended-precision construction reaches quad accuracy")
{
    const auto rule = duffy_rule<Quad>(ElementKind::Pentatope, 4);
    const auto rep = verify_rule(rule, duffy_exact_degree(ElementKind::Pentatope, 4),
                                 Quad("1e-30"));
    CHECK(rep.exact);
}
