#include "st4/decomp.hpp"

#include <doctest.h>

using namespace st4;

TEST_CASE("decomposition bookkeeping: totals, parameters, signature")
{
    const auto list = enumerate_decompositions(ElementKind::Pentatope, 15);
    REQUIRE(!list.empty());
    for (const auto& d : list) {
        int total = 0;
        for (const auto& [id, mult] : d.counts)
            total += mult * orbit_family(d.kind, id).cardinality;
        CHECK(total == 15);
        CHECK(d.total_points == 15);
        CHECK(d.n_free_params == d.n_abscissa_params() + d.n_orbits());
    }
    // ordered by ascending free-parameter count
    for (std::size_t i = 1; i < list.size(); ++i)
        CHECK(list[i - 1].n_free_params <= list[i].n_free_params);

    // 15 = 5 + 10: one S2 and one S3 orbit is among the cheapest options
    bool found = false;
    for (const auto& d : list)
        if (decomposition_signature(d) == "S2^1 S3^1")
            found = true;
    CHECK(found);
}

TEST_CASE("enumeration matches the closed count on small instances")
{
    for (auto kind : { ElementKind::Tesseract, ElementKind::TetPrism, ElementKind::Pentatope })
        for (int n : { 1, 5, 24, 61, 100 })
            CHECK(count_decompositions(kind, n)
                  == static_cast<long>(enumerate_decompositions(kind, n).size()));
}

TEST_CASE("published pentatope decomposition counts")
{
    CHECK(enumerate_decompositions(ElementKind::Pentatope, 61).size() == 24);
    CHECK(count_decompositions(ElementKind::Pentatope, 600) == 37457);
}

TEST_CASE("the center-point cap bounds the S1 multiplicity")
{
    for (const auto& d : enumerate_decompositions(ElementKind::Pentatope, 20, 1)) {
        auto it = d.counts.find(1);
        CHECK((it == d.counts.end() || it->second <= 1));
    }
    // raising the cap can only add decompositions
    CHECK(count_decompositions(ElementKind::Pentatope, 20, 3)
          >= count_decompositions(ElementKind::Pentatope, 20, 1));
}
