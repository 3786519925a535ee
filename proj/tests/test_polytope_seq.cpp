#include "st4/polytope_seq.hpp"

#include <doctest.h>

using namespace st4;

namespace {

std::vector<std::string> removed_bits(const DegenerationSequence& s)
{
    std::vector<std::string> out;
    for (const auto& v : s.removed)
        out.push_back(v.bits());
    return out;
}

} // namespace

TEST_CASE("sequence_a removed-vertex tables for d = 2, 3, 4")
{
    CHECK(removed_bits(sequence_a(2)) == std::vector<std::string>{ "11" });
    CHECK(removed_bits(sequence_a(3))
          == std::vector<std::string>{ "111", "110", "101", "011" });
    CHECK(removed_bits(sequence_a(4))
          == std::vector<std::string>{ "1111", "1110", "1101", "1100", "1011", "1010",
                                       "0111", "0110", "1001", "0101", "0011" });
}

TEST_CASE("sequence_b removed-vertex tables for d = 2, 3, 4")
{
    CHECK(removed_bits(sequence_b(2)) == std::vector<std::string>{ "11" });
    CHECK(removed_bits(sequence_b(3))
          == std::vector<std::string>{ "111", "110", "101", "011" });
    CHECK(removed_bits(sequence_b(4))
          == std::vector<std::string>{ "1111", "1110", "1101", "1100", "1011", "1010",
                                       "1001", "0111", "0110", "0101", "0011" });
    CHECK(removed_bits(sequence_b(1)).empty());
}

TEST_CASE("structural invariants of both sequences")
{
    for (int d = 2; d <= 6; ++d)
        for (bool variant_a : { true, false }) {
            const auto s = variant_a ? sequence_a(d) : sequence_b(d);
            REQUIRE(s.polytopes.size() == (std::size_t(1) << d) - d);
            REQUIRE(s.removed.size() == s.polytopes.size() - 1);

            // cube down to simplex, one vertex at a time
            CHECK(s.polytopes.front().vertices.size() == std::size_t(1) << d);
            CHECK(s.polytopes.back().vertices.size() == std::size_t(d) + 1);
            CHECK(s.polytopes.back().vertices == standard_simplex(d).vertices);
            for (std::size_t i = 0; i + 1 < s.polytopes.size(); ++i)
                CHECK(s.polytopes[i].vertices.size()
                      == s.polytopes[i + 1].vertices.size() + 1);

            // every member stays full-dimensional
            for (const auto& p : s.polytopes)
                CHECK(affine_dimension(p) == d);
        }
}

TEST_CASE("vertex count profile is arithmetic")
{
    CHECK(vertex_count_profile(sequence_a(4))
          == std::vector<int>{ 16, 15, 14, 13, 12, 11, 10, 9, 8, 7, 6, 5 });
}

TEST_CASE("sequence_a passes through a prism over the standard simplex")
{
    for (int d = 2; d <= 5; ++d) {
        const auto s = sequence_a(d);
        const int idx = (1 << d) - 2 * d;
        CHECK(is_prism_over(s.polytopes[idx], standard_simplex(d - 1)));
    }
}

TEST_CASE("sequence_b in d = 4 never contains the tetrahedral prism")
{
    const auto simplex3 = standard_simplex(3);
    const auto sa = sequence_a(4);
    const auto sb = sequence_b(4);

    bool a_has = false, b_has = false;
    for (const auto& p : sa.polytopes)
        a_has = a_has || is_prism_over(p, simplex3);
    for (const auto& p : sb.polytopes)
        b_has = b_has || is_prism_over(p, simplex3);
    CHECK(a_has);
    CHECK_FALSE(b_has);
}
