#ifndef ST4_DECOMP_HPP
#define ST4_DECOMP_HPP

#include "st4/symmetry.hpp"

#include <map>
#include <string>
#include <vector>

namespace st4 {

// A multiset of orbit families whose cardinalities sum to a target point
// count.
struct Decomposition {
    ElementKind kind;
    std::map<int, int> counts; // family_id -> multiplicity
    int total_points = 0;
    int n_free_params = 0;     // abscissa parameters + one weight per orbit

    int n_orbits() const
    {
        int n = 0;
        for (const auto& [id, mult] : counts)
            n += mult;
        return n;
    }

    int n_abscissa_params() const
    {
        int n = 0;
        for (const auto& [id, mult] : counts)
            n += mult * orbit_family(kind, id).n_params;
        return n;
    }
};

// Canonical signature, e.g. "S1^1 S3^1 S4^1 S5^1".
std::string decomposition_signature(const Decomposition& d);

// All multisets of families whose cardinalities sum to n_points, with the
// multiplicity of the cardinality-1 family capped at max_s1; ordered by
// ascending n_free_params, ties broken by signature.
std::vector<Decomposition> enumerate_decompositions(ElementKind kind, int n_points,
                                                    int max_s1 = 1);

// Count only, without materializing the list.
long count_decompositions(ElementKind kind, int n_points, int max_s1 = 1);

} // namespace st4

#endif
