#include "st4/decomp.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace st4 {

std::string decomposition_signature(const Decomposition& d)
{
    if (d.counts.empty())
        throw std::invalid_argument("decomposition_signature: empty decomposition");
    std::ostringstream os;
    bool first = true;
    for (const auto& [id, mult] : d.counts) {
        if (!first)
            os << ' ';
        os << 'S' << id << '^' << mult;
        first = false;
    }
    return os.str();
}

namespace {

void enumerate_rec(ElementKind kind, const std::vector<OrbitFamily>& fams,
                   std::size_t fi, int remaining, int max_s1,
                   std::map<int, int>& counts, std::vector<Decomposition>& out)
{
    if (remaining == 0) {
        Decomposition d{ kind, counts, 0, 0 };
        for (const auto& [id, mult] : counts) {
            d.total_points += mult * orbit_family(kind, id).cardinality;
            d.n_free_params += mult * (orbit_family(kind, id).n_params + 1);
        }
        out.push_back(std::move(d));
        return;
    }
    if (fi == fams.size())
        return;

    const auto& f = fams[fi];
    const int cap = (f.cardinality == 1) ? max_s1 : remaining / f.cardinality;
    for (int mult = 0; mult <= cap && mult * f.cardinality <= remaining; ++mult) {
        if (mult > 0)
            counts[f.family_id] = mult;
        enumerate_rec(kind, fams, fi + 1, remaining - mult * f.cardinality, max_s1,
                      counts, out);
        counts.erase(f.family_id);
    }
}

} // namespace

std::vector<Decomposition> enumerate_decompositions(ElementKind kind, int n_points,
                                                    int max_s1)
{
    if (n_points < 1 || n_points > 2000)
        throw std::invalid_argument("enumerate_decompositions: n_points must lie in [1, 2000]");

    std::vector<Decomposition> out;
    std::map<int, int> counts;
    enumerate_rec(kind, orbit_families(kind), 0, n_points, max_s1, counts, out);

    std::stable_sort(out.begin(), out.end(), [](const Decomposition& a, const Decomposition& b) {
        if (a.n_free_params != b.n_free_params)
            return a.n_free_params < b.n_free_params;
        return decomposition_signature(a) < decomposition_signature(b);
    });
    return out;
}

long count_decompositions(ElementKind kind, int n_points, int max_s1)
{
    return static_cast<long>(enumerate_decompositions(kind, n_points, max_s1).size());
}

} // namespace st4
