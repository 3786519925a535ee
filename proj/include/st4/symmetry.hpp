#ifndef ST4_SYMMETRY_HPP
#define ST4_SYMMETRY_HPP

#include "st4/elements.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace st4 {

struct OrbitFamily {
    ElementKind kind;
    int family_id;   // 1-based, paper order
    int n_params;
    int cardinality; // orbit size at generic parameters
};

inline const std::vector<OrbitFamily>& orbit_families(ElementKind kind)
{
    static const std::vector<OrbitFamily> tesseract = {
        { ElementKind::Tesseract, 1, 0, 1 },   { ElementKind::Tesseract, 2, 1, 8 },
        { ElementKind::Tesseract, 3, 1, 24 },  { ElementKind::Tesseract, 4, 2, 48 },
        { ElementKind::Tesseract, 5, 1, 32 },  { ElementKind::Tesseract, 6, 2, 96 },
        { ElementKind::Tesseract, 7, 3, 192 }, { ElementKind::Tesseract, 8, 1, 16 },
        { ElementKind::Tesseract, 9, 2, 64 },  { ElementKind::Tesseract, 10, 2, 96 },
        { ElementKind::Tesseract, 11, 3, 192 }, { ElementKind::Tesseract, 12, 4, 384 },
    };
    static const std::vector<OrbitFamily> tet_prism = {
        { ElementKind::TetPrism, 1, 0, 1 },  { ElementKind::TetPrism, 2, 1, 2 },
        { ElementKind::TetPrism, 3, 1, 4 },  { ElementKind::TetPrism, 4, 2, 8 },
        { ElementKind::TetPrism, 5, 1, 6 },  { ElementKind::TetPrism, 6, 2, 12 },
        { ElementKind::TetPrism, 7, 2, 12 }, { ElementKind::TetPrism, 8, 3, 24 },
        { ElementKind::TetPrism, 9, 3, 24 }, { ElementKind::TetPrism, 10, 4, 48 },
    };
    static const std::vector<OrbitFamily> pentatope = {
        { ElementKind::Pentatope, 1, 0, 1 },  { ElementKind::Pentatope, 2, 1, 5 },
        { ElementKind::Pentatope, 3, 1, 10 }, { ElementKind::Pentatope, 4, 2, 20 },
        { ElementKind::Pentatope, 5, 2, 30 }, { ElementKind::Pentatope, 6, 3, 60 },
        { ElementKind::Pentatope, 7, 4, 120 },
    };
    switch (kind) {
        case ElementKind::Tesseract: return tesseract;
        case ElementKind::TetPrism: return tet_prism;
        case ElementKind::Pentatope: return pentatope;
    }
    throw std::logic_error("bad ElementKind");
}

inline const OrbitFamily& orbit_family(ElementKind kind, int family_id)
{
    const auto& fams = orbit_families(kind);
    if (family_id < 1 || family_id > static_cast<int>(fams.size()))
        throw std::invalid_argument("unknown orbit family id");
    return fams[family_id - 1];
}

inline int orbit_weight_multiplicity(const OrbitFamily& f) { return f.cardinality; }

namespace detail {

// Seed tuple for a family. Tesseract seeds are coordinate magnitudes in
// [-1,1]^4; simplex-type seeds are (lambda..., x4) resp. 5 lambdas.
template <typename R>
std::vector<R> orbit_seed(ElementKind kind, int family_id, const R* a)
{
    const R half = R(1) / 2;
    if (kind == ElementKind::Tesseract) {
        switch (family_id) {
            case 1: return { 0, 0, 0, 0 };
            case 2: return { a[0], 0, 0, 0 };
            case 3: return { a[0], a[0], 0, 0 };
            case 4: return { a[0], a[1], 0, 0 };
            case 5: return { a[0], a[0], a[0], 0 };
            case 6: return { a[0], a[0], a[1], 0 };
            case 7: return { a[0], a[1], a[2], 0 };
            case 8: return { a[0], a[0], a[0], a[0] };
            case 9: return { a[0], a[0], a[0], a[1] };
            case 10: return { a[0], a[0], a[1], a[1] };
            case 11: return { a[0], a[0], a[1], a[2] };
            case 12: return { a[0], a[1], a[2], a[3] };
        }
    }
    else if (kind == ElementKind::TetPrism) {
        const R quarter = R(1) / 4;
        switch (family_id) {
            case 1: return { quarter, quarter, quarter, quarter, 0 };
            case 2: return { quarter, quarter, quarter, quarter, a[0] };
            case 3: return { a[0], a[0], a[0], 1 - 3 * a[0], 0 };
            case 4: return { a[0], a[0], a[0], 1 - 3 * a[0], a[1] };
            case 5: return { a[0], a[0], half - a[0], half - a[0], 0 };
            case 6: return { a[0], a[0], half - a[0], half - a[0], a[1] };
            case 7: return { a[0], a[0], a[1], 1 - 2 * a[0] - a[1], 0 };
            case 8: return { a[0], a[0], a[1], 1 - 2 * a[0] - a[1], a[2] };
            case 9: return { a[0], a[1], a[2], 1 - a[0] - a[1] - a[2], 0 };
            case 10: return { a[0], a[1], a[2], 1 - a[0] - a[1] - a[2], a[3] };
        }
    }
    else {
        const R fifth = R(1) / 5;
        switch (family_id) {
            case 1: return { fifth, fifth, fifth, fifth, fifth };
            case 2: return { a[0], a[0], a[0], a[0], 1 - 4 * a[0] };
            case 3: return { a[0], a[0], a[0], half - 3 * a[0] / 2, half - 3 * a[0] / 2 };
            case 4: return { a[0], a[0], a[0], a[1], 1 - 3 * a[0] - a[1] };
            case 5: return { a[0], a[0], a[1], a[1], 1 - 2 * a[0] - 2 * a[1] };
            case 6: return { a[0], a[0], a[1], a[2], 1 - 2 * a[0] - a[1] - a[2] };
            case 7: return { a[0], a[1], a[2], a[3], 1 - a[0] - a[1] - a[2] - a[3] };
        }
    }
    throw std::invalid_argument("unknown orbit family id");
}

} // namespace st4::detail

// Admissible box of the free parameters, as sequential interval bounds: the
// bound of parameter n may depend on the values of parameters 0..n-1. Used
// both for clamping inside the optimizer and for uniform random draws.
template <typename R>
void orbit_param_bounds(ElementKind kind, int family_id, const R* params, int n,
                        R& lo, R& hi)
{
    lo = R(0);
    hi = R(1);
    if (kind == ElementKind::Tesseract)
        return;

    if (kind == ElementKind::TetPrism) {
        switch (family_id) {
            case 2: return;                                     // delta
            case 3: case 4:
                if (n == 0) hi = R(1) / 3;                      // alpha
                return;                                         // delta
            case 5: case 6:
                if (n == 0) hi = R(1) / 2;
                return;
            case 7: case 8:
                if (n == 0) hi = R(1) / 2;
                else if (n == 1) hi = 1 - 2 * params[0];
                return;
            case 9: case 10:
                if (n == 1) hi = 1 - params[0];
                else if (n == 2) hi = 1 - params[0] - params[1];
                return;
            default: return;
        }
    }

    switch (family_id) {
        case 2: hi = R(1) / 4; return;
        case 3: hi = R(1) / 3; return;
        case 4:
            if (n == 0) hi = R(1) / 3;
            else hi = 1 - 3 * params[0];
            return;
        case 5:
            if (n == 0) hi = R(1) / 2;
            else hi = (1 - 2 * params[0]) / 2;
            return;
        case 6:
            if (n == 0) hi = R(1) / 2;
            else if (n == 1) hi = 1 - 2 * params[0];
            else hi = 1 - 2 * params[0] - params[1];
            return;
        case 7:
            if (n == 1) hi = 1 - params[0];
            else if (n == 2) hi = 1 - params[0] - params[1];
            else if (n == 3) hi = 1 - params[0] - params[1] - params[2];
            return;
        default: return;
    }
}

template <typename R>
void clamp_orbit_params(ElementKind kind, int family_id, std::vector<R>& params)
{
    for (std::size_t n = 0; n < params.size(); ++n) {
        R lo, hi;
        orbit_param_bounds(kind, family_id, params.data(), static_cast<int>(n), lo, hi);
        if (hi < lo)
            hi = lo;
        params[n] = std::clamp(params[n], lo, hi);
    }
}

template <typename R>
bool orbit_params_admissible(ElementKind kind, int family_id, const std::vector<R>& params)
{
    for (std::size_t n = 0; n < params.size(); ++n) {
        R lo, hi;
        orbit_param_bounds(kind, family_id, params.data(), static_cast<int>(n), lo, hi);
        if (params[n] < lo || params[n] > hi)
            return false;
    }
    return true;
}

template <typename R>
struct OrbitInstance {
    OrbitFamily family;
    std::vector<R> params;
};

// Expands an orbit instance into Cartesian points on the reference element.
// The seed is replicated over the element's full symmetry group and exact
// duplicates are removed, so coincident parameters degenerate gracefully.
template <typename R>
std::vector<Point4<R>> expand(ElementKind kind, int family_id,
                              const std::vector<R>& params, bool strict = false)
{
    const auto& fam = orbit_family(kind, family_id);
    if (static_cast<int>(params.size()) != fam.n_params)
        throw std::invalid_argument("expand: wrong parameter count");
    if (strict && !orbit_params_admissible(kind, family_id, params))
        throw std::domain_error("expand: parameters outside admissible box");

    auto seed = detail::orbit_seed(kind, family_id, params.data());

    std::vector<std::array<R, 5>> tuples;
    if (kind == ElementKind::Tesseract) {
        tuples.reserve(384);
        std::array<int, 4> perm = { 0, 1, 2, 3 };
        do {
            for (int signs = 0; signs < 16; ++signs) {
                std::array<R, 5> t{};
                for (int i = 0; i < 4; ++i)
                    t[i] = (signs >> i & 1) ? -seed[perm[i]] : seed[perm[i]];
                tuples.push_back(t);
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    else if (kind == ElementKind::TetPrism) {
        tuples.reserve(48);
        std::array<int, 4> perm = { 0, 1, 2, 3 };
        do {
            for (int sign = 0; sign < 2; ++sign) {
                std::array<R, 5> t;
                for (int i = 0; i < 4; ++i)
                    t[i] = seed[perm[i]];
                t[4] = sign ? -seed[4] : seed[4];
                tuples.push_back(t);
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    else {
        tuples.reserve(120);
        std::array<int, 5> perm = { 0, 1, 2, 3, 4 };
        do {
            std::array<R, 5> t;
            for (int i = 0; i < 5; ++i)
                t[i] = seed[perm[i]];
            tuples.push_back(t);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    std::sort(tuples.begin(), tuples.end());
    tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());

    std::vector<Point4<R>> pts;
    pts.reserve(tuples.size());
    for (const auto& t : tuples) {
        if (kind == ElementKind::Tesseract) {
            pts.push_back({ t[0], t[1], t[2], t[3] });
        }
        else if (kind == ElementKind::TetPrism) {
            const R s = t[0] + t[1] + t[2] + t[3];
            pts.push_back({ 2 * t[1] - s, 2 * t[2] - s, 2 * t[3] - s, t[4] });
        }
        else {
            const R s = t[0] + t[1] + t[2] + t[3] + t[4];
            pts.push_back({ 2 * t[1] - s, 2 * t[2] - s, 2 * t[3] - s, 2 * t[4] - s });
        }
    }
    return pts;
}

// Deterministic 64-bit mix for deriving per-task seeds.
inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace st4

#endif
