#ifndef ST4_RULE_TYPES_HPP
#define ST4_RULE_TYPES_HPP

#include "st4/elements.hpp"

#include <vector>

namespace st4 {

enum class Provenance { Bundled, Generated, Duffy };

template <typename R>
struct RuleOrbit {
    int family_id = 0;
    std::vector<R> params;
    R weight = R(0);
};

template <typename R>
struct QuadratureRule {
    ElementKind kind = ElementKind::Tesseract;
    int strength = 0;
    Provenance provenance = Provenance::Generated;

    // Orbit-compressed form; empty for Duffy rules, which only carry the
    // expanded point set.
    std::vector<RuleOrbit<R>> orbits;

    std::vector<Point4<R>> points;
    std::vector<R> weights;

    std::size_t size() const { return points.size(); }
};

} // namespace st4

#endif
