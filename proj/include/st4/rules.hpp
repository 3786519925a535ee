#ifndef ST4_RULES_HPP
#define ST4_RULES_HPP

#include "st4/rule_types.hpp"
#include "st4/symmetry.hpp"

#include <iosfwd>
#include <map>
#include <sstream>
#include <string>

namespace st4 {

// Expands the orbit-compressed form into concrete points and weights.
template <typename R>
void expand_rule(QuadratureRule<R>& rule)
{
    rule.points.clear();
    rule.weights.clear();
    for (const auto& orb : rule.orbits) {
        auto pts = expand(rule.kind, orb.family_id, orb.params);
        for (const auto& p : pts) {
            rule.points.push_back(p);
            rule.weights.push_back(orb.weight);
        }
    }
}

// Structural invariants: positive weights, weights summing to the reference
// volume, all points inside the element.
template <typename R>
void validate_rule(const QuadratureRule<R>& rule, R tol = R(1e-12))
{
    R sum = 0;
    for (std::size_t i = 0; i < rule.weights.size(); ++i) {
        if (!(rule.weights[i] > 0))
            throw std::runtime_error("rule validation: nonpositive weight");
        if (!contains(ReferenceFrame{ rule.kind, Variant::Reference }, rule.points[i], tol))
            throw std::runtime_error("rule validation: point outside element");
        sum += rule.weights[i];
    }
    if (real_abs(sum - volume<R>({ rule.kind, Variant::Reference })) > tol)
        throw std::runtime_error("rule validation: weights do not sum to element volume");
}

// Plain-text format, 34 significant digits:
//   element strength n_points n_orbits
//   family_id param... weight     (one line per orbit)
template <typename R>
void write_rule(const QuadratureRule<R>& rule, std::ostream& os);

template <typename R>
QuadratureRule<R> read_rule(std::istream& is);

// Companion expanded format: one "x1 x2 x3 x4 w" row per point.
template <typename R>
void write_rule_expanded(const QuadratureRule<R>& rule, std::ostream& os);

void write_rule_file(const QuadratureRule<double>& rule, const std::string& path);
QuadratureRule<double> read_rule_file(const std::string& path);
QuadratureRule<Quad> read_rule_file_quad(const std::string& path);

struct CatalogEntry {
    ElementKind kind;
    int strength;
    int n_points;
    std::string path;
};

// Shipped rules under <dir>/<element>/<strength>-<npoints>.txt. The default
// directory is taken from ST4_RULES_DIR, falling back to "rules".
std::map<std::pair<ElementKind, int>, CatalogEntry> bundled_rules(std::string dir = "");

std::string default_rules_dir();

} // namespace st4

#endif
