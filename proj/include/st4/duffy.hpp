#ifndef ST4_DUFFY_HPP
#define ST4_DUFFY_HPP

#include "st4/jacobi.hpp"
#include "st4/rule_types.hpp"

namespace st4 {

namespace detail {

// Tensor Gauss-Legendre collapsed onto the [-1,1]-based d-simplex
// { x_i >= -1, sum x_i <= 2 - d } by recursive application of the Duffy
// transformation. Each level folds the Jacobian ((1-t)/2)^{d-1} into the
// weights.
template <typename R>
void simplex_duffy(int dim, const GaussRule1D<R>& gl,
                   std::vector<std::vector<R>>& points, std::vector<R>& weights)
{
    if (dim == 1) {
        points.clear();
        weights.clear();
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            points.push_back({ gl.nodes[i] });
            weights.push_back(gl.weights[i]);
        }
        return;
    }

    std::vector<std::vector<R>> sub_pts;
    std::vector<R> sub_wts;
    simplex_duffy(dim - 1, gl, sub_pts, sub_wts);

    points.clear();
    weights.clear();
    for (std::size_t j = 0; j < gl.nodes.size(); ++j) {
        const R t = gl.nodes[j];
        R jac = gl.weights[j];
        for (int k = 0; k < dim - 1; ++k)
            jac *= (1 - t) / 2;
        for (std::size_t i = 0; i < sub_pts.size(); ++i) {
            std::vector<R> p(dim);
            for (int k = 0; k < dim - 1; ++k)
                p[k] = ((1 - t) * sub_pts[i][k] - (1 + t)) / 2;
            p[dim - 1] = t;
            points.push_back(std::move(p));
            weights.push_back(jac * sub_wts[i]);
        }
    }
}

} // namespace detail

// Guaranteed total-degree exactness of duffy_rule(kind, pts). The collapsed
// axes lose degree to the Jacobian factors, so simplex-type elements fall
// short of the tensor-product 2*pts-1.
inline int duffy_exact_degree(ElementKind kind, int pts_per_axis)
{
    switch (kind) {
        case ElementKind::Tesseract: return 2 * pts_per_axis - 1;
        case ElementKind::TetPrism: return 2 * pts_per_axis - 3;
        case ElementKind::Pentatope: return 2 * pts_per_axis - 4;
    }
    throw std::logic_error("bad ElementKind");
}

// Smallest per-axis count whose Duffy rule is exact to total degree p.
inline int duffy_pts_for_degree(ElementKind kind, int p)
{
    int pts = 1;
    while (duffy_exact_degree(kind, pts) < p)
        ++pts;
    return pts;
}

template <typename R>
QuadratureRule<R> duffy_rule(ElementKind kind, int pts_per_axis)
{
    if (pts_per_axis < 1 || pts_per_axis > 20)
        throw std::invalid_argument("duffy_rule: pts_per_axis must lie in [1, 20]");

    const auto gl = gauss_legendre<R>(pts_per_axis);

    QuadratureRule<R> rule;
    rule.kind = kind;
    rule.provenance = Provenance::Duffy;
    rule.strength = std::max(0, duffy_exact_degree(kind, pts_per_axis));

    if (kind == ElementKind::Tesseract) {
        for (int i = 0; i < pts_per_axis; ++i)
            for (int j = 0; j < pts_per_axis; ++j)
                for (int k = 0; k < pts_per_axis; ++k)
                    for (int l = 0; l < pts_per_axis; ++l) {
                        rule.points.push_back({ gl.nodes[i], gl.nodes[j], gl.nodes[k], gl.nodes[l] });
                        rule.weights.push_back(gl.weights[i] * gl.weights[j] * gl.weights[k] * gl.weights[l]);
                    }
        return rule;
    }

    if (kind == ElementKind::Pentatope) {
        std::vector<std::vector<R>> pts;
        std::vector<R> wts;
        detail::simplex_duffy(4, gl, pts, wts);
        for (std::size_t i = 0; i < pts.size(); ++i) {
            rule.points.push_back({ pts[i][0], pts[i][1], pts[i][2], pts[i][3] });
            rule.weights.push_back(wts[i]);
        }
        return rule;
    }

    // Tet-prism: Duffy tetrahedron in (x1,x2,x3) tensored with 1D
    // Gauss-Legendre along x4.
    std::vector<std::vector<R>> tet_pts;
    std::vector<R> tet_wts;
    detail::simplex_duffy(3, gl, tet_pts, tet_wts);
    for (std::size_t i = 0; i < tet_pts.size(); ++i)
        for (int j = 0; j < pts_per_axis; ++j) {
            rule.points.push_back({ tet_pts[i][0], tet_pts[i][1], tet_pts[i][2], gl.nodes[j] });
            rule.weights.push_back(tet_wts[i] * gl.weights[j]);
        }
    return rule;
}

} // namespace st4

#endif
