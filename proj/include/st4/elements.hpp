#ifndef ST4_ELEMENTS_HPP
#define ST4_ELEMENTS_HPP

#include "st4/real.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace st4 {

enum class ElementKind { Tesseract, TetPrism, Pentatope };

enum class Variant { Reference, Unit };

inline std::string kind_name(ElementKind k)
{
    switch (k) {
        case ElementKind::Tesseract: return "tesseract";
        case ElementKind::TetPrism: return "tet_prism";
        case ElementKind::Pentatope: return "pentatope";
    }
    throw std::logic_error("bad ElementKind");
}

inline ElementKind kind_from_name(const std::string& s)
{
    if (s == "tesseract") return ElementKind::Tesseract;
    if (s == "tet_prism" || s == "tetprism" || s == "prism") return ElementKind::TetPrism;
    if (s == "pentatope") return ElementKind::Pentatope;
    throw std::invalid_argument("unknown element kind: " + s);
}

template <typename R>
using Point4 = std::array<R, 4>;

struct ReferenceFrame {
    ElementKind kind;
    Variant variant;
};

using Rational = boost::multiprecision::cpp_rational;

// --- volumes ---------------------------------------------------------------

inline Rational volume_rational(ElementKind k, Variant v)
{
    if (v == Variant::Reference) {
        switch (k) {
            case ElementKind::Tesseract: return Rational(16);
            case ElementKind::TetPrism: return Rational(8, 3);
            case ElementKind::Pentatope: return Rational(2, 3);
        }
    }
    else {
        switch (k) {
            case ElementKind::Tesseract: return Rational(1);
            case ElementKind::TetPrism: return Rational(1, 6);
            case ElementKind::Pentatope: return Rational(1, 24);
        }
    }
    throw std::logic_error("bad ElementKind");
}

template <typename R>
R volume(ReferenceFrame f)
{
    Rational q = volume_rational(f.kind, f.variant);
    return R(q.convert_to<R>());
}

inline double volume(ReferenceFrame f) { return volume<double>(f); }

// --- containment -----------------------------------------------------------

// Bounding inequalities read off the nested integral bounds of the reference
// elements; the unit variants are the [0,1]-based affine images.
template <typename R>
bool contains(ReferenceFrame f, const Point4<R>& p, R tol)
{
    if (tol < 0)
        throw std::invalid_argument("contains: tol must be nonnegative");
    const R x1 = p[0], x2 = p[1], x3 = p[2], x4 = p[3];

    if (f.variant == Variant::Reference) {
        switch (f.kind) {
            case ElementKind::Tesseract:
                return real_abs(x1) <= 1 + tol && real_abs(x2) <= 1 + tol
                    && real_abs(x3) <= 1 + tol && real_abs(x4) <= 1 + tol;
            case ElementKind::TetPrism:
                return x1 >= -1 - tol && x2 >= -1 - tol && x3 >= -1 - tol
                    && x2 + x3 <= 0 + tol && x1 + x2 + x3 <= -1 + tol
                    && real_abs(x4) <= 1 + tol;
            case ElementKind::Pentatope:
                return x1 >= -1 - tol && x2 >= -1 - tol && x3 >= -1 - tol
                    && x4 >= -1 - tol && x1 + x2 + x3 + x4 <= -2 + tol;
        }
    }
    else {
        switch (f.kind) {
            case ElementKind::Tesseract:
                return x1 >= -tol && x1 <= 1 + tol && x2 >= -tol && x2 <= 1 + tol
                    && x3 >= -tol && x3 <= 1 + tol && x4 >= -tol && x4 <= 1 + tol;
            case ElementKind::TetPrism:
                // Unit tet-prism: x1 in [0,1] extruded, (x2,x3,x4) unit 3-simplex.
                return x1 >= -tol && x1 <= 1 + tol && x2 >= -tol && x3 >= -tol
                    && x4 >= -tol && x2 + x3 + x4 <= 1 + tol;
            case ElementKind::Pentatope:
                return x1 >= -tol && x2 >= -tol && x3 >= -tol && x4 >= -tol
                    && x1 + x2 + x3 + x4 <= 1 + tol;
        }
    }
    throw std::logic_error("bad ElementKind");
}

// --- unit <-> reference affine maps ----------------------------------------
//
// The maps pair the unit vertices with the reference barycentric-matrix
// columns in column order. For the tesseract and pentatope this is
// u = (x + 1)/2 componentwise; the tet-prism additionally permutes
// coordinates because its unit variant extrudes x1 while the reference
// element extrudes x4.

template <typename R>
Point4<R> reference_to_unit(ElementKind k, const Point4<R>& x)
{
    switch (k) {
        case ElementKind::Tesseract:
        case ElementKind::Pentatope:
            return { (x[0] + 1) / 2, (x[1] + 1) / 2, (x[2] + 1) / 2, (x[3] + 1) / 2 };
        case ElementKind::TetPrism:
            return { (x[3] + 1) / 2, (x[0] + 1) / 2, (x[1] + 1) / 2, (x[2] + 1) / 2 };
    }
    throw std::logic_error("bad ElementKind");
}

template <typename R>
Point4<R> unit_to_reference(ElementKind k, const Point4<R>& u)
{
    switch (k) {
        case ElementKind::Tesseract:
        case ElementKind::Pentatope:
            return { 2 * u[0] - 1, 2 * u[1] - 1, 2 * u[2] - 1, 2 * u[3] - 1 };
        case ElementKind::TetPrism:
            return { 2 * u[1] - 1, 2 * u[2] - 1, 2 * u[3] - 1, 2 * u[0] - 1 };
    }
    throw std::logic_error("bad ElementKind");
}

// --- barycentric coordinates -----------------------------------------------

template <typename R>
struct Barycentric {
    std::vector<R> lambdas; // 5 entries (pentatope), 4 entries (tet-prism)
    R x4 = R(0);            // extrusion coordinate, tet-prism only
};

template <typename R>
Point4<R> bary_to_cart(ElementKind kind, const Barycentric<R>& b)
{
    if (kind == ElementKind::Pentatope) {
        if (b.lambdas.size() != 5)
            throw std::invalid_argument("bary_to_cart: pentatope needs 5 lambdas");
        const auto& l = b.lambdas;
        return { -l[0] + l[1] - l[2] - l[3] - l[4],
                 -l[0] - l[1] + l[2] - l[3] - l[4],
                 -l[0] - l[1] - l[2] + l[3] - l[4],
                 -l[0] - l[1] - l[2] - l[3] + l[4] };
    }
    if (kind == ElementKind::TetPrism) {
        if (b.lambdas.size() != 4)
            throw std::invalid_argument("bary_to_cart: tet-prism needs 4 lambdas");
        const auto& l = b.lambdas;
        return { -l[0] + l[1] - l[2] - l[3],
                 -l[0] - l[1] + l[2] - l[3],
                 -l[0] - l[1] - l[2] + l[3],
                 b.x4 };
    }
    throw std::invalid_argument("bary_to_cart: tesseract has no barycentric coordinates");
}

// --- exact monomial integrals ----------------------------------------------

namespace detail {

inline Rational factorial_rational(int n)
{
    boost::multiprecision::cpp_int f = 1;
    for (int i = 2; i <= n; ++i)
        f *= i;
    return Rational(f);
}

inline boost::multiprecision::cpp_int binomial_int(int n, int k)
{
    boost::multiprecision::cpp_int b = 1;
    for (int i = 0; i < k; ++i) {
        b *= (n - i);
        b /= (i + 1);
    }
    return b;
}

} // namespace detail

// Closed-form integral of x1^r x2^s x3^t x4^v over the unit-variant element.
// For the tet-prism the exponent r pairs with the extruded coordinate.
inline Rational unit_monomial_rational(ElementKind k, int r, int s, int t, int v)
{
    using detail::factorial_rational;
    switch (k) {
        case ElementKind::Tesseract:
            return Rational(1) / Rational((r + 1) * boost::multiprecision::cpp_int(s + 1) * (t + 1) * (v + 1));
        case ElementKind::TetPrism:
            return factorial_rational(s) * factorial_rational(t) * factorial_rational(v)
                 / (Rational(r + 1) * factorial_rational(s + t + v + 3));
        case ElementKind::Pentatope:
            return factorial_rational(r) * factorial_rational(s) * factorial_rational(t)
                 * factorial_rational(v) / factorial_rational(r + s + t + v + 4);
    }
    throw std::logic_error("bad ElementKind");
}

// Reference-variant integral by exact binomial expansion of the affine
// pullback x_i = 2 u_{sigma(i)} - 1 with Jacobian 16.
inline Rational reference_monomial_rational(ElementKind k, int r, int s, int t, int v)
{
    const std::array<int, 4> e = { r, s, t, v };
    Rational total = 0;
    std::array<int, 4> kk{};
    for (kk[0] = 0; kk[0] <= e[0]; ++kk[0])
        for (kk[1] = 0; kk[1] <= e[1]; ++kk[1])
            for (kk[2] = 0; kk[2] <= e[2]; ++kk[2])
                for (kk[3] = 0; kk[3] <= e[3]; ++kk[3]) {
                    boost::multiprecision::cpp_int coef = 1;
                    int ksum = 0, esum = 0;
                    for (int i = 0; i < 4; ++i) {
                        coef *= detail::binomial_int(e[i], kk[i]);
                        ksum += kk[i];
                        esum += e[i];
                    }
                    Rational term = Rational(coef) * Rational(boost::multiprecision::cpp_int(1) << ksum);
                    if ((esum - ksum) % 2 != 0)
                        term = -term;
                    // reference coordinate i carries unit exponent sigma(i)
                    Rational u = (k == ElementKind::TetPrism)
                        ? unit_monomial_rational(k, kk[3], kk[0], kk[1], kk[2])
                        : unit_monomial_rational(k, kk[0], kk[1], kk[2], kk[3]);
                    total += term * u;
                }
    return 16 * total;
}

template <typename R>
R monomial_integral(ReferenceFrame f, int r, int s, int t, int v)
{
    if (r < 0 || s < 0 || t < 0 || v < 0 || r + s + t + v > 40)
        throw std::invalid_argument("monomial_integral: exponents must be nonnegative with total degree <= 40");
    Rational q = (f.variant == Variant::Unit)
        ? unit_monomial_rational(f.kind, r, s, t, v)
        : reference_monomial_rational(f.kind, r, s, t, v);
    return R(q.convert_to<R>());
}

inline double monomial_integral(ReferenceFrame f, int r, int s, int t, int v)
{
    return monomial_integral<double>(f, r, s, t, v);
}

} // namespace st4

#endif
