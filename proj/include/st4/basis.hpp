#ifndef ST4_BASIS_HPP
#define ST4_BASIS_HPP

#include "st4/duffy.hpp"
#include "st4/jacobi.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <vector>

namespace st4 {

struct MultiIndex {
    int i = 0, j = 0, k = 0, q = 0;

    int total() const { return i + j + k + q; }

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
};

inline bool index_admissible(ElementKind kind, const MultiIndex& m, int p)
{
    if (m.i < 0 || m.j < 0 || m.k < 0 || m.q < 0)
        return false;
    switch (kind) {
        case ElementKind::Tesseract:
            return m.i <= p && m.j <= p && m.k <= p && m.q <= p;
        case ElementKind::TetPrism:
            return m.i + m.j + m.k <= p && m.q <= p;
        case ElementKind::Pentatope:
            return m.total() <= p;
    }
    throw std::logic_error("bad ElementKind");
}

struct BasisSet {
    ElementKind kind;
    int degree;
    std::vector<MultiIndex> indices;
};

inline long ndof(ElementKind kind, int p)
{
    long n = p + 1;
    switch (kind) {
        case ElementKind::Tesseract: return n * n * n * n;
        case ElementKind::TetPrism: return n * n * (p + 2) * (p + 3) / 6;
        case ElementKind::Pentatope: return n * (p + 2) * (p + 3) * (p + 4) / 24;
    }
    throw std::logic_error("bad ElementKind");
}

// Admissible indices in graded lexicographic order, i varying slowest
// within each grade.
inline BasisSet basis_set(ElementKind kind, int p)
{
    if (p < 0 || p > 20)
        throw std::invalid_argument("basis_set: p must lie in [0, 20]");
    BasisSet bs{ kind, p, {} };
    const int pmax = (kind == ElementKind::Tesseract) ? 4 * p
                   : (kind == ElementKind::TetPrism) ? 2 * p
                                                     : p;
    for (int total = 0; total <= pmax; ++total)
        for (int i = 0; i <= total; ++i)
            for (int j = 0; i + j <= total; ++j)
                for (int k = 0; i + j + k <= total; ++k) {
                    MultiIndex m{ i, j, k, total - i - j - k };
                    if (index_admissible(kind, m, p))
                        bs.indices.push_back(m);
                }
    return bs;
}

// --- collapsed coordinates -------------------------------------------------

// Rational maps taking the simplex-type elements to tensor-product form.
// At a vanishing denominator the collapsed coordinate is assigned its vertex
// limit -1, which keeps the basis products continuous.
template <typename R>
std::array<R, 4> collapsed_coords_unchecked(ElementKind kind, const Point4<R>& p)
{
    const R x1 = p[0], x2 = p[1], x3 = p[2], x4 = p[3];
    switch (kind) {
        case ElementKind::Tesseract:
            return { x1, x2, x3, x4 };
        case ElementKind::TetPrism: {
            R den_a = x2 + x3;
            R den_b = 1 - x3;
            R a = (den_a != 0) ? -2 * (1 + x1) / den_a - 1 : R(-1);
            R b = (den_b != 0) ? 2 * (1 + x2) / den_b - 1 : R(-1);
            return { a, b, x3, x4 };
        }
        case ElementKind::Pentatope: {
            R den_a = x2 + x3 + x4 + 1;
            R den_b = x3 + x4;
            R den_c = 1 - x4;
            R a = (den_a != 0) ? -2 * (x1 + 1) / den_a - 1 : R(-1);
            R b = (den_b != 0) ? -2 * (1 + x2) / den_b - 1 : R(-1);
            R c = (den_c != 0) ? 2 * (1 + x3) / den_c - 1 : R(-1);
            return { a, b, c, x4 };
        }
    }
    throw std::logic_error("bad ElementKind");
}

template <typename R>
std::array<R, 4> collapsed_coords(ElementKind kind, const Point4<R>& p)
{
    if (!contains(ReferenceFrame{ kind, Variant::Reference }, p, R(1e-10)))
        throw std::domain_error("collapsed_coords: point outside reference element");
    return collapsed_coords_unchecked(kind, p);
}

namespace detail {

template <typename R>
R int_pow(R x, int n)
{
    R r = R(1);
    for (int i = 0; i < n; ++i)
        r *= x;
    return r;
}

inline double basis_leading_constant(ElementKind kind)
{
    switch (kind) {
        case ElementKind::Tesseract: return 1.0;
        case ElementKind::TetPrism: return 2.8284271247461900976; // sqrt(8)
        case ElementKind::Pentatope: return 8.0;
    }
    throw std::logic_error("bad ElementKind");
}

} // namespace detail

template <typename R>
R basis_eval(ElementKind kind, const MultiIndex& m, const Point4<R>& p)
{
    if (!index_admissible(kind, m, m.total()))
        throw std::invalid_argument("basis_eval: inadmissible multi-index");

    const auto [a, b, c, d] = collapsed_coords(kind, p);
    const int i = m.i, j = m.j, k = m.k, q = m.q;

    switch (kind) {
        case ElementKind::Tesseract:
            return jacobi_orthonormal_eval(i, { 0, 0 }, a) * jacobi_orthonormal_eval(j, { 0, 0 }, b)
                 * jacobi_orthonormal_eval(k, { 0, 0 }, c) * jacobi_orthonormal_eval(q, { 0, 0 }, d);
        case ElementKind::TetPrism:
            return R(detail::basis_leading_constant(kind))
                 * jacobi_orthonormal_eval(i, { 0, 0 }, a)
                 * jacobi_orthonormal_eval(j, { 2.0 * i + 1, 0 }, b)
                 * jacobi_orthonormal_eval(k, { 2.0 * (i + j) + 2, 0 }, c)
                 * jacobi_orthonormal_eval(q, { 0, 0 }, d)
                 * detail::int_pow(1 - b, i) * detail::int_pow(1 - c, i + j);
        case ElementKind::Pentatope:
            return R(detail::basis_leading_constant(kind))
                 * jacobi_orthonormal_eval(i, { 0, 0 }, a)
                 * jacobi_orthonormal_eval(j, { 2.0 * i + 1, 0 }, b)
                 * jacobi_orthonormal_eval(k, { 2.0 * (i + j) + 2, 0 }, c)
                 * jacobi_orthonormal_eval(q, { 2.0 * (i + j + k) + 3, 0 }, d)
                 * detail::int_pow(1 - b, i) * detail::int_pow(1 - c, i + j)
                 * detail::int_pow(1 - d, i + j + k);
    }
    throw std::logic_error("bad ElementKind");
}

// Evaluates the whole basis set at one point, sharing the Jacobi recurrence
// tables across indices.
template <typename R>
void basis_eval_all(const BasisSet& bs, const Point4<R>& p, std::vector<R>& out)
{
    const auto [a, b, c, d] = collapsed_coords(bs.kind, p);
    const int deg = bs.degree;
    out.resize(bs.indices.size());

    if (bs.kind == ElementKind::Tesseract) {
        std::vector<R> pa, pb, pc, pd;
        jacobi_orthonormal_eval_all(deg, { 0, 0 }, a, pa);
        jacobi_orthonormal_eval_all(deg, { 0, 0 }, b, pb);
        jacobi_orthonormal_eval_all(deg, { 0, 0 }, c, pc);
        jacobi_orthonormal_eval_all(deg, { 0, 0 }, d, pd);
        for (std::size_t n = 0; n < bs.indices.size(); ++n) {
            const auto& m = bs.indices[n];
            out[n] = pa[m.i] * pb[m.j] * pc[m.k] * pd[m.q];
        }
        return;
    }

    std::vector<R> pa;
    jacobi_orthonormal_eval_all(deg, { 0, 0 }, a, pa);
    // b tables keyed by i, c tables keyed by i+j, d tables keyed by i+j+k
    std::vector<std::vector<R>> pb(deg + 1), pc(deg + 1), pd(deg + 1);
    std::vector<R> pow_b(deg + 1), pow_c(deg + 1), pow_d(deg + 1);
    pow_b[0] = pow_c[0] = pow_d[0] = R(1);
    for (int n = 0; n <= deg; ++n) {
        jacobi_orthonormal_eval_all(deg - n, { 2.0 * n + 1, 0 }, b, pb[n]);
        jacobi_orthonormal_eval_all(deg - n, { 2.0 * n + 2, 0 }, c, pc[n]);
        if (n > 0) {
            pow_b[n] = pow_b[n - 1] * (1 - b);
            pow_c[n] = pow_c[n - 1] * (1 - c);
            pow_d[n] = pow_d[n - 1] * (1 - d);
        }
    }
    const bool penta = bs.kind == ElementKind::Pentatope;
    if (penta)
        for (int n = 0; n <= deg; ++n)
            jacobi_orthonormal_eval_all(deg - n, { 2.0 * n + 3, 0 }, d, pd[n]);
    else
        jacobi_orthonormal_eval_all(deg, { 0, 0 }, d, pd[0]);

    const R lead = R(detail::basis_leading_constant(bs.kind));
    for (std::size_t n = 0; n < bs.indices.size(); ++n) {
        const auto& m = bs.indices[n];
        R val = lead * pa[m.i] * pb[m.i][m.j] * pc[m.i + m.j][m.k]
              * pow_b[m.i] * pow_c[m.i + m.j];
        if (penta)
            val *= pd[m.i + m.j + m.k][m.q] * pow_d[m.i + m.j + m.k];
        else
            val *= pd[0][m.q];
        out[n] = val;
    }
}

// Evaluates only the basis functions at the given positions of bs.indices.
// No containment check: the collapsed product form equals a polynomial in x,
// so the evaluation extends smoothly outside the element (away from the
// collapse singularities), which the moment-system optimizer relies on.
template <typename R>
void basis_eval_positions(const BasisSet& bs, const std::vector<int>& positions,
                          const Point4<R>& p, std::vector<R>& out)
{
    const auto [a, b, c, d] = collapsed_coords_unchecked(bs.kind, p);
    const int deg = bs.degree;
    out.resize(positions.size());

    // reused across calls: this sits on the optimizer's innermost path
    thread_local std::vector<R> pa;
    thread_local std::vector<std::vector<R>> pb, pc, pd;
    thread_local std::vector<R> pow_b, pow_c, pow_d;

    if (bs.kind == ElementKind::Tesseract) {
        pb.resize(1);
        pc.resize(1);
        pd.resize(1);
        jacobi_orthonormal_eval_all(deg, { 0, 0 }, a, pa);
        jacobi_orthonormal_eval_all(deg, { 0, 0 }, b, pb[0]);
        jacobi_orthonormal_eval_all(deg, { 0, 0 }, c, pc[0]);
        jacobi_orthonormal_eval_all(deg, { 0, 0 }, d, pd[0]);
        for (std::size_t n = 0; n < positions.size(); ++n) {
            const auto& m = bs.indices[positions[n]];
            out[n] = pa[m.i] * pb[0][m.j] * pc[0][m.k] * pd[0][m.q];
        }
        return;
    }

    jacobi_orthonormal_eval_all(deg, { 0, 0 }, a, pa);
    pb.resize(deg + 1);
    pc.resize(deg + 1);
    pd.resize(deg + 1);
    pow_b.resize(deg + 1);
    pow_c.resize(deg + 1);
    pow_d.resize(deg + 1);
    pow_b[0] = pow_c[0] = pow_d[0] = R(1);
    for (int n = 0; n <= deg; ++n) {
        jacobi_orthonormal_eval_all(deg - n, { 2.0 * n + 1, 0 }, b, pb[n]);
        jacobi_orthonormal_eval_all(deg - n, { 2.0 * n + 2, 0 }, c, pc[n]);
        if (n > 0) {
            pow_b[n] = pow_b[n - 1] * (1 - b);
            pow_c[n] = pow_c[n - 1] * (1 - c);
            pow_d[n] = pow_d[n - 1] * (1 - d);
        }
    }
    const bool penta = bs.kind == ElementKind::Pentatope;
    if (penta)
        for (int n = 0; n <= deg; ++n)
            jacobi_orthonormal_eval_all(deg - n, { 2.0 * n + 3, 0 }, d, pd[n]);
    else
        jacobi_orthonormal_eval_all(deg, { 0, 0 }, d, pd[0]);

    const R lead = R(detail::basis_leading_constant(bs.kind));
    for (std::size_t n = 0; n < positions.size(); ++n) {
        const auto& m = bs.indices[positions[n]];
        R val = lead * pa[m.i] * pb[m.i][m.j] * pc[m.i + m.j][m.k]
              * pow_b[m.i] * pow_c[m.i + m.j];
        if (penta)
            val *= pd[m.i + m.j + m.k][m.q] * pow_d[m.i + m.j + m.k];
        else
            val *= pd[0][m.q];
        out[n] = val;
    }
}

// Gram matrix of the degree-p basis under Duffy-rule integration; identity
// within tolerance when the basis is orthonormal.
inline Eigen::MatrixXd gram_matrix(ElementKind kind, int p, int oracle_strength)
{
    if (oracle_strength < 2 * p + 4)
        throw std::invalid_argument("gram_matrix: oracle strength must be >= 2p + 4");

    const auto bs = basis_set(kind, p);
    const long n = static_cast<long>(bs.indices.size());

    if (kind == ElementKind::Tesseract) {
        // The tesseract basis and the oracle rule are both tensor products of
        // one axis, so the Gram factorizes into a Kronecker product of the 1D
        // Gauss-Legendre Gram of the orthonormal Legendre modes.
        const auto gl = gauss_legendre<double>(oracle_strength);
        Eigen::MatrixXd g1 = Eigen::MatrixXd::Zero(p + 1, p + 1);
        std::vector<double> vals;
        for (int m = 0; m < oracle_strength; ++m) {
            jacobi_orthonormal_eval_all(p, { 0, 0 }, gl.nodes[m], vals);
            for (int i = 0; i <= p; ++i)
                for (int j = 0; j <= p; ++j)
                    g1(i, j) += gl.weights[m] * vals[i] * vals[j];
        }
        Eigen::MatrixXd gram(n, n);
        for (long r = 0; r < n; ++r) {
            const auto& a = bs.indices[r];
            for (long c = 0; c < n; ++c) {
                const auto& b = bs.indices[c];
                gram(r, c) = g1(a.i, b.i) * g1(a.j, b.j) * g1(a.k, b.k) * g1(a.q, b.q);
            }
        }
        return gram;
    }

    const auto rule = duffy_rule<double>(kind, oracle_strength);

    Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(n, n);
    const std::size_t block = 4096;
    std::vector<double> vals;
    Eigen::MatrixXd batch(block, n);
    std::size_t row = 0;
    for (std::size_t ip = 0; ip < rule.points.size(); ++ip) {
        basis_eval_all(bs, rule.points[ip], vals);
        const double sw = std::sqrt(rule.weights[ip]);
        for (long c = 0; c < n; ++c)
            batch(row, c) = sw * vals[c];
        if (++row == block || ip + 1 == rule.points.size()) {
            gram.noalias() += batch.topRows(row).transpose() * batch.topRows(row);
            row = 0;
        }
    }
    return gram;
}

} // namespace st4

#endif
