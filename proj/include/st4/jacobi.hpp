#ifndef ST4_JACOBI_HPP
#define ST4_JACOBI_HPP

#include "st4/real.hpp"

#include <map>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace st4 {

struct JacobiParams {
    double alpha;
    double beta;

    bool valid() const { return alpha > -1.0 && beta > -1.0; }
};

inline void check_params(const JacobiParams& p)
{
    if (!p.valid())
        throw std::invalid_argument("Jacobi parameters require alpha > -1 and beta > -1");
}

// P_n^{(alpha,beta)}(x) via the three-term recurrence.
template <typename R>
R jacobi_eval(int n, const JacobiParams& p, R x)
{
    check_params(p);
    if (n < 0)
        throw std::invalid_argument("jacobi_eval: n must be nonnegative");

    R a = R(p.alpha), b = R(p.beta);
    R apb = a + b, amb = a - b, bbmaa = b * b - a * a;

    if (n == 0)
        return R(1);

    R jm2 = R(1);
    R jm1 = ((apb + 2) * x + amb) / 2;
    if (n == 1)
        return jm1;

    for (int q = 2; q <= n; ++q) {
        R qapbpq = q * (apb + q), apbp2q = apb + 2 * q;
        R apbp2qm1 = apbp2q - 1, apbp2qm2 = apbp2q - 2;

        R aq = apbp2q * apbp2qm1 / (2 * qapbpq);
        R bq = apbp2qm1 * bbmaa / (2 * qapbpq * apbp2qm2);
        R cq = apbp2q * ((a + q - 1) * (b + q - 1)) / (qapbpq * apbp2qm2);

        R jq = (aq * x - bq) * jm1 - cq * jm2;
        jm2 = jm1;
        jm1 = jq;
    }
    return jm1;
}

// Norm factor 2^{a+b+1}/(2n+a+b+1) * G(n+a+1)G(n+b+1)/(G(n+1)G(n+a+b+1)),
// evaluated in log space so large n+alpha cannot overflow.
template <typename R>
R jacobi_norm_factor(int n, const JacobiParams& p)
{
    // memoized: the basis evaluators hit the same (n, alpha, beta) keys for
    // every quadrature point
    thread_local std::map<std::tuple<int, double, double>, R> cache;
    const auto key = std::make_tuple(n, p.alpha, p.beta);
    if (auto it = cache.find(key); it != cache.end())
        return it->second;

    using std::log;
    R a = R(p.alpha), b = R(p.beta);
    R lg = (a + b + 1) * log(R(2)) - log(2 * n + a + b + 1)
         + log_gamma(R(n) + a + 1) + log_gamma(R(n) + b + 1)
         - log_gamma(R(n) + 1) - log_gamma(R(n) + a + b + 1);
    R v = real_exp(lg);
    cache.emplace(key, v);
    return v;
}

// Orthonormal Jacobi polynomial: P_n / sqrt(norm factor).
template <typename R>
R jacobi_orthonormal_eval(int n, const JacobiParams& p, R x)
{
    return jacobi_eval(n, p, x) / real_sqrt(jacobi_norm_factor<R>(n, p));
}

// Evaluates P-hat_0 .. P-hat_nmax at x in one recurrence sweep. The norm
// factor h_n is advanced by its rational ratio
//   h_n / h_{n-1} = (2n+a+b-1)/(2n+a+b+1) * (n+a)(n+b) / (n(n+a+b)),
// so only h_0 needs the gamma function.
template <typename R>
void jacobi_orthonormal_eval_all(int nmax, const JacobiParams& p, R x, std::vector<R>& out)
{
    check_params(p);
    out.resize(nmax + 1);
    R a = R(p.alpha), b = R(p.beta);
    R apb = a + b, amb = a - b, bbmaa = b * b - a * a;

    R h = jacobi_norm_factor<R>(0, p);
    R jm2 = R(1);
    out[0] = jm2 / real_sqrt(h);
    if (nmax == 0)
        return;
    h *= (apb + 1) / (apb + 3) * ((1 + a) * (1 + b)) / (1 + apb);
    R jm1 = ((apb + 2) * x + amb) / 2;
    out[1] = jm1 / real_sqrt(h);

    for (int q = 2; q <= nmax; ++q) {
        R qapbpq = q * (apb + q), apbp2q = apb + 2 * q;
        R apbp2qm1 = apbp2q - 1, apbp2qm2 = apbp2q - 2;

        R aq = apbp2q * apbp2qm1 / (2 * qapbpq);
        R bq = apbp2qm1 * bbmaa / (2 * qapbpq * apbp2qm2);
        R cq = apbp2q * ((a + q - 1) * (b + q - 1)) / (qapbpq * apbp2qm2);

        R jq = (aq * x - bq) * jm1 - cq * jm2;
        jm2 = jm1;
        jm1 = jq;
        h *= apbp2qm1 / (apbp2q + 1) * ((q + a) * (q + b)) / qapbpq;
        out[q] = jq / real_sqrt(h);
    }
}

template <typename R>
struct GaussRule1D {
    std::vector<R> nodes;
    std::vector<R> weights;
};

namespace detail {

// Legendre value and derivative at x from the recurrence.
template <typename R>
void legendre_pd(int n, R x, R& pn, R& dpn)
{
    R p0 = R(1), p1 = x;
    if (n == 0) { pn = p0; dpn = R(0); return; }
    for (int k = 2; k <= n; ++k) {
        R p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    pn = p1;
    dpn = n * (x * p1 - p0) / (x * x - 1);
}

} // namespace detail

// Gauss-Legendre nodes and weights on [-1,1]. Newton iteration seeded with
// the Chebyshev-node approximation; works at any precision R.
template <typename R>
GaussRule1D<R> gauss_legendre(int npts)
{
    if (npts < 1 || npts > 64)
        throw std::invalid_argument("gauss_legendre: npts must lie in [1, 64]");

    GaussRule1D<R> rule;
    rule.nodes.resize(npts);
    rule.weights.resize(npts);

    const R tol = 8 * real_eps<R>();
    const int half = (npts + 1) / 2;

    for (int i = 0; i < half; ++i) {
        R x = -real_cos(real_pi<R>() * (4 * i + 3) / (4 * npts + 2));
        R pn, dpn;
        for (int it = 0; it < 100; ++it) {
            detail::legendre_pd(npts, x, pn, dpn);
            R dx = pn / dpn;
            x -= dx;
            if (real_abs(dx) <= tol * (real_abs(x) + 1))
                break;
        }
        detail::legendre_pd(npts, x, pn, dpn);
        R w = 2 / ((1 - x * x) * dpn * dpn);

        rule.nodes[i] = x;
        rule.weights[i] = w;
        rule.nodes[npts - 1 - i] = -x;
        rule.weights[npts - 1 - i] = w;
    }
    if (npts % 2 == 1) {
        R pn, dpn;
        detail::legendre_pd(npts, R(0), pn, dpn);
        rule.nodes[npts / 2] = R(0);
        rule.weights[npts / 2] = 2 / (dpn * dpn);
    }
    return rule;
}

} // namespace st4

#endif
