#include "st4/quadgen.hpp"
#include "st4/rules.hpp"

#include <boost/multiprecision/eigen.hpp>

#include <algorithm>
#include <cmath>
#include <future>
#include <random>

namespace st4 {

namespace {

using MatrixXq = Eigen::Matrix<Quad, Eigen::Dynamic, Eigen::Dynamic>;
using VectorXq = Eigen::Matrix<Quad, Eigen::Dynamic, 1>;

// All multi-indices with total degree <= p; spans exactly the total-degree-p
// polynomial space on every element kind.
BasisSet total_degree_basis(ElementKind kind, int p)
{
    BasisSet penta = basis_set(ElementKind::Pentatope, p);
    return BasisSet{ kind, p, std::move(penta.indices) };
}

std::uint64_t signature_hash(const std::string& sig)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : sig) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace

std::vector<Point4<double>> group_images(ElementKind kind, const Point4<double>& p)
{
    std::vector<Point4<double>> out;
    if (kind == ElementKind::Tesseract) {
        std::array<int, 4> perm = { 0, 1, 2, 3 };
        do {
            for (int signs = 0; signs < 16; ++signs) {
                Point4<double> q;
                for (int i = 0; i < 4; ++i)
                    q[i] = (signs >> i & 1) ? -p[perm[i]] : p[perm[i]];
                out.push_back(q);
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        return out;
    }
    if (kind == ElementKind::Pentatope) {
        std::array<double, 5> lam;
        for (int i = 0; i < 4; ++i)
            lam[i + 1] = (p[i] + 1) / 2;
        lam[0] = 1 - lam[1] - lam[2] - lam[3] - lam[4];
        std::array<int, 5> perm = { 0, 1, 2, 3, 4 };
        do {
            Barycentric<double> b;
            b.lambdas = { lam[perm[0]], lam[perm[1]], lam[perm[2]], lam[perm[3]], lam[perm[4]] };
            out.push_back(bary_to_cart(kind, b));
        } while (std::next_permutation(perm.begin(), perm.end()));
        return out;
    }
    std::array<double, 4> lam;
    for (int i = 0; i < 3; ++i)
        lam[i + 1] = (p[i] + 1) / 2;
    lam[0] = 1 - lam[1] - lam[2] - lam[3];
    std::array<int, 4> perm = { 0, 1, 2, 3 };
    do {
        for (int sign = 0; sign < 2; ++sign) {
            Barycentric<double> b;
            b.lambdas = { lam[perm[0]], lam[perm[1]], lam[perm[2]], lam[perm[3]] };
            b.x4 = sign ? -p[3] : p[3];
            out.push_back(bary_to_cart(kind, b));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

MomentSystem build_moment_system(ElementKind kind, int strength)
{
    MomentSystem sys;
    sys.kind = kind;
    sys.strength = strength;
    sys.full = total_degree_basis(kind, strength);
    const int n = static_cast<int>(sys.full.indices.size());
    const double c = std::sqrt(volume({ kind, Variant::Reference }));

    if (kind == ElementKind::Tesseract) {
        // Sign symmetry kills every index class with an odd entry; coordinate
        // permutations identify classes with the same index multiset.
        for (int col = 0; col < n; ++col) {
            const auto& m = sys.full.indices[col];
            std::array<int, 4> ix = { m.i, m.j, m.k, m.q };
            bool all_even = true, sorted = true;
            for (int i = 0; i < 4; ++i) {
                if (ix[i] % 2 != 0)
                    all_even = false;
                if (i > 0 && ix[i] > ix[i - 1])
                    sorted = false;
            }
            if (all_even && sorted)
                sys.rep_cols.push_back(col);
        }
    }
    else {
        // Numerical symmetrization: sample the group-averaged basis at random
        // interior points and keep a pivoted-QR independent subset.
        const int rows = std::min(4 * n + 64, 2048);
        std::mt19937_64 rng(0x5eedULL + static_cast<int>(kind));
        std::uniform_real_distribution<double> uni(0.05, 0.95);

        Eigen::MatrixXd symm = Eigen::MatrixXd::Zero(rows, n);
        std::vector<double> vals;
        for (int r = 0; r < rows; ++r) {
            Point4<double> x;
            if (kind == ElementKind::Pentatope) {
                std::array<double, 5> lam;
                double s = 0;
                for (auto& l : lam)
                    s += (l = -std::log(uni(rng)));
                Barycentric<double> b;
                b.lambdas = { lam[0] / s, lam[1] / s, lam[2] / s, lam[3] / s, lam[4] / s };
                x = bary_to_cart(kind, b);
            }
            else {
                std::array<double, 4> lam;
                double s = 0;
                for (auto& l : lam)
                    s += (l = -std::log(uni(rng)));
                Barycentric<double> b;
                b.lambdas = { lam[0] / s, lam[1] / s, lam[2] / s, lam[3] / s };
                b.x4 = 2 * uni(rng) - 1;
                x = bary_to_cart(kind, b);
            }
            const auto images = group_images(kind, x);
            for (const auto& g : images) {
                basis_eval_all(sys.full, g, vals);
                for (int col = 0; col < n; ++col)
                    symm(r, col) += vals[col];
            }
            symm.row(r) /= static_cast<double>(images.size());
        }

        // drop identically-zero symmetrizations, then rank-reveal
        std::vector<int> live;
        for (int col = 0; col < n; ++col) {
            double nrm = symm.col(col).norm();
            if (nrm > 1e-9 * std::sqrt(static_cast<double>(rows)))
                live.push_back(col);
            else
                symm.col(col).setZero();
        }
        Eigen::MatrixXd reduced(rows, live.size());
        for (std::size_t i = 0; i < live.size(); ++i)
            reduced.col(i) = symm.col(live[i]).normalized();

        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(reduced);
        qr.setThreshold(1e-7);
        const int rank = static_cast<int>(qr.rank());
        const auto& perm = qr.colsPermutation().indices();
        for (int i = 0; i < rank; ++i)
            sys.rep_cols.push_back(live[perm(i)]);
        std::sort(sys.rep_cols.begin(), sys.rep_cols.end());
    }

    sys.rhs = Eigen::VectorXd::Zero(sys.rep_cols.size());
    for (std::size_t r = 0; r < sys.rep_cols.size(); ++r)
        if (sys.full.indices[sys.rep_cols[r]].total() == 0)
            sys.rhs(r) = c;
    return sys;
}

namespace {

// Splits without clamping. The optimizer runs on the unconstrained
// parameterization (the basis evaluation extends smoothly outside the
// element); admissibility is enforced on the finished rule instead, via point
// containment.
std::vector<std::vector<double>> split_params(const Decomposition& d,
                                              const std::vector<double>& theta)
{
    std::vector<std::vector<double>> out;
    std::size_t pos = 0;
    for (const auto& [id, mult] : d.counts) {
        const int np = orbit_family(d.kind, id).n_params;
        for (int m = 0; m < mult; ++m) {
            if (pos + np > theta.size())
                throw std::invalid_argument("split_params: parameter vector too short");
            out.emplace_back(theta.begin() + pos, theta.begin() + pos + np);
            pos += np;
        }
    }
    if (pos != theta.size())
        throw std::invalid_argument("split_params: parameter vector too long");
    return out;
}

} // namespace

std::vector<std::vector<double>> split_and_clamp_params(const Decomposition& d,
                                                        const std::vector<double>& theta)
{
    std::vector<std::vector<double>> out;
    std::size_t pos = 0;
    for (const auto& [id, mult] : d.counts) {
        const int np = orbit_family(d.kind, id).n_params;
        for (int m = 0; m < mult; ++m) {
            if (pos + np > theta.size())
                throw std::invalid_argument("split_and_clamp_params: parameter vector too short");
            std::vector<double> block(theta.begin() + pos, theta.begin() + pos + np);
            clamp_orbit_params(d.kind, id, block);
            out.push_back(std::move(block));
            pos += np;
        }
    }
    if (pos != theta.size())
        throw std::invalid_argument("split_and_clamp_params: parameter vector too long");
    return out;
}

Eigen::MatrixXd orbit_moment_matrix(const MomentSystem& sys, const Decomposition& d,
                                    const std::vector<std::vector<double>>& orbit_params,
                                    std::vector<int>* orbit_sizes)
{
    const int nrep = static_cast<int>(sys.rep_cols.size());
    const int norb = d.n_orbits();
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(nrep, norb);
    if (orbit_sizes)
        orbit_sizes->assign(norb, 0);

    int o = 0;
    std::vector<double> vals;
    for (const auto& [id, mult] : d.counts)
        for (int m = 0; m < mult; ++m, ++o) {
            const auto pts = expand(d.kind, id, orbit_params[o]);
            if (orbit_sizes)
                (*orbit_sizes)[o] = static_cast<int>(pts.size());
            for (const auto& p : pts) {
                basis_eval_positions(sys.full, sys.rep_cols, p, vals);
                for (int r = 0; r < nrep; ++r)
                    a(r, o) += vals[r];
            }
        }
    return a;
}

Eigen::VectorXd residual(const MomentSystem& sys, const Decomposition& d,
                         const std::vector<double>& theta, const Eigen::VectorXd& weights,
                         bool penalty_on)
{
    const auto blocks = split_params(d, theta);
    std::vector<int> sizes;
    Eigen::MatrixXd a = orbit_moment_matrix(sys, d, blocks, &sizes);

    Eigen::VectorXd r = a * weights - sys.rhs;
    if (penalty_on) {
        double eps = 0;
        for (int o = 0; o < weights.size(); ++o)
            eps += sizes[o] * std::min(weights(o), 0.0);
        r.conservativeResize(r.size() + 1);
        r(r.size() - 1) = eps;
    }
    return r;
}

std::pair<Eigen::VectorXd, double> solve_weights(const MomentSystem& sys,
                                                 const Decomposition& d,
                                                 const std::vector<double>& theta)
{
    const auto blocks = split_params(d, theta);
    Eigen::MatrixXd a = orbit_moment_matrix(sys, d, blocks);
    Eigen::VectorXd w = a.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(sys.rhs);
    return { w, (a * w - sys.rhs).norm() };
}

namespace {

// Generic damped Gauss-Newton / LM loop over a residual functional with a
// forward-difference Jacobian.
LmResult lm_loop(const std::function<Eigen::VectorXd(const std::vector<double>&)>& f,
                 const std::function<Eigen::VectorXd(const std::vector<double>&)>& weights_of,
                 std::vector<double> theta, const SolveConfig& cfg)
{
    const int np = static_cast<int>(theta.size());
    auto safe_norm = [](const Eigen::VectorXd& v) {
        return v.allFinite() ? v.norm() : std::numeric_limits<double>::infinity();
    };
    Eigen::VectorXd r = f(theta);
    double cost = safe_norm(r);
    double lambda = 1e-3;

    std::vector<double> history;
    history.push_back(cost);

    LmResult best;
    best.theta = theta;
    best.residual = cost;

    int iter = 0;
    for (; iter < cfg.max_iterations && cost > cfg.residual_tol && np > 0
           && std::isfinite(cost); ++iter) {
        Eigen::MatrixXd jac(r.size(), np);
        bool jac_ok = true;
        for (int pcol = 0; pcol < np; ++pcol) {
            const double h = 1e-7 * std::max(1.0, std::abs(theta[pcol]));
            auto th = theta;
            th[pcol] += h;
            Eigen::VectorXd fh = f(th);
            if (!fh.allFinite()) {
                jac_ok = false;
                break;
            }
            jac.col(pcol) = (fh - r) / h;
        }
        if (!jac_ok)
            break;
        Eigen::MatrixXd jtj = jac.transpose() * jac;
        Eigen::VectorXd jtr = jac.transpose() * r;

        bool accepted = false;
        for (int damp = 0; damp < 16 && !accepted; ++damp) {
            Eigen::MatrixXd m = jtj;
            for (int i = 0; i < np; ++i)
                m(i, i) += lambda * std::max(jtj(i, i), 1e-12);
            Eigen::VectorXd dx = m.ldlt().solve(-jtr);
            auto th = theta;
            for (int i = 0; i < np; ++i)
                th[i] += dx(i);
            Eigen::VectorXd r1 = f(th);
            const double c1 = safe_norm(r1);
            if (c1 < cost) {
                theta = std::move(th);
                r = std::move(r1);
                cost = c1;
                lambda = std::max(lambda * 0.3, 1e-12);
                accepted = true;
            }
            else {
                lambda *= 4;
            }
        }
        if (cost < best.residual) {
            best.theta = theta;
            best.residual = cost;
        }
        if (!accepted)
            break;

        // stagnation cutoff
        history.push_back(cost);
        if (history.size() > 30) {
            double old = history[history.size() - 31];
            if (old > 0 && (old - cost) / old < 1e-6)
                break;
        }
    }
    best.iterations = iter;
    best.weights = weights_of(best.theta);
    // recompute with final weights so residual and weights are consistent
    best.residual = safe_norm(f(best.theta));
    return best;
}

} // namespace

LmResult lm_minimize(const MomentSystem& sys, const Decomposition& d,
                     std::vector<double> theta0, const SolveConfig& cfg)
{
    auto weights_of = [&](const std::vector<double>& th) {
        return solve_weights(sys, d, th).first;
    };
    // single orbit expansion per evaluation: build A once, eliminate the
    // weights, and append the penalty from the same expansion
    auto f = [&](const std::vector<double>& th) {
        const auto blocks = split_params(d, th);
        std::vector<int> sizes;
        Eigen::MatrixXd a = orbit_moment_matrix(sys, d, blocks, &sizes);
        Eigen::VectorXd w = a.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(sys.rhs);
        Eigen::VectorXd r = a * w - sys.rhs;
        if (cfg.penalty_on) {
            double eps = 0;
            for (int o = 0; o < w.size(); ++o)
                eps += sizes[o] * std::min(w(o), 0.0);
            r.conservativeResize(r.size() + 1);
            r(r.size() - 1) = eps;
        }
        return r;
    };
    return lm_loop(f, weights_of, std::move(theta0), cfg);
}

LmResult lm_minimize_full(const MomentSystem& sys, const Decomposition& d,
                          std::vector<double> theta0, Eigen::VectorXd w0,
                          const SolveConfig& cfg)
{
    const std::size_t ntheta = theta0.size();
    const int norb = d.n_orbits();
    std::vector<double> z = theta0;
    for (int o = 0; o < norb; ++o)
        z.push_back(w0(o));

    auto unpack = [&](const std::vector<double>& zz) {
        std::vector<double> th(zz.begin(), zz.begin() + ntheta);
        Eigen::VectorXd w(norb);
        for (int o = 0; o < norb; ++o)
            w(o) = zz[ntheta + o];
        return std::make_pair(th, w);
    };
    auto f = [&](const std::vector<double>& zz) {
        auto [th, w] = unpack(zz);
        return residual(sys, d, th, w, cfg.penalty_on);
    };
    auto weights_of = [&](const std::vector<double>& zz) { return unpack(zz).second; };

    LmResult res = lm_loop(f, weights_of, std::move(z), cfg);
    res.theta.resize(ntheta);
    return res;
}

namespace {

std::vector<double> random_start(const Decomposition& d, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> theta;
    for (const auto& [id, mult] : d.counts) {
        const int np = orbit_family(d.kind, id).n_params;
        for (int m = 0; m < mult; ++m) {
            std::vector<double> block(np);
            for (int n = 0; n < np; ++n) {
                double lo, hi;
                orbit_param_bounds(d.kind, id, block.data(), n, lo, hi);
                block[n] = lo + (hi - lo) * uni(rng);
            }
            theta.insert(theta.end(), block.begin(), block.end());
        }
    }
    return theta;
}

struct StartOutcome {
    LmResult lm;
    bool admissible = false;
    QuadratureRule<double> rule;
};

StartOutcome run_start(const MomentSystem& sys, const Decomposition& d,
                       std::uint64_t seed, const SolveConfig& cfg)
{
    StartOutcome out;
    std::vector<double> theta0 = random_start(d, seed);
    out.lm = (theta0.empty())
        ? [&] {
              LmResult r;
              r.theta = {};
              auto [w, res] = solve_weights(sys, d, {});
              r.weights = w;
              r.residual = residual(sys, d, {}, w, cfg.penalty_on).norm();
              return r;
          }()
        : lm_minimize(sys, d, theta0, cfg);

    // near-miss: refine jointly over parameters and weights, which converges
    // quadratically close to an exact rule where the separable phase stalls
    if (out.lm.residual > cfg.residual_tol && out.lm.residual < 1e-3
        && !out.lm.theta.empty()) {
        LmResult joint = lm_minimize_full(sys, d, out.lm.theta, out.lm.weights, cfg);
        if (joint.residual < out.lm.residual)
            out.lm = std::move(joint);
    }

    if (out.lm.residual > cfg.residual_tol)
        return out;
    for (int o = 0; o < out.lm.weights.size(); ++o)
        if (!(out.lm.weights(o) > 1e-16))
            return out;

    QuadratureRule<double> rule;
    rule.kind = d.kind;
    rule.strength = sys.strength;
    rule.provenance = Provenance::Generated;
    auto blocks = split_params(d, out.lm.theta);
    // canonicalize: tesseract coordinates are magnitudes under the sign group
    if (d.kind == ElementKind::Tesseract)
        for (auto& b : blocks)
            for (double& v : b)
                v = std::abs(v);
    int o = 0;
    for (const auto& [id, mult] : d.counts)
        for (int m = 0; m < mult; ++m, ++o)
            rule.orbits.push_back({ id, blocks[o], out.lm.weights(o) });
    expand_rule(rule);
    for (const auto& p : rule.points)
        if (!contains(ReferenceFrame{ d.kind, Variant::Reference }, p, 1e-12))
            return out;
    if (static_cast<int>(rule.points.size()) != d.total_points)
        return out; // degenerate orbit coincidence
    out.rule = std::move(rule);
    out.admissible = true;
    return out;
}

} // namespace

std::vector<SearchResult> search(ElementKind kind, int strength, int n_points,
                                 const SolveConfig& cfg)
{
    if (n_points < 1 || n_points > 2000)
        throw std::invalid_argument("search: n_points must lie in [1, 2000]");

    const MomentSystem sys = build_moment_system(kind, strength);
    const auto decomps = enumerate_decompositions(kind, n_points, 1);

    std::vector<SearchResult> results;
    bool found = false;
    for (const auto& d : decomps) {
        if (found)
            break;
        const std::string sig = decomposition_signature(d);
        const std::uint64_t base = splitmix64(cfg.rng_seed ^ signature_hash(sig));

        SearchResult res;
        res.decomposition = d;

        auto consider = [&](const StartOutcome& out, int start_idx) {
            if (out.lm.residual < res.residual) {
                res.residual = out.lm.residual;
                res.iterations_used = out.lm.iterations;
            }
            if (out.admissible && !res.rule) {
                res.rule = out.rule;
                res.residual = out.lm.residual;
                res.starts_used = start_idx + 1;
            }
        };

        if (cfg.jobs > 1) {
            std::vector<std::future<StartOutcome>> futs;
            for (int s = 0; s < cfg.n_starts; ++s)
                futs.push_back(std::async(std::launch::async, [&, s] {
                    return run_start(sys, d, splitmix64(base + s), cfg);
                }));
            for (int s = 0; s < cfg.n_starts; ++s)
                consider(futs[s].get(), s);
        }
        else {
            for (int s = 0; s < cfg.n_starts; ++s) {
                auto out = run_start(sys, d, splitmix64(base + s), cfg);
                consider(out, s);
                if (res.rule)
                    break;
            }
        }
        if (!res.rule)
            res.starts_used = cfg.n_starts;

        if (cfg.log)
            (*cfg.log) << sig << " residual=" << res.residual
                       << " starts=" << res.starts_used << '\n';

        found = res.rule.has_value();
        results.push_back(std::move(res));
    }

    std::stable_sort(results.begin(), results.end(), [](const SearchResult& a, const SearchResult& b) {
        if (a.rule.has_value() != b.rule.has_value())
            return a.rule.has_value();
        return a.residual < b.residual;
    });
    return results;
}

QuadratureRule<Quad> polish_rule_quad(const QuadratureRule<double>& rule, int strength)
{
    const MomentSystem sys = build_moment_system(rule.kind, strength);
    const int nrep = static_cast<int>(sys.rep_cols.size());
    const int norb = static_cast<int>(rule.orbits.size());

    // pack z = [orbit params..., weights...]
    std::vector<Quad> z;
    for (const auto& orb : rule.orbits)
        for (double p : orb.params)
            z.push_back(Quad(p));
    for (const auto& orb : rule.orbits)
        z.push_back(Quad(orb.weight));
    const int nz = static_cast<int>(z.size());
    const int ntheta = nz - norb;

    VectorXq rhs = VectorXq::Zero(nrep);
    const Quad c = real_sqrt(volume<Quad>({ rule.kind, Variant::Reference }));
    for (int r = 0; r < nrep; ++r)
        if (sys.full.indices[sys.rep_cols[r]].total() == 0)
            rhs(r) = c;

    auto eval = [&](const std::vector<Quad>& zz) -> VectorXq {
        VectorXq r = -rhs;
        std::vector<Quad> vals;
        int pos = 0;
        for (int o = 0; o < norb; ++o) {
            const int np = static_cast<int>(rule.orbits[o].params.size());
            std::vector<Quad> params(zz.begin() + pos, zz.begin() + pos + np);
            pos += np;
            const Quad w = zz[ntheta + o];
            for (const auto& p : expand(rule.kind, rule.orbits[o].family_id, params)) {
                basis_eval_positions(sys.full, sys.rep_cols, p, vals);
                for (int k = 0; k < nrep; ++k)
                    r(k) += w * vals[k];
            }
        }
        return r;
    };

    VectorXq r = eval(z);
    for (int iter = 0; iter < 4; ++iter) {
        MatrixXq jac(nrep, nz);
        for (int pcol = 0; pcol < nz; ++pcol) {
            Quad h = Quad("1e-17") * (1 + real_abs(z[pcol]));
            auto zz = z;
            zz[pcol] += h;
            jac.col(pcol) = (eval(zz) - r) / h;
        }
        VectorXq dz = jac.colPivHouseholderQr().solve(-r);
        auto z1 = z;
        for (int i = 0; i < nz; ++i)
            z1[i] += dz(i);
        VectorXq r1 = eval(z1);
        if (r1.norm() < r.norm()) {
            z = std::move(z1);
            r = std::move(r1);
        }
        else
            break;
    }

    QuadratureRule<Quad> out;
    out.kind = rule.kind;
    out.strength = rule.strength;
    out.provenance = rule.provenance;
    int pos = 0;
    for (int o = 0; o < norb; ++o) {
        RuleOrbit<Quad> orb;
        orb.family_id = rule.orbits[o].family_id;
        const int np = static_cast<int>(rule.orbits[o].params.size());
        orb.params.assign(z.begin() + pos, z.begin() + pos + np);
        pos += np;
        orb.weight = z[ntheta + o];
        out.orbits.push_back(std::move(orb));
    }
    expand_rule(out);
    return out;
}

} // namespace st4
