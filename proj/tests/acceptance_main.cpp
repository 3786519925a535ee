// Acceptance gate: one pass/fail line per criterion, exit code = number of
// failed criteria.

#include "st4/decomp.hpp"
#include "st4/duffy.hpp"
#include "st4/harness.hpp"
#include "st4/polytope_seq.hpp"
#include "st4/quadgen.hpp"
#include "st4/rules.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <random>
#include <sstream>

using namespace st4;

namespace {

const ElementKind all_kinds[] = { ElementKind::Tesseract, ElementKind::TetPrism,
                                  ElementKind::Pentatope };

int n_failed = 0;

void report(int criterion, bool pass, const std::string& detail)
{
    if (!pass)
        ++n_failed;
    std::cout << "criterion " << criterion << ": " << (pass ? "PASS" : "FAIL")
              << " — " << detail << std::endl;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Distance to the nearest bounding facet; positive strictly inside.
double min_slack(ElementKind kind, const Point4<double>& p)
{
    const double x1 = p[0], x2 = p[1], x3 = p[2], x4 = p[3];
    double s = std::numeric_limits<double>::infinity();
    switch (kind) {
        case ElementKind::Tesseract:
            for (int c = 0; c < 4; ++c)
                s = std::min(s, 1 - std::abs(p[c]));
            return s;
        case ElementKind::TetPrism:
            s = std::min({ x1 + 1, x2 + 1, x3 + 1, -(x2 + x3), -1 - (x1 + x2 + x3) });
            return std::min(s, 1 - std::abs(x4));
        case ElementKind::Pentatope:
            return std::min({ x1 + 1, x2 + 1, x3 + 1, x4 + 1, -2 - (x1 + x2 + x3 + x4) });
    }
    return s;
}

// Preferred rule for a target strength: bundled at that exact strength, else
// the collapsed tensor-product construction.
QuadratureRule<double> rule_for_strength(ElementKind kind, int strength)
{
    const auto catalog = bundled_rules();
    if (auto it = catalog.find({ kind, strength }); it != catalog.end())
        return read_rule_file(it->second.path);
    return duffy_rule<double>(kind, duffy_pts_for_degree(kind, strength));
}

void criterion_1()
{
    const auto t0 = std::chrono::steady_clock::now();
    std::ostringstream msg;
    bool ok = true;
    try {
        const auto catalog = bundled_rules();
        const auto& entry = catalog.at({ ElementKind::Pentatope, 9 });
        const auto rule = read_rule_file(entry.path);
        ok = ok && rule.size() == 151;

        const auto rd = verify_rule(rule, 9, 1e-12);
        const auto rq = verify_rule(read_rule_file_quad(entry.path), 9, Quad("1e-25"));
        ok = ok && rd.pass() && rq.pass();

        double wsum = 0;
        for (double w : rule.weights)
            wsum += w;
        const double vol = volume({ ElementKind::Pentatope, Variant::Reference });
        ok = ok && std::abs(wsum - vol) <= 1e-12;

        msg << "151-point strength-9 pentatope rule: double err " << rd.max_rel_error
            << ", extended err " << rq.max_rel_error << ", |sum(w) - vol| "
            << std::abs(wsum - vol) << ", points inside " << (rd.points_inside && rq.points_inside)
            << ", " << seconds_since(t0) << " s";
        ok = ok && rd.points_inside && rq.points_inside && seconds_since(t0) < 1.0;
    }
    catch (const std::exception& e) {
        ok = false;
        msg << "exception: " << e.what();
    }
    report(1, ok, msg.str());
}

void criterion_2()
{
    std::ostringstream msg;
    bool ok = true;
    struct Case { ElementKind kind; int strength; int points; bool gating; };
    const Case cases[] = {
        { ElementKind::Pentatope, 2, 5, true },
        { ElementKind::Tesseract, 3, 16, true },
        { ElementKind::TetPrism, 2, 6, true },
        { ElementKind::Pentatope, 3, 15, false }, // classical rule has boundary
                                                  // points; report either outcome
    };
    for (const auto& c : cases) {
        SolveConfig cfg;
        cfg.n_starts = 64;
        cfg.rng_seed = 1;
        bool found = false;
        double interior_slack = 0;
        try {
            const auto results = search(c.kind, c.strength, c.points, cfg);
            for (const auto& r : results)
                if (r.rule) {
                    found = verify_rule(*r.rule, c.strength, 1e-12).pass();
                    interior_slack = std::numeric_limits<double>::infinity();
                    for (const auto& p : r.rule->points)
                        interior_slack = std::min(interior_slack, min_slack(c.kind, p));
                    found = found && interior_slack > 1e-9;
                    break;
                }
        }
        catch (const std::exception&) {
            found = false;
        }
        msg << kind_name(c.kind) << " P=" << c.strength << " N=" << c.points << ": "
            << (found ? "found (interior slack " : "not found (")
            << (found ? std::to_string(interior_slack) : std::string("64 starts exhausted"))
            << "); ";
        if (c.gating)
            ok = ok && found;
    }
    report(2, ok, msg.str());
}

void criterion_3()
{
    const auto t0 = std::chrono::steady_clock::now();
    const long a = static_cast<long>(enumerate_decompositions(ElementKind::Pentatope, 61).size());
    const long b = count_decompositions(ElementKind::Pentatope, 600);
    const double dt = seconds_since(t0);
    std::ostringstream msg;
    msg << "(pentatope, 61) -> " << a << " (want 24); (pentatope, 600) -> " << b
        << " (want 37457); " << dt << " s";
    report(3, a == 24 && b == 37457 && dt < 10.0, msg.str());
}

void criterion_4()
{
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0;
    for (auto kind : all_kinds)
        for (int p = 0; p <= 6; ++p) {
            const auto gram = gram_matrix(kind, p, 2 * p + 4);
            for (long i = 0; i < gram.rows(); ++i)
                for (long j = 0; j < gram.cols(); ++j)
                    worst = std::max(worst, std::abs(gram(i, j) - (i == j ? 1.0 : 0.0)));
        }
    const double dt = seconds_since(t0);
    std::ostringstream msg;
    msg << "max |Gram - I| over all elements, p <= 6: " << worst << "; " << dt << " s";
    report(4, worst <= 1e-9 && dt < 120.0, msg.str());
}

void criterion_5()
{
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    int mismatches = 0;
    for (auto kind : all_kinds)
        for (const auto& fam : orbit_families(kind))
            for (int draw = 0; draw < 50; ++draw) {
                std::vector<double> params(fam.n_params);
                for (int n = 0; n < fam.n_params; ++n) {
                    double lo, hi;
                    orbit_param_bounds(kind, fam.family_id, params.data(), n, lo, hi);
                    params[n] = lo + (hi - lo) * u(rng);
                }
                if (static_cast<int>(expand(kind, fam.family_id, params).size())
                    != fam.cardinality)
                    ++mismatches;
            }
    const double dt = seconds_since(t0);
    std::ostringstream msg;
    msg << "50 draws x 29 families: " << mismatches << " cardinality mismatches; "
        << dt << " s";
    report(5, mismatches == 0 && dt < 5.0, msg.str());
}

void criterion_6()
{
    std::ostringstream msg;
    bool ok = true;
    for (auto kind : all_kinds)
        for (int P : { 6, 8 }) {
            const auto rule = rule_for_strength(kind, P);
            const auto rows = exactness_experiment(kind, { rule }, P + 2, 12345);

            double below = 0;
            for (const auto& row : rows)
                if (row.p <= P)
                    below = std::max(below, row.percent_error);

            // rules with structural extra exactness (e.g. odd functions on the
            // tesseract) only show the cliff one degree later
            const bool bonus = verify_rule(rule, P + 1, 1e-12).exact;
            double cliff = 0;
            for (const auto& row : rows)
                if (row.p == (bonus ? P + 2 : P + 1))
                    cliff = row.percent_error;

            msg << kind_name(kind) << " P=" << P << " (rule strength " << rule.strength
                << ", " << rule.size() << " pts): max err p<=P " << below << ", err at p="
                << (bonus ? P + 2 : P + 1) << " is " << cliff << "; ";
            ok = ok && below <= 1e-12 && cliff > 1e-6;
        }
    report(6, ok, msg.str());
}

void criterion_7()
{
    const auto t0 = std::chrono::steady_clock::now();
    std::ostringstream msg;
    bool ok = true;
    for (auto kind : all_kinds) {
        std::vector<int> m_list;
        for (int m = 1; m <= (kind == ElementKind::Tesseract ? 6 : 4); ++m)
            m_list.push_back(m);
        for (int P : { 6, 8 }) {
            const auto rule = rule_for_strength(kind, P);
            for (const char* f_id : { "f1", "f2", "f3" }) {
                const auto series = convergence_experiment(kind, rule, P, f_id, m_list, 1);
                const bool pass = series.slope_valid && series.slope >= P - 0.3;
                msg << kind_name(kind) << " P=" << P << " " << f_id << ": slope "
                    << series.slope << (pass ? "" : " (< P - 0.3)") << "; ";
                ok = ok && pass;
            }
        }
    }
    msg << seconds_since(t0) << " s";
    report(7, ok, msg.str());
}

void criterion_8()
{
    auto bits = [](const DegenerationSequence& s) {
        std::vector<std::string> out;
        for (const auto& v : s.removed)
            out.push_back(v.bits());
        return out;
    };
    bool ok = true;

    ok = ok && bits(sequence_a(2)) == std::vector<std::string>{ "11" };
    ok = ok && bits(sequence_a(3)) == std::vector<std::string>{ "111", "110", "101", "011" };
    ok = ok && bits(sequence_a(4))
             == std::vector<std::string>{ "1111", "1110", "1101", "1100", "1011", "1010",
                                          "0111", "0110", "1001", "0101", "0011" };
    ok = ok && bits(sequence_b(2)) == std::vector<std::string>{ "11" };
    ok = ok && bits(sequence_b(3)) == std::vector<std::string>{ "111", "110", "101", "011" };
    ok = ok && bits(sequence_b(4))
             == std::vector<std::string>{ "1111", "1110", "1101", "1100", "1011", "1010",
                                          "1001", "0111", "0110", "0101", "0011" };

    bool prisms = true;
    for (int d = 2; d <= 4; ++d)
        prisms = prisms
              && is_prism_over(sequence_a(d).polytopes[(1 << d) - 2 * d],
                               standard_simplex(d - 1));

    bool b_has_tet_prism = false;
    for (const auto& p : sequence_b(4).polytopes)
        b_has_tet_prism = b_has_tet_prism || is_prism_over(p, standard_simplex(3));

    std::ostringstream msg;
    msg << "vertex tables d=2,3,4 " << (ok ? "verbatim" : "MISMATCH")
        << "; prism-over-simplex at 2^d - 2d " << (prisms ? "holds" : "FAILS")
        << "; tetrahedral prism in variant-b d=4: " << (b_has_tet_prism ? "present" : "absent");
    report(8, ok && prisms && !b_has_tet_prism, msg.str());
}

void criterion_9()
{
    // odd polynomials integrate to zero over the symmetric reference tesseract
    const auto catalog = bundled_rules();
    std::ostringstream msg;
    bool ok = true;
    bool any = false;
    for (const auto& [key, entry] : catalog) {
        if (key.first != ElementKind::Tesseract)
            continue;
        any = true;
        const auto rule = read_rule_file(entry.path);
        const int P = key.second;

        double worst = 0;
        for (int trial = 0; trial < 50; ++trial) {
            auto poly = random_polynomial(P + 1, 7000 + trial);
            for (std::size_t n = 0; n < poly.exponents.size(); ++n) {
                const auto& e = poly.exponents[n];
                if ((e[0] + e[1] + e[2] + e[3]) % 2 == 0)
                    poly.coefficients[n] = 0; // keep only odd total degrees
            }
            double q = 0;
            for (std::size_t i = 0; i < rule.size(); ++i)
                q += rule.weights[i] * poly(rule.points[i]);
            worst = std::max(worst, std::abs(q));
        }
        msg << "strength-" << P << " rule: max |quadrature of odd poly| " << worst << "; ";
        ok = ok && worst <= 1e-12;
    }
    if (!any) {
        ok = false;
        msg << "no bundled tesseract rules found";
    }
    report(9, ok, msg.str());
}

} // namespace

int main()
{
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    return n_failed;
}
