// Command-line front end: sequences, decomps, generate, verify, exactness,
// convergence, export-duffy, catalog.
//
// Exit codes: 0 success, 1 verification failure, 2 generation found no rule,
// 64 usage error.

#include "st4/decomp.hpp"
#include "st4/duffy.hpp"
#include "st4/harness.hpp"
#include "st4/polytope_seq.hpp"
#include "st4/quadgen.hpp"
#include "st4/rules.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>

namespace {

using namespace st4;

std::string bits_string(const ZeroOneVertex& v)
{
    std::string s;
    for (int c : v.coords)
        s += static_cast<char>('0' + c);
    return s;
}

// smallest known fully symmetric point counts, used by `catalog` to show how
// a bundled rule compares with the published state of the art
int known_symmetric_points(ElementKind kind, int strength)
{
    static const std::map<std::pair<ElementKind, int>, int> table = {
        { { ElementKind::Tesseract, 2 }, 16 },  { { ElementKind::Tesseract, 3 }, 16 },
        { { ElementKind::Tesseract, 4 }, 24 },  { { ElementKind::Tesseract, 5 }, 24 },
        { { ElementKind::Tesseract, 6 }, 57 },  { { ElementKind::Tesseract, 7 }, 57 },
        { { ElementKind::Tesseract, 8 }, 160 }, { { ElementKind::Tesseract, 9 }, 160 },
        { { ElementKind::Tesseract, 10 }, 272 }, { { ElementKind::Tesseract, 11 }, 272 },
        { { ElementKind::Tesseract, 12 }, 512 }, { { ElementKind::Tesseract, 13 }, 512 },
        { { ElementKind::Tesseract, 14 }, 728 }, { { ElementKind::Tesseract, 15 }, 728 },
        { { ElementKind::Tesseract, 16 }, 1384 },
        { { ElementKind::Pentatope, 2 }, 5 },   { { ElementKind::Pentatope, 3 }, 15 },
        { { ElementKind::Pentatope, 4 }, 20 },  { { ElementKind::Pentatope, 5 }, 30 },
        { { ElementKind::Pentatope, 6 }, 56 },  { { ElementKind::Pentatope, 7 }, 70 },
        { { ElementKind::Pentatope, 8 }, 105 }, { { ElementKind::Pentatope, 9 }, 151 },
        { { ElementKind::Pentatope, 10 }, 210 }, { { ElementKind::Pentatope, 11 }, 281 },
        { { ElementKind::Pentatope, 12 }, 445 }, { { ElementKind::Pentatope, 13 }, 555 },
        { { ElementKind::Pentatope, 14 }, 725 }, { { ElementKind::Pentatope, 15 }, 905 },
        { { ElementKind::Pentatope, 16 }, 1055 },
        { { ElementKind::TetPrism, 2 }, 6 },    { { ElementKind::TetPrism, 3 }, 12 },
        { { ElementKind::TetPrism, 4 }, 20 },   { { ElementKind::TetPrism, 5 }, 27 },
        { { ElementKind::TetPrism, 6 }, 61 },   { { ElementKind::TetPrism, 7 }, 72 },
        { { ElementKind::TetPrism, 8 }, 114 },  { { ElementKind::TetPrism, 9 }, 159 },
        { { ElementKind::TetPrism, 10 }, 259 }, { { ElementKind::TetPrism, 11 }, 322 },
        { { ElementKind::TetPrism, 12 }, 468 }, { { ElementKind::TetPrism, 13 }, 608 },
        { { ElementKind::TetPrism, 14 }, 921 },
    };
    auto it = table.find({ kind, strength });
    return it == table.end() ? -1 : it->second;
}

QuadratureRule<double> rule_for(ElementKind kind, int strength, bool allow_duffy,
                                const std::string& rules_dir)
{
    auto catalog = bundled_rules(rules_dir);
    if (auto it = catalog.find({ kind, strength }); it != catalog.end())
        return read_rule_file(it->second.path);
    // any stronger bundled rule also integrates the weaker space exactly
    for (const auto& [key, entry] : catalog)
        if (key.first == kind && key.second > strength) {
            auto r = read_rule_file(entry.path);
            r.strength = key.second;
            return r;
        }
    if (allow_duffy)
        return duffy_rule<double>(kind, duffy_pts_for_degree(kind, strength));
    throw std::runtime_error("no bundled rule for " + kind_name(kind) + " strength "
                             + std::to_string(strength) + " (pass --allow-duffy to substitute)");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{ "Fully symmetric quadrature rules, orthonormal bases, and element"
                  " sequences for 4D space-time finite elements" };
    app.require_subcommand(1);

    std::string element = "pentatope", variant = "a", rule_path, out_path, f_id = "f1";
    std::string rules_dir; // empty = ST4_RULES_DIR or ./rules
    int dim = 4, points = 0, strength = 0, p_max = -1, axis_points = 4;
    int starts = 8, jobs = 1, max_s1 = 1;
    std::uint64_t seed = 0;
    bool extended = false, allow_duffy = false;
    std::vector<int> strengths, m_list;

    auto* seq = app.add_subcommand("sequences", "Print a degeneration sequence of 0/1-polytopes");
    seq->add_option("--dim", dim, "dimension, 1..6")->required();
    seq->add_option("--variant", variant, "a or b")->check(CLI::IsMember({ "a", "b" }));

    auto* dec = app.add_subcommand("decomps", "List symmetry-orbit decompositions of a point count");
    dec->add_option("--element", element)->required();
    dec->add_option("--points", points)->required();
    dec->add_option("--max-s1", max_s1, "cap on the cardinality-1 orbit multiplicity");

    auto* gen = app.add_subcommand("generate", "Search for a fully symmetric rule");
    gen->add_option("--element", element)->required();
    gen->add_option("--strength", strength)->required();
    gen->add_option("--points", points)->required();
    gen->add_option("--seed", seed);
    gen->add_option("--starts", starts);
    gen->add_option("--jobs", jobs);
    gen->add_flag("--extended", extended, "write the rule after extended-precision refinement");
    gen->add_option("--out", out_path, "output rule file (default <element>-<strength>-<points>.txt)");

    auto* ver = app.add_subcommand("verify", "Check a rule file for exactness at its strength");
    ver->add_option("--rule", rule_path)->required();
    ver->add_option("--strength", strength, "override the strength to verify at");
    ver->add_flag("--extended", extended, "verify in extended precision");

    auto* exa = app.add_subcommand("exactness", "Single-element random-polynomial exactness table");
    exa->add_option("--element", element)->required();
    exa->add_option("--strengths", strengths)->required();
    exa->add_option("--p-max", p_max);
    exa->add_option("--seed", seed);
    exa->add_option("--out", out_path, "CSV path (default stdout)");
    exa->add_option("--rules-dir", rules_dir);
    exa->add_flag("--allow-duffy", allow_duffy, "fall back to collapsed tensor rules");

    auto* con = app.add_subcommand("convergence", "Grid convergence on a transcendental integrand");
    con->add_option("--element", element)->required();
    con->add_option("--strengths", strengths)->required();
    con->add_option("--f", f_id)->check(CLI::IsMember({ "f1", "f2", "f3" }));
    con->add_option("--m-list", m_list, "subdivision counts (default 1..4)");
    con->add_option("--jobs", jobs);
    con->add_option("--out", out_path, "CSV path (default stdout)");
    con->add_option("--rules-dir", rules_dir);
    con->add_flag("--allow-duffy", allow_duffy);

    auto* exd = app.add_subcommand("export-duffy", "Write a collapsed tensor-product rule file");
    exd->add_option("--element", element)->required();
    exd->add_option("--axis-points", axis_points)->required();
    exd->add_option("--out", out_path, "output rule file (default stdout)");

    auto* cat = app.add_subcommand("catalog", "List bundled rules");
    cat->add_option("--rules-dir", rules_dir);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        app.exit(e);
        return (e.get_exit_code() == 0) ? 0 : 64;
    }

    try {
        if (*seq) {
            const DegenerationSequence s = (variant == "a") ? sequence_a(dim) : sequence_b(dim);
            std::cout << "dim " << dim << " variant " << variant << '\n';
            for (const auto& v : s.removed)
                std::cout << bits_string(v) << '\n';
            std::cout << "vertex counts:";
            for (int n : vertex_count_profile(s))
                std::cout << ' ' << n;
            std::cout << '\n';
            return 0;
        }

        if (*dec) {
            const auto kind = kind_from_name(element);
            const auto list = enumerate_decompositions(kind, points, max_s1);
            for (const auto& d : list)
                std::cout << decomposition_signature(d) << "  (" << d.n_free_params
                          << " free parameters)\n";
            std::cout << list.size() << " decompositions\n";
            return 0;
        }

        if (*gen) {
            const auto kind = kind_from_name(element);
            SolveConfig cfg;
            cfg.n_starts = starts;
            cfg.rng_seed = seed;
            cfg.jobs = jobs;
            cfg.extended = extended;
            cfg.log = &std::cerr;
            const auto results = search(kind, strength, points, cfg);
            for (const auto& r : results) {
                if (!r.rule)
                    continue;
                auto refined = polish_rule_quad(*r.rule, strength);
                refined.strength = strength;
                if (out_path.empty())
                    out_path = element + "-" + std::to_string(strength) + "-"
                             + std::to_string(points) + ".txt";
                std::ofstream os(out_path);
                write_rule(refined, os);
                std::cout << "wrote " << out_path << " ("
                          << decomposition_signature(r.decomposition)
                          << ", residual " << r.residual << ")\n";
                return 0;
            }
            double best = results.empty() ? std::numeric_limits<double>::infinity()
                                          : results.front().residual;
            std::cout << "no admissible rule found; best residual " << best << '\n';
            return 2;
        }

        if (*ver) {
            const int p = (strength > 0) ? strength : read_rule_file(rule_path).strength;
            VerifyReport rep;
            if (extended)
                rep = verify_rule(read_rule_file_quad(rule_path), p, Quad("1e-25"));
            else
                rep = verify_rule(read_rule_file(rule_path), p, 1e-12);
            std::cout << "strength " << p << " max relative error " << rep.max_rel_error
                      << " weights_positive " << rep.weights_positive
                      << " points_inside " << rep.points_inside << '\n';
            return rep.pass() ? 0 : 1;
        }

        if (*exa) {
            const auto kind = kind_from_name(element);
            std::vector<QuadratureRule<double>> rules;
            int auto_pmax = 0;
            for (int s : strengths) {
                rules.push_back(rule_for(kind, s, allow_duffy, rules_dir));
                rules.back().strength = s;
                auto_pmax = std::max(auto_pmax, s + 2);
            }
            const auto rows = exactness_experiment(kind, rules, p_max > 0 ? p_max : auto_pmax, seed);
            if (out_path.empty())
                write_exactness_csv(std::cout, kind, rows);
            else {
                std::ofstream os(out_path);
                write_exactness_csv(os, kind, rows);
            }
            return 0;
        }

        if (*con) {
            const auto kind = kind_from_name(element);
            if (m_list.empty())
                m_list = { 1, 2, 3, 4 };
            std::vector<ConvergenceSeries> series;
            for (int s : strengths) {
                auto rule = rule_for(kind, s, allow_duffy, rules_dir);
                series.push_back(convergence_experiment(kind, rule, s, f_id, m_list, jobs));
            }
            if (out_path.empty())
                write_convergence_csv(std::cout, kind, series);
            else {
                std::ofstream os(out_path);
                write_convergence_csv(os, kind, series);
            }
            return 0;
        }

        if (*exd) {
            const auto kind = kind_from_name(element);
            const auto rule = duffy_rule<Quad>(kind, axis_points);
            if (out_path.empty())
                write_rule_expanded(rule, std::cout);
            else {
                std::ofstream os(out_path);
                write_rule_expanded(rule, os);
            }
            return 0;
        }

        if (*cat) {
            const auto catalog = bundled_rules(rules_dir);
            std::cout << "element strength points best_known path\n";
            for (const auto& [key, e] : catalog) {
                const int known = known_symmetric_points(key.first, key.second);
                std::cout << kind_name(key.first) << ' ' << e.strength << ' ' << e.n_points
                          << ' ' << (known > 0 ? std::to_string(known) : std::string("-"))
                          << ' ' << e.path << '\n';
            }
            return 0;
        }
    }
    catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 64;
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 64;
}
