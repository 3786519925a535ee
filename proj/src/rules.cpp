#include "st4/rules.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace st4 {

namespace {

template <typename R>
R parse_real(const std::string& tok)
{
    if constexpr (std::is_same_v<R, double>)
        return std::stod(tok);
    else
        return R(tok);
}

template <typename R>
std::string format_real(const R& x)
{
    std::ostringstream os;
    os << std::setprecision(34) << x;
    return os.str();
}

std::string provenance_name(Provenance p)
{
    switch (p) {
        case Provenance::Bundled: return "bundled";
        case Provenance::Generated: return "generated";
        case Provenance::Duffy: return "duffy";
    }
    return "generated";
}

} // namespace

template <typename R>
void write_rule(const QuadratureRule<R>& rule, std::ostream& os)
{
    os << kind_name(rule.kind) << ' ' << rule.strength << ' ' << rule.points.size()
       << ' ' << rule.orbits.size() << '\n';
    for (const auto& orb : rule.orbits) {
        os << orb.family_id;
        for (const auto& p : orb.params)
            os << ' ' << format_real(p);
        os << ' ' << format_real(orb.weight) << '\n';
    }
}

template <typename R>
QuadratureRule<R> read_rule(std::istream& is)
{
    std::string line;
    int lineno = 0;

    auto next_line = [&]() -> bool {
        while (std::getline(is, line)) {
            ++lineno;
            if (line.find_first_not_of(" \t\r") != std::string::npos)
                return true;
        }
        return false;
    };

    if (!next_line())
        throw std::runtime_error("rule parse error at line 1: empty file");

    QuadratureRule<R> rule;
    int n_points = 0, n_orbits = 0;
    {
        std::istringstream hs(line);
        std::string kind;
        if (!(hs >> kind >> rule.strength >> n_points >> n_orbits))
            throw std::runtime_error("rule parse error at line " + std::to_string(lineno)
                                     + ": bad header");
        rule.kind = kind_from_name(kind);
    }
    rule.provenance = Provenance::Bundled;

    for (int o = 0; o < n_orbits; ++o) {
        if (!next_line())
            throw std::runtime_error("rule parse error at line " + std::to_string(lineno)
                                     + ": missing orbit line");
        std::istringstream ls(line);
        RuleOrbit<R> orb;
        if (!(ls >> orb.family_id))
            throw std::runtime_error("rule parse error at line " + std::to_string(lineno)
                                     + ": bad family id");
        const auto& fam = orbit_family(rule.kind, orb.family_id);
        std::string tok;
        std::vector<std::string> toks;
        while (ls >> tok)
            toks.push_back(tok);
        if (static_cast<int>(toks.size()) != fam.n_params + 1)
            throw std::runtime_error("rule parse error at line " + std::to_string(lineno)
                                     + ": expected " + std::to_string(fam.n_params)
                                     + " parameters plus weight");
        try {
            for (int i = 0; i < fam.n_params; ++i)
                orb.params.push_back(parse_real<R>(toks[i]));
            orb.weight = parse_real<R>(toks.back());
        }
        catch (const std::exception&) {
            throw std::runtime_error("rule parse error at line " + std::to_string(lineno)
                                     + ": bad numeric value");
        }
        rule.orbits.push_back(std::move(orb));
    }

    expand_rule(rule);
    if (static_cast<int>(rule.points.size()) != n_points)
        throw std::runtime_error("rule validation: expanded point count "
                                 + std::to_string(rule.points.size())
                                 + " does not match header " + std::to_string(n_points));
    validate_rule(rule);
    return rule;
}

template <typename R>
void write_rule_expanded(const QuadratureRule<R>& rule, std::ostream& os)
{
    os << kind_name(rule.kind) << ' ' << rule.strength << ' ' << rule.points.size()
       << " expanded " << provenance_name(rule.provenance) << '\n';
    for (std::size_t i = 0; i < rule.points.size(); ++i) {
        for (int c = 0; c < 4; ++c)
            os << format_real(rule.points[i][c]) << ' ';
        os << format_real(rule.weights[i]) << '\n';
    }
}

template void write_rule<double>(const QuadratureRule<double>&, std::ostream&);
template void write_rule<Quad>(const QuadratureRule<Quad>&, std::ostream&);
template QuadratureRule<double> read_rule<double>(std::istream&);
template QuadratureRule<Quad> read_rule<Quad>(std::istream&);
template void write_rule_expanded<double>(const QuadratureRule<double>&, std::ostream&);
template void write_rule_expanded<Quad>(const QuadratureRule<Quad>&, std::ostream&);

void write_rule_file(const QuadratureRule<double>& rule, const std::string& path)
{
    std::ofstream os(path);
    if (!os)
        throw std::runtime_error("cannot open " + path + " for writing");
    write_rule(rule, os);
}

QuadratureRule<double> read_rule_file(const std::string& path)
{
    std::ifstream is(path);
    if (!is)
        throw std::runtime_error("cannot open " + path);
    return read_rule<double>(is);
}

QuadratureRule<Quad> read_rule_file_quad(const std::string& path)
{
    std::ifstream is(path);
    if (!is)
        throw std::runtime_error("cannot open " + path);
    return read_rule<Quad>(is);
}

std::string default_rules_dir()
{
    if (const char* env = std::getenv("ST4_RULES_DIR"))
        return env;
    return "rules";
}

std::map<std::pair<ElementKind, int>, CatalogEntry> bundled_rules(std::string dir)
{
    namespace fs = std::filesystem;
    if (dir.empty())
        dir = default_rules_dir();

    std::map<std::pair<ElementKind, int>, CatalogEntry> catalog;
    if (!fs::exists(dir))
        return catalog;
    for (const auto& sub : fs::directory_iterator(dir)) {
        if (!sub.is_directory())
            continue;
        ElementKind kind;
        try {
            kind = kind_from_name(sub.path().filename().string());
        }
        catch (const std::exception&) {
            continue;
        }
        for (const auto& file : fs::directory_iterator(sub.path())) {
            if (file.path().extension() != ".txt")
                continue;
            const std::string stem = file.path().stem().string();
            const auto dash = stem.find('-');
            if (dash == std::string::npos)
                continue;
            CatalogEntry e;
            e.kind = kind;
            e.strength = std::stoi(stem.substr(0, dash));
            e.n_points = std::stoi(stem.substr(dash + 1));
            e.path = file.path().string();
            catalog[{ kind, e.strength }] = e;
        }
    }
    return catalog;
}

} // namespace st4
