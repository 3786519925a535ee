#include "st4/harness.hpp"

#include "st4/jacobi.hpp"
#include "st4/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <iomanip>
#include <numeric>
#include <sstream>

namespace st4 {

namespace {

// Deterministic standard-normal stream: Box-Muller over splitmix64 output.
class NormalStream {
public:
    explicit NormalStream(std::uint64_t seed) : state_(seed) {}

    double next()
    {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double phi = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(phi);
        have_spare_ = true;
        return r * std::cos(phi);
    }

private:
    double next_uniform()
    {
        state_ = splitmix64(state_);
        // 53 mantissa bits, shifted into (0, 1]
        return (static_cast<double>(state_ >> 11) + 1.0) * 0x1p-53;
    }

    std::uint64_t state_;
    double spare_ = 0;
    bool have_spare_ = false;
};

std::uint64_t poly_seed(ElementKind kind, int p, std::uint64_t global)
{
    return splitmix64(global ^ splitmix64((static_cast<std::uint64_t>(kind) << 32) | static_cast<std::uint64_t>(p)));
}

int factorial(int n)
{
    int f = 1;
    for (int i = 2; i <= n; ++i)
        f *= i;
    return f;
}

// lexicographic rank of a permutation of {0..n-1}
int perm_rank(const int* perm, int n)
{
    int rank = 0;
    for (int i = 0; i < n; ++i) {
        int smaller = 0;
        for (int j = i + 1; j < n; ++j)
            if (perm[j] < perm[i])
                ++smaller;
        rank += smaller * factorial(n - 1 - i);
    }
    return rank;
}

} // namespace

RandomPolynomial random_polynomial(int degree, std::uint64_t seed)
{
    if (degree < 0)
        throw std::invalid_argument("random_polynomial: degree must be nonnegative");
    RandomPolynomial poly;
    poly.degree = degree;
    NormalStream normals(seed);
    for (int total = 0; total <= degree; ++total)
        for (int r = 0; r <= total; ++r)
            for (int s = 0; r + s <= total; ++s)
                for (int t = 0; r + s + t <= total; ++t) {
                    poly.exponents.push_back({ r, s, t, total - r - s - t });
                    poly.coefficients.push_back(normals.next());
                }
    return poly;
}

std::vector<ExactnessRow> exactness_experiment(ElementKind kind,
                                               const std::vector<QuadratureRule<double>>& rules,
                                               int p_max, std::uint64_t seed)
{
    std::vector<ExactnessRow> rows;
    const double scale = volume({ kind, Variant::Unit }) / volume({ kind, Variant::Reference });

    for (const auto& rule : rules) {
        if (rule.kind != kind)
            throw std::invalid_argument("exactness_experiment: rule kind mismatch");
        // unit-variant images of the rule points; sums run in long double so
        // the reported error reflects the rule, not accumulation roundoff
        std::vector<Point4<long double>> upts;
        for (const auto& p : rule.points) {
            const auto u = reference_to_unit(kind, p);
            upts.push_back({ u[0], u[1], u[2], u[3] });
        }

        for (int p = 0; p <= p_max; ++p) {
            const RandomPolynomial poly = random_polynomial(p, poly_seed(kind, p, seed));

            long double j_inf = 0;
            for (std::size_t n = 0; n < poly.exponents.size(); ++n) {
                const auto& e = poly.exponents[n];
                j_inf += (long double)poly.coefficients[n]
                       * monomial_integral<long double>({ kind, Variant::Unit },
                                                        e[0], e[1], e[2], e[3]);
            }
            long double j = 0;
            for (std::size_t i = 0; i < upts.size(); ++i)
                j += (long double)scale * (long double)rule.weights[i] * poly(upts[i]);

            rows.push_back({ rule.strength, p, (double)j, (double)j_inf,
                             (double)(100.0L * std::abs(j - j_inf) / std::abs(j_inf)) });
        }
    }
    return rows;
}

Grid4 kuhn_freudenthal(ElementKind kind, int m)
{
    if (m < 1 || m > 12)
        throw std::invalid_argument("kuhn_freudenthal: m must lie in [1, 12]");

    Grid4 grid;
    grid.kind = kind;
    grid.m = m;
    const double h = 1.0 / m;

    const double ref_vol = volume({ kind, Variant::Reference });

    for (int i0 = 0; i0 < m; ++i0)
        for (int i1 = 0; i1 < m; ++i1)
            for (int i2 = 0; i2 < m; ++i2)
                for (int i3 = 0; i3 < m; ++i3) {
                    const Eigen::Vector4d a(i0 * h, i1 * h, i2 * h, i3 * h);

                    if (kind == ElementKind::Tesseract) {
                        GridCell cell;
                        cell.T = (h / 2) * Eigen::Matrix4d::Identity();
                        cell.shift = a + Eigen::Vector4d::Constant(h / 2);
                        cell.volume = std::pow(h, 4);
                        grid.cells.push_back(cell);
                        continue;
                    }

                    if (kind == ElementKind::Pentatope) {
                        // Kuhn path simplices: vertices 0, e_p0, e_p0+e_p1, ...
                        // Reference vertex differences are 2 e_k, so the
                        // affine matrix is half the vertex-difference matrix.
                        std::array<int, 4> perm = { 0, 1, 2, 3 };
                        do {
                            Eigen::Matrix4d vdiff = Eigen::Matrix4d::Zero();
                            Eigen::Vector4d v = Eigen::Vector4d::Zero();
                            for (int j = 0; j < 4; ++j) {
                                v(perm[j]) += h;
                                vdiff.col(j) = v;
                            }
                            GridCell cell;
                            cell.T = vdiff / 2;
                            // shift = w0 - T * V0, with w0 = a and V0 = (-1,..,-1)
                            cell.shift = a + cell.T * Eigen::Vector4d::Ones();
                            cell.volume = std::abs(cell.T.determinant()) * ref_vol;
                            grid.cells.push_back(cell);
                        } while (std::next_permutation(perm.begin(), perm.end()));
                        continue;
                    }

                    // tet-prism: 3D Kuhn tetrahedra in (x1,x2,x3), extruded in x4
                    std::array<int, 3> perm = { 0, 1, 2 };
                    do {
                        Eigen::Matrix4d t = Eigen::Matrix4d::Zero();
                        Eigen::Vector3d v = Eigen::Vector3d::Zero();
                        for (int j = 0; j < 3; ++j) {
                            v(perm[j]) += h;
                            t.block<3, 1>(0, j) = v / 2;
                        }
                        t(3, 3) = h / 2;
                        GridCell cell;
                        cell.T = t;
                        cell.shift = a + cell.T * Eigen::Vector4d::Ones();
                        cell.volume = std::abs(cell.T.determinant()) * ref_vol;
                        grid.cells.push_back(cell);
                    } while (std::next_permutation(perm.begin(), perm.end()));
                }
    return grid;
}

int locate_cell(const Grid4& grid, const Point4<double>& x)
{
    const int m = grid.m;
    std::array<int, 4> idx;
    std::array<double, 4> y;
    for (int c = 0; c < 4; ++c) {
        idx[c] = std::min(static_cast<int>(x[c] * m), m - 1);
        y[c] = x[c] * m - idx[c];
    }
    const int sub = ((idx[0] * m + idx[1]) * m + idx[2]) * m + idx[3];

    if (grid.kind == ElementKind::Tesseract)
        return sub;

    const int naxes = (grid.kind == ElementKind::Pentatope) ? 4 : 3;
    std::array<int, 4> order = { 0, 1, 2, 3 };
    std::stable_sort(order.begin(), order.begin() + naxes,
                     [&](int lhs, int rhs) { return y[lhs] > y[rhs]; });
    return sub * factorial(naxes) + perm_rank(order.data(), naxes);
}

double grid_integrate(const Grid4& grid, const QuadratureRule<double>& rule,
                      const Field4& f, int jobs)
{
    if (rule.kind != grid.kind)
        throw std::invalid_argument("grid_integrate: rule kind does not match grid kind");

    const double ref_vol = volume({ grid.kind, Variant::Reference });

    auto cell_sum = [&](std::size_t begin, std::size_t end) {
        double sum = 0;
        for (std::size_t c = begin; c < end; ++c) {
            const GridCell& cell = grid.cells[c];
            const double wscale = cell.volume / ref_vol;
            double local = 0;
            for (std::size_t i = 0; i < rule.points.size(); ++i) {
                const Eigen::Vector4d xr(rule.points[i][0], rule.points[i][1],
                                         rule.points[i][2], rule.points[i][3]);
                const Eigen::Vector4d xp = cell.T * xr + cell.shift;
                local += rule.weights[i] * f({ xp(0), xp(1), xp(2), xp(3) });
            }
            sum += wscale * local;
        }
        return sum;
    };

    // fixed chunk size and index-order reduction: the grouping of partial
    // sums, and therefore the rounding, is identical for every job count
    const std::size_t n = grid.cells.size();
    const std::size_t step = 64;
    double sum = 0;
    if (jobs <= 1) {
        for (std::size_t b = 0; b < n; b += step)
            sum += cell_sum(b, std::min(b + step, n));
        return sum;
    }

    std::vector<std::future<double>> futs;
    for (std::size_t b = 0; b < n; b += step)
        futs.push_back(std::async(std::launch::async, cell_sum, b, std::min(b + step, n)));
    for (auto& fu : futs)
        sum += fu.get();
    return sum;
}

Field4 test_field(const std::string& f_id)
{
    if (f_id == "f1")
        return [](const Point4<double>& x) {
            return std::exp(x[0] * x[0] + 2 * std::pow(x[1], 3) + 3 * std::pow(x[2], 4)
                            + 4 * std::pow(x[3], 5));
        };
    if (f_id == "f2")
        return [](const Point4<double>& x) {
            return std::sin(x[0] * x[0] + 2 * std::pow(x[1], 3) + 3 * std::pow(x[2], 4)
                            + 4 * std::pow(x[3], 5));
        };
    if (f_id == "f3")
        return [](const Point4<double>& x) {
            return std::sin(x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]);
        };
    throw std::invalid_argument("test_field: unknown field id " + f_id);
}

namespace {

// Extended-precision int_0^1 of cos/sin(c u^pow) and exp(c u^pow) by 64-point
// Gauss-Legendre; the integrands are entire, so this converges far past quad
// precision.
struct QuadComplex {
    Quad re, im;
};

QuadComplex osc_integral_1d(int pow, int c)
{
    const auto gl = gauss_legendre<Quad>(64);
    QuadComplex z{ 0, 0 };
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const Quad u = (gl.nodes[i] + 1) / 2;
        Quad arg = c;
        for (int k = 0; k < pow; ++k)
            arg *= u;
        z.re += gl.weights[i] / 2 * real_cos(arg);
        z.im += gl.weights[i] / 2 * real_sin(arg);
    }
    return z;
}

Quad exp_integral_1d(int pow, int c)
{
    const auto gl = gauss_legendre<Quad>(64);
    Quad s = 0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const Quad u = (gl.nodes[i] + 1) / 2;
        Quad arg = c;
        for (int k = 0; k < pow; ++k)
            arg *= u;
        s += gl.weights[i] / 2 * real_exp(arg);
    }
    return s;
}

QuadComplex mul(const QuadComplex& a, const QuadComplex& b)
{
    return { a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re };
}

} // namespace

double test_field_integral(const std::string& f_id)
{
    // The exponents separate: exp/sin of a sum factor into one-dimensional
    // integrals (complex exponentials for the oscillatory cases).
    if (f_id == "f1") {
        Quad prod = exp_integral_1d(2, 1) * exp_integral_1d(3, 2)
                  * exp_integral_1d(4, 3) * exp_integral_1d(5, 4);
        return static_cast<double>(prod);
    }
    if (f_id == "f2") {
        QuadComplex z = mul(mul(osc_integral_1d(2, 1), osc_integral_1d(3, 2)),
                            mul(osc_integral_1d(4, 3), osc_integral_1d(5, 4)));
        return static_cast<double>(z.im);
    }
    if (f_id == "f3") {
        QuadComplex z1 = osc_integral_1d(2, 1);
        QuadComplex z = mul(mul(z1, z1), mul(z1, z1));
        return static_cast<double>(z.im);
    }
    throw std::invalid_argument("test_field_integral: unknown field id " + f_id);
}

ConvergenceSeries convergence_experiment(ElementKind kind, const QuadratureRule<double>& rule,
                                         int strength, const std::string& f_id,
                                         const std::vector<int>& m_list, int jobs)
{
    const Field4 f = test_field(f_id);

    ConvergenceSeries series;
    series.strength = strength;
    series.J_inf = test_field_integral(f_id);

    for (int m : m_list) {
        const Grid4 grid = kuhn_freudenthal(kind, m);
        const double j = grid_integrate(grid, rule, f, jobs);
        series.m_values.push_back(m);
        series.h_values.push_back(std::pow(1.0 / static_cast<double>(grid.cells.size()), 0.25));
        series.J_values.push_back(j);
        series.percent_errors.push_back(100.0 * std::abs(j - series.J_inf) / std::abs(series.J_inf));
    }

    // LSQ slope of log(error) vs log(h) over the finest half, skipping
    // machine-floor entries.
    const std::size_t n = series.m_values.size();
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = n / 2; i < n; ++i)
        if (series.percent_errors[i] > 1e-13)
            pts.push_back({ std::log(series.h_values[i]), std::log(series.percent_errors[i]) });
    if (pts.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (auto [lx, ly] : pts) {
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        const double k = pts.size();
        series.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
        series.slope_valid = true;
    }
    return series;
}

void write_exactness_csv(std::ostream& os, ElementKind kind,
                         const std::vector<ExactnessRow>& rows)
{
    os << "# single-element polynomial exactness; p_or_m is the polynomial order p;"
          " h is the unit-element scale\n";
    os << "element,strength,p_or_m,h,J,J_inf,percent_error\n";
    os << std::setprecision(17);
    for (const auto& r : rows)
        os << kind_name(kind) << ',' << r.strength << ',' << r.p << ",1,"
           << r.J << ',' << r.J_inf << ',' << r.percent_error << '\n';
}

void write_convergence_csv(std::ostream& os, ElementKind kind,
                           const std::vector<ConvergenceSeries>& series)
{
    os << "# grid convergence; p_or_m is the subdivision count m; J_inf from the"
          " separable extended-precision factorization\n";
    os << "element,strength,p_or_m,h,J,J_inf,percent_error\n";
    os << std::setprecision(17);
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.m_values.size(); ++i)
            os << kind_name(kind) << ',' << s.strength << ',' << s.m_values[i] << ','
               << s.h_values[i] << ',' << s.J_values[i] << ',' << s.J_inf << ','
               << s.percent_errors[i] << '\n';
        os << "# strength " << s.strength << " fitted slope: "
           << (s.slope_valid ? std::to_string(s.slope) : std::string("n/a (machine floor)"))
           << '\n';
    }
}

} // namespace st4
