#include "st4/polytope_seq.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>

namespace st4 {

namespace {

void check_dim(int d)
{
    if (d < 1 || d > 6)
        throw std::invalid_argument("sequence dimension must lie in [1, 6]");
}

std::vector<ZeroOneVertex> cube_vertices(int d)
{
    std::vector<ZeroOneVertex> vs;
    for (int code = 0; code < (1 << d); ++code) {
        ZeroOneVertex v;
        v.coords.resize(d);
        for (int i = 0; i < d; ++i)
            v.coords[i] = (code >> (d - 1 - i)) & 1;
        vs.push_back(std::move(v));
    }
    std::sort(vs.begin(), vs.end());
    return vs;
}

bool is_simplex_vertex(const ZeroOneVertex& v)
{
    int ones = 0;
    for (int c : v.coords)
        ones += c;
    return ones <= 1;
}

DegenerationSequence build_from_removed(int d, std::vector<ZeroOneVertex> removed)
{
    DegenerationSequence seq;
    seq.dim = d;
    seq.removed = std::move(removed);

    std::vector<ZeroOneVertex> verts = cube_vertices(d);
    ZeroOnePolytope cur{ d, verts, 0 };
    seq.polytopes.push_back(cur);
    for (std::size_t i = 0; i < seq.removed.size(); ++i) {
        auto it = std::find(cur.vertices.begin(), cur.vertices.end(), seq.removed[i]);
        if (it == cur.vertices.end())
            throw std::logic_error("degeneration removes a vertex not present");
        cur.vertices.erase(it);
        cur.label = static_cast<int>(i) + 1;
        seq.polytopes.push_back(cur);
    }
    return seq;
}

// Recursive vertex sequence: phase 1 interleaves (v,1),(v,0) over the
// (d-1)-sequence, phase 2 strips e_j + e_d in coordinate order.
std::vector<ZeroOneVertex> removed_a(int d)
{
    if (d == 1)
        return {};
    if (d == 2)
        return { ZeroOneVertex{ { 1, 1 } } };

    std::vector<ZeroOneVertex> prev = removed_a(d - 1);
    std::vector<ZeroOneVertex> out;
    for (const auto& v : prev) {
        ZeroOneVertex hi = v, lo = v;
        hi.coords.push_back(1);
        lo.coords.push_back(0);
        out.push_back(std::move(hi));
        out.push_back(std::move(lo));
    }
    for (int j = 0; j < d - 1; ++j) {
        ZeroOneVertex v;
        v.coords.assign(d, 0);
        v.coords[j] = 1;
        v.coords[d - 1] = 1;
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace

DegenerationSequence sequence_a(int d)
{
    check_dim(d);
    return build_from_removed(d, removed_a(d));
}

DegenerationSequence sequence_b(int d)
{
    check_dim(d);
    std::vector<ZeroOneVertex> removed;
    for (int code = (1 << d) - 1; code >= 0; --code) {
        ZeroOneVertex v;
        v.coords.resize(d);
        for (int i = 0; i < d; ++i)
            v.coords[i] = (code >> (d - 1 - i)) & 1;
        if (!is_simplex_vertex(v))
            removed.push_back(std::move(v));
    }
    return build_from_removed(d, removed);
}

bool is_prism_over(const ZeroOnePolytope& p, const ZeroOnePolytope& q)
{
    if (p.dim != q.dim + 1)
        throw std::invalid_argument("is_prism_over: p.dim must equal q.dim + 1");
    if (p.vertices.size() != 2 * q.vertices.size())
        return false;

    std::set<ZeroOneVertex> expected;
    for (const auto& v : q.vertices)
        for (int top : { 0, 1 }) {
            ZeroOneVertex w = v;
            w.coords.push_back(top);
            expected.insert(std::move(w));
        }
    return expected == std::set<ZeroOneVertex>(p.vertices.begin(), p.vertices.end());
}

std::vector<int> vertex_count_profile(const DegenerationSequence& seq)
{
    std::vector<int> out;
    for (const auto& p : seq.polytopes)
        out.push_back(static_cast<int>(p.vertices.size()));
    return out;
}

int affine_dimension(const ZeroOnePolytope& p)
{
    if (p.vertices.empty())
        return -1;
    const int d = p.dim;
    std::vector<std::vector<std::int64_t>> rows;
    for (std::size_t i = 1; i < p.vertices.size(); ++i) {
        std::vector<std::int64_t> r(d);
        for (int c = 0; c < d; ++c)
            r[c] = p.vertices[i].coords[c] - p.vertices[0].coords[c];
        rows.push_back(std::move(r));
    }

    // fraction-free Gaussian elimination (Bareiss)
    int rank = 0;
    std::int64_t prev = 1;
    for (int col = 0; col < d && rank < static_cast<int>(rows.size()); ++col) {
        int pivot = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (rows[r][col] != 0) { pivot = r; break; }
        if (pivot < 0)
            continue;
        std::swap(rows[rank], rows[pivot]);
        for (int r = rank + 1; r < static_cast<int>(rows.size()); ++r) {
            for (int c = col + 1; c < d; ++c)
                rows[r][c] = (rows[rank][col] * rows[r][c] - rows[rank][c] * rows[r][col]) / prev;
            rows[r][col] = 0;
        }
        prev = rows[rank][col];
        ++rank;
    }
    return rank;
}

ZeroOnePolytope standard_simplex(int d)
{
    ZeroOnePolytope p;
    p.dim = d;
    ZeroOneVertex origin;
    origin.coords.assign(d, 0);
    p.vertices.push_back(origin);
    for (int i = 0; i < d; ++i) {
        ZeroOneVertex v = origin;
        v.coords[i] = 1;
        p.vertices.push_back(std::move(v));
    }
    std::sort(p.vertices.begin(), p.vertices.end());
    return p;
}

} // namespace st4
