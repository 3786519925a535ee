#ifndef ST4_POLYTOPE_SEQ_HPP
#define ST4_POLYTOPE_SEQ_HPP

#include <string>
#include <vector>

namespace st4 {

// Vertex of the d-cube as a bit vector; coords[0] is the leading binary
// digit in the printed form.
struct ZeroOneVertex {
    std::vector<int> coords;

    friend bool operator==(const ZeroOneVertex&, const ZeroOneVertex&) = default;
    friend auto operator<=>(const ZeroOneVertex&, const ZeroOneVertex&) = default;

    std::string bits() const
    {
        std::string s;
        for (int c : coords)
            s += char('0' + c);
        return s;
    }
};

struct ZeroOnePolytope {
    int dim = 0;
    std::vector<ZeroOneVertex> vertices; // sorted, unique
    int label = 0;                       // sequence index
};

struct DegenerationSequence {
    int dim = 0;
    std::vector<ZeroOnePolytope> polytopes; // length 2^d - d
    std::vector<ZeroOneVertex> removed;     // length 2^d - d - 1
};

// Recursive alternating degeneration sequence: the tesseract sequence that
// passes through the tetrahedral prism.
DegenerationSequence sequence_a(int d);

// Vertices read as binary numbers, listed in decreasing order, omitting the
// standard simplex's vertices.
DegenerationSequence sequence_b(int d);

// True iff p's vertex set is {(v,0)} union {(v,1)} over q's vertex set.
bool is_prism_over(const ZeroOnePolytope& p, const ZeroOnePolytope& q);

std::vector<int> vertex_count_profile(const DegenerationSequence& seq);

// Affine dimension of the vertex set, computed by fraction-free integer
// elimination.
int affine_dimension(const ZeroOnePolytope& p);

ZeroOnePolytope standard_simplex(int d);

} // namespace st4

#endif
