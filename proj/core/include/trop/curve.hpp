#pragma once

#include "trop/rational.hpp"

#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace trop {

// Integer direction vector of an edge or end.
struct IVec {
    long long x = 0, y = 0;
    bool operator==(const IVec& o) const { return x == o.x && y == o.y; }
    bool operator<(const IVec& o) const { return x != o.x ? x < o.x : y < o.y; }
    IVec operator+(const IVec& o) const { return {x + o.x, y + o.y}; }
    IVec operator-() const { return {-x, -y}; }
    bool is_zero() const { return x == 0 && y == 0; }
};

inline long long det(const IVec& a, const IVec& b) { return a.x * b.y - a.y * b.x; }

inline long long weight_of(const IVec& v) {
    long long g = std::gcd(std::abs(v.x), std::abs(v.y));
    return g;
}

inline bool is_even_dir(const IVec& v) { return weight_of(v) % 2 == 0; }

// Ordered list of end directions plus the set of fixed-end labels (1-based).
struct Degree {
    std::vector<IVec> ends;  // v(y_1), ..., v(y_n)
    std::set<int> fixed;     // F, subset of {1..n}

    int size() const { return static_cast<int>(ends.size()); }
    const IVec& dir(int label) const { return ends.at(label - 1); }
    long long weight(int label) const { return weight_of(dir(label)); }
    bool is_fixed(int label) const { return fixed.count(label) > 0; }
    bool balanced() const;
    void validate() const;  // nonzero directions, labels, balancing

    static Degree p2(int d);  // d x {(-1,0),(0,-1),(1,1)}
};

// Order of G(Delta,F): permutations fixing F pointwise and preserving
// direction vectors.
unsigned long long symmetry_order(const Degree& deg);

enum class MarkKind { Real, Complex };

// Abstract labeled combinatorial type of a rational marked curve. The
// underlying graph must be a tree (a forest is tolerated for the formal
// surgery output of broccolization).
struct CombType {
    struct Edge {
        int from = -1, to = -1;
        IVec dir;  // direction of travel from -> to
    };
    struct End {
        int vertex = -1;
        int label = 0;  // 1..n
        IVec dir;
    };
    struct Marking {
        int vertex = -1;
        int label = 0;  // 1..r+s (real: 1..r, complex: r+1..r+s)
        MarkKind kind = MarkKind::Real;
    };

    int num_vertices = 0;
    std::vector<Edge> edges;
    std::vector<End> ends;
    std::vector<Marking> markings;

    // Orientation flags, parallel to edges/ends. For a bounded edge +1 means
    // "from -> to"; for an end +1 means outward (towards infinity), -1 inward.
    bool oriented = false;
    std::vector<int> edge_orient;
    std::vector<int> end_orient;

    int add_vertex() { return num_vertices++; }
    void add_edge(int from, int to, IVec dir) { edges.push_back({from, to, dir}); }
    void add_end(int vertex, int label, IVec dir) { ends.push_back({vertex, label, dir}); }
    void add_marking(int vertex, int label, MarkKind kind) { markings.push_back({vertex, label, kind}); }

    bool is_tree() const;    // connected, first Betti number 0
    bool is_forest() const;  // no cycles
    bool balanced_at(int vertex) const;
    bool balanced() const;

    // Outward direction vectors of non-marking edges/ends at a vertex.
    std::vector<IVec> star(int vertex) const;
    int valence(int vertex) const;  // including markings
    std::vector<int> markings_at(int vertex) const;

    // 2 + number of bounded non-marking edges of the image graph.
    int cell_dimension() const;

    // Deterministic encoding; equal iff the types are isomorphic respecting
    // all labels. Requires at least one end or marking.
    std::string canonical_key() const;
};

enum class VertexTag { TypeI, TypeII, TypeIII, DescendantHigher, Invalid };

// Classical broccoli vertex types (the parity/orientation-refined numbering
// (1)-(8)), with the patterns that are allowed for refined broccoli curves
// but forbidden for old broccoli curves kept separate. T7 doubles as the
// forbidden even-marked pattern.
enum class OldTag {
    T1, T2, T3, T4, T5, T6a, T6b, T7, T8,
    ForbiddenEvenOut,      // (b): unmarked 3-valent, even edge oriented away
    ForbiddenAllEvenMark,  // (c): complex-marked, all non-marking edges even
    None
};

struct VertexClass {
    VertexTag tag = VertexTag::Invalid;
    long long mikhalkin_a = 0;  // 0 for TypeI and for collinear stars
    bool double_end = false;    // two parallel ends at this vertex
};

// Classifies a vertex of the refined valence profile. For 3-valent image
// vertices the Mikhalkin multiplicity |det| of any two adjacent non-marking
// directions is returned (the three choices coincide by balancing).
VertexClass classify_vertex(const CombType& comb, int vertex);

// Old-type classification; needs the natural orientation for the stem test.
OldTag classify_old_vertex(const CombType& comb, int vertex);

struct OrientError {
    int component_witness_vertex = -1;
    int free_end_count = 0;
    std::string message;
};

// Orients every unmarked edge towards the unique unmarked non-fixed end of
// its component of Gamma minus the markings; fixed ends point inwards.
// Fails when some component has zero or >= 2 such ends.
std::optional<CombType> natural_orient(const CombType& comb, const Degree& deg, std::string* error = nullptr);

struct CurveClassFlags {
    bool is_refined_broccoli = false;
    bool is_descendant = false;
    bool is_old_broccoli = false;
    bool is_welschinger = false;
};

CurveClassFlags curve_class_predicates(const CombType& comb, const Degree& deg);

// A combinatorial type placed in the plane: anchor is the image of vertex 0,
// every bounded edge carries a strictly positive rational length, so that
// pos(to) = pos(from) + length * dir.
struct PlacedCurve {
    CombType comb;
    QPoint anchor;
    std::vector<Rat> lengths;  // parallel to comb.edges

    QPoint vertex_position(int vertex) const;
    std::vector<QPoint> all_positions() const;
};

// Order of the combinatorial automorphism group of a placed (or balanced
// abstract) labeled-marking curve with interchangeable same-direction ends:
// the product over vertices and directions of (number of same-direction
// non-fixed ends at that vertex)!.
unsigned long long placed_aut_order(const CombType& comb, const Degree& deg);

} // namespace trop
