#pragma once

#include "trop/curve.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace trop {

// One linear condition for a fixed end: covector(h(y_j)) = value, where the
// primitive covector annihilates v(y_j).
struct LineCondition {
    int end_label = 0;
    IVec covector;
    Rat value;
};

// Point/line conditions. points[i-1] is the condition for marking i; real
// markings are 1..r, complex r+1..r+s.
struct Config {
    std::vector<QPoint> points;
    std::vector<LineCondition> lines;
    int r = 0, s = 0;
    std::vector<int> fixed;  // sorted copy of F

    const QPoint& point(int marking_label) const { return points.at(marking_label - 1); }
    const LineCondition& line(int end_label) const;
    void validate(const Degree& deg) const;
};

// Primitive covector annihilating v, sign fixed by lexicographic positivity.
IVec primitive_annihilator(const IVec& v);

enum class RejectReason {
    NegativeLength,
    NoSolution,       // inconsistent conditions (type misses the configuration)
    ProfileDimension, // subtree condition-count can never match (pruned)
    ContractedEdge,   // zero direction vector on a bounded edge
    Degenerate,       // wall: singular/underdetermined system or zero length
};

struct PlacedCurveEx {
    PlacedCurve curve;
    unsigned long long aut_order = 1;  // same-direction double-end symmetries
};

struct EnumerationReport {
    std::vector<PlacedCurveEx> curves;  // canonical order
    std::map<std::string, std::uint64_t> rejected_types;
    bool degenerate = false;
    std::string degenerate_reason;
};

// All connected labeled combinatorial types for (Delta, r, s): real markings
// at 3-valent vertices, complex markings at 4-valent vertices, all other
// vertices 3-valent, no contracted bounded edge, no duplicates up to
// label-respecting isomorphism. Exponential in |Delta|+r+s; intended for desk
// scale cross-checks.
std::vector<CombType> enumerate_types(const Degree& deg, int r, int s,
                                      std::map<std::string, std::uint64_t>* rejected = nullptr);

struct PlacementOutcome {
    std::optional<PlacedCurve> curve;
    RejectReason reject = RejectReason::NoSolution;
};

// Sets up and solves the exact square linear system (anchor, lengths) imposed
// by the marking and fixed-end conditions of one combinatorial type.
PlacementOutcome solve_placement(const CombType& comb, const Degree& deg, const Config& cfg);

// Enumerates all curves of the refined valence profile through cfg, one
// representative per labeling orbit of interchangeable same-direction ends
// (aut_order records the orbit symmetry). Deterministic canonical order
// regardless of the worker count (values below 1 mean a single worker).
EnumerationReport enumerate_through(const Degree& deg, int r, int s, const Config& cfg,
                                    int threads = 0);

// Seeded deterministic generic configuration (numerators in
// [-spread, spread], denominators up to 8); retries with derived seeds until
// the enumeration reports no degeneracy.
Config random_config(const Degree& deg, int r, int s, std::uint64_t seed, long long spread = 100000);

// As above but returns the report of the successful enumeration as well.
std::pair<Config, EnumerationReport> random_config_enumerated(const Degree& deg, int r, int s,
                                                              std::uint64_t seed,
                                                              long long spread = 100000,
                                                              int max_retries = 32,
                                                              int threads = 0);

} // namespace trop
