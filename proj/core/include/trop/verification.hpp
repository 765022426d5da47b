#pragma once

#include "trop/invariants.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace trop {

// Local wall-crossing identities on balanced vector stars; the Mikhalkin
// multiplicities are replaced by signed determinants A_ij = det(v_i, v_j),
// which absorbs the H-sign. All three must vanish identically.

// v1 + v2 + v3 = 0:  [A12]- + [A13]- = 0
QFraction relation_A(const IVec& v1, const IVec& v2, const IVec& v3);

// v1 + .. + v4 = 0:  [A12]-[A34]- + [A23]-[A14]- + [A13]-[A42]- = 0
QFraction relation_B(const IVec& v1, const IVec& v2, const IVec& v3, const IVec& v4);

// Mixed variant with one plus bracket per term; nullopt when a plus-bracket
// argument vanishes (degenerate tuple, skipped by the fuzzer).
std::optional<QFraction> relation_C(const IVec& v1, const IVec& v2, const IVec& v3, const IVec& v4);

struct RelationFuzzReport {
    int samples = 0;
    int violations = 0;
    int skipped_degenerate = 0;
};

// Seeded random balanced tuples with all entries in [-max_entry, max_entry].
RelationFuzzReport fuzz_relation_A(int samples, long long max_entry, std::uint64_t seed);
RelationFuzzReport fuzz_relation_B(int samples, long long max_entry, std::uint64_t seed);
RelationFuzzReport fuzz_relation_C(int samples, long long max_entry, std::uint64_t seed);

// Counts of rational plane curves of degree d through 3d-1 points, by the
// classical recursion from N_1 = N_2 = 1.
mpz_class kontsevich_N(int d);

// Sum of real multiplicities over the enumerated curves (s = 0), one term
// per labeling orbit weighted by 1/|Aut|; the total is an integer.
long long welschinger_total(const Degree& deg, int r, const EnumerationReport& rep);
long long welschinger_total_seeded(const Degree& deg, int r, std::uint64_t seed);

struct InvarianceReport {
    bool ok = false;
    YLaurent value;
    std::vector<std::pair<std::uint64_t, YLaurent>> per_seed;
    std::string mismatch;
};

// Computes the refined broccoli invariant for each seed's configuration and
// requires exact Laurent equality across all of them.
InvarianceReport invariance_harness(const Degree& deg, int r, int s,
                                    const std::vector<std::uint64_t>& seeds);

} // namespace trop
