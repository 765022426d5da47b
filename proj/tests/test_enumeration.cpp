#include "trop/enumeration.hpp"
#include "trop/curve.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>
#include <sstream>

using namespace trop;

namespace {

Config config_for(const Degree& deg, int r, int s, std::initializer_list<std::pair<long, long>> pts) {
    Config cfg;
    cfg.r = r;
    cfg.s = s;
    cfg.fixed.assign(deg.fixed.begin(), deg.fixed.end());
    for (const auto& [x, y] : pts) cfg.points.push_back({Rat(x), Rat(y)});
    return cfg;
}

// Independent of vertex numbering: the multiset of vertex positions plus the
// multiset of edge lengths pins the placed curve down.
std::string placement_signature(const PlacedCurve& c) {
    std::vector<std::string> parts;
    for (const auto& p : c.all_positions()) parts.push_back(rat_str(p.x) + "," + rat_str(p.y));
    std::sort(parts.begin(), parts.end());
    std::vector<std::string> ls;
    for (const auto& l : c.lengths) ls.push_back(rat_str(l));
    std::sort(ls.begin(), ls.end());
    std::ostringstream os;
    for (const auto& p : parts) os << p << "|";
    os << "//";
    for (const auto& l : ls) os << l << "|";
    return os.str();
}

// Labeled lifts of one orbit representative: product over direction classes
// of (#non-fixed labels)! divided by the double-end symmetry order.
unsigned long long lift_count(const PlacedCurveEx& ex, const Degree& deg) {
    std::map<IVec, unsigned long long> cnt;
    for (int i = 1; i <= deg.size(); ++i)
        if (!deg.is_fixed(i)) cnt[deg.dir(i)]++;
    unsigned long long lifts = 1;
    for (const auto& [d, c] : cnt)
        for (unsigned long long k = 2; k <= c; ++k) lifts *= k;
    return lifts / ex.aut_order;
}

// Brute force: solve every labeled combinatorial type directly.
std::multiset<std::string> brute_force_signatures(const Degree& deg, int r, int s, const Config& cfg) {
    std::multiset<std::string> out;
    for (const auto& comb : enumerate_types(deg, r, s)) {
        auto placed = solve_placement(comb, deg, cfg);
        if (placed.curve) out.insert(placement_signature(*placed.curve));
    }
    return out;
}

std::multiset<std::string> dp_signatures(const Degree& deg, const EnumerationReport& rep) {
    std::multiset<std::string> out;
    for (const auto& ex : rep.curves) {
        std::string sig = placement_signature(ex.curve);
        for (unsigned long long i = 0; i < lift_count(ex, deg); ++i) out.insert(sig);
    }
    return out;
}

void cross_check(const Degree& deg, int r, int s, std::uint64_t seed) {
    auto [cfg, rep] = random_config_enumerated(deg, r, s, seed);
    REQUIRE_FALSE(rep.degenerate);
    CHECK(dp_signatures(deg, rep) == brute_force_signatures(deg, r, s, cfg));
}

} // namespace

TEST_CASE("labeled type enumeration for the line through two points") {
    // hand enumeration: the two labeled markings either subdivide two
    // distinct ends (3*2 choices) or sit on the same end in one of two
    // orders (3*2 more): 12 labeled types
    Degree deg = Degree::p2(1);
    auto types = enumerate_types(deg, 2, 0);
    CHECK(types.size() == 12);
    for (const auto& t : types) {
        CHECK(t.is_tree());
        CHECK(t.balanced());
        CHECK(t.cell_dimension() == 4);
    }
    // all types are distinct as labeled trees
    std::set<std::string> keys;
    for (const auto& t : types) keys.insert(t.canonical_key());
    CHECK(keys.size() == types.size());
}

TEST_CASE("labeled type enumeration with one complex marking") {
    Degree deg = Degree::p2(1);
    auto types = enumerate_types(deg, 0, 1);
    REQUIRE(types.size() == 1);
    CHECK(types[0].num_vertices == 1);
    CHECK(types[0].cell_dimension() == 2);
}

TEST_CASE("solve_placement on the line type, by hand") {
    Degree deg = Degree::p2(1);
    // x_1 subdivides the (0,-1) end, x_2 the (1,1) end
    CombType c;
    int v = c.add_vertex();
    int m1 = c.add_vertex();
    int m2 = c.add_vertex();
    c.add_end(v, 1, {-1, 0});
    c.add_edge(v, m1, {0, -1});
    c.add_end(m1, 2, {0, -1});
    c.add_edge(v, m2, {1, 1});
    c.add_end(m2, 3, {1, 1});
    c.add_marking(m1, 1, MarkKind::Real);
    c.add_marking(m2, 2, MarkKind::Real);

    Config cfg = config_for(deg, 2, 0, {{0, 0}, {5, 7}});
    auto placed = solve_placement(c, deg, cfg);
    REQUIRE(placed.curve.has_value());
    // the unique tropical line through (0,0) and (5,7): vertex at (0,2)
    CHECK(placed.curve->anchor == QPoint{Rat(0), Rat(2)});
    CHECK(placed.curve->lengths[0] == 2);
    CHECK(placed.curve->lengths[1] == 5);

    // P_2 on the diagonal boundary ray from P_1: a length degenerates to zero
    Config wall = config_for(deg, 2, 0, {{0, 0}, {5, 5}});
    auto degen = solve_placement(c, deg, wall);
    CHECK_FALSE(degen.curve.has_value());
    CHECK(degen.reject == RejectReason::Degenerate);

    // P_2 in a region the type cannot reach: negative length
    Config off = config_for(deg, 2, 0, {{0, 0}, {5, -7}});
    auto neg = solve_placement(c, deg, off);
    CHECK_FALSE(neg.curve.has_value());
    CHECK(neg.reject == RejectReason::NegativeLength);
}

TEST_CASE("one line through two generic points") {
    Degree deg = Degree::p2(1);
    auto [cfg, rep] = random_config_enumerated(deg, 2, 0, 7);
    CHECK(rep.curves.size() == 1);
    CHECK(rep.curves[0].aut_order == 1);
}

TEST_CASE("exactly one conic through five generic points") {
    Degree deg = Degree::p2(2);
    auto [cfg, rep] = random_config_enumerated(deg, 5, 0, 3);
    // one curve up to relabeling interchangeable ends
    CHECK(rep.curves.size() == 1);
}

TEST_CASE("placements satisfy the conditions exactly") {
    Degree deg = Degree::p2(2);
    auto [cfg, rep] = random_config_enumerated(deg, 3, 1, 11);
    REQUIRE_FALSE(rep.degenerate);
    REQUIRE(rep.curves.size() >= 1);
    for (const auto& ex : rep.curves) {
        const auto& comb = ex.curve.comb;
        auto pos = ex.curve.all_positions();
        for (const auto& mk : comb.markings) {
            CHECK(pos[mk.vertex] == cfg.point(mk.label));
        }
        // square system: #bounded edges = 2(r+s)+|F| - 2
        CHECK(static_cast<int>(comb.edges.size()) == 2 * (cfg.r + cfg.s) - 2);
        CHECK(comb.is_tree());
        CHECK(comb.balanced());
        for (const auto& l : ex.curve.lengths) CHECK(l > 0);
    }
}

TEST_CASE("fixed end conditions are met exactly") {
    Degree deg;
    deg.ends = {{-2, 0}, {1, 1}, {1, -1}};
    deg.fixed = {1};
    auto [cfg, rep] = random_config_enumerated(deg, 1, 0, 5);
    REQUIRE_FALSE(rep.degenerate);
    REQUIRE(rep.curves.size() >= 1);
    const auto& lc = cfg.line(1);
    for (const auto& ex : rep.curves) {
        auto pos = ex.curve.all_positions();
        for (const auto& e : ex.curve.comb.ends) {
            if (e.label != 1) continue;
            Rat lhs = rat_of(lc.covector.x) * pos[e.vertex].x + rat_of(lc.covector.y) * pos[e.vertex].y;
            CHECK(lhs == lc.value);
        }
    }
}

TEST_CASE("determinism: same seed, identical report") {
    Degree deg = Degree::p2(2);
    auto [cfg1, rep1] = random_config_enumerated(deg, 3, 1, 42);
    auto [cfg2, rep2] = random_config_enumerated(deg, 3, 1, 42);
    REQUIRE(rep1.curves.size() == rep2.curves.size());
    for (size_t i = 0; i < rep1.curves.size(); ++i) {
        CHECK(rep1.curves[i].curve.comb.canonical_key() == rep2.curves[i].curve.comb.canonical_key());
        CHECK(placement_signature(rep1.curves[i].curve) == placement_signature(rep2.curves[i].curve));
        CHECK(rep1.curves[i].aut_order == rep2.curves[i].aut_order);
    }
    for (size_t i = 0; i < cfg1.points.size(); ++i) CHECK(cfg1.points[i] == cfg2.points[i]);
}

TEST_CASE("hopeless spread exhausts the retry budget") {
    Degree deg = Degree::p2(1);
    CHECK_THROWS_AS(random_config(deg, 2, 0, 1, 0), std::runtime_error);
}

TEST_CASE("enumerator agrees with brute force over all labeled types") {
    cross_check(Degree::p2(1), 2, 0, 101);
    cross_check(Degree::p2(1), 0, 1, 102);

    Degree weighted;  // one weight-2 end
    weighted.ends = {{-2, 0}, {0, -1}, {2, 1}};
    cross_check(weighted, 2, 0, 103);
    cross_check(weighted, 0, 1, 104);

    Degree doubled;  // parallel ends, double-end curves appear
    doubled.ends = {{-1, 0}, {-1, 0}, {2, 0}};
    cross_check(doubled, 0, 1, 105);
    cross_check(doubled, 2, 0, 106);

    Degree cross;  // opposite ends: contracted-edge pruning kicks in
    cross.ends = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
    cross_check(cross, 3, 0, 107);
    cross_check(cross, 1, 1, 108);

    Degree rel = Degree::p2(1);  // a fixed end
    rel.fixed = {1};
    cross_check(rel, 1, 0, 109);
}

TEST_CASE("contracted bounded edges are rejected") {
    Degree cross;
    cross.ends = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
    std::map<std::string, std::uint64_t> rejected;
    auto types = enumerate_types(cross, 3, 0, &rejected);
    CHECK(rejected["contracted_edge"] > 0);
    for (const auto& t : types) {
        for (const auto& e : t.edges) CHECK_FALSE(e.dir.is_zero());
    }
}

TEST_CASE("double ends carry their symmetry order") {
    Degree doubled;
    doubled.ends = {{-1, 0}, {-1, 0}, {2, 0}};
    auto [cfg, rep] = random_config_enumerated(doubled, 0, 1, 21);
    REQUIRE(rep.curves.size() == 1);
    CHECK(rep.curves[0].aut_order == 2);
    CHECK(rep.curves[0].curve.comb.num_vertices == 1);
}
